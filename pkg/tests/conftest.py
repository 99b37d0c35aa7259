import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from symblock.partition_core import Partition

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=20, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

PRIMES = (2, 3, 5, 7)
ODD_PRIMES = (3, 5, 7)


@st.composite
def partitions_st(draw, max_n: int = 30, max_len: int | None = None):
    n = draw(st.integers(0, max_n))
    parts = []
    left = n
    while left:
        if max_len is not None and len(parts) == max_len - 1:
            parts.append(left)
            break
        part = draw(st.integers(1, left))
        parts.append(part)
        left -= part
    return Partition(sorted(parts, reverse=True))


primes_st = st.sampled_from(PRIMES)
odd_primes_st = st.sampled_from(ODD_PRIMES)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
