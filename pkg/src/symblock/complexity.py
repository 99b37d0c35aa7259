"""Complexity of simple modules D^lambda of symmetric groups.

``complexity_of`` runs a fixed cascade of rules and stops at the first one
that decides.  Each rule is recorded in the trace whether or not it fired,
so a result can be audited step by step.  Where no rule gives an exact
value the answer is an interval, never an extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .branching import DEFAULT_DEPTH_CAP, SemisimpleChain, induce_chain_to_rouquier, is_rouquier
from .errors import DomainError, Undecided
from .partition_core import Partition, block_of, check_prime, format_partition, is_p_regular

# tags
PROJECTIVE = "Projective"
WEIGHT_ONE = "WeightOne"
WEIGHT_TWO_GENERIC = "WeightTwoGeneric"
WEIGHT_TWO_HOOK = "WeightTwoHookException"
ROUQUIER = "Rouquier"
INDUCES_TO_ROUQUIER = "InducesToRouquier"
HOOK_UPPER_BOUND = "HookUpperBound"
GENERIC_BOUNDS = "GenericBounds"
SPECIAL_CASE = "SpecialCaseTable"

# single values that no general rule covers, keyed by (p, partition)
SPECIAL_CASES: dict[tuple[int, Partition], int] = {
    # D^(3,1) restricted to the Klein four subgroup of S_4 is trivial of dimension 2
    (2, Partition((3, 1))): 2,
}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    fired: bool
    note: str = ""


@dataclass(frozen=True)
class ComplexityResult:
    partition: Partition
    p: int
    lo: int
    hi: int
    tag: str
    trace: tuple[TraceStep, ...] = field(default_factory=tuple)
    chain: SemisimpleChain | None = None

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None

    def to_record(self, with_trace: bool = False) -> dict:
        rec: dict = {
            "partition": format_partition(self.partition),
            "p": self.p,
            "justification": self.tag,
        }
        if self.exact:
            rec["value"] = self.lo
        else:
            rec["interval"] = [self.lo, self.hi]
        if self.chain is not None:
            rec["chain"] = self.chain.to_records()
        if with_trace:
            rec["trace"] = [{"rule": s.rule, "fired": s.fired, "note": s.note} for s in self.trace]
        return rec


def hook_partition(w: int, p: int) -> Partition:
    """((w-1)p + 1, 1^(p-1))."""
    return Partition(((w - 1) * p + 1,) + (1,) * (p - 1))


def hook_upper_bound(w: int, p: int) -> int:
    check_prime(p)
    if p == 2:
        raise DomainError("the hook bound fails in general for p = 2")
    if w < 2:
        raise DomainError("the hook bound needs w >= 2")
    return w - 1


def wreath_block_complexity(parts: Sequence[int], p: int) -> int:
    """Complexity of the simple module of the principal block of a wreath product indexed by a composition of w."""
    check_prime(p)
    parts = list(parts)
    if not parts or any(a < 1 for a in parts):
        raise DomainError("need a composition with positive parts")
    w = sum(parts)
    if w >= p:
        raise DomainError(f"need w < p, got w = {w}, p = {p}")
    # each factor contributes a_i copies of a cyclic-group complexity 1
    return sum(a * 1 for a in parts)


def complexity_of(lam: Sequence[int], p: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> ComplexityResult:
    check_prime(p)
    lam = Partition(lam)
    if not is_p_regular(lam, p):
        raise DomainError(f"{format_partition(lam)} is not {p}-regular, so labels no simple module")
    B = block_of(lam, p)
    w, n = B.weight, lam.n
    trace: list[TraceStep] = []

    def done(lo: int, hi: int, tag: str, note: str = "", chain=None) -> ComplexityResult:
        trace.append(TraceStep(tag, True, note))
        return ComplexityResult(lam, p, lo, hi, tag, tuple(trace), chain)

    def skip(tag: str, note: str = "") -> None:
        trace.append(TraceStep(tag, False, note))

    if (p, lam) in SPECIAL_CASES:
        v = SPECIAL_CASES[(p, lam)]
        return done(v, v, SPECIAL_CASE, "tabulated value")
    skip(SPECIAL_CASE)

    if w == 0:
        return done(0, 0, PROJECTIVE, "p-core: the module is projective")
    skip(PROJECTIVE, f"weight {w}")

    if w == 1:
        # extends the principal-block statement to all weight-1 blocks: cyclic defect group, non-projective
        return done(1, 1, WEIGHT_ONE, "cyclic defect group of order p")
    skip(WEIGHT_ONE)

    if p % 2 and w == 2:
        if lam == hook_partition(2, p):
            return done(1, 1, WEIGHT_TWO_HOOK, f"lambda = ({p + 1},1^{p - 1})")
        return done(2, 2, WEIGHT_TWO_GENERIC)
    skip(WEIGHT_TWO_GENERIC, "needs odd p and weight 2")

    if w < p and is_rouquier(B):
        return done(w, w, ROUQUIER, f"Rouquier block of weight {w} < p")
    skip(ROUQUIER, "w >= p" if w >= p else "block is not Rouquier")

    if w < p:
        try:
            chain = induce_chain_to_rouquier(lam, p, depth_cap)
        except Undecided as exc:
            skip(INDUCES_TO_ROUQUIER, f"undecided: {exc}")
        else:
            if chain is not None:
                return done(w, w, INDUCES_TO_ROUQUIER, f"{len(chain)} semisimple induction steps", chain)
            skip(INDUCES_TO_ROUQUIER, "walk met an exceptional step")
    else:
        skip(INDUCES_TO_ROUQUIER, "w >= p")

    if p % 2 and w >= 2 and lam == hook_partition(w, p):
        return done(1, hook_upper_bound(w, p), HOOK_UPPER_BOUND, "non-projective, strictly below w")
    skip(HOOK_UPPER_BOUND)

    return done(1, min(w, n // p), GENERIC_BOUNDS, "non-projective; at most the weight and the p-rank")
