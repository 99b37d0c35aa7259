"""Jordan-block arithmetic for modules over a cyclic group of prime order p.

A module over C_p = <g> is determined by the Jordan type of the nilpotent
g - 1, a multiset of block sizes in 1..p.  Everything here is exact: the
brute-force paths compute ranks of integer matrices modulo p.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, ExcludedCase
from .partition_core import check_prime


@dataclass(frozen=True)
class JordanMultiset:
    p: int
    mult: tuple[tuple[int, int], ...]  # sorted (size, multiplicity), multiplicities > 0

    @classmethod
    def of(cls, p: int, sizes: Mapping[int, int] | Iterable[int] = ()) -> "JordanMultiset":
        check_prime(p)
        counts = Counter(sizes) if not isinstance(sizes, Mapping) else Counter(dict(sizes))
        for size, m in counts.items():
            if not 1 <= size <= p or m < 0:
                raise DomainError(f"bad Jordan block J_{size} x {m} for p = {p}")
        return cls(p, tuple(sorted((s, m) for s, m in counts.items() if m > 0)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mult)

    def __getitem__(self, size: int) -> int:
        return self.as_dict().get(size, 0)

    @property
    def dim(self) -> int:
        return sum(s * m for s, m in self.mult)

    @property
    def num_blocks(self) -> int:
        return sum(m for _, m in self.mult)

    @property
    def projective_count(self) -> int:
        return self[self.p]

    def is_free(self) -> bool:
        return all(s == self.p for s, _ in self.mult)

    def __add__(self, other: "JordanMultiset") -> "JordanMultiset":
        if not isinstance(other, JordanMultiset):
            return NotImplemented
        if other.p != self.p:
            raise TypeError(f"cannot add Jordan types for p = {self.p} and p = {other.p}")
        return JordanMultiset.of(self.p, Counter(self.as_dict()) + Counter(other.as_dict()))

    def __str__(self) -> str:
        if not self.mult:
            return "0"
        return " + ".join(f"{m}*J{s}" if m > 1 else f"J{s}" for s, m in reversed(self.mult))


def _check_size(x: int, p: int, name: str = "size") -> None:
    if not 1 <= x <= p - 1:
        raise DomainError(f"{name} must lie in 1..{p - 1}, got {x}")


# -- exact linear algebra over F_p -----------------------------------------


def rank_mod_p(m: np.ndarray, p: int) -> int:
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = (a[rank] * pow(int(a[rank, c]), -1, p)) % p
        others = a[:, c].copy()
        others[rank] = 0
        a = (a - np.outer(others, a[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def jordan_block_nilpotent(size: int) -> np.ndarray:
    return np.eye(size, k=1, dtype=np.int64)


def jordan_type_of_nilpotent(n: np.ndarray, p: int) -> JordanMultiset:
    """Jordan type from the ranks of N^0, N^1, ...: #blocks of size >= t is rank(N^{t-1}) - rank(N^t)."""
    check_prime(p)
    n = np.asarray(n, dtype=np.int64) % p
    d = n.shape[0]
    ranks = [d]
    power = np.eye(d, dtype=np.int64)
    while ranks[-1] > 0:
        if len(ranks) > d:
            raise DomainError("matrix is not nilpotent")
        power = matmul_mod(power, n, p)
        ranks.append(rank_mod_p(power, p))
    at_least = [ranks[t - 1] - ranks[t] for t in range(1, len(ranks))] + [0]
    sizes = {t: at_least[t - 1] - at_least[t] for t in range(1, len(ranks))}
    if any(t > p for t, m in sizes.items() if m):
        raise DomainError(f"nilpotent has a Jordan block larger than p = {p}")
    return JordanMultiset.of(p, sizes)


def tensor_nilpotent(x: int, y: int) -> np.ndarray:
    """g - 1 on J_x (x) J_y, where g acts as the unipotent (1 + N_x) (x) (1 + N_y)."""
    ux = np.eye(x, dtype=np.int64) + jordan_block_nilpotent(x)
    uy = np.eye(y, dtype=np.int64) + jordan_block_nilpotent(y)
    return np.kron(ux, uy) - np.eye(x * y, dtype=np.int64)


@lru_cache(maxsize=None)
def jordan_tensor_oracle(x: int, y: int, p: int) -> JordanMultiset:
    return jordan_type_of_nilpotent(tensor_nilpotent(x, y) % p, p)


# -- closed forms ----------------------------------------------------------


def jordan_tensor(x: int, y: int, p: int) -> JordanMultiset:
    check_prime(p)
    _check_size(x, p)
    _check_size(y, p)
    if x + y <= p:
        return JordanMultiset.of(p, [abs(x - y) + 2 * k - 1 for k in range(1, min(x, y) + 1)])
    small = jordan_tensor(p - x, p - y, p)
    free = x * y - small.dim
    assert free % p == 0
    return small + JordanMultiset.of(p, {p: free // p})


def omega0(m: JordanMultiset) -> JordanMultiset:
    return JordanMultiset.of(m.p, {s: k for s, k in m.mult if s != m.p})


def hook_restriction(i: int, p: int) -> JordanMultiset:
    """Projective-free part of the i-th hook simple of the principal block of S_p, restricted to C_p."""
    check_prime(p)
    _check_size(i, p, "i")
    return JordanMultiset.of(p, [i if i % 2 else p - i])


def _check_nabla(i: int, j: int, p: int) -> None:
    check_prime(p)
    if not 1 <= j <= i < p:
        raise DomainError(f"need 1 <= j <= i < p, got i={i}, j={j}, p={p}")


def nabla_restriction(i: int, j: int, p: int) -> JordanMultiset:
    """Closed form for the projective-free part of nabla(i, j) restricted to the diagonal C_p."""
    _check_nabla(i, j, p)
    width = i - j + 1
    sizes: Counter = Counter()
    if (i + j) % 2 == 0:
        h = (i + j) // 2
        for k in range(1, min(h, p - h) + 1):
            sizes[2 * k - 1] += min(2 * k - 1, width)
    else:
        for k in range(1, min((i + j - 1) // 2, p - (i + j + 1) // 2) + 1):
            sizes[p - 2 * k] += min(2 * k, width)
    return JordanMultiset.of(p, sizes)


def nabla_restriction_oracle(i: int, j: int, p: int) -> JordanMultiset:
    """Sum over k of Omega^0 of explicit tensor products of hook restrictions."""
    _check_nabla(i, j, p)
    total = JordanMultiset.of(p)
    for k in range(j, i + 1):
        (x,) = [s for s, _ in hook_restriction(k, p).mult]
        (y,) = [s for s, _ in hook_restriction(i + j - k, p).mult]
        total = total + omega0(jordan_tensor_oracle(x, y, p))
    return total


def _check_ab(a: int, b: int, p: int) -> None:
    check_prime(p)
    if not (2 <= b <= a <= p - 2 and a + b <= p):
        raise DomainError(f"need 2 <= b <= a <= p-2 and a+b <= p, got a={a}, b={b}, p={p}")


def lem1_count(a: int, b: int, p: int) -> int:
    _check_ab(a, b, p)
    if (a + b) % 2 == 0:
        return (a + 3 * b - 2) * (a - b + 2) // 2
    base = (a + 3 * b - 1) * (a - b + 1) // 2 + 2 * b - 1
    return base if a + b < p else base - (a - b + 2)


def lem2_dim(a: int, b: int, p: int) -> int:
    _check_ab(a, b, p)
    if (a + b) % 2 == 0:
        return p * (a + 3 * b - 2) * (a - b + 2) // 2 + a * (1 - 2 * b) - b
    base = p * (a + 3 * b - 1) * (a - b + 1) // 2 + a * (2 * b - 1) + b
    return base if a + b < p else base - p * (a - b + 2)


def lem1_count_oracle(a: int, b: int, p: int) -> int:
    return (nabla_restriction_oracle(a + 1, b, p) + nabla_restriction_oracle(a, b - 1, p)).num_blocks


def lem2_dim_oracle(a: int, b: int, p: int) -> int:
    return (
        2 * nabla_restriction_oracle(a, b, p).dim
        + nabla_restriction_oracle(a + 1, b, p).dim
        + nabla_restriction_oracle(a, b - 1, p).dim
    )


def hook_dim(p: int, b: int) -> int:
    check_prime(p)
    if not 2 <= b < p:
        raise DomainError(f"need 2 <= b < p, got b={b}")
    return math.comb(2 * p - 2, p - b)


# -- non-freeness verdicts -------------------------------------------------


@dataclass(frozen=True)
class FreenessVerdict:
    kind: str  # NotFreeByDimension | NotFreeByCount | ReducedBySignTwist
    a: int
    b: int
    p: int
    count: int | None = None
    dim: int | None = None
    reduced: tuple[int, int] | None = None

    @property
    def certified(self) -> bool:
        if self.kind == "NotFreeByCount":
            return Fraction(self.count) > Fraction(self.dim, self.p)
        if self.kind == "NotFreeByDimension":
            return self.dim % self.p != 0
        return self.reduced is not None


def freeness_obstruction(a: int, b: int, p: int) -> FreenessVerdict:
    """Why D^[a,b] of the principal block of S_2p is not free over the diagonal C_p."""
    check_prime(p)
    if not 1 <= b <= a <= p - 1:
        raise DomainError(f"need 1 <= b <= a <= p-1, got [{a},{b}]")
    if (a, b) == (p - 1, 1):
        raise ExcludedCase(f"[{p - 1},1] is the hook (p+1,1^(p-1)), whose restriction is free")
    if a == p - 1:
        return FreenessVerdict("NotFreeByDimension", a, b, p, dim=hook_dim(p, b))
    if b == 1:
        # sign twist of [p-1, p-a]
        return FreenessVerdict("NotFreeByDimension", a, b, p, dim=hook_dim(p, p - a))
    if a + b <= p:
        return FreenessVerdict("NotFreeByCount", a, b, p, count=lem1_count(a, b, p), dim=lem2_dim(a, b, p))
    return FreenessVerdict("ReducedBySignTwist", a, b, p, reduced=(p - b, p - a))


# -- verification sweeps ---------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    check: str
    p: int
    cases: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _lemma_range(p: int):
    for a in range(2, p - 1):
        for b in range(2, a + 1):
            if a + b <= p:
                yield a, b


def sweep_tensor(p: int) -> SweepResult:
    bad, cases = [], 0
    for x in range(1, p):
        for y in range(1, p):
            cases += 1
            got = jordan_tensor(x, y, p)
            if got != jordan_tensor_oracle(x, y, p) or got.dim != x * y or got != jordan_tensor(y, x, p):
                bad.append(f"J{x} x J{y}")
    return SweepResult("jordan_tensor", p, cases, tuple(bad))


def sweep_nabla(p: int) -> SweepResult:
    pairs = [(i, j) for i in range(1, p) for j in range(1, i + 1)]
    bad = [f"({i},{j})" for i, j in pairs if nabla_restriction(i, j, p) != nabla_restriction_oracle(i, j, p)]
    return SweepResult("nabla_restriction", p, len(pairs), tuple(bad))


def sweep_lem1(p: int) -> SweepResult:
    pairs = list(_lemma_range(p))
    bad = [f"({a},{b})" for a, b in pairs if lem1_count(a, b, p) != lem1_count_oracle(a, b, p)]
    return SweepResult("lem1_count", p, len(pairs), tuple(bad))


def sweep_lem2(p: int) -> SweepResult:
    pairs = list(_lemma_range(p))
    bad = [f"({a},{b})" for a, b in pairs if lem2_dim(a, b, p) != lem2_dim_oracle(a, b, p)]
    return SweepResult("lem2_dim", p, len(pairs), tuple(bad))


def sweep_obstruction(p: int) -> SweepResult:
    bad, cases = [], 0
    for a in range(1, p):
        for b in range(1, a + 1):
            if (a, b) == (p - 1, 1):
                continue
            cases += 1
            v = freeness_obstruction(a, b, p)
            if v.kind == "ReducedBySignTwist":
                v = freeness_obstruction(*v.reduced, p)
            if not v.certified or v.kind == "ReducedBySignTwist":
                bad.append(f"[{a},{b}]")
    return SweepResult("obstruction", p, cases, tuple(bad))


def sweep_hook_dim(p: int) -> SweepResult:
    bs = range(2, p)
    bad = [f"b={b}" for b in bs if math.gcd(hook_dim(p, b), p) != 1]
    return SweepResult("hook_dim", p, len(bs), tuple(bad))


SWEEPS = (sweep_tensor, sweep_nabla, sweep_lem1, sweep_lem2, sweep_obstruction, sweep_hook_dim)


def run_sweeps(p: int) -> list[SweepResult]:
    check_prime(p)
    return [sweep(p) for sweep in SWEEPS]
