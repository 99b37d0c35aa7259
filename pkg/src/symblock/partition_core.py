"""Partitions, beta-numbers, James abacus displays, p-cores and blocks.

Positions on the abacus are numbered left to right, top down from 0, so
runner ``j`` holds the positions ``j, j + p, j + 2p, ...``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, IllegalMove, InvalidBeadCount, InvalidBeta


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p must be a prime >= 2, got {p!r}")
    return p


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction so that equality is plain
    tuple equality.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(x) for x in parts]
        end = len(parts)
        while end and parts[end - 1] == 0:
            end -= 1
        parts = tuple(parts[:end])
        if any(x < 0 for x in parts):
            raise DomainError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return format_partition(self)


def parse_partition(text: str) -> Partition:
    """Parse ``6,1,1,1,1``; ``-`` (or an empty string) is the empty partition."""
    text = text.strip()
    if text in ("", "-", "()", "0"):
        return Partition()
    try:
        parts = [int(x) for x in text.replace(" ", "").strip("()").split(",") if x]
    except ValueError as exc:
        raise DomainError(f"cannot parse partition {text!r}") from exc
    return Partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam) if len(lam) else "-"


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + tuple(rest))


# -- beta-numbers ----------------------------------------------------------


def beta_numbers(lam: Sequence[int], s: int) -> tuple[int, ...]:
    lam = Partition(lam)
    if s < len(lam) or s < 0:
        raise InvalidBeadCount(f"need s >= l(lambda) = {len(lam)}, got s = {s}")
    padded = tuple(lam) + (0,) * (s - len(lam))
    return tuple(padded[i] + s - 1 - i for i in range(s))


def partition_from_beta(betas: Sequence[int]) -> Partition:
    betas = tuple(betas)
    if any(b < 0 for b in betas) or any(
        betas[i] <= betas[i + 1] for i in range(len(betas) - 1)
    ):
        raise InvalidBeta(f"beta-numbers must be strictly decreasing and >= 0: {betas}")
    s = len(betas)
    return Partition(betas[i] - (s - 1 - i) for i in range(s))


def default_bead_count(lam: Sequence[int], p: int, minimum: int = 0) -> int:
    """Least s >= max(l(lambda), minimum) with s divisible by p."""
    s = max(len(Partition(lam)), minimum)
    return s + (-s) % p


# -- abacus ----------------------------------------------------------------


@dataclass(frozen=True)
class AbacusDisplay:
    p: int
    s: int
    occupied: frozenset

    def __post_init__(self):
        check_prime(self.p)
        if len(self.occupied) != self.s or any(x < 0 for x in self.occupied):
            raise InvalidBeta("occupied set must hold s non-negative positions")

    @classmethod
    def of(cls, lam: Sequence[int], p: int, s: int | None = None) -> "AbacusDisplay":
        if s is None:
            s = default_bead_count(lam, p)
        return cls(p, s, frozenset(beta_numbers(lam, s)))

    def __contains__(self, pos: int) -> bool:
        return pos in self.occupied

    def runner(self, pos: int) -> int:
        return pos % self.p

    @property
    def beads(self) -> tuple[int, ...]:
        """Occupied positions, largest first (the beta-numbers)."""
        return tuple(sorted(self.occupied, reverse=True))

    def runner_counts(self) -> tuple[int, ...]:
        counts = [0] * self.p
        for pos in self.occupied:
            counts[pos % self.p] += 1
        return tuple(counts)

    def partition(self) -> Partition:
        return partition_from_beta(self.beads)

    def moved(self, frm: int, to: int) -> "AbacusDisplay":
        """Move a bead without the hook-removal restriction ``frm > to``."""
        if frm not in self.occupied or to in self.occupied or to < 0:
            raise IllegalMove(f"cannot move bead {frm} -> {to}")
        return AbacusDisplay(self.p, self.s, (self.occupied - {frm}) | {to})


def abacus_display(lam: Sequence[int], p: int, s: int) -> AbacusDisplay:
    return AbacusDisplay.of(lam, p, s)


def display_from_counts(counts: Sequence[int], p: int) -> AbacusDisplay:
    """The core display whose runner ``j`` holds ``counts[j]`` beads stacked at the top."""
    check_prime(p)
    if len(counts) != p or any(c < 0 for c in counts):
        raise DomainError(f"need {p} non-negative runner counts, got {counts}")
    occ = frozenset(j + p * row for j, c in enumerate(counts) for row in range(c))
    return AbacusDisplay(p, sum(counts), occ)


def move_bead(d: AbacusDisplay, frm: int, to: int) -> AbacusDisplay:
    """Slide the bead at ``frm`` to the vacant ``to < frm`` (removes a rim hook of length frm - to)."""
    if frm not in d.occupied:
        raise IllegalMove(f"position {frm} is not occupied")
    if to in d.occupied or to < 0:
        raise IllegalMove(f"position {to} is not vacant")
    if not frm > to:
        raise IllegalMove(f"bead must move to a smaller position ({frm} -> {to})")
    return d.moved(frm, to)


def _slide_up(d: AbacusDisplay) -> AbacusDisplay:
    return display_from_counts(d.runner_counts(), d.p)


def p_core(lam: Sequence[int], p: int) -> Partition:
    check_prime(p)
    return _slide_up(AbacusDisplay.of(lam, p)).partition()


def p_weight(lam: Sequence[int], p: int) -> int:
    check_prime(p)
    d = AbacusDisplay.of(lam, p)
    # each slide moves one bead one row up
    rows = sum(pos // p for pos in d.occupied)
    core_rows = sum(c * (c - 1) // 2 for c in d.runner_counts())
    return rows - core_rows


def is_p_regular(lam: Sequence[int], p: int) -> bool:
    lam = Partition(lam)
    run = 1
    for i in range(1, len(lam)):
        run = run + 1 if lam[i] == lam[i - 1] else 1
        if run >= p:
            return False
    return True


# -- blocks ----------------------------------------------------------------


@dataclass(frozen=True)
class BlockId:
    """A block of a symmetric group algebra: its p-core and p-weight."""

    p: int
    core: Partition
    weight: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "core", Partition(self.core))
        if self.weight < 0:
            raise DomainError("weight must be non-negative")
        if p_weight(self.core, self.p) != 0:
            raise DomainError(f"{self.core} is not a {self.p}-core")

    @property
    def n(self) -> int:
        return self.core.n + self.weight * self.p

    def safe_bead_count(self) -> int:
        """A bead count divisible by p exceeding the length of every partition in the block."""
        return default_bead_count(self.core, self.p, self.n + 1)

    def core_counts(self, s: int) -> tuple[int, ...]:
        return AbacusDisplay.of(self.core, self.p, s).runner_counts()

    def __str__(self) -> str:
        return f"B(p={self.p}, core={format_partition(self.core)}, w={self.weight})"


def block_of(lam: Sequence[int], p: int) -> BlockId:
    return BlockId(p, p_core(lam, p), p_weight(lam, p))


def principal_block(n: int, p: int) -> BlockId:
    return block_of((n,), p)


def core_from_counts(counts: Sequence[int], p: int) -> Partition:
    return display_from_counts(counts, p).partition()


@lru_cache(maxsize=None)
def _partition_list(n: int) -> tuple[Partition, ...]:
    return tuple(partitions(n))


@lru_cache(maxsize=64)
def _multipartition_list(total: int, k: int) -> tuple[tuple[Partition, ...], ...]:
    if k == 0:
        return ((),) if total == 0 else ()
    return tuple(
        (lam,) + rest
        for first in range(total, -1, -1)
        for lam in _partition_list(first)
        for rest in _multipartition_list(total - first, k - 1)
    )


def multipartitions(total: int, k: int) -> Iterator[tuple[Partition, ...]]:
    """k-tuples of partitions with sizes summing to ``total``."""
    return iter(_multipartition_list(total, k))


@lru_cache(maxsize=256)
def block_partitions(block: BlockId) -> tuple[Partition, ...]:
    """Every partition of the block, built from p-quotients on a core display."""
    p, w = block.p, block.weight
    s = block.safe_bead_count()
    counts = block.core_counts(s)
    out = []
    for quotient in multipartitions(w, p):
        occ = set()
        for j, q in enumerate(quotient):
            for row in beta_numbers(q, counts[j]):
                occ.add(j + p * row)
        out.append(partition_from_beta(sorted(occ, reverse=True)))
    return tuple(sorted(out, reverse=True))


# -- independent oracle ----------------------------------------------------


def _rim_hooks(lam: Partition, h: int) -> list[Partition]:
    """Partitions obtained from lam by removing one rim hook of length h, via hook lengths."""
    conj = lam.conjugate()
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            leg_end = conj[j] - 1
            if (row - 1 - j) + (leg_end - i) + 1 != h:
                continue
            new = list(lam)
            for r in range(i, leg_end):
                new[r] = lam[r + 1] - 1
            new[leg_end] = j
            out.append(Partition(new))
    return out


def core_by_rim_hooks_oracle(
    lam: Sequence[int], p: int, rng: random.Random | None = None
) -> tuple[Partition, int]:
    """Strip rim p-hooks off the Young diagram until none is left.

    With ``rng`` the hook to remove is picked at random at each step,
    otherwise the first one found.
    """
    check_prime(p)
    lam = Partition(lam)
    removed = 0
    while True:
        options = _rim_hooks(lam, p)
        if not options:
            return lam, removed
        lam = rng.choice(options) if rng else options[0]
        removed += 1
