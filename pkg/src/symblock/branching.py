"""Residues, normal/conormal beads and the Kleshchev branching maps.

Blocks are moved around through their *charges*: for a core displayed
with ``s`` beads, runner ``j`` with ``c_j`` beads has its first vacant
position at ``p*c_j + j``; subtracting ``s`` gives a display-independent
integer congruent to ``j - s`` mod p.  ``charges(core, p)[rho]`` is that
integer for residue class ``rho``.  Interchanging adjacent runners
``i-1, i`` of a display acts on the charges of residues ``r-1, r``
(``r = i - s``) by ``(x, y) -> (y - 1, x + 1)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, NotDefined, Undecided
from .partition_core import (
    AbacusDisplay,
    BlockId,
    Partition,
    block_of,
    block_partitions,
    check_prime,
    core_from_counts,
    default_bead_count,
    format_partition,
    is_p_regular,
    p_core,
    p_weight,
    partition_from_beta,
)

DEFAULT_DEPTH_CAP = 500


# -- beads -----------------------------------------------------------------


@dataclass(frozen=True)
class BeadClassification:
    display: AbacusDisplay
    addable: tuple[tuple[int, int], ...]  # (position, residue), increasing position
    removable: tuple[tuple[int, int], ...]


def classify_beads(d: AbacusDisplay) -> BeadClassification:
    p, s = d.p, d.s
    addable, removable = [], []
    for pos in sorted(d.occupied):
        if pos + 1 not in d.occupied:
            addable.append((pos, (pos % p - s + 1) % p))
        if pos > 0 and pos - 1 not in d.occupied:
            removable.append((pos, (pos % p - s) % p))
    return BeadClassification(d, tuple(addable), tuple(removable))


def _signed_beads(d: AbacusDisplay, r: int) -> list[tuple[int, int]]:
    """r-removable beads as (pos, +1) and r-addable beads as (pos, -1), by position."""
    cls = classify_beads(d)
    marks = [(pos, 1) for pos, res in cls.removable if res == r % d.p]
    marks += [(pos, -1) for pos, res in cls.addable if res == r % d.p]
    return sorted(marks)


def normal_beads(d: AbacusDisplay, r: int) -> list[int]:
    """r-normal beads, topmost (smallest position) first."""
    marks = _signed_beads(d, r)
    out = []
    for idx, (pos, sign) in enumerate(marks):
        if sign != 1:
            continue
        balance = 0
        for _, other in marks[idx + 1 :]:
            balance += other
            if balance < 0:
                break
        else:
            out.append(pos)
    return out


def conormal_beads(d: AbacusDisplay, r: int) -> list[int]:
    """r-conormal beads, bottommost (largest position) first."""
    marks = _signed_beads(d, r)
    out = []
    for idx in range(len(marks) - 1, -1, -1):
        pos, sign = marks[idx]
        if sign != -1:
            continue
        balance = 0
        for _, other in reversed(marks[:idx]):
            balance -= other
            if balance < 0:
                break
        else:
            out.append(pos)
    return out


# -- charges ---------------------------------------------------------------


def charges(core: Sequence[int], p: int) -> tuple[int, ...]:
    d = AbacusDisplay.of(core, p)
    q = [0] * p
    for j, c in enumerate(d.runner_counts()):
        q[(j - d.s) % p] = p * c + j - d.s
    return tuple(q)


def core_from_charges(q: Sequence[int], p: int) -> Partition:
    s = max(0, -min(q)) + p
    s += (-s) % p
    counts = [(q[(j - s) % p] + s - j) // p for j in range(p)]
    return core_from_counts(counts, p)


def _swap_charges(q: Sequence[int], r: int) -> tuple[int, ...]:
    p = len(q)
    out = list(q)
    out[(r - 1) % p], out[r] = q[r] - 1, q[(r - 1) % p] + 1
    return tuple(out)


def _is_rouquier_charges(q: Sequence[int], p: int, w: int) -> bool:
    return all(abs(a - b) > p * (w - 1) for a, b in itertools.combinations(q, 2))


def cores_up_to(p: int, max_n: int) -> list[Partition]:
    """Every p-core of size at most max_n, found by adding residue classes of nodes to the empty core."""
    check_prime(p)
    start = tuple(range(p))
    seen = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for q in frontier:
            for r in range(p):
                if q[(r - 1) % p] <= q[r]:
                    continue
                n = seen[q] + (q[(r - 1) % p] - q[r] + 1) // p
                up = _swap_charges(q, r)
                if n <= max_n and up not in seen:
                    seen[up] = n
                    nxt.append(up)
        frontier = nxt
    return sorted((core_from_charges(q, p) for q in seen), key=lambda c: (c.n, c))


def blocks_up_to(p: int, max_n: int, weight: int | None = None) -> list[BlockId]:
    out = []
    for core in cores_up_to(p, max_n):
        weights = range((max_n - core.n) // p + 1) if weight is None else [weight]
        out += [BlockId(p, core, w) for w in weights if core.n + w * p <= max_n]
    return out


# -- restriction steps and [w:k]-pairs ------------------------------------


@dataclass(frozen=True)
class RestrictionStep:
    """Restriction from block B to block C removing k nodes of residue r.

    ``s`` is a bead count displaying every partition of both blocks, and
    ``i`` (1 <= i < p) the runner whose beads move to runner ``i - 1``.
    """

    B: BlockId
    C: BlockId
    k: int
    r: int
    s: int
    i: int

    def display(self, lam: Sequence[int]) -> AbacusDisplay:
        return AbacusDisplay.of(lam, self.B.p, self.s)


@dataclass(frozen=True)
class WkPair(RestrictionStep):
    """A [w:k]-pair: kappa_C is kappa_B with runners i-1 and i interchanged."""

    @property
    def weight(self) -> int:
        return self.B.weight

    def to_record(self) -> dict:
        return {
            "upper": _block_record(self.B),
            "lower": _block_record(self.C),
            "k": self.k,
            "residue": self.r,
            "runner": self.i,
            "beads": self.s,
        }


def _block_record(B: BlockId) -> dict:
    return {"n": B.n, "core": format_partition(B.core), "weight": B.weight}


def _display_for(B: BlockId, C: BlockId, r: int) -> tuple[int, int]:
    p = B.p
    s = max(B.safe_bead_count(), C.safe_bead_count())
    while (r + s) % p == 0:
        s += 1
    return s, (r + s) % p


def restriction_step(B: BlockId, C: BlockId) -> RestrictionStep | None:
    """The branching data (k, r) taking B to C, if C is reached by removing k r-nodes."""
    if B.p != C.p:
        return None
    p = B.p
    qb, qc = charges(B.core, p), charges(C.core, p)
    diff = [c - b for b, c in zip(qb, qc)]
    changed = [rho for rho in range(p) if diff[rho]]
    if len(changed) != 2:
        return None
    for r in range(p):
        if {(r - 1) % p, r} != set(changed):
            continue
        moved = diff[(r - 1) % p]
        if moved <= 0 or moved % p or diff[r] != -moved:
            continue
        k = moved // p
        if C.n != B.n - k:
            continue
        s, i = _display_for(B, C, r)
        cb, cc = B.core_counts(s), C.core_counts(s)
        assert cc[i - 1] == cb[i - 1] + k and cc[i] == cb[i] - k
        if B.weight == C.weight and cb[i] - cb[i - 1] == k:
            return WkPair(B, C, k, r, s, i)
        return RestrictionStep(B, C, k, r, s, i)
    return None


def detect_wk_pair(B: BlockId, C: BlockId) -> WkPair | None:
    step = restriction_step(B, C)
    return step if isinstance(step, WkPair) else None


def _pair_from_charges(upper: Sequence[int], lower: Sequence[int], p: int, w: int, r: int) -> WkPair:
    B = BlockId(p, core_from_charges(upper, p), w)
    C = BlockId(p, core_from_charges(lower, p), w)
    k = (upper[r] - upper[(r - 1) % p] - 1) // p
    s, i = _display_for(B, C, r)
    return WkPair(B, C, k, r, s, i)


def upper_pairs(C: BlockId) -> list[WkPair]:
    """All [w:k]-pairs (B, C) with C as the lower block, by residue."""
    p, q = C.p, charges(C.core, C.p)
    return [
        _pair_from_charges(_swap_charges(q, r), q, p, C.weight, r)
        for r in range(p)
        if q[(r - 1) % p] > q[r]
    ]


def lower_pairs(B: BlockId) -> list[WkPair]:
    """All [w:k]-pairs (B, C) with B as the upper block, by residue."""
    p, q = B.p, charges(B.core, B.p)
    return [
        _pair_from_charges(q, _swap_charges(q, r), p, B.weight, r)
        for r in range(p)
        if q[r] > q[(r - 1) % p] + 1
    ]


# -- Phi / Psi -------------------------------------------------------------


def _check_member(lam: Partition, B: BlockId) -> None:
    if block_of(lam, B.p) != B:
        raise DomainError(f"{format_partition(lam)} does not lie in {B}")


def phi_map(lam: Sequence[int], step: RestrictionStep) -> Partition:
    """Move the k topmost r-normal beads to their vacant preceding positions."""
    lam = Partition(lam)
    _check_member(lam, step.B)
    d = step.display(lam)
    normal = normal_beads(d, step.r)
    if len(normal) < step.k:
        raise NotDefined(f"{format_partition(lam)} has only {len(normal)} {step.r}-normal beads")
    occ = set(d.occupied)
    for pos in normal[: step.k]:
        occ.remove(pos)
        occ.add(pos - 1)
    return AbacusDisplay(d.p, d.s, frozenset(occ)).partition()


def psi_map(mu: Sequence[int], step: RestrictionStep) -> Partition:
    """Move the k bottommost r-conormal beads to their vacant succeeding positions."""
    mu = Partition(mu)
    _check_member(mu, step.C)
    d = step.display(mu)
    conormal = conormal_beads(d, step.r)
    if len(conormal) < step.k:
        raise NotDefined(f"{format_partition(mu)} has only {len(conormal)} {step.r}-conormal beads")
    occ = set(d.occupied)
    for pos in conormal[: step.k]:
        occ.remove(pos)
        occ.add(pos + 1)
    return AbacusDisplay(d.p, d.s, frozenset(occ)).partition()


def normal_count(lam: Sequence[int], step: RestrictionStep) -> int:
    return len(normal_beads(step.display(lam), step.r))


def conormal_count(mu: Sequence[int], step: RestrictionStep) -> int:
    return len(conormal_beads(step.display(mu), step.r))


@dataclass(frozen=True)
class SocleLabel:
    partition: Partition
    multiplicity: int
    full: bool  # the whole restriction (induction) is this semisimple module


def socle_restrict_label(lam: Sequence[int], C: BlockId) -> SocleLabel | None:
    lam = Partition(lam)
    if not is_p_regular(lam, C.p):
        raise DomainError(f"{format_partition(lam)} is not {C.p}-regular")
    step = restriction_step(block_of(lam, C.p), C)
    if step is None:
        raise DomainError(f"{C} is not obtained from the block of {format_partition(lam)} by removing nodes of one residue")
    count = normal_count(lam, step)
    if count < step.k:
        return None
    return SocleLabel(phi_map(lam, step), math.factorial(step.k), count == step.k)


def socle_induce_label(mu: Sequence[int], B: BlockId) -> SocleLabel | None:
    mu = Partition(mu)
    if not is_p_regular(mu, B.p):
        raise DomainError(f"{format_partition(mu)} is not {B.p}-regular")
    step = restriction_step(B, block_of(mu, B.p))
    if step is None:
        raise DomainError(f"{B} is not obtained from the block of {format_partition(mu)} by adding nodes of one residue")
    count = conormal_count(mu, step)
    if count < step.k:
        return None
    return SocleLabel(psi_map(mu, step), math.factorial(step.k), count == step.k)


def exceptional_partitions(pair: WkPair, lower: bool = False) -> frozenset[Partition]:
    """Partitions with more than k r-normal (r-conormal for ``lower``) beads.

    The p-regular ones label the exceptional simple modules of the pair.
    """
    if lower:
        return frozenset(mu for mu in block_partitions(pair.C) if conormal_count(mu, pair) > pair.k)
    return frozenset(lam for lam in block_partitions(pair.B) if normal_count(lam, pair) > pair.k)


# -- Rouquier and Scopes ---------------------------------------------------


def is_rouquier(B: BlockId, s: int | None = None) -> bool:
    """Runner-gap test on the display of the core with s beads (default: least multiple of p)."""
    w = B.weight
    c = AbacusDisplay.of(B.core, B.p, s).runner_counts()
    return all(
        c[j] - c[i] >= w - 1 or c[i] - c[j] >= w
        for i, j in itertools.combinations(range(B.p), 2)
    )


def scopes_normal_form(B: BlockId, depth_cap: int = DEFAULT_DEPTH_CAP) -> Partition:
    """Descend through [w:k]-pairs with k >= w until none is left.

    These descents are locally confluent and strictly shrink the core, so
    the endpoint is the same whatever order they are taken in.
    """
    p, w = B.p, B.weight
    q = charges(B.core, p)
    for _ in range(depth_cap):
        for r in range(p):
            if q[r] - q[(r - 1) % p] > p * max(w, 1):
                q = _swap_charges(q, r)
                break
        else:
            return core_from_charges(q, p)
    raise Undecided(f"Scopes descent from {B} exceeded {depth_cap} steps")


def is_scopes_equivalent(B: BlockId, C: BlockId, depth_cap: int = DEFAULT_DEPTH_CAP) -> bool:
    if B.p != C.p or B.weight != C.weight:
        return False
    if B == C:
        return True
    return scopes_normal_form(B, depth_cap) == scopes_normal_form(C, depth_cap)


# -- semisimple chains -----------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    pair: WkPair
    image: Partition  # image of lambda in the block reached by this step
    exceptional: bool  # always False in a returned chain; kept for the record

    def to_record(self, direction: str) -> dict:
        target = self.pair.B if direction == "induce" else self.pair.C
        return {
            "n": target.n,
            "core": format_partition(target.core),
            "k": self.pair.k,
            "residue": self.pair.r,
            "image_partition": format_partition(self.image),
            "exceptional": self.exceptional,
        }


@dataclass(frozen=True)
class SemisimpleChain:
    start: Partition
    p: int
    direction: str  # "induce" | "restrict"
    steps: tuple[ChainStep, ...] = field(default_factory=tuple)

    @property
    def blocks(self) -> tuple[BlockId, ...]:
        first = block_of(self.start, self.p)
        if self.direction == "induce":
            return (first,) + tuple(st.pair.B for st in self.steps)
        return (first,) + tuple(st.pair.C for st in self.steps)

    @property
    def images(self) -> tuple[Partition, ...]:
        return (self.start,) + tuple(st.image for st in self.steps)

    @property
    def pairs(self) -> tuple[WkPair, ...]:
        return tuple(st.pair for st in self.steps)

    @property
    def end(self) -> Partition:
        return self.images[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def verify(self) -> bool:
        """Re-check every step: the image before it has exactly k (co)normal beads."""
        prev = self.start
        for st in self.steps:
            if self.direction == "induce":
                ok = conormal_count(prev, st.pair) == st.pair.k and psi_map(prev, st.pair) == st.image
            else:
                ok = normal_count(prev, st.pair) == st.pair.k and phi_map(prev, st.pair) == st.image
            if not ok:
                return False
            prev = st.image
        return True

    def to_records(self) -> list[dict]:
        return [st.to_record(self.direction) for st in self.steps]


def _rouquier_walk(q: tuple[int, ...], p: int, w: int, direction: Sequence[int] | None = None):
    """Yield residues of up-moves leading from charges q to a Rouquier core.

    Sorting the charges gives a point in the dominant chamber of the affine
    Weyl group; each up-move crosses one wall of its alcove away from the
    fundamental alcove.  Following a straight line from that point in a
    strictly increasing direction only ever crosses such walls, and
    eventually leaves every hyperplane band of width p*(w-1).
    """
    if direction is None:
        direction = [2 * t - (p - 1) for t in range(p)]
    start = sorted(q)
    slot = {rho: start.index(q[rho]) for rho in range(p)}
    while not _is_rouquier_charges(q, p, w):
        best = None
        for r in range(p):
            x, y = q[(r - 1) % p], q[r]
            if x <= y:
                continue
            hi, lo = slot[(r - 1) % p], slot[r]
            m = (x - y + 1) // p
            t = Fraction(p * m - (start[hi] - start[lo]), direction[hi] - direction[lo])
            if best is None or (t, r) < best[:2]:
                best = (t, r, hi, lo)
        _, r, hi, lo = best
        slot[(r - 1) % p], slot[r] = lo, hi
        q = _swap_charges(q, r)
        yield r


def _walk_induce(lam: Partition, p: int, depth_cap: int, direction) -> SemisimpleChain | None:
    d = AbacusDisplay.of(lam, p)
    s = d.s
    occ = set(d.occupied)
    counts = d.runner_counts()
    q = [0] * p
    for j, c in enumerate(counts):
        q[(j - s) % p] = p * c + j - s
    q = tuple(q)
    w = p_weight(lam, p)
    moves = []
    for r in _rouquier_walk(q, p, w, direction):
        if len(moves) >= depth_cap:
            raise Undecided(f"no Rouquier block within {depth_cap} steps of {block_of(lam, p)}")
        k = (q[(r - 1) % p] - q[r] + 1) // p
        if 0 not in occ:
            # keep a bead at 0 so no addable bead hides above the display
            occ = {pos + p for pos in occ} | set(range(p))
            s += p
        conormal = conormal_beads(AbacusDisplay(p, s, frozenset(occ)), r)
        if len(conormal) != k:
            return None
        for pos in conormal:
            occ.remove(pos)
            occ.add(pos + 1)
        upper = _swap_charges(q, r)
        moves.append((upper, q, r, partition_from_beta(sorted(occ, reverse=True))))
        q = upper
    steps = tuple(
        ChainStep(_pair_from_charges(upper, lower, p, w, r), image, False) for upper, lower, r, image in moves
    )
    return SemisimpleChain(lam, p, "induce", steps)


def induce_chain_to_rouquier(
    lam: Sequence[int], p: int, depth_cap: int = DEFAULT_DEPTH_CAP
) -> SemisimpleChain | None:
    """A chain of [w:k]-pairs upward to a Rouquier block along which lam induces semisimply.

    Returns None when the walk meets a step at which the current image is
    exceptional; raises Undecided when it needs more than ``depth_cap`` steps.
    """
    check_prime(p)
    if depth_cap < 1:
        raise DomainError("depth cap must be positive")
    lam = Partition(lam)
    if not is_p_regular(lam, p):
        raise DomainError(f"{format_partition(lam)} is not {p}-regular")
    return _walk_induce(lam, p, depth_cap, None)


def restrict_chain_to_principal(lam: Sequence[int], p: int) -> SemisimpleChain | None:
    """Descend through [w:k]-pairs (smallest residue first) to the block with empty core.

    Every descent shrinks n, so this always terminates; None means some
    step met an exceptional image.
    """
    check_prime(p)
    lam = Partition(lam)
    if not is_p_regular(lam, p):
        raise DomainError(f"{format_partition(lam)} is not {p}-regular")
    d = AbacusDisplay.of(lam, p)
    s, occ = d.s, set(d.occupied)
    w = p_weight(lam, p)
    q = charges(p_core(lam, p), p)
    moves = []
    while True:
        r = next((r for r in range(p) if q[r] > q[(r - 1) % p] + 1), None)
        if r is None:
            break
        k = (q[r] - q[(r - 1) % p] - 1) // p
        normal = normal_beads(AbacusDisplay(p, s, frozenset(occ)), r)
        if len(normal) != k:
            return None
        for pos in normal:
            occ.remove(pos)
            occ.add(pos - 1)
        lower = _swap_charges(q, r)
        moves.append((q, lower, r, partition_from_beta(sorted(occ, reverse=True))))
        q = lower
    steps = tuple(
        ChainStep(_pair_from_charges(upper, lower, p, w, r), image, False) for upper, lower, r, image in moves
    )
    return SemisimpleChain(lam, p, "restrict", steps)


# -- crystal operators -----------------------------------------------------


def e_tilde(lam: Sequence[int], p: int, r: int) -> Partition | None:
    """Remove the good r-node (topmost r-normal bead), or None."""
    d = AbacusDisplay.of(lam, p)
    normal = normal_beads(d, r)
    if not normal:
        return None
    return d.moved(normal[0], normal[0] - 1).partition()


def f_tilde(lam: Sequence[int], p: int, r: int) -> Partition | None:
    """Add the cogood r-node (bottommost r-conormal bead)."""
    d = AbacusDisplay.of(lam, p, default_bead_count(lam, p) + p)
    conormal = conormal_beads(d, r)
    if not conormal:
        return None
    return d.moved(conormal[0], conormal[0] + 1).partition()


@lru_cache(maxsize=None)
def _mullineux(lam: Partition, p: int) -> Partition:
    if not lam:
        return lam
    for r in range(p):
        smaller = e_tilde(lam, p, r)
        if smaller is not None:
            out = f_tilde(_mullineux(smaller, p), p, (-r) % p)
            assert out is not None
            return out
    raise DomainError(f"{format_partition(lam)} is not {p}-regular")


def mullineux(lam: Sequence[int], p: int) -> Partition:
    """Label of D^lam tensored with the sign module, through the crystal."""
    lam = Partition(lam)
    if not is_p_regular(lam, p):
        raise DomainError(f"{format_partition(lam)} is not {p}-regular")
    return _mullineux(lam, p)
