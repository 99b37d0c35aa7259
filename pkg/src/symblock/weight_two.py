"""The [a,b] labelling of weight-2 partitions, its epsilon invariant and routing."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .branching import (
    WkPair,
    exceptional_partitions,
    induce_chain_to_rouquier,
    is_rouquier,
    normal_count,
    phi_map,
    restrict_chain_to_principal,
)
from .errors import DomainError, NotFound
from .partition_core import (
    AbacusDisplay,
    BlockId,
    Partition,
    block_of,
    block_partitions,
    check_prime,
    format_partition,
    is_p_regular,
    p_weight,
    principal_block,
)


@dataclass(frozen=True)
class WeightTwoLabel:
    a: int
    b: int
    eps: int
    block: BlockId

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


def _check_weight_two_prime(p: int) -> None:
    check_prime(p)
    if p == 2:
        raise DomainError("the [a,b] labelling is only defined for odd p")


def _vacant_between(d: AbacusDisplay, lo: int, hi: int) -> int:
    return sum(1 for pos in range(lo + 1, hi) if pos not in d.occupied)


def label_from_display(d: AbacusDisplay) -> tuple[int, int, int]:
    """(a, b, eps) read off a display of a weight-2 partition."""
    p = d.p
    vacant = lambda pos: pos >= 0 and pos not in d.occupied  # noqa: E731
    raised = sorted(x for x in d.occupied if vacant(x - p))
    if len(raised) == 2:
        y, x = raised
        eps = 1 if x - p < y < x else 0
        return _vacant_between(d, x - p, x), _vacant_between(d, y - p, y), eps
    if len(raised) != 1:
        raise DomainError("display does not have weight 2")
    (m,) = raised
    if vacant(m - 2 * p) and m + p not in d.occupied:
        # one bead two rows below its core position
        return _vacant_between(d, m - p, m), _vacant_between(d, m - 2 * p, m - p) + 1, 1
    x = m + p
    if x not in d.occupied:
        raise DomainError("display does not have weight 2")
    return _vacant_between(d, x - p, x), _vacant_between(d, x - 2 * p, x - p), 0


def label_of(lam: Sequence[int], p: int, s: int | None = None) -> WeightTwoLabel:
    _check_weight_two_prime(p)
    lam = Partition(lam)
    if p_weight(lam, p) != 2:
        raise DomainError(f"{format_partition(lam)} does not have {p}-weight 2")
    a, b, eps = label_from_display(AbacusDisplay.of(lam, p, s))
    return WeightTwoLabel(a, b, eps, block_of(lam, p))


@lru_cache(maxsize=256)
def label_table(B: BlockId) -> dict[tuple[int, int], Partition]:
    _check_weight_two_prime(B.p)
    if B.weight != 2:
        raise DomainError(f"{B} does not have weight 2")
    table: dict[tuple[int, int], Partition] = {}
    for lam in block_partitions(B):
        key = label_of(lam, B.p).pair
        if key in table:
            raise AssertionError(f"label {key} repeated in {B}")
        table[key] = lam
    return table


def partition_of_label(label: WeightTwoLabel | tuple[int, int], B: BlockId | None = None) -> Partition:
    if isinstance(label, WeightTwoLabel):
        B, key = label.block, label.pair
    else:
        key = tuple(label)
        if B is None:
            raise DomainError("a block is needed for a bare (a, b) pair")
    try:
        return label_table(B)[key]
    except KeyError:
        raise NotFound(f"[{key[0]},{key[1]}] is not realised in {B}") from None


def rouquier_singular_labels(B: BlockId) -> frozenset[tuple[int, int]]:
    _check_weight_two_prime(B.p)
    if B.weight != 2 or not is_rouquier(B):
        raise DomainError(f"{B} is not a Rouquier block of weight 2")
    return frozenset({(0, 1)} | {(a, 0) for a in range(B.p)})


def sgn_twist_label(a: int, b: int, p: int) -> tuple[int, int]:
    """[a,b] -> [p-b, p-a] on principal-block labels with 1 <= b <= a <= p-1."""
    _check_weight_two_prime(p)
    if not 1 <= b <= a <= p - 1:
        raise DomainError(f"sign twist needs 1 <= b <= a <= p-1, got [{a},{b}]")
    return (p - b, p - a)


class Route(enum.Enum):
    TO_ROUQUIER = "ToRouquier"
    TO_PRINCIPAL = "ToPrincipal"
    BOTH = "Both"


def route_of(lam: Sequence[int], p: int) -> Route:
    label = label_of(lam, p)
    if not is_p_regular(lam, p):
        raise DomainError(f"{format_partition(lam)} is not {p}-regular")
    if label.b == label.a + 1:
        return Route.BOTH
    return Route.TO_ROUQUIER if label.eps == 0 else Route.TO_PRINCIPAL


def route_chain(lam: Sequence[int], p: int, depth_cap: int = 500):
    """The chain promised by the route: upward for ToRouquier/Both, downward otherwise."""
    if route_of(lam, p) is Route.TO_PRINCIPAL:
        return restrict_chain_to_principal(lam, p)
    return induce_chain_to_rouquier(lam, p, depth_cap)


@dataclass(frozen=True)
class EpsilonFlipReport:
    pair: WkPair
    flips: tuple[Partition, ...]
    exceptional_regular: tuple[Partition, ...]
    ok: bool


def epsilon_flip_check(pair: WkPair) -> EpsilonFlipReport:
    """Compare eps(lam) and eps(Phi(lam)) across every partition of the upper block."""
    if pair.weight != 2:
        raise DomainError("epsilon flips are only defined for weight-2 pairs")
    p = pair.B.p
    flips = []
    ok = True
    for lam in block_partitions(pair.B):
        if normal_count(lam, pair) < pair.k:
            ok = False
            continue
        before, after = label_of(lam, p), label_of(phi_map(lam, pair), p)
        if before.pair != after.pair:
            ok = False
        if before.eps != after.eps:
            flips.append(lam)
            ok = ok and before.eps == 0 and after.eps == 1
    exc = tuple(sorted(lam for lam in exceptional_partitions(pair) if is_p_regular(lam, p)))
    if pair.k == 1:
        ok = ok and len(exc) == 1 and tuple(flips) == exc
    else:
        ok = ok and not flips
    return EpsilonFlipReport(pair, tuple(flips), exc, ok)


def b0_label_table(p: int) -> dict[tuple[int, int], Partition]:
    return label_table(principal_block(2 * p, p))
