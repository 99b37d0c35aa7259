"""Rank varieties of explicit modules for elementary abelian p-groups.

A module is given by k commuting matrices over F_p, one per generator.
Only prime-field points are enumerated; these are the "rational points"
of the rank variety, and at such points freeness over the shifted unit
u_alpha and over the group element prod g_i^alpha_i coincide.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .jordan_calculus import jordan_type_of_nilpotent, matmul_mod, rank_mod_p
from .partition_core import check_prime

# the lines spanned by g_1 and by g_1 g_2 in a Sylow subgroup of S_2p
B0_LINES = ((1, 0), (1, 1))


def _identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.int64)


def matpow_mod(m: np.ndarray, e: int, p: int) -> np.ndarray:
    out = _identity(m.shape[0])
    base = np.asarray(m, dtype=np.int64) % p
    while e:
        if e & 1:
            out = matmul_mod(out, base, p)
        base = matmul_mod(base, base, p)
        e >>= 1
    return out


def inverse_mod_p(m: np.ndarray, p: int) -> np.ndarray:
    d = m.shape[0]
    a = np.concatenate([np.asarray(m, dtype=np.int64) % p, _identity(d)], axis=1)
    for c in range(d):
        pivot = next((r for r in range(c, d) if a[r, c]), None)
        if pivot is None:
            raise DomainError("matrix is singular mod p")
        a[[c, pivot]] = a[[pivot, c]]
        a[c] = (a[c] * pow(int(a[c, c]), -1, p)) % p
        others = a[:, c].copy()
        others[c] = 0
        a = (a - np.outer(others, a[c])) % p
    return a[:, d:]


@dataclass(frozen=True, eq=False)
class ElemAbelianModule:
    p: int
    generators: tuple[np.ndarray, ...]

    def __post_init__(self):
        check_prime(self.p)
        gens = tuple(np.asarray(g, dtype=np.int64) % self.p for g in self.generators)
        if not gens:
            raise DomainError("need at least one generator")
        d = gens[0].shape[0]
        for g in gens:
            if g.shape != (d, d):
                raise DomainError("generators must be square matrices of one size")
            if not np.array_equal(matpow_mod(g, self.p, self.p), _identity(d)):
                raise DomainError("every generator must satisfy g^p = 1")
        for g, h in itertools.combinations(gens, 2):
            if not np.array_equal(matmul_mod(g, h, self.p), matmul_mod(h, g, self.p)):
                raise DomainError("generators must commute")
        object.__setattr__(self, "generators", gens)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def conjugated(self, t: np.ndarray) -> "ElemAbelianModule":
        t_inv = inverse_mod_p(t, self.p)
        return ElemAbelianModule(
            self.p, tuple(matmul_mod(matmul_mod(t, g, self.p), t_inv, self.p) for g in self.generators)
        )

    def __add__(self, other: "ElemAbelianModule") -> "ElemAbelianModule":
        if (self.p, self.k) != (other.p, other.k):
            raise DomainError("direct sum needs equal p and rank")
        return ElemAbelianModule(self.p, tuple(_block_diag(g, h) for g, h in zip(self.generators, other.generators)))

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "generators": [g.tolist() for g in self.generators]})

    @classmethod
    def from_json(cls, text: str) -> "ElemAbelianModule":
        data = json.loads(text)
        return cls(int(data["p"]), tuple(np.array(g, dtype=np.int64) for g in data["generators"]))


def _block_diag(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    out = np.zeros((g.shape[0] + h.shape[0],) * 2, dtype=np.int64)
    out[: g.shape[0], : g.shape[0]] = g
    out[g.shape[0] :, g.shape[0] :] = h
    return out


def _check_alpha(m: ElemAbelianModule, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) % m.p for a in alpha)
    if len(alpha) != m.k:
        raise DomainError(f"alpha needs {m.k} coordinates")
    if not any(alpha):
        raise DomainError("alpha must be non-zero")
    return alpha


def shifted_unit(m: ElemAbelianModule, alpha: Sequence[int]) -> np.ndarray:
    alpha = _check_alpha(m, alpha)
    u = _identity(m.dim)
    for a, g in zip(alpha, m.generators):
        u = u + a * (g - _identity(m.dim))
    return u % m.p


def group_element(m: ElemAbelianModule, alpha: Sequence[int]) -> np.ndarray:
    alpha = _check_alpha(m, alpha)
    out = _identity(m.dim)
    for a, g in zip(alpha, m.generators):
        out = matmul_mod(out, matpow_mod(g, a, m.p), m.p)
    return out


def is_free_over(m: ElemAbelianModule, u: np.ndarray) -> bool:
    if m.dim % m.p:
        return False
    jt = jordan_type_of_nilpotent((u - _identity(m.dim)) % m.p, m.p)
    return jt.is_free()


def is_free_by_rank(m: ElemAbelianModule, u: np.ndarray) -> bool:
    """Second freeness test: rank((u - 1)^(p-1)) = dim / p."""
    if m.dim % m.p:
        return False
    return rank_mod_p(matpow_mod((u - _identity(m.dim)) % m.p, m.p - 1, m.p), m.p) == m.dim // m.p


def projective_points(p: int, k: int):
    """Non-zero vectors of F_p^k normalised so the first non-zero coordinate is 1."""
    for lead in range(k):
        for tail in itertools.product(range(p), repeat=k - lead - 1):
            yield (0,) * lead + (1,) + tail


@dataclass(frozen=True)
class PointReport:
    alpha: tuple[int, ...]
    free_shifted: bool
    free_group: bool

    @property
    def agree(self) -> bool:
        return self.free_shifted == self.free_group


def probe_points(m: ElemAbelianModule) -> list[PointReport]:
    return [
        PointReport(a, is_free_over(m, shifted_unit(m, a)), is_free_over(m, group_element(m, a)))
        for a in projective_points(m.p, m.k)
    ]


def rational_points(m: ElemAbelianModule) -> frozenset[tuple[int, ...]]:
    """Projective prime-field points at which m is not free; both probes must agree."""
    out = set()
    for rep in probe_points(m):
        if not rep.agree:
            raise AssertionError(f"freeness probes disagree at {rep.alpha}")
        if not rep.free_shifted:
            out.add(rep.alpha)
    return frozenset(out)


# -- example modules -------------------------------------------------------


def jordan_tensor_module(p: int, sizes: Sequence[int]) -> ElemAbelianModule:
    """J_{x_1} (x) ... (x) J_{x_k}, the i-th generator acting unipotently on the i-th factor."""
    check_prime(p)
    if any(not 1 <= x <= p for x in sizes):
        raise DomainError(f"block sizes must lie in 1..{p}")
    gens = []
    for i, x in enumerate(sizes):
        factors = [_identity(y) for y in sizes]
        factors[i] = _identity(x) + np.eye(x, k=1, dtype=np.int64)
        g = factors[0]
        for f in factors[1:]:
            g = np.kron(g, f)
        gens.append(g % p)
    return ElemAbelianModule(p, tuple(gens))


def regular_module(p: int, k: int) -> ElemAbelianModule:
    return jordan_tensor_module(p, [p] * k)


def trivial_module(p: int, k: int, dim: int = 1) -> ElemAbelianModule:
    return ElemAbelianModule(p, tuple(_identity(dim) for _ in range(k)))


def random_module(
    p: int, k: int, rng: random.Random, max_dim: int | None = None, max_summands: int = 2
) -> ElemAbelianModule:
    """A random module with commuting generators.

    Summands are tensor products of Jordan blocks; on each, generator i is
    1 + f_i(N_1, ..., N_k) for a random polynomial f_i without constant
    term, so (g_i - 1)^p = 0 by the Frobenius.  A random change of basis
    hides the block structure.
    """
    check_prime(p)
    max_dim = max_dim or 2 * p * p
    summands = []
    dim = 0
    for _ in range(rng.randint(1, max_summands)):
        sizes = [rng.choice((p, p, rng.randint(1, p))) for _ in range(k)]
        d = int(np.prod(sizes))
        if summands and dim + d > max_dim:
            continue
        while d > max_dim:
            j = max(range(k), key=lambda i: sizes[i])
            sizes[j] -= 1
            d = int(np.prod(sizes))
        nilps = [g - _identity(d) for g in jordan_tensor_module(p, sizes).generators]
        gens = []
        for _ in range(k):
            f = np.zeros((d, d), dtype=np.int64)
            for _ in range(rng.randint(1, 3)):
                mono = _identity(d)
                for _ in range(rng.randint(1, 2)):
                    mono = matmul_mod(mono, rng.choice(nilps), p)
                f = (f + rng.randrange(p) * mono) % p
            gens.append((_identity(d) + f) % p)
        summands.append(ElemAbelianModule(p, tuple(gens)))
        dim += d
    m = summands[0]
    for s in summands[1:]:
        m = m + s
    while True:
        t = np.array([[rng.randrange(p) for _ in range(m.dim)] for _ in range(m.dim)], dtype=np.int64)
        if rank_mod_p(t, p) == m.dim:
            return m.conjugated(t)
