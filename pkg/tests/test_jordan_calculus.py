import random
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symblock.errors import DomainError, ExcludedCase
from symblock.jordan_calculus import (
    JordanMultiset,
    freeness_obstruction,
    hook_dim,
    hook_restriction,
    jordan_block_nilpotent,
    jordan_tensor,
    jordan_tensor_oracle,
    jordan_type_of_nilpotent,
    lem1_count,
    lem1_count_oracle,
    lem2_dim,
    lem2_dim_oracle,
    nabla_restriction,
    nabla_restriction_oracle,
    omega0,
    rank_mod_p,
    run_sweeps,
    tensor_nilpotent,
)
from symblock.rank_variety import inverse_mod_p


def J(p, *sizes):
    return JordanMultiset.of(p, sizes)


def lemma_range(p):
    return [(a, b) for a in range(2, p - 1) for b in range(2, a + 1) if a + b <= p]


class TestMultiset:
    def test_canonical(self):
        m = JordanMultiset.of(5, {1: 1, 3: 0, 5: 3})
        assert m.as_dict() == {1: 1, 5: 3}
        assert m.dim == 16 and m.num_blocks == 4 and m.projective_count == 3
        assert m == J(5, 5, 1, 5, 5)

    def test_mixed_primes(self):
        with pytest.raises(TypeError):
            J(5, 1) + J(7, 1)

    def test_size_bounds(self):
        with pytest.raises(DomainError):
            J(5, 6)

    def test_free(self):
        assert J(3, 3, 3).is_free() and not J(3, 3, 1).is_free()


class TestNilpotent:
    def test_zero_matrix(self):
        assert jordan_type_of_nilpotent(np.zeros((4, 4), dtype=np.int64), 5) == J(5, 1, 1, 1, 1)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_full_block(self, p):
        assert jordan_type_of_nilpotent(jordan_block_nilpotent(p), p) == J(p, p)

    def test_tensor_example(self):
        n = tensor_nilpotent(2, 3)
        assert n.shape == (6, 6)
        assert jordan_type_of_nilpotent(n, 5) == J(5, 2, 4)

    def test_not_nilpotent(self):
        with pytest.raises(DomainError):
            jordan_type_of_nilpotent(np.eye(3, dtype=np.int64), 5)

    def test_rank_is_exact(self):
        # rank over F_3 differs from the rational rank
        m = np.array([[1, 2], [2, 1]], dtype=np.int64)
        assert rank_mod_p(m, 3) == 1 and rank_mod_p(m, 5) == 2

    @given(st.sampled_from([3, 5, 7]), st.lists(st.integers(1, 7), min_size=1, max_size=4), st.integers(0, 2**32 - 1))
    def test_conjugation_invariant(self, p, sizes, seed):
        rnd = random.Random(seed)
        sizes = [min(s, p) for s in sizes]
        d = sum(sizes)
        n = np.zeros((d, d), dtype=np.int64)
        at = 0
        for s in sizes:
            n[at : at + s, at : at + s] = jordan_block_nilpotent(s)
            at += s
        while True:
            t = np.array([[rnd.randrange(p) for _ in range(d)] for _ in range(d)], dtype=np.int64)
            if rank_mod_p(t, p) == d:
                break
        conj = (t @ n % p) @ inverse_mod_p(t, p) % p
        assert jordan_type_of_nilpotent(conj, p) == J(p, *sizes)


class TestTensor:
    def test_examples(self):
        assert jordan_tensor(2, 3, 5) == J(5, 2, 4)
        assert jordan_tensor(4, 4, 5) == J(5, 1, 5, 5, 5)
        for y in range(1, 5):
            assert jordan_tensor(1, y, 5) == J(5, y)

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_dimension_and_symmetry(self, p):
        for x in range(1, p):
            for y in range(1, p):
                m = jordan_tensor(x, y, p)
                assert m.dim == x * y
                assert m == jordan_tensor(y, x, p)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_matches_matrices(self, p):
        for x in range(1, p):
            for y in range(1, p):
                assert jordan_tensor(x, y, p) == jordan_tensor_oracle(x, y, p)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            jordan_tensor(5, 1, 5)
        with pytest.raises(DomainError):
            jordan_tensor(0, 1, 5)


class TestOmegaAndHooks:
    def test_omega0(self):
        assert omega0(J(5, 5, 5, 5)) == J(5)
        assert omega0(J(5, 1, 5, 5, 5)) == J(5, 1)

    @given(st.lists(st.integers(1, 7), max_size=6))
    def test_omega0_idempotent(self, sizes):
        m = J(7, *sizes)
        assert omega0(omega0(m)) == omega0(m)
        assert omega0(m).projective_count == 0

    def test_hook_restriction(self):
        assert hook_restriction(1, 7) == J(7, 1)
        assert hook_restriction(2, 5) == J(5, 3)
        assert hook_restriction(3, 5) == J(5, 3)

    def test_hook_restriction_range(self):
        with pytest.raises(DomainError):
            hook_restriction(5, 5)


class TestNabla:
    def test_examples(self):
        assert nabla_restriction(2, 2, 5) == J(5, 1, 3)
        assert nabla_restriction(3, 2, 5) == J(5, 3, 3, 1, 1)
        assert nabla_restriction_oracle(2, 1, 5) == J(5, 3, 3)
        for p in (3, 5, 7):
            assert nabla_restriction(1, 1, p) == J(p, 1)

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_closed_form_matches_expansion(self, p):
        for i in range(1, p):
            for j in range(1, i + 1):
                assert nabla_restriction(i, j, p) == nabla_restriction_oracle(i, j, p)

    def test_range(self):
        with pytest.raises(DomainError):
            nabla_restriction(2, 3, 5)


class TestLemmas:
    def test_spot_values(self):
        assert lem1_count(2, 2, 5) == 6
        assert lem2_dim(2, 2, 5) == 22

    def test_boundary_case(self):
        # a + b = p, odd: the printed closed form and the summand count agree on 8
        assert lem1_count(3, 2, 5) == lem1_count_oracle(3, 2, 5) == 8

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_closed_forms_match_oracle(self, p):
        for a, b in lemma_range(p):
            assert lem1_count(a, b, p) == lem1_count_oracle(a, b, p)
            assert lem2_dim(a, b, p) == lem2_dim_oracle(a, b, p)

    @pytest.mark.parametrize("p", [5, 7, 11, 13])
    def test_count_beats_dimension(self, p):
        for a, b in lemma_range(p):
            assert Fraction(lem1_count(a, b, p)) > Fraction(lem2_dim(a, b, p), p)

    @pytest.mark.parametrize("args", [(1, 1, 5), (3, 3, 5), (4, 2, 5), (3, 1, 7)])
    def test_range(self, args):
        with pytest.raises(DomainError):
            lem1_count(*args)
        with pytest.raises(DomainError):
            lem2_dim(*args)


class TestHookDim:
    def test_examples(self):
        assert hook_dim(5, 2) == 56
        assert hook_dim(3, 2) == 4

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
    def test_coprime(self, p):
        assert all(gcd(hook_dim(p, b), p) == 1 for b in range(2, p))


class TestObstruction:
    def test_examples(self):
        v = freeness_obstruction(4, 2, 5)
        assert v.kind == "NotFreeByDimension" and v.dim == 56 and v.certified
        v = freeness_obstruction(2, 2, 5)
        assert v.kind == "NotFreeByCount" and (v.count, v.dim) == (6, 22) and v.certified
        v = freeness_obstruction(3, 3, 5)
        assert v.kind == "ReducedBySignTwist" and v.reduced == (2, 2)

    def test_excluded(self):
        for p in (3, 5, 7):
            with pytest.raises(ExcludedCase):
                freeness_obstruction(p - 1, 1, p)

    @pytest.mark.parametrize("p", [3, 5, 7, 11])
    def test_every_label_resolves(self, p):
        for a in range(1, p):
            for b in range(1, a + 1):
                if (a, b) == (p - 1, 1):
                    continue
                v = freeness_obstruction(a, b, p)
                if v.kind == "ReducedBySignTwist":
                    v = freeness_obstruction(*v.reduced, p)
                    assert v.kind != "ReducedBySignTwist"
                assert v.certified


class TestSweeps:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_all_pass(self, p):
        results = run_sweeps(p)
        assert results and all(r.passed for r in results), [r for r in results if not r.passed]
