import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import partitions_st
from symblock.branching import (
    WkPair,
    _is_rouquier_charges,
    charges,
    classify_beads,
    conormal_beads,
    conormal_count,
    core_from_charges,
    cores_up_to,
    blocks_up_to,
    detect_wk_pair,
    exceptional_partitions,
    induce_chain_to_rouquier,
    is_rouquier,
    is_scopes_equivalent,
    lower_pairs,
    mullineux,
    normal_beads,
    normal_count,
    phi_map,
    psi_map,
    restrict_chain_to_principal,
    restriction_step,
    scopes_normal_form,
    socle_induce_label,
    socle_restrict_label,
    upper_pairs,
)
from symblock.errors import DomainError, NotDefined, Undecided
from symblock.partition_core import (
    AbacusDisplay,
    BlockId,
    Partition,
    block_of,
    block_partitions,
    core_from_counts,
    display_from_counts,
    is_p_regular,
    p_weight,
    partitions,
    principal_block,
)
from symblock.weight_two import label_of

E = Partition()


def all_pairs(p, max_n, max_w=3):
    for B in blocks_up_to(p, max_n):
        if B.weight <= max_w:
            yield from lower_pairs(B)


def rouquier_core(p, w, shift=0):
    """Core whose runner counts increase by w - 1 from runner to runner (plus a constant shift)."""
    return core_from_counts([shift + j * max(w - 1, 1) for j in range(p)], p)


class TestBeads:
    def test_empty_display(self):
        cls = classify_beads(AbacusDisplay(3, 3, frozenset({0, 1, 2})))
        assert cls.removable == ()
        assert cls.addable == ((2, 0),)

    def test_full_prefix_display(self):
        for p in (2, 3, 5):
            s = 2 * p
            cls = classify_beads(AbacusDisplay(p, s, frozenset(range(s))))
            assert cls.removable == () and [pos for pos, _ in cls.addable] == [s - 1]

    def test_two_bead_display(self):
        d = AbacusDisplay(3, 2, frozenset({5, 1}))
        assert sorted(classify_beads(d).removable) == [(1, 2), (5, 0)]
        assert normal_beads(d, 0) == [5]
        assert conormal_beads(d, 1) == [5]

    def test_core_has_no_normal_beads(self):
        d = display_from_counts((2, 2, 2), 3)
        assert all(normal_beads(d, r) == [] for r in range(3))

    def test_empty_core_conormal(self):
        for p in (3, 5):
            d = AbacusDisplay.of((), p, 2 * p)
            r = classify_beads(d).addable[0][1]
            assert conormal_beads(d, r) == [2 * p - 1]
            assert all(conormal_beads(d, x) == [] for x in range(p) if x != r)

    @given(partitions_st(max_n=20), st.sampled_from([2, 3, 5]))
    def test_good_node_count_matches_crystal(self, lam, p):
        # total normal beads over all residues is at most the number of removable beads
        d = AbacusDisplay.of(lam, p)
        removable = classify_beads(d).removable
        assert sum(len(normal_beads(d, r)) for r in range(p)) <= len(removable)
        for r in range(p):
            assert set(normal_beads(d, r)) <= {pos for pos, res in removable if res == r}


class TestCharges:
    @given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 6), min_size=7, max_size=7))
    def test_round_trip(self, p, counts):
        core = core_from_counts(counts[:p], p)
        assert core_from_charges(charges(core, p), p) == core
        assert sum(charges(core, p)) == p * (p - 1) // 2

    def test_core_enumeration(self):
        for p in (2, 3, 5):
            brute = [lam for n in range(15) for lam in partitions(n) if p_weight(lam, p) == 0]
            assert sorted(cores_up_to(p, 14)) == sorted(brute)


class TestSocleLabels:
    def test_hook_restricts_to_core(self):
        C = BlockId(5, Partition((5, 1, 1, 1, 1)), 0)
        got = socle_restrict_label((6, 1, 1, 1, 1), C)
        assert got.partition == Partition((5, 1, 1, 1, 1)) and got.multiplicity == 1 and got.full

    def test_core_restriction_moves_normal_bead(self):
        # (2) is a 3-core; its only removable node has residue 1
        got = socle_restrict_label((2,), BlockId(3, Partition((1,)), 0))
        assert got.partition == Partition((1,)) and got.full

    def test_zero_normal_beads_gives_none(self):
        # residue 1 step into the weight-1 block: (6,1,1,1,1) has no normal bead of that residue
        assert socle_restrict_label((6, 1, 1, 1, 1), BlockId(5, Partition((1, 1, 1, 1)), 1)) is None

    def test_unrelated_block(self):
        with pytest.raises(DomainError):
            socle_restrict_label((6, 1, 1, 1, 1), principal_block(5, 5))

    def test_singular_rejected(self):
        with pytest.raises(DomainError):
            socle_restrict_label((1, 1, 1), BlockId(3, Partition((1, 1)), 0))

    @pytest.mark.parametrize("p", [3, 5])
    def test_socle_none_iff_too_few_normal(self, p):
        hits = 0
        for n in range(1, 2 * p + 3):
            for lam in partitions(n):
                if not is_p_regular(lam, p):
                    continue
                B = block_of(lam, p)
                for C in {block_of(mu, p) for mu in partitions(n - 1)} | {block_of(mu, p) for mu in partitions(n - 2)}:
                    step = restriction_step(B, C)
                    if step is None:
                        continue
                    got = socle_restrict_label(lam, C)
                    count = normal_count(lam, step)
                    if count < step.k:
                        assert got is None
                        hits += 1
                    else:
                        assert got.partition == phi_map(lam, step)
                        assert got.full == (count == step.k)
                        assert is_p_regular(got.partition, p)
                        back = socle_induce_label(got.partition, B)
                        assert back is not None and back.multiplicity == got.multiplicity
        assert hits > 0

    def test_phi_outside_domain(self):
        B, C = principal_block(11, 5), principal_block(10, 5)
        pair = detect_wk_pair(B, C)
        lam = next(lam for lam in block_partitions(B) if normal_count(lam, pair) == 0) if any(
            normal_count(lam, pair) == 0 for lam in block_partitions(B)
        ) else None
        if lam is not None:
            with pytest.raises(NotDefined):
                phi_map(lam, pair)


class TestPairs:
    def test_same_block(self):
        B = principal_block(10, 5)
        assert detect_wk_pair(B, B) is None

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_principal_blocks(self, p):
        pair = detect_wk_pair(principal_block(2 * p + 1, p), principal_block(2 * p, p))
        assert isinstance(pair, WkPair) and pair.k == 1 and pair.weight == 2

    def test_rouquier_swap(self):
        p, w = 5, 2
        counts = [0, 3, 6, 9, 12]
        swapped = [0, 3, 9, 6, 12]
        B = BlockId(p, core_from_counts(counts, p), w)
        C = BlockId(p, core_from_counts(swapped, p), w)
        pair = detect_wk_pair(B, C)
        assert pair is not None and pair.k == 3 and pair.k >= w
        assert is_rouquier(B) and is_rouquier(C)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_pair_invariants(self, p):
        for pair in all_pairs(p, 3 * p + 4):
            cb, cc = pair.B.core_counts(pair.s), pair.C.core_counts(pair.s)
            i = pair.i
            assert 1 <= i < p
            assert cb[i] - cb[i - 1] == pair.k
            assert cc[i] == cb[i - 1] and cc[i - 1] == cb[i]
            assert all(cb[j] == cc[j] for j in range(p) if j not in (i - 1, i))
            assert pair.B.n == pair.C.n + pair.k
            assert detect_wk_pair(pair.B, pair.C) == pair
            assert pair in upper_pairs(pair.C)

    @pytest.mark.parametrize("p", [3, 5])
    def test_phi_psi_inverse(self, p):
        for pair in all_pairs(p, 3 * p + 3):
            images = set()
            for lam in block_partitions(pair.B):
                mu = phi_map(lam, pair)
                assert psi_map(mu, pair) == lam
                assert is_p_regular(mu, p) == is_p_regular(lam, p)
                images.add(mu)
            assert images == set(block_partitions(pair.C))
            assert psi_map(pair.C.core, pair) == pair.B.core if pair.weight == 0 else True

    @pytest.mark.parametrize("p", [3, 5])
    def test_psi_of_core(self, p):
        for C in blocks_up_to(p, 4 * p, weight=0):
            for pair in upper_pairs(C):
                assert psi_map(C.core, pair) == pair.B.core

    @pytest.mark.parametrize("p", [3, 5])
    def test_exceptional_bijection(self, p):
        for pair in all_pairs(p, 3 * p + 3):
            upper = exceptional_partitions(pair)
            lower = exceptional_partitions(pair, lower=True)
            assert {phi_map(lam, pair) for lam in upper} == set(lower)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_exceptional_empty_iff_k_at_least_w(self, p):
        seen = set()
        for pair in all_pairs(p, 3 * p + 10):
            assert (not exceptional_partitions(pair)) == (pair.k >= pair.weight)
            seen.add(pair.k >= pair.weight)
        assert seen == {True, False}

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_two_one_pairs_have_one_regular_exception(self, p):
        for pair in all_pairs(p, 4 * p, max_w=2):
            if pair.weight == 2 and pair.k == 1:
                exc = [lam for lam in exceptional_partitions(pair) if is_p_regular(lam, p)]
                assert len(exc) <= 1

    def test_weight_zero_has_no_exceptions(self):
        for B in blocks_up_to(5, 20, weight=0):
            for pair in lower_pairs(B):
                assert exceptional_partitions(pair) == frozenset()


class TestRouquier:
    def test_small_weights(self):
        for B in blocks_up_to(5, 12):
            if B.weight <= 1:
                assert is_rouquier(B)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_principal_not_rouquier(self, p):
        assert not is_rouquier(principal_block(2 * p, p))

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_staircase_counts(self, p):
        core = core_from_counts([3 + j for j in range(p)], p)
        assert is_rouquier(BlockId(p, core, 2))

    @given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 12), min_size=7, max_size=7), st.integers(0, 6))
    def test_display_independent(self, p, counts, w):
        B = BlockId(p, core_from_counts(counts[:p], p), w)
        s = len(B.core) + (-len(B.core)) % p
        assert is_rouquier(B, s) == is_rouquier(B, s + p) == is_rouquier(B, s + 1)
        assert is_rouquier(B) == _is_rouquier_charges(charges(B.core, p), p, w)

    def test_random_cores_display_independent(self):
        rng = random.Random(7)
        for _ in range(1000):
            p = rng.choice([2, 3, 5, 7])
            B = BlockId(p, core_from_counts([rng.randint(0, 10) for _ in range(p)], p), rng.randint(0, 5))
            s = len(B.core) + (-len(B.core)) % p
            assert is_rouquier(B, s) == is_rouquier(B, s + p)


class TestScopes:
    def test_reflexive(self):
        B = principal_block(10, 5)
        assert is_scopes_equivalent(B, B)

    @pytest.mark.parametrize("p,w", [(3, 2), (5, 2), (5, 3), (7, 4)])
    def test_rouquier_blocks_equivalent(self, p, w):
        B = BlockId(p, rouquier_core(p, w), w)
        C = BlockId(p, rouquier_core(p, w, shift=4), w)
        D = BlockId(p, core_from_counts([j * (w + 1) for j in reversed(range(p))], p), w)
        assert is_rouquier(B) and is_rouquier(C) and is_rouquier(D)
        assert is_scopes_equivalent(B, C) and is_scopes_equivalent(B, D)

    def test_different_weights(self):
        assert not is_scopes_equivalent(principal_block(10, 5), principal_block(15, 5))

    def test_principal_and_rouquier_differ(self):
        p = 5
        assert not is_scopes_equivalent(principal_block(2 * p, p), BlockId(p, rouquier_core(p, 2), 2))

    @given(st.sampled_from([3, 5]), st.lists(st.integers(0, 9), min_size=5, max_size=5), st.integers(1, 3), st.randoms())
    def test_normal_form_order_independent(self, p, counts, w, rnd):
        B = BlockId(p, core_from_counts(counts[:p], p), w)
        # random descent order through pairs with k >= w
        current = B
        while True:
            options = [pair for pair in lower_pairs(current) if pair.k >= w]
            if not options:
                break
            current = rnd.choice(options).C
        assert current.core == scopes_normal_form(B)

    def test_depth_cap(self):
        B = BlockId(5, rouquier_core(5, 2, shift=6), 1)
        with pytest.raises(Undecided):
            scopes_normal_form(B, depth_cap=1)


class TestChains:
    def test_rouquier_start_is_trivial(self):
        p = 5
        B = BlockId(p, rouquier_core(p, 2), 2)
        lam = next(lam for lam in block_partitions(B) if is_p_regular(lam, p))
        chain = induce_chain_to_rouquier(lam, p)
        assert chain is not None and len(chain) == 0

    @pytest.mark.parametrize("p", [3, 5])
    def test_weight_two_routes(self, p):
        for lam in block_partitions(principal_block(2 * p, p)):
            if not is_p_regular(lam, p):
                continue
            label = label_of(lam, p)
            up = induce_chain_to_rouquier(lam, p)
            if label.eps == 0 or label.b == label.a + 1:
                assert up is not None and up.verify() and is_rouquier(up.blocks[-1])
                assert all(not st.exceptional for st in up.steps)
            down = restrict_chain_to_principal(lam, p)
            assert down is not None and len(down) == 0

    def test_hook_restrict_chain_trivial(self):
        for p in (3, 5, 7):
            chain = restrict_chain_to_principal((p + 1,) + (1,) * (p - 1), p)
            assert chain is not None and len(chain) == 0

    def test_restrict_chain_from_higher_block(self):
        p = 5
        B = BlockId(p, rouquier_core(p, 2), 2)
        done = 0
        for lam in block_partitions(B):
            if is_p_regular(lam, p) and label_of(lam, p).eps == 1:
                chain = restrict_chain_to_principal(lam, p)
                assert chain is not None and chain.verify()
                assert chain.blocks[-1] == principal_block(2 * p, p)
                assert label_of(chain.end, p).pair == label_of(lam, p).pair
                done += 1
        assert done

    def test_chain_records(self):
        lam = Partition((5, 5))
        chain = induce_chain_to_rouquier(lam, 5)
        recs = chain.to_records()
        assert len(recs) == len(chain)
        assert set(recs[0]) == {"n", "core", "k", "residue", "image_partition", "exceptional"}
        assert [r["n"] for r in recs] == sorted(r["n"] for r in recs)

    def test_depth_cap_raises(self):
        lam = Partition((5, 5))
        assert len(induce_chain_to_rouquier(lam, 5)) > 1
        with pytest.raises(Undecided):
            induce_chain_to_rouquier(lam, 5, depth_cap=1)

    def test_singular_rejected(self):
        with pytest.raises(DomainError):
            induce_chain_to_rouquier((1, 1, 1), 3)


class TestMullineux:
    def test_involution(self):
        for p in (2, 3, 5):
            for n in range(1, 11):
                for lam in partitions(n):
                    if is_p_regular(lam, p):
                        m = mullineux(lam, p)
                        assert mullineux(m, p) == lam and block_of(m, p).weight == block_of(lam, p).weight

    def test_large_prime_is_conjugation(self):
        for n in range(1, 7):
            for lam in partitions(n):
                assert mullineux(lam, 7) == lam.conjugate()

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_sign_module(self, p):
        # the sign representation of S_p is D^(2,1^(p-2))
        assert mullineux((p,), p) == Partition((2,) + (1,) * (p - 2))
