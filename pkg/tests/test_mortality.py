import itertools

import pytest

from maxconsensus.errors import DimensionError
from maxconsensus.graph import adjacency, dependency_graph, diameter, from_edges
from maxconsensus.mortality import (
    MortalityResult,
    brute_force_mortality,
    is_mortal,
    mortality_witness,
    oracle_max_len,
    semigroup_contains_zero,
    sequence_product,
)
from maxconsensus.tropical import TropicalAdjMatrix, is_all_zero

from .conftest import random_matrix, random_strongly_connected
from .oracles import dense, naive_mortality


def A12():
    return adjacency(from_edges(2, [(1, 2)]))


def A21():
    return adjacency(from_edges(2, [(2, 1)]))


class TestDecision:
    def test_examples(self, cycle3):
        assert is_mortal([A12(), A21()])
        assert not is_mortal([A12()])
        assert is_mortal([adjacency(cycle3)])

    def test_semigroup_alias(self, rng):
        assert not semigroup_contains_zero([TropicalAdjMatrix.identity(3)])
        assert semigroup_contains_zero([TropicalAdjMatrix.zero(3)])
        for _ in range(100):
            n = rng.randint(1, 6)
            pool = [random_matrix(rng, n, 0.2) for _ in range(rng.randint(1, 3))]
            assert semigroup_contains_zero(pool) == is_mortal(pool)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            is_mortal([A12(), TropicalAdjMatrix.zero(3)])

    def test_empty_pool(self):
        with pytest.raises(ValueError):
            is_mortal([])

    def test_order_robust(self, rng):
        for _ in range(50):
            n = rng.randint(2, 6)
            pool = [random_matrix(rng, n, 0.15) for _ in range(3)]
            verdicts = {is_mortal(list(p)) for p in itertools.permutations(pool)}
            assert len(verdicts) == 1


class TestWitness:
    def test_two_node(self):
        res = mortality_witness([A12(), A21()])
        assert res == MortalityResult(True, (1, 2))
        assert res.witness_length == 2
        assert is_all_zero(sequence_product([A12(), A21()], res.witness))

    def test_single_strongly_connected(self, rng):
        for _ in range(20):
            G = random_strongly_connected(rng, rng.randint(2, 8))
            res = mortality_witness([adjacency(G)])
            assert res.witness == (1,) * diameter(G)

    def test_not_mortal(self):
        pool = [adjacency(from_edges(3, [(1, 2)])), adjacency(from_edges(3, [(1, 3)]))]
        res = mortality_witness(pool)
        assert res == MortalityResult(False, None)
        assert res.to_dict() == {"mortal": False, "witness": None, "witness_length": None}

    def test_witness_valid_and_bounded(self, rng):
        for _ in range(200):
            n = rng.randint(1, 7)
            m = rng.randint(1, 4)
            pool = [random_matrix(rng, n, 0.2) for _ in range(m)]
            res = mortality_witness(pool)
            assert res.mortal == is_mortal(pool)
            if res.mortal:
                assert is_all_zero(sequence_product(pool, res.witness))
                assert len(res.witness) <= max(1, n - 1) * m

    def test_sequence_product_order(self):
        # first index acts first: 1 then 2 reaches 0 only with both
        P = sequence_product([A12(), A21()], (1,))
        assert P == A12()


class TestBruteForce:
    def test_two_node(self):
        seq = brute_force_mortality([A12(), A21()], 3)
        assert seq is not None and len(seq) == 2
        assert seq == (1, 2)

    def test_never(self):
        assert brute_force_mortality([A12()], 6) is None

    def test_zero(self):
        assert brute_force_mortality([TropicalAdjMatrix.zero(3)], 1) == (1,)

    def test_matches_literal_enumeration(self, rng):
        for _ in range(60):
            n = rng.randint(2, 4)
            m = rng.randint(1, 3)
            pool = [random_matrix(rng, n, 0.3) for _ in range(m)]
            L = min(oracle_max_len(n, m), 6)
            assert brute_force_mortality(pool, L) == naive_mortality([dense(M) for M in pool], L)

    def test_oracle_bound(self):
        assert oracle_max_len(3, 2) == 5
        assert oracle_max_len(1, 3) == 1

    def test_proposition_pairs(self, rng):
        from maxconsensus.graph import is_jointly_strongly_connected, is_strongly_connected
        from maxconsensus.tropical import mat_mul

        for _ in range(200):
            n = rng.randint(1, 8)
            A, B = random_matrix(rng, n, 0.2), random_matrix(rng, n, 0.2)
            assert is_strongly_connected(dependency_graph(mat_mul(A, B))) == is_jointly_strongly_connected(
                [dependency_graph(A), dependency_graph(B)]
            )
