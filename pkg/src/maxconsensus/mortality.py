"""Matrix mortality for pools of tropical adjacency matrices.

A pool is mortal when some finite product of its members (repetition
allowed) is the all-zero matrix.  For tropical adjacency matrices this
holds exactly when the pool's dependency graphs are jointly strongly
connected, which we check in polynomial time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionError
from .graph import dependency_graph, diameter, is_jointly_strongly_connected
from .tropical import TropicalAdjMatrix, is_all_zero, mat_mul

__all__ = [
    "MortalityResult",
    "is_mortal",
    "semigroup_contains_zero",
    "mortality_witness",
    "sequence_product",
    "brute_force_mortality",
    "oracle_max_len",
]


@dataclass(frozen=True)
class MortalityResult:
    mortal: bool
    witness: tuple[int, ...] | None = None

    @property
    def witness_length(self) -> int | None:
        return None if self.witness is None else len(self.witness)

    def to_dict(self) -> dict:
        return {
            "mortal": self.mortal,
            "witness": None if self.witness is None else list(self.witness),
            "witness_length": self.witness_length,
        }


def _check_pool(pool: Sequence[TropicalAdjMatrix]) -> int:
    if not pool:
        raise ValueError("pool is empty")
    n = pool[0].n
    for M in pool[1:]:
        if M.n != n:
            raise DimensionError(f"pool mixes {n}- and {M.n}-node matrices")
    return n


def sequence_product(pool: Sequence[TropicalAdjMatrix], sequence: Sequence[int]) -> TropicalAdjMatrix:
    """Product of the matrices applied in ``sequence`` order (1-based).

    The first index acts first, so it is the rightmost factor.
    """
    n = _check_pool(pool)
    P = TropicalAdjMatrix.identity(n)
    for idx in sequence:
        P = mat_mul(pool[idx - 1], P)
    return P


def is_mortal(pool: Sequence[TropicalAdjMatrix]) -> bool:
    _check_pool(pool)
    return is_jointly_strongly_connected([dependency_graph(M) for M in pool])


def semigroup_contains_zero(pool: Sequence[TropicalAdjMatrix]) -> bool:
    """Whether the semigroup generated by ``pool`` under (x) contains 0."""
    return is_mortal(pool)


def mortality_witness(pool: Sequence[TropicalAdjMatrix]) -> MortalityResult:
    """Round-robin witness ``(1..m)`` repeated as often as needed.

    The round-robin product is strongly connected exactly when the pool
    is jointly strongly connected, and its diameter (at most ``n - 1``)
    gives the repetition count.  Witnesses are not length-minimal.
    """
    n = _check_pool(pool)
    if not is_mortal(pool):
        return MortalityResult(False)
    rounds = list(range(1, len(pool) + 1))
    P = sequence_product(pool, rounds)
    reps = max(1, int(diameter(dependency_graph(P))))
    witness = tuple(rounds * reps)
    if not is_all_zero(sequence_product(pool, witness)):
        raise AssertionError(f"round-robin witness failed to reach zero (n={n})")
    return MortalityResult(True, witness)


def oracle_max_len(n: int, m: int) -> int:
    """Search depth that is guaranteed to contain a witness when one exists."""
    return (n - 1) * m + 1


def brute_force_mortality(pool: Sequence[TropicalAdjMatrix], max_len: int) -> tuple[int, ...] | None:
    """First zero-product sequence in length-then-lexicographic order.

    Pure enumeration with no graph theory.  Sequences sharing a product
    are interchangeable as prefixes, so each distinct product keeps only
    its lexicographically smallest sequence; that prunes nothing from
    the answer but keeps the frontier small.
    """
    n = _check_pool(pool)
    frontier: list[tuple[tuple[int, ...], TropicalAdjMatrix]] = [((), TropicalAdjMatrix.identity(n))]
    seen = {TropicalAdjMatrix.identity(n)}
    for _ in range(max_len):
        nxt = []
        # frontier is in lexicographic order, so extensions come out in order too
        for seq, P in frontier:
            for idx, M in enumerate(pool, 1):
                Q = mat_mul(M, P)
                cand = seq + (idx,)
                if is_all_zero(Q):
                    return cand
                if Q not in seen:
                    seen.add(Q)
                    nxt.append((cand, Q))
        if not nxt:
            return None
        frontier = nxt
    return None
