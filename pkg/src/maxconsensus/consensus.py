"""Max-consensus simulation and exact convergence verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionError
from .graph import (
    dependency_graph,
    diameter,
    distances_from,
    is_strongly_connected,
    neighbors,
)
from .tropical import (
    NEG_INF,
    ExtendedReal,
    TropicalAdjMatrix,
    format_scalar,
    is_all_zero,
    mat_mul,
    mat_vec,
)

__all__ = [
    "Trace",
    "ConvergenceVerdict",
    "SwitchingSchedule",
    "FaultReport",
    "RNG_ALGORITHM",
    "is_consensus",
    "step",
    "step_by_neighbors",
    "run_fixed",
    "run_switching",
    "converges_all_inits_fixed",
    "converges_all_inits_switching",
    "min_zero_exponent",
    "converges_for_init",
    "fault_check",
    "fault_trial_init",
]

RNG_ALGORITHM = "numpy.PCG64"

State = tuple[ExtendedReal, ...]


def _initial(x0: Sequence[ExtendedReal], n: int) -> State:
    x = tuple(x0)
    if len(x) != n:
        raise DimensionError(f"initial vector of length {len(x)} for {n} nodes")
    if any(v is NEG_INF for v in x):
        raise ValueError("initial conditions must be finite")
    return x


def is_consensus(x: Sequence[ExtendedReal]) -> bool:
    return all(v == x[0] for v in x)


@dataclass(frozen=True)
class Trace:
    states: list[State]
    converged_at: int | None
    schedule_used: str = ""

    @property
    def final(self) -> State:
        return self.states[-1]

    def to_lines(self) -> str:
        return "".join(
            f"{k} " + " ".join(format_scalar(v) for v in x) + "\n"
            for k, x in enumerate(self.states)
        )

    def to_records(self) -> list[dict]:
        return [
            {
                "step": k,
                "values": [v if isinstance(v, int) else format_scalar(v) for v in x],
                "converged": is_consensus(x),
            }
            for k, x in enumerate(self.states)
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_records())


def step(A: TropicalAdjMatrix, x: Sequence[ExtendedReal]) -> State:
    """One synchronous round, computed as the tropical product ``A x``."""
    return mat_vec(A, x)


def step_by_neighbors(A: TropicalAdjMatrix, x: Sequence[ExtendedReal]) -> State:
    """One round computed node by node as ``max`` over in-neighbours."""
    if len(x) != A.n:
        raise DimensionError(f"vector of length {len(x)} for {A.n} nodes")
    G = dependency_graph(A)
    return tuple(max(x[j - 1] for j in neighbors(G, i)) for i in G.nodes)


def run_fixed(A: TropicalAdjMatrix, x0: Sequence[ExtendedReal], max_steps: int) -> Trace:
    """Iterate the protocol until consensus or ``max_steps`` rounds."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    x = _initial(x0, A.n)
    states = [x]
    converged_at = 0 if is_consensus(x) else None
    k = 0
    while converged_at is None and k < max_steps:
        x = mat_vec(A, x)
        k += 1
        states.append(x)
        if is_consensus(x):
            converged_at = k
    return Trace(states, converged_at, f"fixed x{k}")


@dataclass(frozen=True)
class SwitchingSchedule:
    """A matrix pool and the 1-based pool indices applied in order."""

    matrices: tuple[TropicalAdjMatrix, ...]
    sequence: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        object.__setattr__(self, "sequence", tuple(self.sequence))
        if not self.matrices:
            raise ValueError("schedule pool is empty")
        n = self.matrices[0].n
        for M in self.matrices[1:]:
            if M.n != n:
                raise DimensionError(f"pool mixes {n}- and {M.n}-node matrices")
        m = len(self.matrices)
        for idx in self.sequence:
            if not isinstance(idx, int) or not 1 <= idx <= m:
                raise ValueError(f"sequence index {idx!r} not in 1..{m}")

    @property
    def n(self) -> int:
        return self.matrices[0].n

    def applied(self) -> list[TropicalAdjMatrix]:
        return [self.matrices[i - 1] for i in self.sequence]

    def describe(self) -> str:
        return "switching " + ",".join(str(i) for i in self.sequence)


def run_switching(schedule: SwitchingSchedule, x0: Sequence[ExtendedReal]) -> Trace:
    """Apply every scheduled matrix in order, recording each state."""
    x = _initial(x0, schedule.n)
    states = [x]
    converged_at = 0 if is_consensus(x) else None
    for k, M in enumerate(schedule.applied(), 1):
        x = mat_vec(M, x)
        states.append(x)
        if converged_at is None and is_consensus(x):
            converged_at = k
    return Trace(states, converged_at, schedule.describe())


Reason = Literal["strongly_connected", "not_strongly_connected", "product_reached_zero", "bound_exhausted"]


@dataclass(frozen=True)
class ConvergenceVerdict:
    converges_for_all_inits: bool
    steps: int | None
    reason: Reason

    def __post_init__(self):
        if self.converges_for_all_inits and self.steps is None:
            raise ValueError("a converging verdict needs a step count")


def converges_all_inits_fixed(A: TropicalAdjMatrix) -> ConvergenceVerdict:
    """Consensus from every start iff the dependency graph is strongly
    connected, and then it takes exactly ``diameter`` rounds."""
    G = dependency_graph(A)
    if not is_strongly_connected(G):
        return ConvergenceVerdict(False, None, "not_strongly_connected")
    return ConvergenceVerdict(True, int(diameter(G)), "strongly_connected")


def converges_all_inits_switching(schedule: SwitchingSchedule) -> ConvergenceVerdict:
    """Shortest prefix of the schedule whose product is the zero matrix."""
    P = TropicalAdjMatrix.identity(schedule.n)
    if is_all_zero(P):
        return ConvergenceVerdict(True, 0, "product_reached_zero")
    for k, M in enumerate(schedule.applied(), 1):
        P = mat_mul(M, P)
        if is_all_zero(P):
            return ConvergenceVerdict(True, k, "product_reached_zero")
    return ConvergenceVerdict(False, None, "bound_exhausted")


def min_zero_exponent(A: TropicalAdjMatrix) -> int | None:
    """Smallest ``k >= 1`` with ``A^k`` all zero, else None.

    Edge sets only grow with ``k`` and shortest paths have at most
    ``n - 1`` hops, so the search stops there.
    """
    P = A
    for k in range(1, max(1, A.n - 1) + 1):
        if is_all_zero(P):
            return k
        P = mat_mul(A, P)
    return None


def converges_for_init(A: TropicalAdjMatrix, x0: Sequence[ExtendedReal]) -> int | None:
    """Round at which consensus occurs from ``x0``, or None if never.

    Every node must be within ``k`` hops of some node holding the
    initial maximum; with several such nodes their reach sets combine.
    """
    x = _initial(x0, A.n)
    top = max(x)
    roots = [i for i, v in enumerate(x, 1) if v == top]
    dist = distances_from(dependency_graph(A), roots)
    if len(dist) < A.n:
        return None
    return max(dist.values())


@dataclass(frozen=True)
class FaultReport:
    status: Literal["CLEAN", "FAULT"]
    expected_steps: int
    trials: int
    failed_trials: tuple[int, ...]
    seed: int
    rng: str = RNG_ALGORITHM

    @property
    def clean(self) -> bool:
        return self.status == "CLEAN"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "expected_steps": self.expected_steps,
            "trials": self.trials,
            "failed_trials": list(self.failed_trials),
            "seed": self.seed,
            "rng": self.rng,
        }


def fault_trial_init(n: int, trial: int, rng: np.random.Generator) -> tuple[int, ...]:
    """Distinct values ``1..n`` in random order, maximum at node ``trial % n + 1``.

    Cycling the argmax over nodes makes any ``n`` consecutive trials
    cover every placement of the unique maximum.
    """
    values = [int(v) for v in rng.permutation(n) + 1]
    top = trial % n
    where = values.index(n)
    values[top], values[where] = values[where], values[top]
    return tuple(values)


def fault_check(
    A: TropicalAdjMatrix,
    expected_steps: int,
    trials: int,
    seed: int = 0,
) -> FaultReport:
    """Run randomized consensus rounds and flag any late or missing consensus."""
    if expected_steps < 1:
        raise ValueError("expected_steps must be >= 1")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    rng = np.random.Generator(np.random.PCG64(seed))
    failed = []
    for t in range(trials):
        x0 = fault_trial_init(A.n, t, rng)
        if run_fixed(A, x0, expected_steps).converged_at is None:
            failed.append(t)
    status = "FAULT" if failed else "CLEAN"
    return FaultReport(status, expected_steps, trials, tuple(failed), seed)
