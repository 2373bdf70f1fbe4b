"""Seeded network families and fault injection.

Randomness comes from numpy's PCG64 bit generator.  A single graph is
drawn from ``PCG64(seed)``; sample ``s`` of a batch uses the stream
``SeedSequence(seed, spawn_key=(s,))``.  Watts-Strogatz and
Barabasi-Albert graphs are drawn with networkx from that stream as
undirected graphs and every undirected edge becomes two directed ones.
"""

from __future__ import annotations

import json
import statistics
from dataclasses import asdict, dataclass, field
from typing import Any

import networkx as nx
import numpy as np

from .consensus import RNG_ALGORITHM
from .graph import Digraph, diameter, from_edges, is_strongly_connected

__all__ = [
    "FAMILIES",
    "GenSpec",
    "DiameterSummary",
    "generate",
    "inject_fault",
    "measure_diameter_distribution",
]

FAMILIES = ("complete", "cycle", "path", "star_in", "erdos_renyi", "watts_strogatz", "barabasi_albert")

_PARAMS = {
    "complete": (),
    "cycle": (),
    "path": (),
    "star_in": (),
    "erdos_renyi": ("p",),
    "watts_strogatz": ("k", "beta"),
    "barabasi_albert": ("m",),
}

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))
        self.validate()

    def validate(self) -> None:
        if self.family not in _PARAMS:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise ValueError("seed must be an unsigned 64-bit integer")
        needed = set(_PARAMS[self.family])
        given = set(self.params)
        if needed - given:
            raise ValueError(f"{self.family} needs parameters {sorted(needed - given)}")
        if given - needed:
            raise ValueError(f"{self.family} does not take {sorted(given - needed)}")
        p = self.params
        if self.family == "erdos_renyi" and not 0.0 <= p["p"] <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.family == "watts_strogatz":
            k = p["k"]
            if not isinstance(k, int) or k < 0 or k % 2 or k >= self.n:
                raise ValueError("k must be an even integer with 0 <= k < n")
            if not 0.0 <= p["beta"] <= 1.0:
                raise ValueError("beta must lie in [0, 1]")
        if self.family == "barabasi_albert":
            m = p["m"]
            if not isinstance(m, int) or not 1 <= m < self.n:
                raise ValueError("m must be an integer with 1 <= m < n")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        return cls(d["family"], d["n"], d.get("params", {}), d.get("seed", 0))

    @classmethod
    def from_json(cls, text: str) -> "GenSpec":
        return cls.from_dict(json.loads(text))


def _symmetric(n: int, H: nx.Graph) -> Digraph:
    edges = []
    for u, v in H.edges():
        edges += [(u + 1, v + 1), (v + 1, u + 1)]
    return from_edges(n, edges)


def _build(spec: GenSpec, rng: np.random.Generator) -> Digraph:
    n, p = spec.n, spec.params
    fam = spec.family
    if fam == "complete":
        return from_edges(n, [(j, i) for j in range(1, n + 1) for i in range(1, n + 1)])
    if fam == "cycle":
        return from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])
    if fam == "path":
        return from_edges(n, [(i, i + 1) for i in range(1, n)])
    if fam == "star_in":
        return from_edges(n, [(j, 1) for j in range(2, n + 1)])
    if fam == "erdos_renyi":
        # row j, column i decides edge j -> i
        coins = rng.random((n, n)) < p["p"]
        return from_edges(n, [(int(j) + 1, int(i) + 1) for j, i in zip(*np.nonzero(coins)) if j != i])
    if fam == "watts_strogatz":
        return _symmetric(n, nx.watts_strogatz_graph(n, p["k"], p["beta"], seed=rng))
    if fam == "barabasi_albert":
        return _symmetric(n, nx.barabasi_albert_graph(n, p["m"], seed=rng))
    raise AssertionError(fam)


def generate(spec: GenSpec) -> Digraph:
    """Deterministic graph for ``spec``."""
    return _build(spec, np.random.Generator(np.random.PCG64(spec.seed)))


def generate_sample(spec: GenSpec, index: int) -> Digraph:
    """Sample ``index`` of a batch drawn from ``spec``."""
    ss = np.random.SeedSequence(spec.seed, spawn_key=(index,))
    return _build(spec, np.random.Generator(np.random.PCG64(ss)))


def inject_fault(G: Digraph, edge: tuple[int, int]) -> Digraph:
    """Remove one directed edge (never a self-loop)."""
    j, i = edge
    if j == i:
        raise ValueError("self-loops cannot be removed")
    if (j, i) not in G.edges:
        raise ValueError(f"edge {j} -> {i} is not in the graph")
    return Digraph(G.n, G.edges - {(j, i)})


@dataclass(frozen=True)
class DiameterSummary:
    samples: int
    strongly_connected_fraction: float
    min_diameter: int | None
    median_diameter: float | None
    max_diameter: int | None
    rng: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        return asdict(self)


def measure_diameter_distribution(spec: GenSpec, samples: int) -> DiameterSummary:
    """Diameter statistics over strongly connected samples of ``spec``.

    Non-strongly-connected samples count only toward the fraction.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    spec.validate()
    diams = []
    for s in range(samples):
        G = generate_sample(spec, s)
        if is_strongly_connected(G):
            diams.append(int(diameter(G)))
    if not diams:
        return DiameterSummary(samples, 0.0, None, None, None)
    return DiameterSummary(
        samples,
        len(diams) / samples,
        min(diams),
        statistics.median(diams),
        max(diams),
    )
