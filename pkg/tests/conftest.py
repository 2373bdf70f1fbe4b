import random

import pytest

from maxconsensus.graph import adjacency, from_edges

_acceptance_results = []


def random_edges(rng, n, p=None):
    p = rng.random() if p is None else p
    return [(j, i) for j in range(1, n + 1) for i in range(1, n + 1) if j != i and rng.random() < p]


def random_matrix(rng, n, p=None):
    return adjacency(from_edges(n, random_edges(rng, n, p)))


def random_strongly_connected(rng, n):
    """Random Hamiltonian cycle plus random chords."""
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = [(perm[k], perm[(k + 1) % n]) for k in range(n)] if n > 1 else []
    edges += random_edges(rng, n, rng.random() * 0.5)
    return from_edges(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def cycle3():
    return from_edges(3, [(1, 2), (2, 3), (3, 1)])


@pytest.fixture
def path3():
    return from_edges(3, [(1, 2), (2, 3)])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") and rep.when == "call":
        doc = (item.obj.__doc__ or item.name).strip().splitlines()[0]
        _acceptance_results.append((doc, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for doc, outcome in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {doc}")
