import random

import pytest

from nearindep.graph import Graph
from nearindep.search import gen_graphs

ACCEPTANCE_LINES: list[str] = []


def random_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture(scope="session")
def classes_upto7():
    """One graph per isomorphism class, orders 1..7 (1252 graphs)."""
    return [g for n in range(1, 8) for g in gen_graphs(n)]


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # JIT compilation happens once per session; keep it out of timed checks
    from nearindep.search import extremal_scan

    extremal_scan(4, "ng_max")
    extremal_scan(4, "ng_min", "trees")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
