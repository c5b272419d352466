import random

import pytest

from motifkit.graphs import BipartiteGraph, Graph
from motifkit.homomorphisms import Colouring, ConsistentColouring

# one "ACCEPTANCE n: PASS/FAIL" line per criterion, echoed after the run
# (fd-level capture would otherwise swallow prints from passing tests)
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rand_graph(rng: random.Random, n_max: int = 8, n_min: int = 1, p: float = 0.5) -> Graph:
    n = rng.randint(n_min, n_max)
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def rand_bipgraph(
    rng: random.Random, n1_max: int = 4, n2_max: int = 4, p: float = 0.5
) -> BipartiteGraph:
    n1 = rng.randint(1, n1_max)
    n2 = rng.randint(1, n2_max)
    edges = [(i, j) for i in range(n1) for j in range(n2) if rng.random() < p]
    return BipartiteGraph(n1, n2, edges)


def rand_coloured_host(
    rng: random.Random, H: Graph, n: int, p: float = 0.6
) -> tuple[Graph, Colouring]:
    """A host G with a valid H-colouring: colours first (one per pattern
    vertex guaranteed when n >= |V(H)|), edges only where H allows."""
    cmap = list(range(min(H.n, n)))
    cmap += [rng.randrange(H.n) for _ in range(n - len(cmap))]
    rng.shuffle(cmap)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if H.has_edge(cmap[u], cmap[v]) and rng.random() < p:
                edges.append((u, v))
    G = Graph(n, edges)
    return G, Colouring(H, G, tuple(cmap))


def rand_consistent_host(
    rng: random.Random, Hb: BipartiteGraph, n1: int, n2: int, p: float = 0.6
) -> tuple[BipartiteGraph, ConsistentColouring]:
    """Bipartite analogue of rand_coloured_host (side-respecting colours)."""
    left = list(range(min(Hb.n1, n1)))
    left += [rng.randrange(Hb.n1) for _ in range(n1 - len(left))]
    rng.shuffle(left)
    right = list(range(min(Hb.n2, n2)))
    right += [rng.randrange(Hb.n2) for _ in range(n2 - len(right))]
    rng.shuffle(right)
    H = Hb.underlying()
    edges = []
    for u in range(n1):
        for v in range(n2):
            if H.has_edge(left[u], Hb.n1 + right[v]) and rng.random() < p:
                edges.append((u, v))
    B = BipartiteGraph(n1, n2, edges)
    cmap = tuple(left) + tuple(Hb.n1 + r for r in right)
    return B, ConsistentColouring(Hb, B, cmap)
