"""Core graph values: plain graphs, bipartite graphs with ordered sides,
twin-free quotients, canonical forms and exact treewidth.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapacityError, InputError

DEFAULT_CANON_CAP = 10
DEFAULT_TREEWIDTH_CAP = 12

CanonicalForm = tuple


class Graph:
    """Undirected simple graph on vertices [0, n) with bitset adjacency."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            norm.add((min(u, v), max(u, v)))
        adj = [0] * n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, *a):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbours(self, v: int) -> list[int]:
        return _bits(self.adj[v])


class BipartiteGraph:
    """Bipartite graph with an ordered bipartition; (V1,V2,E) != (V2,V1,E)."""

    __slots__ = ("n1", "n2", "edges")

    def __init__(self, n1: int, n2: int, edges: Iterable[tuple[int, int]] = ()):
        if n1 < 0 or n2 < 0:
            raise InputError("side sizes must be nonnegative")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n1 and 0 <= v < n2):
                raise InputError(f"edge ({u},{v}) out of range for sides ({n1},{n2})")
            norm.add((u, v))
        object.__setattr__(self, "n1", n1)
        object.__setattr__(self, "n2", n2)
        object.__setattr__(self, "edges", frozenset(norm))

    def __setattr__(self, *a):
        raise AttributeError("BipartiteGraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BipartiteGraph)
            and (self.n1, self.n2, self.edges) == (other.n1, other.n2, other.edges)
        )

    def __hash__(self):
        return hash((self.n1, self.n2, self.edges))

    def __repr__(self):
        return f"BipartiteGraph(n1={self.n1}, n2={self.n2}, m={len(self.edges)})"

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def underlying(self) -> Graph:
        """Forget the bipartition; side-2 vertex v becomes n1 + v."""
        return Graph(self.n, [(u, self.n1 + v) for u, v in self.edges])

    def edge_subgraph(self, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        edges = set(edges)
        if not edges <= self.edges:
            raise InputError("edge subset contains non-edges")
        return BipartiteGraph(self.n1, self.n2, edges)


@dataclass(frozen=True)
class BlockPartition:
    """False-twin equivalence classes of a graph, ordered by smallest member."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise InputError(f"vertex {v} not in partition")


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# constructors


def clique(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def independent(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def biclique(k: int) -> BipartiteGraph:
    return BipartiteGraph(k, k, [(i, j) for i in range(k) for j in range(k)])


def bip_independent(k: int) -> BipartiteGraph:
    return BipartiteGraph(k, k)


# ---------------------------------------------------------------------------
# basic operations


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """G[S] relabelled to [0,|S|) preserving the sorted order of S."""
    S = sorted(set(S))
    for v in S:
        if not 0 <= v < G.n:
            raise InputError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(S)}
    edges = [(pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos]
    return Graph(len(S), edges)


def delete_vertices(G: Graph, J: Iterable[int]) -> Graph:
    return induced_subgraph(G, set(range(G.n)) - set(J))


def bip_induced_subgraph(B: BipartiteGraph, S: Iterable[int]) -> BipartiteGraph:
    """B[S] for S a set of underlying indices; sides keep their order."""
    S = set(S)
    for v in S:
        if not 0 <= v < B.n:
            raise InputError(f"vertex {v} out of range")
    left = sorted(v for v in S if v < B.n1)
    right = sorted(v - B.n1 for v in S if v >= B.n1)
    lpos = {v: i for i, v in enumerate(left)}
    rpos = {v: i for i, v in enumerate(right)}
    edges = [
        (lpos[u], rpos[v]) for u, v in B.edges if u in lpos and v in rpos
    ]
    return BipartiteGraph(len(left), len(right), edges)


def complement(G: Graph) -> Graph:
    edges = [
        (i, j)
        for i in range(G.n)
        for j in range(i + 1, G.n)
        if not G.has_edge(i, j)
    ]
    return Graph(G.n, edges)


def twin_free_quotient(H: Graph) -> tuple[Graph, BlockPartition]:
    """Quotient by the false-twin relation (identical neighbourhoods)."""
    groups: dict[int, list[int]] = {}
    for v in range(H.n):
        groups.setdefault(H.adj[v], []).append(v)
    blocks = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0])
    part = BlockPartition(H.n, tuple(blocks))
    reps = [b[0] for b in blocks]
    edges = [
        (i, j)
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if H.has_edge(reps[i], reps[j])
    ]
    return Graph(len(blocks), edges), part


# ---------------------------------------------------------------------------
# canonical forms
#
# Minimum adjacency-matrix key over vertex permutations, pruned by colour
# refinement plus individualization.  Cells that are internally uniform and
# uniformly attached to every other cell admit an arbitrary inner order, which
# short-circuits the worst transitive cases (cliques, bicliques, ...).


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    n = len(colors)
    while True:
        sigs = []
        for v in range(n):
            cnt: dict[int, int] = {}
            for u in _bits(adj[v]):
                cnt[colors[u]] = cnt.get(colors[u], 0) + 1
            sigs.append((colors[v], tuple(sorted(cnt.items()))))
        lut = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [lut[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _cells(colors: list[int]) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        out.setdefault(c, []).append(v)
    return [out[c] for c in sorted(out)]


def _homogeneous(adj: Sequence[int], cells: list[list[int]]) -> bool:
    for cell in cells:
        if len(cell) > 1:
            inner = [adj[u] for u in cell]
            mask = 0
            for v in cell:
                mask |= 1 << v
            degs = {(a & mask).bit_count() for a in inner}
            if degs not in ({0}, {len(cell) - 1}):
                return False
    for i, ci in enumerate(cells):
        mi = 0
        for v in ci:
            mi |= 1 << v
        for cj in cells[i + 1 :]:
            counts = {(adj[u] & mi).bit_count() for u in cj}
            if counts not in ({0}, {len(ci)}):
                return False
    return True


def _canon_search(adj: Sequence[int], init_colors: list[int], key_fn):
    best = [None]

    def rec(colors: list[int]):
        colors = _refine(adj, colors)
        cells = _cells(colors)
        if all(len(c) == 1 for c in cells) or _homogeneous(adj, cells):
            perm = [v for cell in cells for v in cell]
            key = key_fn(perm)
            if best[0] is None or key < best[0]:
                best[0] = key
            return
        target = next(c for c in cells if len(c) > 1)
        hi = max(colors) + 1
        for v in target:
            child = list(colors)
            child[v] = hi
            rec(child)

    rec(init_colors)
    return best[0]


def canonical_form(G: Graph, cap: int = DEFAULT_CANON_CAP) -> CanonicalForm:
    """Total-order key; equal keys iff isomorphic.  Exhaustive, so capped."""
    if G.n > cap:
        raise CapacityError(f"canonization cap {cap} exceeded (n={G.n})")
    n = G.n
    if n == 0:
        return ("g", 0, 0)

    def key(perm):
        inv = [0] * n
        for pos, v in enumerate(perm):
            inv[v] = pos
        bits = 0
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                bits = bits << 1 | (G.adj[perm[i]] >> perm[j] & 1)
                idx += 1
        return bits

    return ("g", n, _canon_search(G.adj, [0] * n, key))


def bip_canonical_form(B: BipartiteGraph, cap: int = DEFAULT_CANON_CAP) -> CanonicalForm:
    """Key under consistent (side-respecting) isomorphism."""
    if B.n > cap:
        raise CapacityError(f"canonization cap {cap} exceeded (n={B.n})")
    n1, n2 = B.n1, B.n2
    G = B.underlying()
    if B.n == 0:
        return ("b", 0, 0, 0)

    def key(perm):
        # refinement keeps side-1 colours below side-2, so perm lists side 1 first
        left = perm[:n1]
        right = perm[n1:]
        bits = 0
        for u in left:
            for w in right:
                bits = bits << 1 | (G.adj[u] >> w & 1)
        return bits

    init = [0] * n1 + [1] * n2
    return ("b", n1, n2, _canon_search(G.adj, init, key))


def canonical_graph(form: CanonicalForm) -> Graph:
    """Rebuild the representative graph encoded by a canonical_form key."""
    tag, n, bits = form
    if tag != "g":
        raise InputError("not a plain-graph canonical form")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total = len(pairs)
    edges = [
        pairs[p] for p in range(total) if bits >> (total - 1 - p) & 1
    ]
    return Graph(n, edges)


def are_isomorphic(G1: Graph, G2: Graph) -> bool:
    return canonical_form(G1) == canonical_form(G2)


def are_consistently_isomorphic(B1: BipartiteGraph, B2: BipartiteGraph) -> bool:
    return bip_canonical_form(B1) == bip_canonical_form(B2)


# ---------------------------------------------------------------------------
# exact treewidth


def treewidth_exact(G: Graph, cap: int = DEFAULT_TREEWIDTH_CAP) -> int:
    """Exact treewidth by dynamic programming over elimination prefixes."""
    if G.n > cap:
        raise CapacityError(f"treewidth cap {cap} exceeded (n={G.n})")
    n = G.n
    if n == 0:
        return -1
    full = (1 << n) - 1
    adj = G.adj

    def elim_degree(S: int, v: int) -> int:
        # vertices outside S∪{v} adjacent to v or reachable from v through S
        reach = 1 << v
        while True:
            nb = 0
            m = reach
            while m:
                b = m & -m
                nb |= adj[b.bit_length() - 1]
                m ^= b
            grown = reach | (nb & S)
            if grown == reach:
                boundary = nb & ~S & ~(1 << v)
                return boundary.bit_count()
            reach = grown

    f = [0] * (1 << n)
    f[0] = -1
    for S in sorted(range(1, 1 << n), key=lambda s: s.bit_count()):
        best = n
        m = S
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            prev = S ^ (1 << v)
            cost = max(f[prev], elim_degree(prev, v))
            if cost < best:
                best = cost
        f[S] = best
    return f[full]


def elimination_order(G: Graph, cap: int = DEFAULT_TREEWIDTH_CAP) -> list[int]:
    """An elimination order achieving treewidth_exact(G)."""
    if G.n > cap:
        raise CapacityError(f"treewidth cap {cap} exceeded (n={G.n})")
    n = G.n
    if n == 0:
        return []
    adj = G.adj

    def elim_degree(S: int, v: int) -> int:
        reach = 1 << v
        while True:
            nb = 0
            m = reach
            while m:
                b = m & -m
                nb |= adj[b.bit_length() - 1]
                m ^= b
            grown = reach | (nb & S)
            if grown == reach:
                return (nb & ~S & ~(1 << v)).bit_count()
            reach = grown

    f = [0] * (1 << n)
    f[0] = -1
    for S in sorted(range(1, 1 << n), key=lambda s: s.bit_count()):
        f[S] = min(
            max(f[S ^ (1 << v)], elim_degree(S ^ (1 << v), v)) for v in _bits(S)
        )
    order_rev = []
    S = (1 << n) - 1
    while S:
        v = min(
            _bits(S),
            key=lambda v: max(f[S ^ (1 << v)], elim_degree(S ^ (1 << v), v)),
        )
        order_rev.append(v)
        S ^= 1 << v
    return order_rev[::-1]


def tree_decomposition(
    G: Graph,
) -> tuple[list[int], list[frozenset[int]], dict[int, int]]:
    """Optimal-width tree decomposition from an optimal elimination order.

    Returns (order, bags, parent): bags[i] is the bag of vertex order[i]
    (the vertex plus its higher fill-in neighbours), parent maps bag index
    to bag index and the root maps to itself.
    """
    order = elimination_order(G)
    n = G.n
    if n == 0:
        return [], [frozenset()], {0: 0}
    pos = {v: i for i, v in enumerate(order)}
    fill = [set(G.neighbours(v)) for v in range(n)]
    bags_by_vertex: dict[int, frozenset[int]] = {}
    for v in order:
        later = {u for u in fill[v] if pos[u] > pos[v]}
        bags_by_vertex[v] = frozenset({v} | later)
        for a in later:
            for b in later:
                if a != b:
                    fill[a].add(b)
    bags = [bags_by_vertex[v] for v in order]
    parent = {}
    for i, v in enumerate(order):
        later = [u for u in bags[i] if pos[u] > pos[v]]
        if later:
            parent[i] = pos[min(later, key=lambda u: pos[u])]
        else:
            parent[i] = len(order) - 1  # attach to the root bag
    parent[len(order) - 1] = len(order) - 1
    return order, bags, parent
