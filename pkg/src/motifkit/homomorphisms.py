"""Exact counting of homomorphisms, embeddings and their colour-prescribed
variants, plus the tensor-product constructions the extraction algorithm
queries.

Every count is an exact Python int.  count_homs dispatches between a brute
backtracking path and a tree-decomposition DP; both are public so tests can
cross-check one against the other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import CapacityError, InputError
from .graphs import BipartiteGraph, Graph, tree_decomposition

DEFAULT_PATTERN_CAP = 12
BRUTE_DISPATCH_LIMIT = 5


@dataclass(frozen=True)
class Colouring:
    """A homomorphism c from host G into pattern H (an H-colouring of G)."""

    pattern: Graph
    host: Graph
    map: tuple[int, ...]

    def __post_init__(self):
        H, G, c = self.pattern, self.host, self.map
        if len(c) != G.n:
            raise InputError("colouring length does not match host size")
        for x in c:
            if not 0 <= x < H.n:
                raise InputError(f"colour {x} out of range")
        for u, v in G.edges:
            if not H.has_edge(c[u], c[v]):
                raise InputError(
                    f"not a homomorphism: host edge ({u},{v}) maps to "
                    f"non-edge ({c[u]},{c[v]})"
                )

    @property
    def surjective(self) -> bool:
        return set(self.map) == set(range(self.pattern.n))

    def bucket(self, v: int) -> list[int]:
        return [x for x, col in enumerate(self.map) if col == v]

    def buckets(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.pattern.n)]
        for x, col in enumerate(self.map):
            out[col].append(x)
        return out


@dataclass(frozen=True)
class ConsistentColouring:
    """Side-respecting colouring of a bipartite host by a bipartite pattern.

    The map is over underlying vertex indices; side 1 must land in side 1.
    """

    pattern: BipartiteGraph
    host: BipartiteGraph
    map: tuple[int, ...]

    def __post_init__(self):
        Hb, Gb, c = self.pattern, self.host, self.map
        if len(c) != Gb.n:
            raise InputError("colouring length does not match host size")
        for x in range(Gb.n):
            if x < Gb.n1:
                if not 0 <= c[x] < Hb.n1:
                    raise InputError(f"side-1 vertex {x} coloured off-side")
            else:
                if not Hb.n1 <= c[x] < Hb.n:
                    raise InputError(f"side-2 vertex {x} coloured off-side")
        H, G = Hb.underlying(), Gb.underlying()
        for u, v in G.edges:
            if not H.has_edge(c[u], c[v]):
                raise InputError("not a consistent homomorphism")

    def underlying(self) -> Colouring:
        return Colouring(self.pattern.underlying(), self.host.underlying(), self.map)


def identity_colouring(H: Graph) -> Colouring:
    return Colouring(H, H, tuple(range(H.n)))


def bip_identity_colouring(H: BipartiteGraph) -> ConsistentColouring:
    return ConsistentColouring(H, H, tuple(range(H.n)))


def bip_edge_subgraph_colouring(
    H: BipartiteGraph, edges: Iterable[tuple[int, int]]
) -> ConsistentColouring:
    """The identity colouring of H[T] (same vertices, edge subset T) by H."""
    return ConsistentColouring(H, H.edge_subgraph(edges), tuple(range(H.n)))


# ---------------------------------------------------------------------------
# plain counting


def count_homs_bruteforce(H: Graph, G: Graph) -> int:
    if G.n == 0:
        return 1 if H.n == 0 else 0
    total = 0
    img = [0] * H.n

    def rec(i: int) -> None:
        nonlocal total
        if i == H.n:
            total += 1
            return
        back = [u for u in H.neighbours(i) if u < i]
        for x in range(G.n):
            if all(G.has_edge(img[u], x) for u in back):
                img[i] = x
                rec(i + 1)

    rec(0)
    return total


def count_homs_treewidth_dp(H: Graph, G: Graph) -> int:
    """Hom count by dynamic programming over an optimal tree decomposition."""
    if H.n == 0:
        return 1
    if G.n == 0:
        return 0
    order, bags, parent = tree_decomposition(H)
    pos = {v: i for i, v in enumerate(order)}
    children: dict[int, list[int]] = {i: [] for i in range(len(bags))}
    for i in range(len(bags) - 1):
        children[parent[i]].append(i)

    # h_tables[i]: assignment of bag_i ∖ {order[i]} (sorted tuple of vertices,
    # fixed at key construction) -> summed count over images of order[i].
    h_tables: dict[int, dict[tuple[int, ...], int]] = {}
    for i in range(len(bags)):
        bag = sorted(bags[i])
        v = order[i]
        rest = tuple(u for u in bag if u != v)
        table: dict[tuple[int, ...], int] = {}
        kids = children[i]
        kid_keys = [tuple(sorted(bags[j] - {order[j]})) for j in kids]
        for assign in itertools.product(range(G.n), repeat=len(bag)):
            phi = dict(zip(bag, assign))
            if any(
                not G.has_edge(phi[a], phi[b])
                for a in bag
                for b in bag
                if a < b and H.has_edge(a, b)
            ):
                continue
            val = 1
            for j, key in zip(kids, kid_keys):
                val *= h_tables[j].get(tuple(phi[u] for u in key), 0)
                if val == 0:
                    break
            if val:
                rkey = tuple(phi[u] for u in rest)
                table[rkey] = table.get(rkey, 0) + val
        h_tables[i] = table
    root = len(bags) - 1
    return h_tables[root].get((), 0)


def count_homs(H: Graph, G: Graph, cap: int = DEFAULT_PATTERN_CAP) -> int:
    if H.n > cap:
        raise CapacityError(f"pattern cap {cap} exceeded (n={H.n})")
    if H.n <= BRUTE_DISPATCH_LIMIT:
        return count_homs_bruteforce(H, G)
    return count_homs_treewidth_dp(H, G)


def _count_injective(H: Graph, G: Graph, strong: bool) -> int:
    total = 0
    img = [0] * H.n
    used = [False] * max(G.n, 1)

    def rec(i: int) -> None:
        nonlocal total
        if i == H.n:
            total += 1
            return
        for x in range(G.n):
            if used[x]:
                continue
            ok = True
            for u in range(i):
                e = H.has_edge(u, i)
                f = G.has_edge(img[u], x)
                if e and not f or strong and f and not e:
                    ok = False
                    break
            if ok:
                img[i] = x
                used[x] = True
                rec(i + 1)
                used[x] = False

    rec(0)
    return total


DEFAULT_EMBED_CAP = 8


def count_embeddings(H: Graph, G: Graph, cap: int = DEFAULT_EMBED_CAP) -> int:
    if H.n > cap:
        raise CapacityError(f"embedding pattern cap {cap} exceeded (n={H.n})")
    return _count_injective(H, G, strong=False)


def count_strong_embeddings(H: Graph, G: Graph, cap: int = DEFAULT_EMBED_CAP) -> int:
    if H.n > cap:
        raise CapacityError(f"embedding pattern cap {cap} exceeded (n={H.n})")
    return _count_injective(H, G, strong=True)


def has_strong_embedding(H: Graph, G: Graph, cap: int = DEFAULT_EMBED_CAP) -> bool:
    """Early-exit existence test: is H an induced subgraph of G?"""
    if H.n > cap:
        raise CapacityError(f"embedding pattern cap {cap} exceeded (n={H.n})")
    if H.n > G.n:
        return False
    img = [0] * H.n
    used = [False] * max(G.n, 1)

    def rec(i: int) -> bool:
        if i == H.n:
            return True
        for x in range(G.n):
            if used[x]:
                continue
            ok = True
            for u in range(i):
                if H.has_edge(u, i) != G.has_edge(img[u], x):
                    ok = False
                    break
            if ok:
                img[i] = x
                used[x] = True
                if rec(i + 1):
                    used[x] = False
                    return True
                used[x] = False
        return False

    return rec(0)


def count_automorphisms(H: Graph) -> int:
    return count_strong_embeddings(H, H, cap=max(H.n, DEFAULT_EMBED_CAP))


# ---------------------------------------------------------------------------
# colour-prescribed counting


def _check_edge_subset(H: Graph, A: Iterable[tuple[int, int]]) -> frozenset:
    norm = frozenset((min(u, v), max(u, v)) for u, v in A)
    if not norm <= H.edges:
        raise InputError("A is not a subset of the pattern's edges")
    return norm


def count_cp_homs(
    H: Graph, A: Iterable[tuple[int, int]], c: Colouring, G: Graph
) -> int:
    """Maps φ: V(H)→V(G) with c∘φ = id and every A-edge preserved."""
    if c.pattern != H or c.host != G:
        raise InputError("colouring does not match pattern/host")
    A = _check_edge_subset(H, A)
    buckets = c.buckets()
    verts = sorted(range(H.n), key=lambda v: len(buckets[v]))
    rank = {v: i for i, v in enumerate(verts)}
    constraints: list[list[int]] = [
        [u for u in range(H.n) if rank[u] < rank[v]
         and ((min(u, v), max(u, v)) in A)]
        for v in range(H.n)
    ]
    img = [0] * H.n
    total = 0

    def rec(i: int) -> None:
        nonlocal total
        if i == H.n:
            total += 1
            return
        v = verts[i]
        for x in buckets[v]:
            if all(G.has_edge(img[u], x) for u in constraints[v]):
                img[v] = x
                rec(i + 1)

    rec(0)
    return total


def count_cp_indsubs(
    H: Graph, A: Iterable[tuple[int, int]], c: Colouring, G: Graph
) -> int:
    """Sets S with one vertex per colour such that c|_S: G[S] ≅ H[A]."""
    if c.pattern != H or c.host != G:
        raise InputError("colouring does not match pattern/host")
    A = _check_edge_subset(H, A)
    buckets = c.buckets()
    verts = sorted(range(H.n), key=lambda v: len(buckets[v]))
    rank = {v: i for i, v in enumerate(verts)}
    img = [0] * H.n
    total = 0

    def rec(i: int) -> None:
        nonlocal total
        if i == H.n:
            total += 1
            return
        v = verts[i]
        for x in buckets[v]:
            ok = True
            for u in range(H.n):
                if rank[u] < i:
                    want = (min(u, v), max(u, v)) in A
                    if G.has_edge(img[u], x) != want:
                        ok = False
                        break
            if ok:
                img[v] = x
                rec(i + 1)

    rec(0)
    return total


# ---------------------------------------------------------------------------
# tensor products


def cp_tensor(
    G: Graph, c: Colouring, G2: Graph, c2: Colouring
) -> tuple[Graph, Colouring]:
    """Colour-prescribed tensor product of two coloured hosts."""
    if c.pattern != c2.pattern:
        raise InputError("tensor factors must share a pattern")
    if c.host != G or c2.host != G2:
        raise InputError("colouring does not match its host")
    verts = [
        (v, w) for v in range(G.n) for w in range(G2.n) if c.map[v] == c2.map[w]
    ]
    idx = {p: i for i, p in enumerate(verts)}
    edges = [
        (idx[(v, w)], idx[(v2, w2)])
        for (v, w) in verts
        for (v2, w2) in verts
        if idx[(v, w)] < idx[(v2, w2)]
        and G.has_edge(v, v2)
        and G2.has_edge(w, w2)
    ]
    T = Graph(len(verts), edges)
    col = Colouring(c.pattern, T, tuple(c.map[v] for v, _ in verts))
    return T, col


def bip_cp_tensor(
    Gb: BipartiteGraph,
    c: ConsistentColouring,
    Gb2: BipartiteGraph,
    c2: ConsistentColouring,
) -> tuple[BipartiteGraph, ConsistentColouring]:
    """Bipartite variant; underlying graph equals the plain cp_tensor."""
    if c.pattern != c2.pattern:
        raise InputError("tensor factors must share a pattern")
    if c.host != Gb or c2.host != Gb2:
        raise InputError("colouring does not match its host")
    left = [
        (v, w)
        for v in range(Gb.n1)
        for w in range(Gb2.n1)
        if c.map[v] == c2.map[w]
    ]
    right = [
        (v, w)
        for v in range(Gb.n1, Gb.n)
        for w in range(Gb2.n1, Gb2.n)
        if c.map[v] == c2.map[w]
    ]
    lidx = {p: i for i, p in enumerate(left)}
    ridx = {p: i for i, p in enumerate(right)}
    G, G2 = Gb.underlying(), Gb2.underlying()
    edges = [
        (lidx[(v, w)], ridx[(v2, w2)])
        for (v, w) in left
        for (v2, w2) in right
        if G.has_edge(v, v2) and G2.has_edge(w, w2)
    ]
    T = BipartiteGraph(len(left), len(right), edges)
    cmap = tuple(c.map[v] for v, _ in left) + tuple(c.map[v] for v, _ in right)
    col = ConsistentColouring(c.pattern, T, cmap)
    return T, col
