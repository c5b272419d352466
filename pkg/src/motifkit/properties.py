"""Property oracles over graphs and bipartite graphs, hereditary properties
given by finite forbidden sets, the implant gadget, and the brute-force
counting oracles that everything else is checked against.

Oracle registration eagerly spot-checks isomorphism invariance on seeded
random relabelings and rejects violators — non-invariant "properties" break
all the downstream algebra silently, so they are refused up front.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, InputError
from .graphs import (
    BipartiteGraph,
    Graph,
    bip_canonical_form,
    bip_independent,
    bip_induced_subgraph,
    biclique,
    canonical_form,
    clique,
    complement,
    independent,
    induced_subgraph,
    path_graph,
    star_graph,
)
from .homomorphisms import ConsistentColouring, has_strong_embedding

DEFAULT_ENUM_CAP = 2_000_000

_CHECK_SEED = 0x5EED
_CHECK_GRAPHS = 12
_CHECK_PERMS = 4


def _invariance_check(name: str, fn: Callable[[Graph], int]) -> None:
    rng = random.Random(_CHECK_SEED)
    for _ in range(_CHECK_GRAPHS):
        n = rng.randint(1, 6)
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5
        ]
        G = Graph(n, edges)
        base = fn(G)
        if base not in (0, 1):
            raise InputError(f"oracle {name!r} returned non-boolean {base!r}")
        for _ in range(_CHECK_PERMS):
            perm = list(range(n))
            rng.shuffle(perm)
            G2 = Graph(n, [(perm[u], perm[v]) for u, v in edges])
            if fn(G2) != base:
                raise InputError(f"oracle {name!r} is not isomorphism-invariant")


def _bip_invariance_check(name: str, fn: Callable[[BipartiteGraph], int]) -> None:
    rng = random.Random(_CHECK_SEED ^ 1)
    for _ in range(_CHECK_GRAPHS):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        edges = [
            (i, j) for i in range(n1) for j in range(n2) if rng.random() < 0.5
        ]
        B = BipartiteGraph(n1, n2, edges)
        base = fn(B)
        if base not in (0, 1):
            raise InputError(f"oracle {name!r} returned non-boolean {base!r}")
        for _ in range(_CHECK_PERMS):
            p1 = list(range(n1))
            p2 = list(range(n2))
            rng.shuffle(p1)
            rng.shuffle(p2)
            B2 = BipartiteGraph(n1, n2, [(p1[u], p2[v]) for u, v in edges])
            if fn(B2) != base:
                raise InputError(
                    f"oracle {name!r} is not consistent-isomorphism-invariant"
                )


@dataclass(frozen=True)
class PropertyOracle:
    name: str
    eval: Callable[[Graph], int]
    claimed_hereditary: bool = False
    claimed_twin_invariant: bool = False

    def __post_init__(self):
        _invariance_check(self.name, self.eval)

    def __call__(self, G: Graph) -> int:
        return self.eval(G)


@dataclass(frozen=True)
class BipartitePropertyOracle:
    name: str
    eval: Callable[[BipartiteGraph], int]
    skip_check: bool = False

    def __post_init__(self):
        if not self.skip_check:
            _bip_invariance_check(self.name, self.eval)

    def __call__(self, B: BipartiteGraph) -> int:
        return self.eval(B)


# ---------------------------------------------------------------------------
# hereditary properties via finite forbidden sets


@dataclass(frozen=True)
class ForbiddenSet:
    """Inclusion-minimal, pairwise non-isomorphic forbidden induced subgraphs."""

    members: tuple[Graph, ...]

    def __post_init__(self):
        keys = set()
        for H in self.members:
            if H.n == 0:
                raise InputError("forbidden member must have at least one vertex")
            k = canonical_form(H)
            if k in keys:
                raise InputError("forbidden set has isomorphic duplicates")
            keys.add(k)
        for H1 in self.members:
            for H2 in self.members:
                if H1 is not H2 and has_strong_embedding(H1, H2):
                    raise InputError("forbidden set is not inclusion-minimal")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def minimalize_forbidden_set(graphs: Iterable[Graph]) -> ForbiddenSet:
    uniq: dict = {}
    for H in graphs:
        uniq.setdefault(canonical_form(H), H)
    keep = []
    for H in uniq.values():
        if not any(
            other is not H and has_strong_embedding(other, H)
            for other in uniq.values()
        ):
            keep.append(H)
    keep.sort(key=canonical_form)
    return ForbiddenSet(tuple(keep))


def eval_hereditary(pi: ForbiddenSet, G: Graph) -> int:
    return 0 if any(has_strong_embedding(H, G) for H in pi) else 1


def hereditary_oracle(pi: ForbiddenSet, name: str) -> PropertyOracle:
    return PropertyOracle(
        name=name,
        eval=lambda G: eval_hereditary(pi, G),
        claimed_hereditary=True,
    )


def inverse_forbidden_set(pi: ForbiddenSet) -> ForbiddenSet:
    return minimalize_forbidden_set([complement(H) for H in pi])


def inverse_property(phi: PropertyOracle) -> PropertyOracle:
    return PropertyOracle(
        name=f"inverse-{phi.name}",
        eval=lambda G: phi.eval(complement(G)),
        claimed_hereditary=phi.claimed_hereditary,
    )


# ---------------------------------------------------------------------------
# implants


@dataclass(frozen=True)
class ImplantSpec:
    """Two disjoint false-twin sets of a host graph, ready to receive the two
    sides of a bipartite graph."""

    host: Graph
    B1: frozenset[int]
    B2: frozenset[int]

    def __post_init__(self):
        H = self.host
        if not self.B1 or not self.B2:
            raise InputError("implant blocks must be nonempty")
        if self.B1 & self.B2:
            raise InputError("implant blocks must be disjoint")
        for B in (self.B1, self.B2):
            for v in B:
                if not 0 <= v < H.n:
                    raise InputError(f"block vertex {v} out of range")
            hoods = {H.adj[v] for v in B}
            if len(hoods) != 1:
                raise InputError("block vertices must be pairwise false twins")

    @property
    def R(self) -> tuple[int, ...]:
        return tuple(sorted(set(range(self.host.n)) - self.B1 - self.B2))


def implant_graph(spec: ImplantSpec, B: BipartiteGraph) -> Graph:
    """Replace the two blocks by the sides of B, replicating outside
    attachments.  Vertices are numbered side 1, side 2, then R ascending."""
    H = spec.host
    R = spec.R
    n1, n2 = B.n1, B.n2
    rpos = {r: n1 + n2 + i for i, r in enumerate(R)}
    b1 = min(spec.B1)
    b2 = min(spec.B2)
    edges: list[tuple[int, int]] = []
    for i, r in enumerate(R):
        for s in R[i + 1 :]:
            if H.has_edge(r, s):
                edges.append((rpos[r], rpos[s]))
    edges.extend((u, n1 + v) for u, v in B.edges)
    for r in R:
        if H.has_edge(r, b1):
            edges.extend((v, rpos[r]) for v in range(n1))
        if H.has_edge(r, b2):
            edges.extend((n1 + v, rpos[r]) for v in range(n2))
    return Graph(n1 + n2 + len(R), edges)


def implant_property(phi: PropertyOracle, spec: ImplantSpec) -> BipartitePropertyOracle:
    return BipartitePropertyOracle(
        name=f"implant-{phi.name}",
        eval=lambda B: phi.eval(implant_graph(spec, B)),
    )


# ---------------------------------------------------------------------------
# brute-force counting oracles


def count_indsub(
    phi: PropertyOracle | Callable[[Graph], int],
    k: int,
    G: Graph,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    if k < 0:
        raise InputError("k must be nonnegative")
    if k > G.n:
        return 0
    if comb(G.n, k) > cap:
        raise CapacityError(f"enumeration cap {cap} exceeded: C({G.n},{k})")
    fn = phi.eval if isinstance(phi, PropertyOracle) else phi
    return sum(
        1 for S in itertools.combinations(range(G.n), k) if fn(induced_subgraph(G, S))
    )


def count_bip_indsub(
    psi: BipartitePropertyOracle | Callable[[BipartiteGraph], int],
    k: int,
    B: BipartiteGraph,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    if k < 0:
        raise InputError("k must be nonnegative")
    if k > B.n:
        return 0
    if comb(B.n, k) > cap:
        raise CapacityError(f"enumeration cap {cap} exceeded: C({B.n},{k})")
    fn = psi.eval if isinstance(psi, BipartitePropertyOracle) else psi
    return sum(
        1
        for S in itertools.combinations(range(B.n), k)
        if fn(bip_induced_subgraph(B, S))
    )


def count_cp_bip_indsub(
    psi: BipartitePropertyOracle | Callable[[BipartiteGraph], int],
    c: ConsistentColouring,
    B: BipartiteGraph,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """One host vertex per pattern colour; counts S with Ψ(B[S]) = 1."""
    if c.host != B:
        raise InputError("colouring does not match host")
    fn = psi.eval if isinstance(psi, BipartitePropertyOracle) else psi
    H = c.pattern
    buckets: list[list[int]] = [[] for _ in range(H.n)]
    for x, col in enumerate(c.map):
        buckets[col].append(x)
    total_tuples = 1
    for b in buckets:
        total_tuples *= len(b)
        if total_tuples == 0:
            return 0
    if total_tuples > cap:
        raise CapacityError(f"enumeration cap {cap} exceeded: {total_tuples} tuples")
    count = 0
    for combo in itertools.product(*buckets):
        if fn(bip_induced_subgraph(B, combo)):
            count += 1
    return count


def meagre_fast_count(pi: ForbiddenSet, k: int, G: Graph, certificate) -> int:
    """Polynomial fast path for meagre properties; requires a classifier
    certificate (row 'meagre' or 'constant-true' covering this Π)."""
    row = getattr(certificate, "row", None)
    if row == "constant-true":
        if len(pi) != 0:
            raise InputError("certificate does not match the forbidden set")
        return comb(G.n, k)
    if row != "meagre":
        raise InputError("meagre_fast_count requires a meagre certificate")
    cert_keys = {canonical_form(H) for H in certificate.forbidden}
    if cert_keys != {canonical_form(H) for H in pi}:
        raise InputError("certificate does not match the forbidden set")
    n0 = certificate.ramsey_bound
    if k >= n0:
        return 0
    return count_indsub(lambda F: eval_hereditary(pi, F), k, G)


# ---------------------------------------------------------------------------
# builtin catalogue


def _is_bipartite(G: Graph) -> int:
    colour = [-1] * G.n
    for s in range(G.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in G.neighbours(v):
                if colour[u] < 0:
                    colour[u] = colour[v] ^ 1
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return 0
    return 1


def _is_chordal(G: Graph) -> int:
    # repeatedly strip simplicial vertices; chordal iff all vertices go
    alive = set(range(G.n))
    adj = {v: set(G.neighbours(v)) for v in range(G.n)}
    while alive:
        for v in alive:
            nb = adj[v] & alive
            if all(G.has_edge(a, b) for a in nb for b in nb if a < b):
                alive.discard(v)
                break
        else:
            return 0
    return 1


def _is_disconnected(G: Graph) -> int:
    if G.n <= 1:
        return 0
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in G.neighbours(v):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return 1 if len(seen) < G.n else 0


def _odd_girth(G: Graph) -> int | None:
    # shortest odd cycle via BFS on the bipartite double cover
    best = None
    for s in range(G.n):
        dist = {(s, 0): 0}
        queue = [(s, 0)]
        while queue:
            v, p = queue.pop(0)
            for u in G.neighbours(v):
                node = (u, p ^ 1)
                if node not in dist:
                    dist[node] = dist[(v, p)] + 1
                    queue.append(node)
        if (s, 1) in dist and (best is None or dist[(s, 1)] < best):
            best = dist[(s, 1)]
    return best


def _chromatic_number(G: Graph) -> int:
    if G.n == 0:
        return 0

    def colourable(k: int) -> bool:
        cols = [-1] * G.n

        def rec(v: int) -> bool:
            if v == G.n:
                return True
            used = {cols[u] for u in G.neighbours(v) if cols[u] >= 0}
            for c in range(min(k, v + 1)):
                if c not in used:
                    cols[v] = c
                    if rec(v + 1):
                        return True
                    cols[v] = -1
            return False

        return rec(0)

    k = 1
    while not colourable(k):
        k += 1
    return k


def _clique_number(G: Graph) -> int:
    best = 0
    order = sorted(range(G.n), key=G.degree, reverse=True)

    def rec(chosen: list[int], cands: list[int]) -> None:
        nonlocal best
        if len(chosen) + len(cands) <= best:
            return
        if not cands:
            best = max(best, len(chosen))
            return
        v = cands[0]
        rec(chosen + [v], [u for u in cands[1:] if G.has_edge(u, v)])
        rec(chosen, cands[1:])

    rec([], order)
    return best


FORBIDDEN_SETS: dict[str, ForbiddenSet] = {
    "constant-true": ForbiddenSet(()),
    "edgeless": ForbiddenSet((clique(2),)),
    "complete": ForbiddenSet((independent(2),)),
    "triangle-free": ForbiddenSet((clique(3),)),
    "co-triangle-free": ForbiddenSet((independent(3),)),
    "cluster": ForbiddenSet((path_graph(3),)),
    "claw-free": ForbiddenSet((star_graph(3),)),
    "ramsey-3-3": ForbiddenSet((clique(3), independent(3))),
}


def builtin_catalogue() -> list[PropertyOracle]:
    out = [hereditary_oracle(pi, name) for name, pi in FORBIDDEN_SETS.items()]
    out.append(
        PropertyOracle("bipartite", _is_bipartite, claimed_hereditary=True)
    )
    out.append(
        PropertyOracle("hole-free", _is_chordal, claimed_hereditary=True)
    )
    out.append(
        PropertyOracle(
            "disconnected", _is_disconnected, claimed_twin_invariant=True
        )
    )
    out.append(
        PropertyOracle(
            "odd-girth-5",
            lambda G: 1 if _odd_girth(G) == 5 else 0,
            claimed_twin_invariant=True,
        )
    )
    out.append(
        PropertyOracle(
            "chromatic-number-3",
            lambda G: 1 if _chromatic_number(G) == 3 else 0,
            claimed_twin_invariant=True,
        )
    )
    out.append(
        PropertyOracle(
            "clique-number-2",
            lambda G: 1 if _clique_number(G) == 2 else 0,
            claimed_twin_invariant=True,
        )
    )
    return out


def builtin_property(name: str) -> PropertyOracle:
    for p in builtin_catalogue():
        if p.name == name:
            return p
    raise InputError(f"unknown builtin property {name!r}")


def _has_perfect_matching(B: BipartiteGraph) -> int:
    if B.n1 != B.n2:
        return 0
    adj = {u: [] for u in range(B.n1)}
    for u, v in B.edges:
        adj[u].append(v)
    match = [-1] * B.n2

    def augment(u: int, seen: set) -> bool:
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match[v] < 0 or augment(match[v], seen):
                match[v] = u
                return True
        return False

    return 1 if all(augment(u, set()) for u in range(B.n1)) else 0


def builtin_bip_catalogue() -> list[BipartitePropertyOracle]:
    return [
        BipartitePropertyOracle("constant-true", lambda B: 1),
        BipartitePropertyOracle(
            "has-edge", lambda B: 1 if B.edges else 0
        ),
        BipartitePropertyOracle(
            "left-singleton", lambda B: 1 if B.n1 == 1 else 0
        ),
        BipartitePropertyOracle(
            "biclique", lambda B: 1 if len(B.edges) == B.n1 * B.n2 else 0
        ),
        BipartitePropertyOracle("has-perfect-matching", _has_perfect_matching),
    ]


def builtin_bip_property(name: str) -> BipartitePropertyOracle:
    for p in builtin_bip_catalogue():
        if p.name == name:
            return p
    raise InputError(f"unknown builtin bipartite property {name!r}")


def random_bip_property(seed: int, name: str = "random") -> BipartitePropertyOracle:
    """A seeded random truth table over consistent-isomorphism classes.

    Invariant by construction (keyed on the canonical form), and stable
    across processes (no reliance on randomized string hashing).
    """

    def fn(B: BipartiteGraph) -> int:
        _, n1, n2, bits = bip_canonical_form(B)
        mix = ((bits * 1_000_003 + n1 * 31 + n2) ^ seed) & (2**63 - 1)
        return random.Random(mix).randint(0, 1)

    return BipartitePropertyOracle(f"{name}-{seed}", fn, skip_check=True)
