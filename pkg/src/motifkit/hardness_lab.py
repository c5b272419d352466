"""The hardness machinery as executable artifacts: biclique automorphism
groups and their prime-order subgroups, orbit analysis of the subset action,
the mod-k coefficient congruence, witness searches for hereditary and
twin-invariant properties, the inclusion-exclusion reductions, and the
classifier that places a finite forbidden set into its complexity row.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import CapacityError, InputError, InternalConsistencyError
from .graphs import (
    BipartiteGraph,
    Graph,
    biclique,
    bip_independent,
    bip_induced_subgraph,
    canonical_form,
    clique,
    delete_vertices,
    independent,
    twin_free_quotient,
)
from .homomorphisms import ConsistentColouring
from .motif_basis import full_mask_coefficient, psi_values
from .properties import (
    BipartitePropertyOracle,
    ForbiddenSet,
    ImplantSpec,
    PropertyOracle,
    eval_hereditary,
    implant_graph,
    inverse_forbidden_set,
)

GROUP_ORDER_CAP = 20_000


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on [0, degree), given by generators."""

    degree: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for g in self.generators:
            if sorted(g) != list(range(self.degree)):
                raise InputError("generator is not a permutation of the degree")

    def identity(self) -> tuple[int, ...]:
        return tuple(range(self.degree))

    def elements(self, cap: int = GROUP_ORDER_CAP) -> list[tuple[int, ...]]:
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    prod = tuple(g[h[i]] for i in range(self.degree))
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
                        if len(seen) > cap:
                            raise CapacityError(
                                f"group order cap {cap} exceeded"
                            )
            frontier = nxt
        return sorted(seen)

    def order(self) -> int:
        return len(self.elements())

    def point_orbit(self, x: int) -> frozenset[int]:
        seen = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in self.generators:
                if g[y] not in seen:
                    seen.add(g[y])
                    frontier.append(g[y])
        return frozenset(seen)


def _edge_index(k: int, a: int, b: int) -> int:
    return a * k + b


def consistent_automorphism_group(k: int) -> PermGroup:
    """Side-preserving automorphisms of the k,k-biclique acting on its k²
    edge indices; generated by adjacent transpositions on each side."""
    if not 0 < k <= 5:
        raise CapacityError("k must be in [1, 5]")
    gens = []
    for i in range(k - 1):
        # swap left vertices i, i+1
        g = list(range(k * k))
        for b in range(k):
            g[_edge_index(k, i, b)] = _edge_index(k, i + 1, b)
            g[_edge_index(k, i + 1, b)] = _edge_index(k, i, b)
        gens.append(tuple(g))
        # swap right vertices i, i+1
        g = list(range(k * k))
        for a in range(k):
            g[_edge_index(k, a, i)] = _edge_index(k, a, i + 1)
            g[_edge_index(k, a, i + 1)] = _edge_index(k, a, i)
        gens.append(tuple(g))
    group = PermGroup(k * k, tuple(gens))
    if len(group.point_orbit(0)) != k * k:
        raise InternalConsistencyError("automorphism group is not edge-transitive")
    return group


def sylow_k_subgroup(k: int) -> PermGroup:
    """The order-k² subgroup generated by one k-cycle on each side."""
    if k not in (2, 3, 5):
        raise InputError("k must be a prime in [2, 5]")
    left = list(range(k * k))
    right = list(range(k * k))
    for a in range(k):
        for b in range(k):
            left[_edge_index(k, a, b)] = _edge_index(k, (a + 1) % k, b)
            right[_edge_index(k, a, b)] = _edge_index(k, a, (b + 1) % k)
    group = PermGroup(k * k, (tuple(left), tuple(right)))
    if group.order() != k * k:
        raise InternalConsistencyError("subgroup does not have order k²")
    if len(group.point_orbit(0)) != k * k:
        raise InternalConsistencyError("subgroup action is not edge-transitive")
    return group


@dataclass(frozen=True)
class OrbitReport:
    group_order: int
    degree: int
    num_orbits: int
    fixed_points: tuple[int, ...]
    orbit_size_histogram: dict[int, int]
    orbits: tuple[frozenset[int], ...] | None = None
    min_labels: object = None  # numpy array on the streamed path

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "degree": self.degree,
            "num_orbits": self.num_orbits,
            "fixed_points": list(self.fixed_points),
            "orbit_size_histogram": {
                str(k): v for k, v in sorted(self.orbit_size_histogram.items())
            },
        }


EXHAUSTIVE_ORBIT_MASKS = 1 << 16
STREAMED_GROUP_CAP = 256


def _apply_to_mask(perm: Sequence[int], mask: int) -> int:
    out = 0
    i = 0
    while mask >> i:
        if mask >> i & 1:
            out |= 1 << perm[i]
        i += 1
    return out


def orbit_decompose(group: PermGroup, k: int) -> OrbitReport:
    """Orbits of the 2^{k²} edge-subset masks under the extended action.

    Exhaustive (with explicit orbit lists) while the mask space is small;
    streamed via orbit-minimum labelling beyond that.
    """
    m = group.degree
    if m != k * k:
        raise InputError("group degree does not match k²")
    nmasks = 1 << m
    if nmasks <= EXHAUSTIVE_ORBIT_MASKS:
        elements = group.elements()
        seen = [False] * nmasks
        orbits = []
        for start in range(nmasks):
            if seen[start]:
                continue
            orb = {_apply_to_mask(g, start) for g in elements}
            for x in orb:
                seen[x] = True
            orbits.append(frozenset(orb))
        hist: dict[int, int] = {}
        for o in orbits:
            hist[len(o)] = hist.get(len(o), 0) + 1
        fixed = tuple(sorted(min(o) for o in orbits if len(o) == 1))
        return OrbitReport(
            group_order=len(elements),
            degree=m,
            num_orbits=len(orbits),
            fixed_points=fixed,
            orbit_size_histogram=hist,
            orbits=tuple(orbits),
        )
    elements = group.elements(cap=STREAMED_GROUP_CAP)
    perms = [g for g in elements if g != group.identity()]
    labels = _kernels.orbit_min_labels(perms, m)
    uniq, counts = np.unique(labels, return_counts=True)
    hist = {}
    for size in np.unique(counts):
        hist[int(size)] = int((counts == size).sum())
    fixed = tuple(int(x) for x in uniq[counts == 1])
    return OrbitReport(
        group_order=len(elements),
        degree=m,
        num_orbits=int(uniq.shape[0]),
        fixed_points=fixed,
        orbit_size_histogram=hist,
        orbits=None,
        min_labels=labels,
    )


# ---------------------------------------------------------------------------
# orbit-respecting Ψ assignments


def orbit_assignments(report: OrbitReport) -> Iterable[list[int]]:
    """Every 0/1 assignment constant on orbits, as mask-indexed value lists.
    Exhaustive reports only — 2^{num_orbits} assignments."""
    if report.orbits is None:
        raise CapacityError("exhaustive assignments need explicit orbits")
    orbits = report.orbits
    nmasks = 1 << report.degree
    for bits in range(1 << len(orbits)):
        values = [0] * nmasks
        for i, orb in enumerate(orbits):
            if bits >> i & 1:
                for x in orb:
                    values[x] = 1
        yield values


def _splitmix64(x: np.ndarray) -> np.ndarray:
    z = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    z ^= z >> np.uint64(30)
    z = (z * np.uint64(0xBF58476D1CE4E5B9)).astype(np.uint64)
    z ^= z >> np.uint64(27)
    z = (z * np.uint64(0x94D049BB133111EB)).astype(np.uint64)
    z ^= z >> np.uint64(31)
    return z


def random_orbit_assignment(report: OrbitReport, seed: int):
    """A seeded random 0/1 assignment constant on orbits (mask-indexed)."""
    if report.min_labels is not None:
        labels = np.asarray(report.min_labels, dtype=np.uint64)
        with np.errstate(over="ignore"):
            return (_splitmix64(labels ^ np.uint64(seed)) >> np.uint64(63)).astype(
                np.int64
            )
    rng = random.Random(seed)
    nmasks = 1 << report.degree
    values = [0] * nmasks
    for orb in report.orbits:
        bit = rng.randint(0, 1)
        if bit:
            for x in orb:
                values[x] = 1
    return values


# ---------------------------------------------------------------------------
# mod-k coefficient congruence


def biclique_coeff_check(
    psi, k: int, values: Sequence[int] | None = None
) -> tuple[int, int, bool]:
    """Exact a_{E} of the k,k-biclique plus its residue mod k; asserts the
    congruence a ≡ Ψ(B) + (−1)^{k²}·Ψ(I) (mod k) and that a ≠ 0 whenever
    Ψ(B) ≠ Ψ(I).  Returns (a, a mod k, a != 0)."""
    if k not in (2, 3, 5):
        raise InputError("k must be a prime in [2, 5]")
    m = k * k
    B = biclique(k)
    if values is None:
        if m > 16:
            raise CapacityError(
                "full Ψ sweep infeasible at k=5; pass a values array"
            )
        values = psi_values(psi, B)
    if len(values) != 1 << m:
        raise InputError(f"values must have length 2^{m}")
    a = full_mask_coefficient(values, m)
    psi_b = int(values[(1 << m) - 1])
    psi_i = int(values[0])
    expected = (psi_b + (-1) ** m * psi_i) % k
    if a % k != expected:
        raise InternalConsistencyError(
            f"congruence violated: a={a}, a mod {k} = {a % k}, expected {expected}"
        )
    if psi_b != psi_i and a == 0:
        raise InternalConsistencyError(
            "coefficient vanished although Ψ separates the biclique from "
            "the edgeless bipartite graph"
        )
    return a, a % k, a != 0


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class WitnessReport:
    kind: str  # "hereditary" | "twin-invariant"
    negative: bool
    host: Graph | None = None
    spec: ImplantSpec | None = None
    edge: tuple[int, int] | None = None
    quotient_edges: int | None = None
    verified_k: tuple[int, ...] = ()
    searched_n_max: int | None = None

    def to_json(self) -> dict:
        if self.negative:
            return {
                "kind": self.kind,
                "negative": True,
                "searched_n_max": self.searched_n_max,
            }
        doc = {
            "kind": self.kind,
            "negative": False,
            "host": {
                "n": self.host.n,
                "edges": [list(e) for e in self.host.sorted_edges()],
            },
            "B1": sorted(self.spec.B1),
            "B2": sorted(self.spec.B2),
            "verified_k": list(self.verified_k),
        }
        if self.quotient_edges is not None:
            doc["quotient_edges"] = self.quotient_edges
        if self.edge is not None:
            doc["edge"] = list(self.edge)
        return doc


def hereditary_witness(pi: ForbiddenSet, extra_k: int = 3) -> WitnessReport:
    """Pick the forbidden member whose twin-free quotient has the fewest
    edges, implant into its first adjacent block pair, and verify that the
    implant property separates bicliques from edgeless bipartite graphs."""
    if len(pi) == 0:
        raise InputError("empty forbidden set has no witness")
    for H in pi:
        if not H.edges:
            raise InputError(
                "a forbidden member has no edge; route through the inverse "
                "property first"
            )

    def score(H: Graph):
        Q, _ = twin_free_quotient(H)
        return (len(Q.edges), H.n, canonical_form(H))

    H = min(pi, key=score)
    Q, part = twin_free_quotient(H)
    blocks = part.blocks
    pair = None
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if H.has_edge(blocks[i][0], blocks[j][0]):
                pair = (i, j)
                break
        if pair:
            break
    spec = ImplantSpec(H, frozenset(blocks[pair[0]]), frozenset(blocks[pair[1]]))

    def psi(Bg: BipartiteGraph) -> int:
        return eval_hereditary(pi, implant_graph(spec, Bg))

    verified = []
    for k in range(H.n + 1, H.n + 1 + extra_k):
        if psi(biclique(k)) != 0 or psi(bip_independent(k)) != 1:
            raise InternalConsistencyError(
                f"witness verification failed at k={k} for host {H!r}"
            )
        FI = implant_graph(spec, bip_independent(k))
        FIq, _ = twin_free_quotient(FI)
        if not len(FIq.edges) < len(Q.edges):
            raise InternalConsistencyError(
                f"quotient edge drop failed at k={k}: "
                f"{len(FIq.edges)} vs {len(Q.edges)}"
            )
        verified.append(k)
    return WitnessReport(
        kind="hereditary",
        negative=False,
        host=H,
        spec=spec,
        quotient_edges=len(Q.edges),
        verified_k=tuple(verified),
    )


def twin_invariant_witness(
    phi: PropertyOracle | Callable[[Graph], int], n_max: int = 4
) -> WitnessReport:
    """Smallest edge-sensitive pair: the first (H, e) with Φ(H) ≠ Φ(H−e),
    implanted on the edge's endpoints."""
    if n_max > 7:
        raise CapacityError("witness search cap is n_max ≤ 7")
    fn = phi.eval if isinstance(phi, PropertyOracle) else phi
    for n in range(2, n_max + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            if not edges:
                continue
            H = Graph(n, edges)
            base = fn(H)
            for e in sorted(edges):
                Hm = Graph(n, [f for f in edges if f != e])
                if fn(Hm) != base:
                    spec = ImplantSpec(H, frozenset({e[0]}), frozenset({e[1]}))
                    verified = []
                    for k in range(1, 5):
                        vb = fn(implant_graph(spec, biclique(k)))
                        vi = fn(implant_graph(spec, bip_independent(k)))
                        if vb == vi:
                            raise InternalConsistencyError(
                                f"implant failed to separate at k={k}; is the "
                                "property twin-invariant?"
                            )
                        verified.append(k)
                    return WitnessReport(
                        kind="twin-invariant",
                        negative=False,
                        host=H,
                        spec=spec,
                        edge=e,
                        verified_k=tuple(verified),
                        searched_n_max=n_max,
                    )
    return WitnessReport(
        kind="twin-invariant", negative=True, searched_n_max=n_max
    )


# ---------------------------------------------------------------------------
# inclusion-exclusion reductions


def reduce_bip_to_indsub(
    phi: PropertyOracle | Callable[[Graph], int],
    spec: ImplantSpec,
    B: BipartiteGraph,
    k: int,
    indsub_oracle: Callable[[object, int, Graph], int],
) -> int:
    """count_bip_indsub(Ψ_Φ, k, B) from a plain property-count oracle, by
    inclusion-exclusion over deletions of the implant's outside part.
    Makes exactly 2^{|R|} oracle calls."""
    F = implant_graph(spec, B)
    r = len(spec.R)
    r_vertices = list(range(B.n, B.n + r))
    total = 0
    for t in range(r + 1):
        for J in itertools.combinations(r_vertices, t):
            total += (-1) ** t * indsub_oracle(phi, k + r, delete_vertices(F, J))
    return total


def colourful_from_uncoloured(
    psi: BipartitePropertyOracle | Callable[[BipartiteGraph], int],
    c: ConsistentColouring,
    B: BipartiteGraph,
    bip_oracle: Callable[[object, int, BipartiteGraph], int],
) -> int:
    """count_cp_bip_indsub(Ψ, c, B) from an uncoloured-count oracle, by
    inclusion-exclusion over colour subsets; 2^{|V(pattern)|} calls."""
    if c.host != B:
        raise InputError("colouring does not match host")
    kb = c.pattern.n
    total = 0
    for t in range(kb + 1):
        for C in itertools.combinations(range(kb), t):
            keep = [x for x in range(B.n) if c.map[x] in C]
            sub = bip_induced_subgraph(B, keep)
            total += (-1) ** (kb - t) * bip_oracle(psi, kb, sub)
    return total


# ---------------------------------------------------------------------------
# the classifier


_RAMSEY_EXACT = {(3, 3): 6, (3, 4): 9, (3, 5): 14, (4, 4): 18}


def ramsey_bound(s: int, t: int) -> int:
    """Vertex count forcing a K_s or an I_t: exact small values, binomial
    bound beyond the table."""
    if s < 1 or t < 1:
        raise InputError("Ramsey arguments must be positive")
    if s == 1 or t == 1:
        return 1
    if s == 2:
        return t
    if t == 2:
        return s
    key = (min(s, t), max(s, t))
    if key in _RAMSEY_EXACT:
        return _RAMSEY_EXACT[key]
    return comb(s + t - 2, s - 1)


_ROW_STATEMENTS = {
    "constant-true": "trivial property: counting and decision in polynomial time",
    "meagre": (
        "meagre property: zero for every k at or beyond the Ramsey vertex "
        "bound; counting and decision in polynomial time"
    ),
    "forall-cliques-and-independents": (
        "true on all cliques and independent sets: exact counting is "
        "#W[1]-complete while decision is fixed-parameter tractable"
    ),
    "otherwise": (
        "false on some clique or independent set: exact counting is "
        "#W[1]-complete and decision is W[1]-complete"
    ),
}


@dataclass(frozen=True)
class ClassificationReport:
    forbidden: ForbiddenSet
    row: str
    s: int | None = None
    t: int | None = None
    ramsey_bound: int | None = None
    witness: WitnessReport | None = None
    witness_via_inverse: bool = False
    statement: str = ""

    def to_json(self) -> dict:
        doc: dict = {"row": self.row, "statement": self.statement}
        if self.s is not None:
            doc["s"] = self.s
        if self.t is not None:
            doc["t"] = self.t
        if self.ramsey_bound is not None:
            doc["ramsey_bound"] = self.ramsey_bound
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
            doc["witness_via_inverse"] = self.witness_via_inverse
        return doc


def classify_hereditary(pi: ForbiddenSet) -> ClassificationReport:
    """Place a finite minimal forbidden set into its complexity row, with
    populated evidence (Ramsey bound or verified witness)."""
    if len(pi) == 0:
        return ClassificationReport(
            forbidden=pi, row="constant-true", statement=_ROW_STATEMENTS["constant-true"]
        )
    complete_sizes = sorted(
        H.n for H in pi if len(H.edges) == comb(H.n, 2)
    )
    edgeless_sizes = sorted(H.n for H in pi if not H.edges)
    if complete_sizes and edgeless_sizes:
        s, t = complete_sizes[0], edgeless_sizes[0]
        return ClassificationReport(
            forbidden=pi,
            row="meagre",
            s=s,
            t=t,
            ramsey_bound=ramsey_bound(s, t),
            statement=_ROW_STATEMENTS["meagre"],
        )
    if not complete_sizes and not edgeless_sizes:
        return ClassificationReport(
            forbidden=pi,
            row="forall-cliques-and-independents",
            witness=hereditary_witness(pi),
            statement=_ROW_STATEMENTS["forall-cliques-and-independents"],
        )
    if edgeless_sizes:
        # every complement member has an edge, so the witness lives there
        witness = hereditary_witness(inverse_forbidden_set(pi))
        via_inverse = True
        t = edgeless_sizes[0]
        s = None
    else:
        witness = hereditary_witness(pi)
        via_inverse = False
        s = complete_sizes[0]
        t = None
    return ClassificationReport(
        forbidden=pi,
        row="otherwise",
        s=s,
        t=t,
        witness=witness,
        witness_via_inverse=via_inverse,
        statement=_ROW_STATEMENTS["otherwise"],
    )
