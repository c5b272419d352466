"""Homomorphism-basis machinery: coefficients of the coloured bipartite
basis, the uncoloured basis over canonical graphs, basis evaluation, the
treewidth profile of the support, and the triangular-system extraction that
recovers individual colour-prescribed homomorphism counts from oracle access
to a property count.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from . import _kernels
from .errors import CapacityError, InputError, InternalConsistencyError
from .graphs import (
    BipartiteGraph,
    CanonicalForm,
    Graph,
    canonical_form,
    canonical_graph,
    treewidth_exact,
)
from .homomorphisms import (
    Colouring,
    ConsistentColouring,
    bip_cp_tensor,
    bip_identity_colouring,
    count_cp_homs,
    count_homs,
)
from .properties import BipartitePropertyOracle, PropertyOracle

DEFAULT_MASK_CAP = 25


def mask_cap() -> int:
    env = os.environ.get("MOTIFKIT_MAX_MASK_BITS")
    if env is None:
        return DEFAULT_MASK_CAP
    try:
        cap = int(env)
    except ValueError:
        raise InputError(f"MOTIFKIT_MAX_MASK_BITS={env!r} is not an integer")
    if cap <= 0:
        raise InputError("MOTIFKIT_MAX_MASK_BITS must be positive")
    return cap


def edge_order(B: BipartiteGraph) -> list[tuple[int, int]]:
    """The frozen edge ordering that gives EdgeSubset masks their meaning."""
    return B.sorted_edges()


def mask_to_edges(mask: int, order: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [e for i, e in enumerate(order) if mask >> i & 1]


def edges_to_mask(edges: Iterable[tuple[int, int]], order: Sequence[tuple[int, int]]) -> int:
    pos = {e: i for i, e in enumerate(order)}
    mask = 0
    for e in edges:
        if e not in pos:
            raise InputError(f"edge {e} not in the host's edge order")
        mask |= 1 << pos[e]
    return mask


@dataclass(frozen=True)
class CoefficientTable:
    """Exact coefficients keyed by edge-subset mask (bipartite mode) or by
    canonical graph (uncoloured mode)."""

    mode: str  # "bipartite-coloured" | "uncoloured"
    host: BipartiteGraph | None
    edge_order: tuple[tuple[int, int], ...]
    entries: dict
    k: int | None = None
    property_name: str | None = None

    def coefficient(self, key):
        return self.entries.get(key, 0)

    def support(self):
        return [k for k, v in self.entries.items() if v != 0]

    def to_json(self) -> dict:
        doc: dict = {"mode": self.mode}
        if self.mode == "bipartite-coloured":
            doc["host"] = {
                "n1": self.host.n1,
                "n2": self.host.n2,
                "edges": [list(e) for e in self.host.sorted_edges()],
            }
            doc["edge_order"] = [list(e) for e in self.edge_order]
            doc["entries"] = [
                {"key": str(mask), "numerator": str(v), "denominator": "1"}
                for mask, v in sorted(self.entries.items())
                if v != 0
            ]
        else:
            doc["host"] = {"k": self.k, "property": self.property_name}
            doc["edge_order"] = []
            items = sorted(
                self.entries.items(), key=lambda kv: canonical_form(kv[0])
            )
            doc["entries"] = [
                {
                    "key": {"n": H.n, "edges": [list(e) for e in H.sorted_edges()]},
                    "numerator": str(v.numerator),
                    "denominator": str(v.denominator),
                }
                for H, v in items
                if v != 0
            ]
        return doc


# ---------------------------------------------------------------------------
# bipartite coloured basis (alternating-sum coefficients)


def psi_values(psi: BipartitePropertyOracle | Callable, B: BipartiteGraph) -> list[int]:
    """Ψ evaluated on H[A] for every edge-subset mask A, in mask order."""
    order = edge_order(B)
    m = len(order)
    if m > mask_cap():
        raise CapacityError(f"mask cap {mask_cap()} exceeded ({m} edges)")
    fn = psi.eval if isinstance(psi, BipartitePropertyOracle) else psi
    out = []
    for mask in range(1 << m):
        sub = B.edge_subgraph(mask_to_edges(mask, order))
        out.append(int(fn(sub)))
    return out


def bip_coefficients(
    psi: BipartitePropertyOracle | Callable | None,
    B: BipartiteGraph,
    values: Sequence[int] | None = None,
) -> CoefficientTable:
    """a_T = Σ_{A⊆T} Ψ(H[A])·(−1)^{|T|−|A|} for every T, by one sign-transform
    pass.  `values` may supply the Ψ sweep directly (mask-indexed)."""
    order = tuple(edge_order(B))
    m = len(order)
    if m > mask_cap():
        raise CapacityError(f"mask cap {mask_cap()} exceeded ({m} edges)")
    if values is None:
        if psi is None:
            raise InputError("need either psi or values")
        values = psi_values(psi, B)
    if len(values) != 1 << m:
        raise InputError(f"values must have length 2^{m}")
    coeffs = _kernels.subset_sign_transform(values)
    entries = {mask: int(coeffs[mask]) for mask in range(1 << m) if coeffs[mask]}
    return CoefficientTable(
        mode="bipartite-coloured", host=B, edge_order=order, entries=entries
    )


def full_mask_coefficient(values, m: int) -> int:
    """a_{E} alone: Σ_A Ψ(A)·(−1)^{m−|A|} without the full transform."""
    if len(values) != 1 << m:
        raise InputError(f"values must have length 2^{m}")
    return _kernels.popcount_signed_sum(values, m)


def eval_via_bip_basis(
    psi: BipartitePropertyOracle | Callable,
    B: BipartiteGraph,
    c: ConsistentColouring,
    G: BipartiteGraph,
    table: CoefficientTable | None = None,
) -> int:
    """Σ_T a_T · #cpHom(H[T] → G); equals the brute-force property count."""
    if table is None:
        table = bip_coefficients(psi, B)
    if c.pattern != B or c.host != G:
        raise InputError("colouring does not match pattern/host")
    H = B.underlying()
    cu = c.underlying()
    Gu = G.underlying()
    total = 0
    for mask, a in table.entries.items():
        edges = [
            (u, B.n1 + v) for u, v in mask_to_edges(mask, table.edge_order)
        ]
        total += a * count_cp_homs(H, edges, cu, Gu)
    return total


# ---------------------------------------------------------------------------
# uncoloured basis over canonical graphs


def _set_partitions(n: int):
    """All set partitions of range(n) as tuples of blocks (restricted growth)."""
    if n == 0:
        yield ()
        return
    code = [0] * n

    def rec(i: int, maxc: int):
        if i == n:
            blocks: dict[int, list[int]] = {}
            for v, c in enumerate(code):
                blocks.setdefault(c, []).append(v)
            yield tuple(tuple(blocks[c]) for c in sorted(blocks))
            return
        for c in range(maxc + 2):
            code[i] = c
            yield from rec(i + 1, max(maxc, c))

    yield from rec(1, 0)


def _partition_mobius(blocks) -> int:
    mu = 1
    for b in blocks:
        s = len(b)
        mu *= (-1) ** (s - 1) * factorial(s - 1)
    return mu


def uncoloured_hom_basis(
    phi: PropertyOracle | Callable[[Graph], int], k: int, cap: int = 5
) -> CoefficientTable:
    """The unique finite expansion of the k-vertex property count in
    homomorphism counts, built in two stages: edge-superset inclusion-
    exclusion (strong embeddings → embeddings) followed by partition-lattice
    Möbius inversion (embeddings → homomorphisms)."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if k > cap:
        raise CapacityError(f"basis cap {cap} exceeded (k={k})")
    fn = phi.eval if isinstance(phi, PropertyOracle) else phi
    name = phi.name if isinstance(phi, PropertyOracle) else None
    pairs = list(itertools.combinations(range(k), 2))
    m = len(pairs)

    # w(F') = Σ_{F ⊆ F'} Φ(F)·(−1)^{|E'|−|E|}, one sign transform over masks
    phi_by_class: dict[CanonicalForm, int] = {}
    values = []
    for mask in range(1 << m):
        F = Graph(k, [pairs[i] for i in range(m) if mask >> i & 1])
        key = canonical_form(F)
        if key not in phi_by_class:
            phi_by_class[key] = int(fn(F))
        values.append(phi_by_class[key])
    weights = _kernels.subset_sign_transform(values)

    entries: dict[Graph, Fraction] = {}
    kfact = factorial(k)
    partitions = list(_set_partitions(k))
    rep_cache: dict[Graph, Graph] = {}
    for mask in range(1 << m):
        w = int(weights[mask])
        if w == 0:
            continue
        F = Graph(k, [pairs[i] for i in range(m) if mask >> i & 1])
        for blocks in partitions:
            # blocks containing an edge quotient to a self-loop: zero homs
            if any(
                F.has_edge(a, b) for blk in blocks for a in blk for b in blk if a < b
            ):
                continue
            rep = {v: i for i, blk in enumerate(blocks) for v in blk}
            qedges = {
                (min(rep[u], rep[v]), max(rep[u], rep[v])) for u, v in F.edges
            }
            Q = Graph(len(blocks), qedges)
            key = rep_cache.get(Q)
            if key is None:
                key = canonical_graph(canonical_form(Q))
                rep_cache[Q] = key
            entries[key] = entries.get(key, Fraction(0)) + Fraction(
                w * _partition_mobius(blocks), kfact
            )
    entries = {H: v for H, v in entries.items() if v != 0}
    return CoefficientTable(
        mode="uncoloured",
        host=None,
        edge_order=(),
        entries=entries,
        k=k,
        property_name=name,
    )


def eval_via_hom_basis(
    phi: PropertyOracle | Callable[[Graph], int],
    k: int,
    G: Graph,
    table: CoefficientTable | None = None,
) -> int:
    if table is None:
        table = uncoloured_hom_basis(phi, k)
    total = Fraction(0)
    for H, a in table.entries.items():
        total += a * count_homs(H, G)
    if total.denominator != 1 or total < 0:
        raise InternalConsistencyError(
            f"basis evaluation produced non-count value {total}"
        )
    return int(total)


def t_phi(phi, k: int, table: CoefficientTable | None = None) -> int:
    """Max treewidth over the basis support; −1 when the support is empty."""
    if table is None:
        table = uncoloured_hom_basis(phi, k)
    tws = [treewidth_exact(H) for H in table.support()]
    return max(tws, default=-1)


# ---------------------------------------------------------------------------
# triangular system and extraction

SYSTEM_MATRIX_CAP = 8


def system_matrix(B: BipartiteGraph, cap: int = SYSTEM_MATRIX_CAP) -> list[list[int]]:
    """M(T,T̂) = #cpHom(H[T] → H[T̂]) under the identity colouring; computed
    honestly, then asserted to be the subset-lattice zeta matrix."""
    order = edge_order(B)
    m = len(order)
    if m > cap:
        raise CapacityError(f"system-matrix cap {cap} exceeded ({m} edges)")
    H = B.underlying()
    rows = []
    for T in range(1 << m):
        tedges = [(u, B.n1 + v) for u, v in mask_to_edges(T, order)]
        row = []
        for That in range(1 << m):
            host = B.edge_subgraph(mask_to_edges(That, order)).underlying()
            c = Colouring(H, host, tuple(range(H.n)))
            val = count_cp_homs(H, tedges, c, host)
            expect = 1 if T & ~That == 0 else 0
            if val != expect:
                raise InternalConsistencyError(
                    f"system matrix entry ({T},{That}) = {val}, expected {expect}"
                )
            row.append(val)
        rows.append(row)
    return rows


@dataclass(frozen=True)
class ExtractionReport:
    host: BipartiteGraph
    recovered: dict  # mask -> exact #cpHom for every a_T != 0
    ledger: tuple  # one record per oracle query
    size_bound: int

    def to_json(self) -> dict:
        return {
            "recovered": {str(k): str(v) for k, v in sorted(self.recovered.items())},
            "queries": [dict(q) for q in self.ledger],
            "size_bound": self.size_bound,
            "all_within_bound": all(
                q["vertices"] <= self.size_bound for q in self.ledger
            ),
        }


def mobius_extract(
    oracle: Callable[[BipartiteGraph, ConsistentColouring], int],
    B: BipartiteGraph,
    c: ConsistentColouring,
    G: BipartiteGraph,
    coefficients: CoefficientTable,
) -> ExtractionReport:
    """Recover #cpHom(H[T] → G) for every T with a_T ≠ 0 from oracle access
    to the property count, querying only on tensor products with H[T̂]."""
    if c.pattern != B or c.host != G:
        raise InputError("colouring does not match pattern/host")
    if coefficients.mode != "bipartite-coloured" or coefficients.host != B:
        raise InputError("coefficient table does not match the host pattern")
    order = coefficients.edge_order
    m = len(order)
    bound = B.n * G.n
    ledger = []
    y = []
    for That in range(1 << m):
        sub = B.edge_subgraph(mask_to_edges(That, order))
        idc = ConsistentColouring(B, sub, tuple(range(B.n)))
        T_graph, T_col = bip_cp_tensor(G, c, sub, idc)
        if T_graph.n > bound:
            raise InternalConsistencyError(
                f"query on {T_graph.n} vertices exceeds bound {bound}"
            )
        ledger.append({"mask": That, "vertices": T_graph.n, "edges": len(T_graph.edges)})
        y.append(int(oracle(T_graph, T_col)))
    b = _kernels.subset_sign_transform(y)
    recovered = {}
    for T, a in coefficients.entries.items():
        if a == 0:
            continue
        bT = int(b[T])
        if bT % a != 0:
            raise InternalConsistencyError(
                f"b_T={bT} not divisible by a_T={a} at mask {T}"
            )
        recovered[T] = bT // a
    return ExtractionReport(
        host=B, recovered=recovered, ledger=tuple(ledger), size_bound=bound
    )
