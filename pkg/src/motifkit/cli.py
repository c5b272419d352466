"""Command-line front end: line-oriented graph formats, property selectors,
one JSON result document per run, and brute-force cross-check switches.

Exit codes: 0 success, 2 input error, 3 capacity error, 4 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, _kernels
from .errors import (
    CapacityError,
    InputError,
    InternalConsistencyError,
    MotifkitError,
)
from .graphs import (
    BipartiteGraph,
    Graph,
    biclique,
    treewidth_exact,
    twin_free_quotient,
)
from .hardness_lab import (
    classify_hereditary,
    consistent_automorphism_group,
    hereditary_witness,
    orbit_decompose,
    reduce_bip_to_indsub,
    sylow_k_subgroup,
    twin_invariant_witness,
)
from .homomorphisms import ConsistentColouring, count_cp_homs
from .motif_basis import (
    bip_coefficients,
    eval_via_bip_basis,
    eval_via_hom_basis,
    mask_to_edges,
    mobius_extract,
    t_phi,
    uncoloured_hom_basis,
)
from .properties import (
    ForbiddenSet,
    ImplantSpec,
    builtin_bip_property,
    builtin_property,
    count_bip_indsub,
    count_cp_bip_indsub,
    count_indsub,
    eval_hereditary,
    hereditary_oracle,
    implant_graph,
    minimalize_forbidden_set,
)

# ---------------------------------------------------------------------------
# parsing


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _int_fields(line: str, lineno: int, expect: int, path: str) -> list[int]:
    parts = line.split()
    if len(parts) != expect:
        raise InputError(
            f"{path}:{lineno}: expected {expect} fields, got {len(parts)}"
        )
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"{path}:{lineno}: non-integer field in {line!r}")


def parse_graph(text: str, path: str = "<graph>") -> Graph:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise InputError(f"{path}:1: empty file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise InputError(f"{path}:1: expected header 'graph <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise InputError(f"{path}:1: non-integer header field")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise InputError(f"{path}: header promises {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for i, ln in enumerate(body, start=2):
        u, v = _int_fields(ln, i, 2, path)
        if u == v:
            raise InputError(f"{path}:{i}: self-loop at vertex {u}")
        if not (0 <= u < v < n):
            raise InputError(
                f"{path}:{i}: edge ({u},{v}) violates 0 <= u < v < {n}"
            )
        if (u, v) in seen:
            raise InputError(f"{path}:{i}: duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)


def parse_bipgraph(text: str, path: str = "<bipgraph>") -> BipartiteGraph:
    lines = text.splitlines()
    if not lines:
        raise InputError(f"{path}:1: empty file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "bipgraph":
        raise InputError(f"{path}:1: expected header 'bipgraph <n1> <n2> <m>'")
    try:
        n1, n2, m = int(head[1]), int(head[2]), int(head[3])
    except ValueError:
        raise InputError(f"{path}:1: non-integer header field")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != m:
        raise InputError(f"{path}: header promises {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for i, ln in enumerate(body, start=2):
        u, v = _int_fields(ln, i, 2, path)
        if not (0 <= u < n1 and 0 <= v < n2):
            raise InputError(
                f"{path}:{i}: edge ({u},{v}) out of range for sides ({n1},{n2})"
            )
        if (u, v) in seen:
            raise InputError(f"{path}:{i}: duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v))
    return BipartiteGraph(n1, n2, edges)


def parse_colouring(text: str, path: str = "<colouring>") -> list[int]:
    lines = text.splitlines()
    if not lines:
        raise InputError(f"{path}:1: empty file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "colouring":
        raise InputError(f"{path}:1: expected header 'colouring <n>'")
    try:
        n = int(head[1])
    except ValueError:
        raise InputError(f"{path}:1: non-integer header field")
    vals = []
    for i, ln in enumerate(lines[1:], start=2):
        for tok in ln.split():
            try:
                vals.append(int(tok))
            except ValueError:
                raise InputError(f"{path}:{i}: non-integer colour {tok!r}")
    if len(vals) != n:
        raise InputError(f"{path}: header promises {n} colours, found {len(vals)}")
    return vals


def parse_graph6(text: str, path: str = "<graph6>") -> Graph:
    """Minimal graph6 reader for graphs below the long-form size threshold."""
    line = text.strip().splitlines()[0].strip()
    if line.startswith(">>graph6<<"):
        line = line[10:]
    data = [ord(ch) - 63 for ch in line]
    if any(not 0 <= d < 64 for d in data):
        raise InputError(f"{path}: invalid graph6 character")
    if not data:
        raise InputError(f"{path}: empty graph6 line")
    if data[0] == 63:
        raise InputError(f"{path}: long-form graph6 sizes unsupported")
    n = data[0]
    bits = []
    for d in data[1:]:
        bits.extend((d >> s) & 1 for s in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise InputError(f"{path}: truncated graph6 data")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def serialize_graph(G: Graph) -> str:
    lines = [f"graph {G.n} {len(G.edges)}"]
    lines += [f"{u} {v}" for u, v in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def serialize_bipgraph(B: BipartiteGraph) -> str:
    lines = [f"bipgraph {B.n1} {B.n2} {len(B.edges)}"]
    lines += [f"{u} {v}" for u, v in B.sorted_edges()]
    return "\n".join(lines) + "\n"


def _graph_record(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def _bip_record(B: BipartiteGraph) -> dict:
    return {
        "n1": B.n1,
        "n2": B.n2,
        "edges": [list(e) for e in B.sorted_edges()],
    }


# ---------------------------------------------------------------------------
# selectors


def load_graph(path: str, graph6: bool = False) -> Graph:
    text = _read(path)
    return parse_graph6(text, path) if graph6 else parse_graph(text, path)


def load_forbidden(paths: str, graph6: bool = False) -> ForbiddenSet:
    members = [load_graph(p, graph6) for p in paths.split(",") if p]
    return minimalize_forbidden_set(members)


def select_property(sel: str, graph6: bool = False):
    if sel.startswith("builtin:"):
        return builtin_property(sel[len("builtin:"):])
    if sel.startswith("forbidden:"):
        pi = load_forbidden(sel[len("forbidden:"):], graph6)
        return hereditary_oracle(pi, f"forbidden[{len(pi)}]")
    raise InputError(f"unknown property selector {sel!r}")


def select_bip_property(sel: str):
    if sel.startswith("builtin-bip:"):
        return builtin_bip_property(sel[len("builtin-bip:"):])
    raise InputError(f"unknown bipartite property selector {sel!r}")


# ---------------------------------------------------------------------------
# result plumbing


def _digest(paths: list[str]) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(p.encode())
        h.update(b"\0")
        h.update(_read(p).encode())
        h.update(b"\0")
    return h.hexdigest()


def emit(record: dict, args) -> None:
    record["tool_version"] = __version__
    record["kernel_backend"] = _kernels.BACKEND
    text = json.dumps(record, indent=2, sort_keys=True)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _base_record(args, input_paths: list[str]) -> dict:
    rec = {
        "subcommand": args.cmd,
        "inputs_digest": _digest(input_paths),
    }
    if getattr(args, "seed", None) is not None:
        rec["seed"] = args.seed
    return rec


# ---------------------------------------------------------------------------
# subcommand implementations


def cmd_count(args) -> dict:
    phi = select_property(args.property, args.graph6)
    G = load_graph(args.graph, args.graph6)
    if args.k <= 5:
        value = eval_via_hom_basis(phi, args.k, G)
        method = "hom-basis"
    else:
        value = count_indsub(phi, args.k, G)
        method = "bruteforce"
    rec = {"count": str(value), "k": args.k, "method": method}
    if args.check_bruteforce:
        check = count_indsub(phi, args.k, G)
        if check != value:
            raise InternalConsistencyError(
                f"bruteforce check failed: {value} vs {check}"
            )
        rec["check_bruteforce"] = "ok"
    return rec


def cmd_count_bip(args) -> dict:
    psi = select_bip_property(args.psi)
    B = parse_bipgraph(_read(args.bipgraph), args.bipgraph)
    value = count_bip_indsub(psi, args.k, B)
    rec = {"count": str(value), "k": args.k, "method": "bruteforce"}
    if args.check_bruteforce:
        rec["check_bruteforce"] = "ok"
    return rec


def _load_cp_instance(args):
    psi = select_bip_property(args.psi)
    B = parse_bipgraph(_read(args.bipgraph), args.bipgraph)
    H = parse_bipgraph(_read(args.pattern), args.pattern)
    cmap = parse_colouring(_read(args.colouring), args.colouring)
    c = ConsistentColouring(H, B, tuple(cmap))
    return psi, H, c, B


def cmd_count_cp(args) -> dict:
    psi, H, c, B = _load_cp_instance(args)
    value = eval_via_bip_basis(psi, H, c, B)
    rec = {"count": str(value), "method": "bip-basis"}
    if args.check_bruteforce:
        check = count_cp_bip_indsub(psi, c, B)
        if check != value:
            raise InternalConsistencyError(
                f"bruteforce check failed: {value} vs {check}"
            )
        rec["check_bruteforce"] = "ok"
    return rec


def cmd_coeffs(args) -> dict:
    psi = select_bip_property(args.psi)
    if args.host_biclique is not None:
        B = biclique(args.host_biclique)
    elif args.host_bipgraph:
        B = parse_bipgraph(_read(args.host_bipgraph), args.host_bipgraph)
    else:
        raise InputError("need --host-biclique or --host-bipgraph")
    table = bip_coefficients(psi, B)
    return {"table": table.to_json()}


def cmd_basis(args) -> dict:
    phi = select_property(args.property, args.graph6)
    table = uncoloured_hom_basis(phi, args.k)
    return {"table": table.to_json()}


def cmd_tphi(args) -> dict:
    phi = select_property(args.property, args.graph6)
    table = uncoloured_hom_basis(phi, args.k)
    value = t_phi(phi, args.k, table=table)
    return {
        "t_phi": value,
        "k": args.k,
        "support_size": len(table.support()),
    }


def cmd_extract(args) -> dict:
    psi, H, c, B = _load_cp_instance(args)
    table = bip_coefficients(psi, H)

    def oracle(Gq, cq):
        return count_cp_bip_indsub(psi, cq, Gq)

    report = mobius_extract(oracle, H, c, B, table)
    doc = report.to_json()
    Hu = H.underlying()
    cu = c.underlying()
    Bu = B.underlying()
    for mask, got in report.recovered.items():
        edges = [
            (u, H.n1 + v) for u, v in mask_to_edges(mask, table.edge_order)
        ]
        direct = count_cp_homs(Hu, edges, cu, Bu)
        if direct != got:
            raise InternalConsistencyError(
                f"extraction mismatch at mask {mask}: {got} vs direct {direct}"
            )
    doc["verified_against_direct"] = True
    return {"extraction": doc}


def cmd_quotient(args) -> dict:
    G = load_graph(args.graph, args.graph6)
    Q, part = twin_free_quotient(G)
    return {
        "quotient": _graph_record(Q),
        "blocks": [list(b) for b in part.blocks],
    }


def _parse_block(text: str) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in text.split(",") if x != "")
    except ValueError:
        raise InputError(f"block list {text!r} must be comma-separated integers")


def cmd_implant(args) -> dict:
    H = load_graph(args.graph, args.graph6)
    B = parse_bipgraph(_read(args.bipgraph), args.bipgraph)
    spec = ImplantSpec(H, _parse_block(args.b1), _parse_block(args.b2))
    F = implant_graph(spec, B)
    return {"implant": _graph_record(F)}


def cmd_witness(args) -> dict:
    pi = load_forbidden(args.forbidden, args.graph6)
    return {"witness": hereditary_witness(pi).to_json()}


def cmd_witness_twin(args) -> dict:
    phi = select_property(args.property, args.graph6)
    return {"witness": twin_invariant_witness(phi, n_max=args.n_max).to_json()}


def cmd_classify(args) -> dict:
    pi = load_forbidden(args.forbidden, args.graph6)
    return {"classification": classify_hereditary(pi).to_json()}


def cmd_reduce_verify(args) -> dict:
    pi = load_forbidden(args.forbidden, args.graph6)
    B = parse_bipgraph(_read(args.bipgraph), args.bipgraph)
    witness = hereditary_witness(pi)
    spec = witness.spec
    calls = 0

    def oracle(phi_fn, kk, G):
        nonlocal calls
        calls += 1
        return count_indsub(phi_fn, kk, G)

    phi_fn = lambda G: eval_hereditary(pi, G)
    reduced = reduce_bip_to_indsub(phi_fn, spec, B, args.k, oracle)
    direct = count_bip_indsub(
        lambda Bg: eval_hereditary(pi, implant_graph(spec, Bg)), args.k, B
    )
    if reduced != direct:
        raise InternalConsistencyError(
            f"reduction mismatch: {reduced} vs direct {direct}"
        )
    return {
        "count": str(reduced),
        "oracle_calls": calls,
        "expected_calls": 1 << len(spec.R),
        "match": True,
        "witness_host": _graph_record(witness.host),
    }


def cmd_orbits(args) -> dict:
    if args.group == "sylow":
        group = sylow_k_subgroup(args.k)
    else:
        group = consistent_automorphism_group(args.k)
    report = orbit_decompose(group, args.k)
    return {"orbits": report.to_json()}


def cmd_treewidth(args) -> dict:
    G = load_graph(args.graph, args.graph6)
    return {"treewidth": treewidth_exact(G)}


def cmd_selftest(args) -> dict:
    import random as _random

    from .graphs import are_isomorphic, clique, complement, independent
    from .homomorphisms import count_homs, count_homs_bruteforce, count_homs_treewidth_dp

    rng = _random.Random(args.seed if args.seed is not None else 0)
    checks = []

    def check(name, ok):
        checks.append({"name": name, "ok": bool(ok)})
        if not ok:
            raise InternalConsistencyError(f"selftest failed: {name}")

    check("complement-involution", all(
        complement(complement(G)) == G
        for G in [clique(4), independent(3), Graph(5, [(0, 1), (2, 3)])]
    ))
    for trial in range(10):
        n = rng.randint(1, 7)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.5
        ]
        G = Graph(n, edges)
        hn = rng.randint(1, 4)
        hedges = [
            (i, j)
            for i in range(hn)
            for j in range(i + 1, hn)
            if rng.random() < 0.5
        ]
        H = Graph(hn, hedges)
        check(
            f"hom-dp-vs-brute-{trial}",
            count_homs_bruteforce(H, G) == count_homs_treewidth_dp(H, G),
        )
    for trial in range(5):
        n = rng.randint(1, 6)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.5
        ]
        G = Graph(n, edges)
        text = serialize_graph(G)
        check(f"roundtrip-{trial}", parse_graph(text) == G)
    phi = builtin_property("triangle-free")
    for k in (1, 2, 3):
        check(
            f"basis-vs-brute-k{k}",
            eval_via_hom_basis(phi, k, clique(4)) == count_indsub(phi, k, clique(4)),
        )
    return {"selftest": {"checks": checks, "passed": len(checks)}}


# ---------------------------------------------------------------------------
# argument plumbing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="motifkit", description=__doc__)
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn, cmd=name)
        p.add_argument("--output", help="write the JSON record here")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument(
            "--graph6", action="store_true", help="read graph files as graph6"
        )
        for flag, kw in flags.items():
            p.add_argument(flag, **kw)
        return p

    add(
        "count",
        cmd_count,
        **{
            "--property": {"required": True},
            "--graph": {"required": True},
            "--k": {"type": int, "required": True},
            "--check-bruteforce": {"action": "store_true"},
        },
    )
    add(
        "count-bip",
        cmd_count_bip,
        **{
            "--psi": {"required": True},
            "--bipgraph": {"required": True},
            "--k": {"type": int, "required": True},
            "--check-bruteforce": {"action": "store_true"},
        },
    )
    add(
        "count-cp",
        cmd_count_cp,
        **{
            "--psi": {"required": True},
            "--bipgraph": {"required": True},
            "--pattern": {"required": True},
            "--colouring": {"required": True},
            "--check-bruteforce": {"action": "store_true"},
        },
    )
    add(
        "coeffs",
        cmd_coeffs,
        **{
            "--psi": {"required": True},
            "--host-biclique": {"type": int, "default": None},
            "--host-bipgraph": {"default": None},
        },
    )
    add(
        "basis",
        cmd_basis,
        **{"--property": {"required": True}, "--k": {"type": int, "required": True}},
    )
    add(
        "tphi",
        cmd_tphi,
        **{"--property": {"required": True}, "--k": {"type": int, "required": True}},
    )
    add(
        "extract",
        cmd_extract,
        **{
            "--psi": {"required": True},
            "--bipgraph": {"required": True},
            "--pattern": {"required": True},
            "--colouring": {"required": True},
        },
    )
    add("quotient", cmd_quotient, **{"--graph": {"required": True}})
    add(
        "implant",
        cmd_implant,
        **{
            "--graph": {"required": True},
            "--b1": {"required": True},
            "--b2": {"required": True},
            "--bipgraph": {"required": True},
        },
    )
    add("witness", cmd_witness, **{"--forbidden": {"required": True}})
    add(
        "witness-twin",
        cmd_witness_twin,
        **{
            "--property": {"required": True},
            "--n-max": {"type": int, "default": 4},
        },
    )
    add("classify", cmd_classify, **{"--forbidden": {"required": True}})
    add(
        "reduce-verify",
        cmd_reduce_verify,
        **{
            "--forbidden": {"required": True},
            "--bipgraph": {"required": True},
            "--k": {"type": int, "required": True},
        },
    )
    add(
        "orbits",
        cmd_orbits,
        **{
            "--k": {"type": int, "required": True},
            "--group": {"choices": ["sylow", "full"], "default": "sylow"},
        },
    )
    add("treewidth", cmd_treewidth, **{"--graph": {"required": True}})
    add("selftest", cmd_selftest)
    return top


_INPUT_ATTRS = (
    "graph",
    "bipgraph",
    "pattern",
    "colouring",
    "host_bipgraph",
)


def _input_paths(args) -> list[str]:
    paths = []
    for attr in _INPUT_ATTRS:
        val = getattr(args, attr, None)
        if val:
            paths.append(val)
    forb = getattr(args, "forbidden", None)
    if forb:
        paths.extend(p for p in forb.split(",") if p)
    sel = getattr(args, "property", None)
    if sel and sel.startswith("forbidden:"):
        paths.extend(p for p in sel[len("forbidden:"):].split(",") if p)
    return paths


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        start = time.monotonic()
        record = _base_record(args, _input_paths(args))
        record.update(args.fn(args))
        record["timing_ms"] = round((time.monotonic() - start) * 1000, 3)
        emit(record, args)
        return 0
    except MotifkitError as exc:
        print(f"motifkit: error: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 2)
    except SystemExit as exc:  # argparse --version/--help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
