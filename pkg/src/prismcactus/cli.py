"""Command-line front end for the whole pipeline.

Exit codes: 0 success (all requested verifications passed), 1 verification
failed, 2 parse error, 3 precondition failed, 4 internal inconsistency.
Configuration precedence is flags, then PRISMCACTUS_* environment variables,
then defaults; ``--seed`` controls every randomized step.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import cactus as cactus_mod
from . import chains as chains_mod
from . import oracle, prism
from .chains import BranchLog, ParityRequest
from .embedgraph import PlaneGraph, load_pgr
from .errors import (
    BadPair,
    InternalInconsistency,
    NotExternal,
    OddCycleInput,
    ParseError,
    PreconditionViolated,
    PrismCactusError,
)
from .goodness import is_bad
from .structure import CircuitGraph, blocks_cutvertices, is_circuit_graph, is_three_connected

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


@dataclass
class RunReport:
    """Per-stage status plus branch-coverage tags from the recursion."""

    stages: list[dict] = field(default_factory=list)
    branch_tags: dict[str, int] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)

    def stage(self, name: str, status: str, seconds: float, detail: str = "") -> None:
        self.stages.append(
            {"name": name, "status": status, "seconds": round(seconds, 4), "detail": detail}
        )

    def absorb(self, log: BranchLog) -> None:
        for _, branch, _, _ in log.entries:
            self.branch_tags[branch] = self.branch_tags.get(branch, 0) + 1

    def render(self) -> str:
        lines = []
        for s in self.stages:
            detail = f"  {s['detail']}" if s["detail"] else ""
            lines.append(f"[{s['status']:4}] {s['name']} ({s['seconds']}s){detail}")
        for tag in sorted(self.branch_tags):
            lines.append(f"branch {tag} x{self.branch_tags[tag]}")
        for out in self.outputs:
            lines.append(f"wrote {out}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {"stages": self.stages, "branches": self.branch_tags, "outputs": self.outputs},
            indent=2,
            sort_keys=True,
        )


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(f"PRISMCACTUS_{name}")
    return int(raw) if raw else default


def _load(path: str, fmt: str) -> PlaneGraph:
    graphs = oracle.load_graph(path, fmt)
    return graphs[0]


def _write(outdir: Path, name: str, text: str, report: RunReport) -> Path:
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / name
    path.write_text(text, encoding="utf-8", newline="\n")
    report.outputs.append(str(path))
    return path


def _dump_failure(outdir: Path, exc: InternalInconsistency, report: RunReport) -> None:
    payload = {"message": str(exc)}
    for key, value in exc.payload.items():
        payload[key] = value if isinstance(value, (str, int, float, list)) else repr(value)
    _write(outdir, "failure.json", json.dumps(payload, indent=2, sort_keys=True), report)


def _parse_anchors(raw: str | None) -> tuple[int, int] | None:
    if not raw:
        return None
    parts = raw.split(",")
    if len(parts) != 2:
        raise PreconditionViolated("--anchors expects 'x,y'")
    return int(parts[0]), int(parts[1])


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------


def cmd_check(args: argparse.Namespace, report: RunReport) -> int:
    t0 = time.perf_counter()
    g = _load(args.input, args.format)
    degs = sorted(g.degree(v) for v in g.vertices)
    internal = sorted(set(g.vertices) - g.external_vertices)
    euler = g.n - g.m + len(g.faces) == 2 if g.connected else None
    two_conn = g.n >= 3 and len(set(g.outer_face.boundary)) == len(g.outer_face.boundary)
    tree = blocks_cutvertices(g) if g.connected else None
    circuit = g.n >= 3 and is_circuit_graph(g)
    three = g.n >= 4 and is_three_connected(g)
    min_internal = min((g.degree(v) for v in internal), default=None)
    report.stage("check", "ok", time.perf_counter() - t0)
    print(f"n={g.n} m={g.m} faces={len(g.faces)}")
    print(f"euler_ok={euler}")
    print(f"degree_profile={degs}")
    print(f"bipartite={g.is_bipartite}")
    print(f"blocks={len(tree.blocks) if tree else 'n/a'} cutvertices={sorted(tree.cutvertices) if tree else 'n/a'}")
    print(f"three_connected={three}")
    print(f"circuit={circuit}")
    print(f"external={sorted(g.external_vertices)}")
    print(f"min_internal_degree={min_internal}")
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace, report: RunReport) -> int:
    from .structure import delete_vertex_chain

    g = _load(args.input, args.format)
    b = CircuitGraph.from_graph(g)
    x = args.vertex if args.vertex is not None else g.outer_face.boundary[0]
    t0 = time.perf_counter()
    chain = delete_vertex_chain(b, x)
    report.stage("decompose", "ok", time.perf_counter() - t0, f"x={x}")
    print(f"deleted {x}: chain of {chain.n_blocks} blocks, b0={chain.b0} bn={chain.bn}")
    for i, block in enumerate(chain.blocks, start=1):
        print(f"  B{i} kind={block.kind} vertices={sorted(block.vertices)}")
    if chain.cutvertices:
        print(f"  cutvertices={list(chain.cutvertices)}")
    return EXIT_OK


def cmd_chains(args: argparse.Namespace, report: RunReport) -> int:
    g = _load(args.input, args.format)
    b = CircuitGraph.from_graph(g)
    log = BranchLog()
    parity = ParityRequest[args.parity.upper()]
    t0 = time.perf_counter()
    op = args.op
    if op == "rihta":
        s = chains_mod.rihta(b, args.x, args.y, args.u, log=log)
    elif op == "xyxy":
        s = chains_mod.set_chains_xyxy(b, args.x, args.y, log=log)
    elif op == "bip":
        s = chains_mod.set_chains_bip(b, args.x, args.y, args.u, args.u2, log=log)
    elif op == "cycle-bip":
        s = chains_mod.cycle_chains_bip(b, args.x, args.y, args.u, log=log)
    elif op == "parity-bxbip":
        q = chains_mod._arcs_between(b.outer_cycle, args.x, args.y)[0]
        s = chains_mod.set_chains_parity_bxbip(b, args.x, args.y, q, args.u, parity, log=log)
    elif op == "nonbip":
        s = chains_mod.set_chains_nonbip(b, args.x, args.y, args.u, parity, log=log)
    elif op == "cycle-nonbip":
        s = chains_mod.cycle_chains_nonbip(b, args.x, args.y, log=log)
    else:
        raise PreconditionViolated(f"unknown chains op {op!r}")
    report.stage(f"chains:{op}", "ok", time.perf_counter() - t0)
    report.absorb(log)
    kind = "cycle" if s.cyclic else "path"
    print(f"spine ({kind}, parity={s.parity}): {list(s.spine)}")
    for i, c in enumerate(s.chains):
        print(f"chain {i}: attach={c.attach} vertices={sorted(c.vertices)}")
    for m in s.marked:
        where = "spine" if m.chain_index is None else f"chain {m.chain_index}"
        print(f"mark {m.vertex}: {where}")
    if args.trace:
        sys.stderr.write(log.format())
    return EXIT_OK


def _pipeline(g: PlaneGraph, anchors: tuple[int, int] | None, report: RunReport, outdir: Path):
    log = BranchLog()
    b = CircuitGraph.from_graph(g)
    if not b.min_internal_degree_ok(4):
        raise PreconditionViolated("an internal vertex has degree below 4")
    t0 = time.perf_counter()
    if anchors is None:
        cac = cactus_mod.spanning_bipartite_cactus(b, log=log)
    else:
        cac = cactus_mod.spanning_bipartite_cactus(b, anchors[0], anchors[1], log=log)
    report.stage("cactus", "ok", time.perf_counter() - t0, f"blocks={len(cac.blocks)}")
    t0 = time.perf_counter()
    cyc = prism.prism_hamilton_from_cactus(cac)
    report.stage("prism", "ok", time.perf_counter() - t0, f"length={len(cyc)}")
    report.absorb(log)
    return cac, cyc


def cmd_cactus(args: argparse.Namespace, report: RunReport) -> int:
    g = _load(args.input, args.format)
    cac, _ = _pipeline(g, _parse_anchors(args.anchors), report, Path(args.out))
    _write(Path(args.out), "cactus.txt", cac.serialize(), report)
    ok = cactus_mod.validate_cactus(g, cac, bipartite_required=True)
    print("cactus_valid=" + str(bool(ok)))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_prism_ham(args: argparse.Namespace, report: RunReport) -> int:
    g = _load(args.input, args.format)
    outdir = Path(args.out)
    cac, cyc = _pipeline(g, _parse_anchors(args.anchors), report, outdir)
    _write(outdir, "cactus.txt", cac.serialize(), report)
    _write(outdir, "prism_cycle.txt", cyc.serialize(), report)
    t0 = time.perf_counter()
    ok = prism.verify_prism_hamilton(g, cyc)
    report.stage("verify", "ok" if ok else "FAIL", time.perf_counter() - t0)
    print(f"prism_cycle_length={len(cyc)} vertical_edges={len(cyc.vertical_edges)}")
    print("verified=" + str(ok))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args: argparse.Namespace, report: RunReport) -> int:
    g = _load(args.input, args.format)
    cyc = prism.PrismCycle.parse(Path(args.cycle).read_text(encoding="utf-8"))
    ok = prism.verify_prism_hamilton(g, cyc)
    print("verified=" + str(ok))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args: argparse.Namespace, report: RunReport) -> int:
    g = _load(args.input, args.format)
    max_n = args.max_n or _env_int("MAX_N", oracle.DEFAULT_PRISM_BOUND)
    t0 = time.perf_counter()
    if args.op == "prism":
        required = tuple(int(t) for t in args.require.split(",")) if args.require else ()
        cyc = oracle.brute_hamilton_prism(g, required, max_n=max_n)
        report.stage("oracle:prism", "ok", time.perf_counter() - t0)
        if cyc is None:
            print("absent (search exhausted)")
            return EXIT_OK
        print(cyc.serialize().strip())
        return EXIT_OK
    if args.op == "chains":
        marks = tuple(int(t) for t in args.require.split(",")) if args.require else ()
        parity = ParityRequest[args.parity.upper()].bit
        s = oracle.brute_set_of_chains(
            g, args.x, args.y, marks, parity, args.cyclic, max_n=max_n
        )
        report.stage("oracle:chains", "ok", time.perf_counter() - t0)
        if s is None:
            print("absent (search exhausted)")
            return EXIT_OK
        print(f"spine: {list(s.spine)}")
        for i, c in enumerate(s.chains):
            print(f"chain {i}: attach={c.attach} vertices={sorted(c.vertices)}")
        return EXIT_OK
    raise PreconditionViolated(f"unknown oracle op {args.op!r}")


def cmd_corpus(args: argparse.Namespace, report: RunReport) -> int:
    seed = args.seed if args.seed is not None else _env_int("SEED", 0)
    t0 = time.perf_counter()
    corpus = oracle.generate_corpus(
        max_n=args.max_n or _env_int("MAX_N", 11),
        seed=seed,
        min_degree=args.min_degree,
        circuit=True if args.circuit else None,
        three_connected=True if args.three_connected else None,
        bipartite=True if args.bipartite else None,
    )
    report.stage("corpus", "ok", time.perf_counter() - t0, f"{len(corpus)} graphs")
    outdir = Path(args.out)
    _write(outdir, "manifest.txt", corpus.manifest(), report)
    for entry in corpus:
        _write(outdir, f"{entry.name}.pgr", entry.graph.to_pgr(), report)
    print(f"{len(corpus)} graphs written")
    return EXIT_OK


def cmd_render(args: argparse.Namespace, report: RunReport) -> int:
    text = Path(args.artifact).read_text(encoding="utf-8")
    if args.kind == "graph":
        g = _load(args.artifact, args.format)
        dot = _graph_to_dot(g)
    elif args.kind == "cactus":
        dot = cactus_mod.Cactus.parse(text).to_dot()
    elif args.kind == "prism":
        cyc = prism.PrismCycle.parse(text)
        if not args.input:
            raise PreconditionViolated("rendering a prism cycle needs --input for the host graph")
        g = _load(args.input, args.format)
        dot = prism.prism_to_dot(g, cyc)
    else:
        raise PreconditionViolated(f"unknown render kind {args.kind!r}")
    sys.stdout.write(dot)
    return EXIT_OK


def _graph_to_dot(g: PlaneGraph) -> str:
    lines = ["graph plane {"]
    for v in g.vertices:
        shape = " [shape=doublecircle]" if v in g.external_vertices else ""
        lines.append(f'  "{v}"{shape};')
    for u, v in sorted(g.edges):
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_bench(args: argparse.Namespace, report: RunReport) -> int:
    seed = args.seed if args.seed is not None else _env_int("SEED", 0)
    corpus = oracle.generate_corpus(max_n=args.max_n or 11, seed=seed,
                                    circuit=True, min_degree=4, three_connected=True)
    total = 0.0
    for entry in corpus:
        t0 = time.perf_counter()
        log = BranchLog()
        b = CircuitGraph.from_graph(entry.graph)
        cac = cactus_mod.spanning_bipartite_cactus(b, log=log)
        cyc = prism.prism_hamilton_from_cactus(cac)
        ok = prism.verify_prism_hamilton(entry.graph, cyc)
        dt = time.perf_counter() - t0
        total += dt
        report.absorb(log)
        print(f"{entry.name}: n={entry.graph.n} verified={ok} {dt:.3f}s")
        if not ok:
            return EXIT_VERIFY
    print(f"total {total:.3f}s over {len(corpus)} graphs")
    return EXIT_OK


# ----------------------------------------------------------------------
# argument wiring
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prismcactus",
        description="Spanning bipartite cactuses and prism Hamilton cycles for plane graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=os.environ.get("PRISMCACTUS_OUT", "out"),
                        help="output directory for artifacts")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    common.add_argument("--format", choices=("pgr", "planar_code"), default="pgr")
    common.add_argument("--trace", action="store_true", help="print the recursion trace")
    common.add_argument("--report-json", action="store_true",
                        help="print the run report as JSON on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    def add(name: str, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("check", help="parse and report structural predicates")
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = add("decompose", help="delete a vertex and dump the chain of blocks")
    p.add_argument("input")
    p.add_argument("--vertex", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = add("chains", help="run one set-of-chains construction")
    p.add_argument("input")
    p.add_argument("--op", required=True,
                   choices=("rihta", "xyxy", "bip", "cycle-bip", "parity-bxbip",
                            "nonbip", "cycle-nonbip"))
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--u2", type=int, default=None)
    p.add_argument("--parity", choices=("odd", "even", "any"), default="any")
    p.set_defaults(func=cmd_chains)

    p = add("cactus", help="build and validate the spanning bipartite cactus")
    p.add_argument("input")
    p.add_argument("--anchors", default=None, help="x,y")
    p.set_defaults(func=cmd_cactus)

    p = add("prism-ham", help="full pipeline: cactus, prism cycle, verification")
    p.add_argument("input")
    p.add_argument("--anchors", default=None, help="x,y")
    p.set_defaults(func=cmd_prism_ham)

    p = add("verify", help="verify a serialized prism cycle against a graph")
    p.add_argument("input")
    p.add_argument("--cycle", required=True)
    p.set_defaults(func=cmd_verify)

    p = add("oracle", help="exhaustive searches")
    p.add_argument("input")
    p.add_argument("--op", choices=("prism", "chains"), required=True)
    p.add_argument("--x", type=int, default=None)
    p.add_argument("--y", type=int, default=None)
    p.add_argument("--require", default=None,
                   help="comma-separated vertices (verticals or marks)")
    p.add_argument("--parity", choices=("odd", "even", "any"), default="any")
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = add("corpus", help="generate the deterministic corpus")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--min-degree", type=int, default=None)
    p.add_argument("--circuit", action="store_true")
    p.add_argument("--three-connected", action="store_true")
    p.add_argument("--bipartite", action="store_true")
    p.set_defaults(func=cmd_corpus)

    p = add("render", help="deterministic DOT export")
    p.add_argument("artifact")
    p.add_argument("--kind", choices=("graph", "cactus", "prism"), required=True)
    p.add_argument("--input", default=None, help="host graph for prism rendering")
    p.set_defaults(func=cmd_render)

    p = add("bench", help="run the pipeline over the corpus with timings")
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = RunReport()
    try:
        code = args.func(args, report)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionViolated, NotExternal, BadPair, OddCycleInput) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        _dump_failure(Path(args.out), exc, report)
        return EXIT_INTERNAL
    except PrismCactusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    sys.stderr.write(report.render())
    if args.report_json:
        sys.stderr.write(report.to_json() + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
