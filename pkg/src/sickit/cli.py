"""Command-line entry point.

Exit codes: 0 on success or a feasible result, 1 on an infeasible or invalid
result (including an unfinished solve), 2 on usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import generators
from .codes import (
    SIC,
    Candidates,
    Located,
    admits_ic,
    admits_sic,
    code_spec,
    domination_histogram,
    locate,
    twin_scan,
    verify_code,
)
from .graph import Graph, GraphError, GridFamily, VertexSet, graph_from_json
from .graph6 import emit_graph6, parse_graph6, read_graph6_file
from .grids import (
    TARGET_DENSITY,
    TorusSpec,
    family_lower_bound,
    render_ascii,
    scan_dimensions,
    solve_tori,
)
from .reduction import (
    Cnf3,
    ReductionError,
    all_sign_patterns,
    parse_dimacs_cnf,
    random_cnf3,
    reduce_3sat,
    reduction_selfcheck,
)
from .solver import DEFAULT_MAX_NODES, DEFAULT_TIME_LIMIT, SolveBudget, count_min_solutions, solve_min
from .sweep import enumerate_cubic, format_table, sweep_by_order, write_csv, write_jsonl

BUDGET_ENV = "SICKIT_BUDGET_NODES"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _named_graph(text: str) -> Graph | None:
    name, _, rest = text.partition(":")
    name = name.lower()
    if name == "petersen" and not rest:
        return generators.petersen()
    if name == "torus":
        fam, _, dims = rest.partition(":")
        m, n = _dims(dims)
        return generators.generate("torus", fam, m, n)
    if name == "cp":
        left, sep, right = rest.partition(",")
        if not sep:
            raise UsageError("cp needs two factors, e.g. cp:cycle:6,path:2")
        return generators.cartesian_product(parse_graph_arg(left), parse_graph_arg(right))
    if name in ("path", "cycle", "complete", "empty", "hypercube", "triangle_ring", "prism_ring"):
        return generators.generate(name, *_ints(rest))
    return None


def _dims(text: str) -> tuple[int, int]:
    try:
        m, n = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"expected dimensions like 6x6, got {text!r}") from None
    return m, n


def parse_graph_arg(text: str) -> Graph:
    """A named generator, a file path (graph6 or JSON) or a graph6 literal."""
    g = _named_graph(text)
    if g is not None:
        return g
    if os.path.exists(text):
        try:
            with open(text) as fh:
                body = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {text}: {exc}") from None
        if body.lstrip().startswith("{"):
            return graph_from_json(body)
        graphs = read_graph6_file(text)
        if len(graphs) != 1:
            raise UsageError(f"{text} holds {len(graphs)} graphs; expected one")
        return graphs[0]
    try:
        return parse_graph6(text)
    except GraphError as exc:
        raise UsageError(f"{text!r} is not a graph name, a file or a graph6 string ({exc})") from None


def make_budget(args) -> SolveBudget:
    nodes = DEFAULT_MAX_NODES
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            nodes = int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer") from None
    if getattr(args, "max_nodes", None):
        nodes = args.max_nodes
    limit = getattr(args, "time_limit", None) or DEFAULT_TIME_LIMIT
    return SolveBudget(max_nodes=nodes, time_limit=limit)


def emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def cmd_verify(args) -> int:
    g = parse_graph_arg(args.graph)
    spec = code_spec(args.code)
    S = VertexSet(g.n, _ints(args.set))
    viol = verify_code(g, S, spec)
    payload = {"code": str(spec), "valid": not viol, "violations": [v.to_dict() for v in viol]}
    lines = [f"{spec}: {'valid' if not viol else 'INVALID'}"]
    for v in viol[:20]:
        d = v.to_dict()
        lines.append(f"  {d['kind']} vertices={d['vertices']} counts={d['counts']}")
    if len(viol) > 20:
        lines.append(f"  ... {len(viol) - 20} more")
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if not viol else EXIT_FAIL


def cmd_exists(args) -> int:
    g = parse_graph_arg(args.graph)
    rep = twin_scan(g)
    ok = admits_sic(g) if args.code == "sic" else admits_ic(g)
    blockers = rep.semi_closed_twins if args.code == "sic" else rep.closed_twins
    payload = {"code": args.code.upper(), "exists": ok, "blocking_pairs": [list(p) for p in blockers]}
    text = f"{args.code.upper()} exists: {'yes' if ok else 'no'}"
    if blockers:
        text += "\nblocking twin pairs: " + " ".join(f"{u}-{v}" for u, v in blockers[:20])
    emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args) -> int:
    g = parse_graph_arg(args.graph)
    spec = code_spec(args.code)
    budget = make_budget(args)
    res = solve_min(g, spec, budget)
    payload = {"code": str(spec), "n": g.n, **res.to_dict()}
    if res.status == "optimal":
        text = f"{res.size}"
        if args.verbose:
            text += f"\nwitness: {','.join(map(str, res.witness))}\nnodes: {res.nodes}"
        if args.count:
            opt, total, classes = count_min_solutions(g, spec, budget)
            payload.update(solutions=total, iso_classes=classes)
            text += f"\nsolutions: {total}\niso classes: {classes}"
    elif res.status == "infeasible":
        text = "infeasible"
    else:
        best = "none" if res.size is None else str(res.size)
        text = f"budget exceeded after {res.nodes} nodes; best found: {best}"
    emit(args, payload, text)
    return EXIT_OK if res.optimal else EXIT_FAIL


def cmd_locate(args) -> int:
    g = parse_graph_arg(args.graph)
    res = locate(g, VertexSet(g.n, _ints(args.set)), VertexSet(g.n, _ints(args.alarms)))
    if isinstance(res, Located):
        payload, text = {"result": "located", "vertices": [res.x]}, f"intruder at {res.x}"
    elif isinstance(res, Candidates):
        payload = {"result": "ambiguous", "vertices": list(res.vertices)}
        text = "ambiguous: " + ",".join(map(str, res.vertices))
    else:
        payload, text = {"result": "inconsistent", "vertices": []}, "inconsistent alarm pattern"
    emit(args, payload, text)
    return EXIT_OK if isinstance(res, Located) else EXIT_FAIL


def _read_cnf(path: str) -> Cnf3:
    try:
        with open(path) as fh:
            return parse_dimacs_cnf(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_reduce(args) -> int:
    inst = reduce_3sat(_read_cnf(args.cnf))
    line = emit_graph6(inst.graph)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(line + "\n")
    if args.meta:
        with open(args.meta, "w") as fh:
            fh.write(inst.sidecar_json() + "\n")
    payload = {"n": inst.graph.n, "m": inst.graph.num_edges, **inst.sidecar()}
    text = f"vertices {inst.graph.n}, edges {inst.graph.num_edges}, K = {inst.K}"
    if not args.out:
        text += "\n" + line
    emit(args, payload, text)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    budget = make_budget(args)
    cases: list[tuple[str, Cnf3]] = []
    if args.cnf:
        cases.append((args.cnf, _read_cnf(args.cnf)))
    if args.unsat:
        cases.append(("all-signs", all_sign_patterns()))
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            cases.append((f"random-{i}", random_cnf3(3, rng.randint(1, 5), rng)))
    if not cases:
        raise UsageError("selfcheck needs --cnf, --unsat or --random")
    reports, lines = [], []
    for name, phi in cases:
        rep = reduction_selfcheck(phi, budget)
        reports.append({"case": name, **rep.to_dict()})
        lines.append(
            f"{name}: sat={rep.sat_oracle} sic<=K={rep.sic_leq_K} "
            f"(SIC={rep.sic_value}, K={rep.K}) {'agree' if rep.agree else 'DISAGREE'}"
        )
    ok = all(r["agree"] for r in reports)
    emit(args, {"agree": ok, "cases": reports}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_torus(args) -> int:
    family = GridFamily(args.family.lower())
    if args.dims:
        specs = [TorusSpec(family, *_dims(args.dims))]
    else:
        specs = scan_dimensions(family, args.limit)
    budget = make_budget(args)
    if args.all or args.workers > 1 or len(specs) == 1:
        reports = solve_tori(specs, budget, args.workers)
    else:
        reports = []
        for spec in specs:
            reports += solve_tori([spec], budget)
            if reports[-1] is not None and reports[-1].density == TARGET_DENSITY[family]:
                break
        specs = specs[: len(reports)]
    target, bound = TARGET_DENSITY[family], family_lower_bound(family)
    rows, lines = [], [f"{family.name}: target {target}, lower bound {bound}"]
    for spec, rep in zip(specs, reports):
        if rep is None:
            rows.append({"family": family.name, "dims": [spec.m, spec.n], "status": "budget_exceeded"})
            lines.append(f"  {spec.m}x{spec.n}: unfinished")
            continue
        rows.append({**rep.to_dict(), "status": "optimal"})
        lines.append(f"  {spec.m}x{spec.n}: {rep.optimum_size}/{spec.size} = {rep.density}")
        if args.show:
            lines += ["    " + row for row in render_ascii(spec, rep.witness).splitlines()]
    reached = any(r is not None and r.density == target for r in reports)
    emit(args, {"target": str(target), "lower_bound": str(bound), "reached": reached, "tori": rows},
         "\n".join(lines))
    return EXIT_OK if reached else EXIT_FAIL


def cmd_sweep(args) -> int:
    spec = code_spec(args.code)
    graphs: list[Graph] = []
    for path in args.corpus or []:
        try:
            graphs += read_graph6_file(path)
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
    for n in _ints(args.cubic or ""):
        graphs += enumerate_cubic(n)
    if not graphs:
        raise UsageError("sweep needs --corpus or --cubic")
    rows = sweep_by_order(graphs, spec, make_budget(args), args.workers)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(rows, fh)
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            write_jsonl(rows, fh)
    payload = {
        "code": str(spec),
        "rows": [
            {"n": r.n, "total": r.total_graphs, "with_sic": r.graphs_with_sic,
             "min": r.min_sic, "max": r.max_sic, "complete": r.complete}
            for r in rows
        ],
    }
    emit(args, payload, format_table(rows))
    return EXIT_OK if all(r.complete for r in rows) else EXIT_FAIL


def cmd_hypercube(args) -> int:
    g = generators.hypercube(args.dim)
    budget = make_budget(args)
    res = solve_min(g, SIC, budget)
    if not res.optimal:
        emit(args, {"dim": args.dim, **res.to_dict()}, f"Q{args.dim}: {res.status}")
        return EXIT_FAIL
    payload = {"dim": args.dim, "n": g.n, "sic": res.size, "density": str(Fraction(res.size, g.n))}
    text = f"SIC(Q{args.dim}) = {res.size}, density {Fraction(res.size, g.n)}"
    if args.iso:
        _, total, classes = count_min_solutions(g, SIC, budget)
        payload.update(solutions=total, iso_classes=classes)
        text += f"\noptimal codes: {total}, up to automorphism: {classes}"
    if args.verbose:
        hist = domination_histogram(g, res.witness)
        text += f"\nwitness: {','.join(map(str, res.witness))}\ndomination: {hist}"
    emit(args, payload, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sickit", description="Self-identifying codes toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, graph=False, budget=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if graph:
            sp.add_argument("--graph", required=True,
                            help="petersen, hypercube:4, torus:kng:6x6, cp:cycle:6,path:2, "
                                 "a graph6 string or a file path")
        if budget:
            sp.add_argument("--max-nodes", type=int, help=f"search node limit (env {BUDGET_ENV})")
            sp.add_argument("--time-limit", type=float, help="seconds per solve")
            sp.add_argument("--workers", type=int, default=1)
        return sp

    sp = add("verify", cmd_verify, "check a detector set", graph=True)
    sp.add_argument("--set", required=True, help="comma-separated detector vertices")
    sp.add_argument("--code", default="sic", help="ic, sic, red, det or err")

    sp = add("exists", cmd_exists, "twin test for code existence", graph=True)
    sp.add_argument("--code", default="sic", choices=["sic", "ic"])

    sp = add("solve", cmd_solve, "minimum code size", graph=True, budget=True)
    sp.add_argument("--code", default="sic")
    sp.add_argument("--count", action="store_true", help="also count optimal codes")
    sp.add_argument("-v", "--verbose", action="store_true")

    sp = add("locate", cmd_locate, "identify an intruder from alarms", graph=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--alarms", required=True)

    sp = add("reduce", cmd_reduce, "build a code instance from a 3-CNF")
    sp.add_argument("--cnf", required=True)
    sp.add_argument("--out", help="graph6 output file")
    sp.add_argument("--meta", help="JSON sidecar output file")

    sp = add("selfcheck", cmd_selfcheck, "check the reduction against brute-force SAT", budget=True)
    sp.add_argument("--cnf")
    sp.add_argument("--unsat", action="store_true", help="include the 8-clause unsatisfiable formula")
    sp.add_argument("--random", type=int, default=0, help="number of random 3-variable formulas")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("torus", cmd_torus, "minimum density on grid tori", budget=True)
    sp.add_argument("--family", required=True, choices=[f.value for f in GridFamily])
    sp.add_argument("--dims", help="e.g. 6x6; default scans admissible sizes")
    sp.add_argument("--limit", type=int, default=8, help="largest dimension in a scan")
    sp.add_argument("--all", action="store_true", help="solve every scanned size instead of stopping at the target")
    sp.add_argument("--show", action="store_true", help="draw each optimal pattern")

    sp = add("sweep", cmd_sweep, "statistics over a graph corpus", budget=True)
    sp.add_argument("--corpus", action="append", help="graph6 file (repeatable)")
    sp.add_argument("--cubic", help="comma-separated even orders to enumerate, e.g. 4,6,8")
    sp.add_argument("--code", default="sic")
    sp.add_argument("--csv")
    sp.add_argument("--jsonl")

    sp = add("hypercube", cmd_hypercube, "SIC of the hypercube Q_d", budget=True)
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--iso", action="store_true", help="count optimal codes up to automorphism")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, ReductionError, ValueError) as exc:
        print(f"sickit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
