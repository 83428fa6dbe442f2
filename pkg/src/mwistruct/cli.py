"""``mwistruct`` command line.

Exit codes: 0 success, 2 unreadable or malformed input, 3 class violation,
4 search budget exhausted, 5 a verify suite found a violation.
"""

from __future__ import annotations

import argparse
import configparser
import sys
import time

from . import cliquesep, modular
from .io import (
    ParseError,
    format_graph,
    make_report,
    read_graph,
    to_file_ids,
    witness_to_file_ids,
    write_report,
)
from .graph import WeightedGraph
from .lab import generators
from .lab.suites import SUITES, config_for, default_threads, load_config, run_suite
from .patterns import SearchBudgetExceeded, recognize
from .pipeline import CLASS_TAGS, ClassViolation, solve
from .solvers import DEFAULT_ORACLE_BUDGET, BudgetExhausted, mwis_oracle

EXIT_OK, EXIT_PARSE, EXIT_CLASS, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4, 5


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.start = time.perf_counter()

    def elapsed(self) -> float | None:
        return time.perf_counter() - self.start if self.enabled else None


def _emit(args, report: dict) -> None:
    if getattr(args, "out", None):
        write_report(report, args.out)


def _witness(w) -> dict | None:
    return None if w is None else {"kind": w.kind, "vertices": list(w.vertices)}


def _fail(args, command: str, wg, kind: str, exc, code: int, witness=None, branch=None) -> int:
    print(f"error: {exc}", file=sys.stderr)
    error = {"kind": kind, "message": str(exc), "witness": witness_to_file_ids(witness)}
    if branch is not None:
        error["branch_vertex"] = branch + 1
    _emit(args, make_report(command, None, wg, wall_time=None, error=error))
    return code


def _solve_result(d: dict) -> dict:
    checks = {
        name: {**c, "witnesses": [witness_to_file_ids(w) for w in c["witnesses"]]}
        for name, c in d["structure_checks"].items()
    }
    return {**d, "set": to_file_ids(d["set"]), "structure_checks": checks}


def cmd_solve(args) -> int:
    clock = _Clock(args.timing)
    wg = read_graph(args.path)
    try:
        rep = solve(wg, args.cls, budget=args.budget)
    except ClassViolation as exc:
        return _fail(args, "solve", wg, "class-violation", exc, EXIT_CLASS, _witness(exc.witness))
    except (BudgetExhausted, SearchBudgetExceeded) as exc:
        branch = getattr(exc, "branch_vertex", None)
        return _fail(args, "solve", wg, "budget-exhausted", exc, EXIT_BUDGET, branch=branch)
    result = _solve_result(rep.to_dict())
    print(f"value {result['value']}")
    print("set " + " ".join(map(str, result["set"])))
    _emit(args, make_report("solve", result, wg, wall_time=clock.elapsed()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    clock = _Clock(args.timing)
    wg = read_graph(args.path)
    try:
        sol = mwis_oracle(wg, budget=args.budget)
    except BudgetExhausted as exc:
        return _fail(args, "oracle", wg, "budget-exhausted", exc, EXIT_BUDGET, branch=exc.branch_vertex)
    result = {"value": sol.value, "set": to_file_ids(sol.vertices)}
    print(f"value {result['value']}")
    print("set " + " ".join(map(str, result["set"])))
    _emit(args, make_report("oracle", result, wg, wall_time=clock.elapsed()))
    return EXIT_OK


def cmd_recognize(args) -> int:
    wg = read_graph(args.path)
    try:
        verdict = recognize(wg.graph, args.cls)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SearchBudgetExceeded as exc:
        return _fail(args, "recognize", wg, "budget-exhausted", exc, EXIT_BUDGET)
    witness = witness_to_file_ids(_witness(verdict.witness))
    status = "satisfied" if verdict.ok else "violated"
    print(status)
    if witness:
        print(f"witness {witness['kind']} " + " ".join(map(str, witness["vertices"])))
    result = {"class": args.cls, "verdict": status, "witness": witness}
    _emit(args, make_report("recognize", result, wg))
    return EXIT_OK


def _ids(vs) -> str:
    return "{" + ", ".join(map(str, to_file_ids(vs))) + "}"


def _atom_tree(node, depth: int, lines: list[str]) -> dict:
    pad = "  " * depth
    if node.is_leaf:
        lines.append(f"{pad}atom {_ids(node.atom)}")
        return {"atom": to_file_ids(node.atom)}
    lines.append(f"{pad}separator {_ids(node.separator)}")
    lines.append(f"{pad}  near:")
    near = _atom_tree(node.near, depth + 2, lines)
    lines.append(f"{pad}  far:")
    far = _atom_tree(node.far, depth + 2, lines)
    return {"separator": to_file_ids(node.separator), "near": near, "far": far}


def _md_tree(node, depth: int, lines: list[str]) -> dict:
    pad = "  " * depth
    out = {"kind": node.kind, "vertices": to_file_ids(node.vertices)}
    if node.kind == modular.LEAF:
        lines.append(f"{pad}leaf {to_file_ids(node.vertices)[0]}")
        return out
    lines.append(f"{pad}{node.kind} {_ids(node.vertices)}")
    out["children"] = [_md_tree(c, depth + 1, lines) for c in node.children]
    if node.kind == modular.PRIME:
        # quotient vertices are child positions
        out["quotient_edges"] = [list(e) for e in node.quotient.edges()]
    return out


def cmd_decompose(args) -> int:
    clock = _Clock(args.timing)
    wg = read_graph(args.path)
    lines: list[str] = []
    if args.method == "cliquesep":
        root = cliquesep.decompose(wg.graph)
        tree = _atom_tree(root, 0, lines)
        lines.append(f"atoms {len(root.atoms())}")
    else:
        tree = _md_tree(modular.modular_decomposition(wg.graph), 0, lines)
    print("\n".join(lines))
    result = {"method": args.method, "tree": tree}
    _emit(args, make_report("decompose", result, wg, wall_time=clock.elapsed()))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        g = generators.gen_in_class(
            args.spec, args.n, args.p, args.seed, max_tries=args.max_tries, method=args.method
        )
    except generators.GenerationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.weights:
        wg = WeightedGraph(g, generators.random_weights(g.n, args.seed ^ 0x5EED))
    else:
        wg = WeightedGraph.unit(g)
    text = format_graph(wg)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    clock = _Clock(args.timing)
    try:
        configs = load_config(args.config) if args.config else {}
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return EXIT_PARSE
    names = list(SUITES) if args.suite == "all" else [s.strip() for s in args.suite.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        print(f"error: unknown suite(s) {', '.join(unknown)}; known: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_PARSE
    threads = args.threads or default_threads()
    reports = []
    for name in names:
        cfg = configs.get(name) or config_for(name)
        overrides = {"size": args.size, "seed": args.seed}
        cfg = config_for(name, **{**_fields(cfg), **{k: v for k, v in overrides.items() if v is not None}, "threads": threads})
        rep = run_suite(name, cfg)
        reports.append(rep.to_dict())
        print(f"{name}: {rep.verdict} checked={rep.checked} skipped={rep.skipped} violations={len(rep.violations)}")
    passed = all(r["verdict"] == "pass" for r in reports)
    _emit(args, make_report("verify", {"suites": reports, "passed": passed}, wall_time=clock.elapsed()))
    return EXIT_OK if passed else EXIT_VERIFY


def _fields(cfg) -> dict:
    return {k: getattr(cfg, k) for k in ("size", "seed", "n_min", "n_max", "p")}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwistruct", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_text, fn, report=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="graph file (p iset / e / w lines, 1-based ids)")
        if report:
            p.add_argument("--out", help="write a JSON report here")
        p.set_defaults(fn=fn)
        return p

    p = graph_cmd("solve", "exact MWIS through the class pipeline", cmd_solve)
    p.add_argument("--class", dest="cls", default="auto", choices=CLASS_TAGS)
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="search-node cap for fallback searches")
    p.add_argument("--timing", action="store_true", help="record wall time in the report")

    p = graph_cmd("oracle", "exact MWIS by branch and bound", cmd_oracle)
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p.add_argument("--timing", action="store_true")

    p = graph_cmd("recognize", "test class membership and print a witness", cmd_recognize)
    p.add_argument("--class", dest="cls", required=True, help="e.g. dart-free, hole-bull-free, chordal")

    p = graph_cmd("decompose", "clique-separator or modular decomposition tree", cmd_decompose)
    p.add_argument("--method", choices=("cliquesep", "modular"), default="cliquesep")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("gen", help="write a seeded in-class graph file")
    p.add_argument("--spec", required=True, help="class name, e.g. hole-dart-free")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=generators.GEN_METHODS, default="grow")
    p.add_argument("--max-tries", type=int, default=generators.DEFAULT_MAX_TRIES)
    p.add_argument("--weights", action="store_true", help="random weights in [0, 100]")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("verify", help="run structure-lab suites")
    p.add_argument("--suite", default="all", help="comma-separated suite ids or 'all'")
    p.add_argument("--config", help="INI file with one [suite-id] section per suite")
    p.add_argument("--size", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--threads", type=int, help="worker cap (default from MWIS_THREADS)")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, configparser.Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
