"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from dcrel import closed_form, exact, montecarlo, reductions
from dcrel.errors import CapExceededError, DcrError
from dcrel.graph import NetworkInstance, format_instance, parse_graph, parse_instance

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def render(x: Fraction) -> str:
    return f"{rational(x)} ({float(x):.12g})"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _terminals(arg: str | None):
    if arg is None or arg == "all":
        return arg
    return [t for t in arg.replace(",", " ").split() if t]


def _instance(args) -> NetworkInstance:
    return parse_instance(_read(args.input), terminals=_terminals(args.terminals),
                          diameter=args.diameter)


def _emit(args, payload: dict, text: str):
    print(json.dumps(payload) if args.json else text)


def cmd_eval(args) -> int:
    instance = _instance(args)
    k, d = len(instance.terminals), instance.diameter
    method = args.method
    if method == "auto":
        if d == 1:
            method = "d1"
        elif k == 2 and d == 2:
            method = "k2d2"
        elif len(instance.random_edges) <= args.cap:
            method = "factor"
        else:
            raise CapExceededError("random edge set", len(instance.random_edges), args.cap)
    if method == "d1":
        value = closed_form.reliability_d1(instance)
    elif method == "k2d2":
        value = closed_form.reliability_k2_d2(instance)
    elif method == "enumerate":
        value = exact.reliability_enumerate(instance, cap=args.cap)
    else:
        value = exact.reliability_factoring(instance)
    _emit(args, {"reliability": rational(value), "decimal": float(value), "method": method},
          render(value))
    return EXIT_OK


def cmd_estimate(args) -> int:
    report = montecarlo.estimate_reliability(_instance(args), args.samples, args.seed,
                                             confidence_level=args.level,
                                             chunk_size=args.chunk_size)
    text = (f"estimate={report.point_estimate:.6f} n={report.samples} "
            f"ci=[{report.ci_low:.6f}, {report.ci_high:.6f}] level={report.confidence_level} "
            f"seed={report.seed} generator={report.generator}")
    _emit(args, report.to_json(), text)
    return EXIT_OK


def cmd_gadget(args) -> int:
    if args.kind == "diam2":
        result = reductions.build_diameter2_gadget(parse_graph(_read(args.input)))
    else:
        if args.diameter is None:
            raise UsageError("--diameter is required for this gadget")
        bip = reductions.parse_bipartite(_read(args.input))
        build = (reductions.build_cp_gadget if args.kind == "cp"
                 else reductions.build_all_terminal_gadget)
        result = build(bip, args.diameter)
    text = format_instance(result.instance, result.node_labels, header=f"{args.kind} gadget")
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror or exc}") from None
        g = result.instance.graph
        _emit(args, {"output": args.output, "nodes": g.node_count, "edges": g.edge_count},
              f"wrote {args.output} ({g.node_count} nodes, {g.edge_count} edges)")
    elif args.json:
        print(json.dumps({"instance": text, "labels": result.node_labels}))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.kind == "canale":
        report = reductions.verify_canale_correspondence(parse_graph(_read(args.input)),
                                                         cap=args.cap)
        text = (f"min_pathsets={report.min_pathset_count} "
                f"cardinality={report.min_pathset_cardinality} "
                f"min_covers={report.min_cover_count} cover_size={report.min_cover_size} "
                f"perfect_edges={report.perfect_edges}")
        text += "\n" + "\n".join(f"note: {n}" for n in report.notes)
    else:
        if args.diameter is None:
            raise UsageError("--diameter is required for this check")
        bip = reductions.parse_bipartite(_read(args.input))
        if args.kind == "vc-identity":
            report = reductions.verify_vc_identity(bip, args.diameter, cap=args.cap)
            text = f"covers={report.covers} R={render(report.reliability)}"
        else:
            report = reductions.verify_romero_equality(bip, args.diameter, cap=args.cap)
            text = (f"two_terminal={render(report.two_terminal)} "
                    f"all_terminal={render(report.all_terminal)}")
    status = "PASS" if report.passed else "FAIL"
    _emit(args, report.to_json(), f"{text}\n{status}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_count_covers(args) -> int:
    bip = reductions.parse_bipartite(_read(args.input))
    result = reductions.count_vertex_covers(bip, minimum_only=args.minimum)
    payload = {"covers": result.count}
    text = f"covers={result.count}"
    if args.minimum:
        payload["min_size"] = result.min_size
        text += f" min_size={result.min_size}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_count_subgraphs(args) -> int:
    graph = parse_graph(_read(args.input))
    count = exact.count_diameter_bounded_subgraphs(graph, args.diameter, cap=args.cap)
    _emit(args, {"subgraphs": count, "edges": graph.edge_count, "diameter": args.diameter},
          f"subgraphs={count} of {2 ** graph.edge_count}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dcrel", description="Diameter-constrained reliability toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, diameter_required=False):
        p.add_argument("--input", required=True)
        p.add_argument("--json", action="store_true")
        p.add_argument("--cap", type=int, default=exact.DEFAULT_CAP)
        p.add_argument("--diameter", type=int, required=diameter_required)

    p = sub.add_parser("eval", help="exact reliability")
    common(p)
    p.add_argument("--terminals")
    p.add_argument("--method", default="auto",
                   choices=["auto", "enumerate", "factor", "d1", "k2d2"])
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("estimate", help="Monte Carlo estimate")
    common(p)
    p.add_argument("--terminals")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--chunk-size", type=int, default=montecarlo.DEFAULT_CHUNK_SIZE)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("gadget", help="build a reduction gadget")
    p.add_argument("kind", choices=["cp", "all-terminal", "diam2"])
    common(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("verify", help="check a reduction identity")
    p.add_argument("kind", choices=["vc-identity", "romero", "canale"])
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count-covers", help="brute-force vertex cover count")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--minimum", action="store_true")
    p.set_defaults(func=cmd_count_covers)

    p = sub.add_parser("count-subgraphs", help="count spanning subgraphs of bounded diameter")
    common(p, diameter_required=True)
    p.set_defaults(func=cmd_count_subgraphs)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except CapExceededError as exc:
        print(f"error: cap exceeded: {exc}; use 'estimate' for a Monte Carlo estimate "
              f"or raise --cap", file=sys.stderr)
    except DcrError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
    return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
