"""Command-line front end.

One executable, one subcommand per operation family.  Output is plain
line-oriented text with stable field order so it can be golden-tested.
Exit codes: 0 success, 1 domain error (one-line diagnostic on stderr),
2 usage error (argparse).
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .core import DomainError, GroupShape, GroupedPoint, ParityClass, as_rat
from . import extflow, gtsp, hedging, separation


def _shape_arg(text: str) -> GroupShape:
    try:
        return GroupShape.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parity_arg(text: str) -> ParityClass:
    try:
        return ParityClass.parse(text)
    except (DomainError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _point_arg(text: str) -> GroupedPoint:
    try:
        return GroupedPoint.parse(text)
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rat_arg(text: str) -> Fraction:
    try:
        return as_rat(text)
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}: {exc}")


def _rat_list_arg(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(as_rat(tok) for tok in text.split(","))
    except (DomainError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational list {text!r}: {exc}")


def _positive_int_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer {text!r}: {exc}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _family_arg(text: str) -> tuple[frozenset[int], ...]:
    """Semicolon-separated index sets, 1-based on the command line."""
    sets = []
    for part in text.split(";"):
        try:
            members = [int(tok) for tok in part.split(",")]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad family {text!r}: {exc}")
        if any(i < 1 for i in members):
            raise argparse.ArgumentTypeError(
                f"bad family {text!r}: group indices are 1-based")
        sets.append(frozenset(i - 1 for i in members))
    return tuple(sets)


_CUT_TOKENS = {
    "connectivity": "connectivity",
    "blossom": "blossom_original",
    "blossom-strengthened": "blossom_strengthened",
}


def _cuts_arg(text: str) -> dict[str, bool]:
    flags = {name: False for name in _CUT_TOKENS.values()}
    for tok in text.split(","):
        tok = tok.strip()
        if tok not in _CUT_TOKENS:
            raise argparse.ArgumentTypeError(
                f"unknown cut family {tok!r}; choose from "
                + ", ".join(sorted(_CUT_TOKENS)))
        flags[_CUT_TOKENS[tok]] = True
    return flags


def _fmt_set_1based(indices) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(indices)) + "}"


def _cmd_separate(args) -> None:
    cert = separation.separate(args.shape, args.parity, args.point)
    print("lambdas " + ",".join(str(v) for v in cert.lambdas))
    verdict = "violated" if cert.violated else "satisfied"
    print(f"{verdict} F={_fmt_set_1based(cert.f_set)} lhs={cert.lhs_value}")


def _cmd_describe(args) -> None:
    for ineq in separation.outer_description(args.shape, args.parity):
        print(ineq)


def _cmd_optimize(args) -> None:
    sol = extflow.optimize(args.shape, args.parity, args.objective)
    print(f"value {sol.value}")
    print(f"point {sol.point}")


def _cmd_network(args) -> None:
    net = extflow.build_network(args.shape, args.parity)
    if args.dot:
        sys.stdout.write(extflow.to_dot(net))
        return
    print(f"shape {args.shape} parity {args.parity.value}")
    print("nodes " + " ".join(f"({i},{a})" for i, a in net.nodes))
    print(f"source ({net.source[0]},{net.source[1]}) "
          f"sink ({net.sink[0]},{net.sink[1]})")
    for arc in net.arcs:
        ones = ",".join(str(j + 1) for j in arc.projection) if arc.projection else "-"
        print(f"arc ({arc.tail[0]},{arc.tail[1]})->({arc.head[0]},{arc.head[1]}) "
              f"layer {arc.layer} label {arc.label} ones {ones}")


def _cmd_witness(args) -> None:
    w = hedging.hedging_witness(args.n, args.z)
    print(f"case {w.case.value}")
    print("x " + ",".join(str(v) for v in w.x))
    print(f"achieved {w.achieved}")


def _cmd_multiwitness(args) -> None:
    cond, point = hedging.multi_hedging_witness(args.shape, args.z, args.family)
    for iset, total in zip(cond.family, cond.sums):
        tag = "" if total >= 1 else " (fails)"
        print(f"set {_fmt_set_1based(iset)} sum {total}{tag}")
    if point is None:
        print("condition fails")
    else:
        print(f"witness {point}")


def _cmd_gtsp_solve(args) -> None:
    try:
        with open(args.graph, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {args.graph}: {exc.strerror or exc}")
    graph = gtsp.load_graph(text)
    config = gtsp.CutConfig(max_rounds=args.rounds, **args.cuts)
    report = gtsp.cutting_plane_solve(graph, config)
    rendered = report.render()
    sys.stdout.write(rendered)
    if args.report is not None:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(rendered)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orderedparity",
        description="Ordered parity polytopes: separation, descriptions, "
                    "flow formulations, hedging witnesses, and a graphic-TSP "
                    "cutting-plane driver.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("separate", help="run the separation oracle on a point")
    p.add_argument("--shape", type=_shape_arg, required=True,
                   help="group sizes, e.g. 2,2")
    p.add_argument("--parity", type=_parity_arg, required=True,
                   help="even or odd")
    p.add_argument("--point", type=_point_arg, required=True,
                   help="grouped rational point, e.g. '1,1/2;1,0'")
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("describe", help="print the complete outer description")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--parity", type=_parity_arg, required=True)
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("optimize", help="minimize a linear objective over the polytope")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--parity", type=_parity_arg, required=True)
    p.add_argument("--objective", type=_rat_list_arg, required=True,
                   help="flat comma-separated rational costs, e.g. '1,-1,0,2'")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("network", help="print the layered flow network")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--parity", type=_parity_arg, default=ParityClass.EVEN)
    p.add_argument("--dot", action="store_true", help="emit GraphViz dot text")
    p.set_defaults(func=_cmd_network)

    p = sub.add_parser("witness", help="hedging witness for one group")
    p.add_argument("--n", type=_positive_int_arg, required=True,
                   help="group size")
    p.add_argument("--z", type=_rat_arg, required=True,
                   help="prescribed coordinate sum")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("multiwitness",
                       help="multi-group hedging witness under a cut family")
    p.add_argument("--shape", type=_shape_arg, required=True)
    p.add_argument("--z", type=_rat_list_arg, required=True,
                   help="per-group sums, e.g. '1,1,1,1'")
    p.add_argument("--family", type=_family_arg, required=True,
                   help="semicolon-separated 1-based index sets, e.g. '1,2;2,3'")
    p.set_defaults(func=_cmd_multiwitness)

    p = sub.add_parser("gtsp", help="graphic TSP cutting-plane experiments")
    gsub = p.add_subparsers(dest="gtsp_command", required=True)
    ps = gsub.add_parser("solve", help="run the cutting-plane loop on a graph file")
    ps.add_argument("--graph", required=True, help="graph file: 'n m' then edge lines")
    ps.add_argument("--cuts", type=_cuts_arg,
                    default={"connectivity": True, "blossom_original": False,
                             "blossom_strengthened": False},
                    help="comma-separated families: connectivity, blossom, "
                         "blossom-strengthened")
    ps.add_argument("--rounds", type=_positive_int_arg, default=50,
                    help="round cap (default 50)")
    ps.add_argument("--report", default=None,
                    help="also write the report to this file")
    ps.set_defaults(func=_cmd_gtsp_solve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
