"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 input-format error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .asymptotics import asymptotic_report
from .dynamics import (ENUMERATION_LIMIT, Configuration, is_recurrent, recurrent_group,
                       recurrent_identity, stabilize, stable_space_size)
from .graphio import GraphFormatError, read_graph, to_dot
from .lattice import group_invariants
from .report import RunReport, invariants_payload, theorem_payload
from .sylow import conjectured_sylow_rank, predicted_sylow_rank
from .theorems import ALL_CHECKS, TreeGroup, verify_tree
from .tree import build_tree, reduced_laplacian

SNF_LIMIT = 2000

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_format(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sandpile-trees", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="source", required=True, parser_class=_Parser)

    tree = top.add_parser("tree", help="work with the d-regular tree of depth h")
    tree.add_argument("--d", type=int, required=True)
    tree.add_argument("--h", type=int, required=True)
    graph = top.add_parser("graph", help="work with a sinked graph read from a file")
    graph.add_argument("--input", required=True)

    for src in (tree, graph):
        cmds = src.add_subparsers(dest="command", required=True, parser_class=_Parser)
        inv = cmds.add_parser("invariants", help="invariant factors, order, exponent, rank")
        _add_format(inv)
        inv.add_argument("--force", action="store_true", help="lift the matrix size guard")
        dyn = cmds.add_parser("dynamics", help="sandpile dynamics")
        dyn.add_argument("--op", required=True,
                         choices=("stabilize", "recurrent", "identity", "group-order"))
        dyn.add_argument("--config", help="comma-separated heights in vertex order")
        dyn.add_argument("--seed", type=int, help="random toppling schedule seed")
        dyn.add_argument("--force", action="store_true", help="lift the enumeration guard")
        _add_format(dyn)
        cmds.add_parser("dot", help="print the graph in DOT format")
        if src is tree:
            verify = cmds.add_parser("verify", help="check closed forms against exact computation")
            verify.add_argument("--all", action="store_true")
            for name in ALL_CHECKS:
                verify.add_argument("--" + name.replace("_", "-"), dest=f"check_{name}",
                                    action="store_true")
            verify.add_argument("--force", action="store_true")
            _add_format(verify)

    conj = top.add_parser("conjecture", help="test the Sylow-rank conjecture for a prime p")
    conj.add_argument("--d", type=int, required=True)
    conj.add_argument("--p", type=int, required=True)
    conj.add_argument("--h-max", type=int, required=True)
    _add_format(conj)

    asym = top.add_parser("asymptotics", help="order/exponent growth trends")
    asym.add_argument("--d", type=int, required=True)
    asym.add_argument("--h-max", type=int, required=True)
    asym.add_argument("--terms", type=int, default=30)
    _add_format(asym)
    return parser


def _load_graph(args):
    if args.source == "tree":
        g, coords = build_tree(args.d, args.h)
        return g, coords
    return read_graph(args.input), None


def _guard_size(g, force):
    if g.num_vertices > SNF_LIMIT and not force:
        raise UsageError(f"{g.num_vertices} vertices exceeds the limit of {SNF_LIMIT}; "
                         "pass --force to override")


def cmd_invariants(args):
    g, _ = _load_graph(args)
    _guard_size(g, args.force)
    inv = group_invariants(reduced_laplacian(g))
    return {"num_vertices": g.num_vertices, **invariants_payload(inv)}, EXIT_OK


def cmd_verify(args):
    selected = [n for n in ALL_CHECKS if getattr(args, f"check_{n}")]
    if args.all or not selected:
        selected = list(ALL_CHECKS)
    tg = TreeGroup(args.d, args.h)
    _guard_size(tg.graph, args.force)
    rep = verify_tree(args.d, args.h, selected, tg)
    return theorem_payload(rep), EXIT_OK if rep.all_passed else EXIT_MISMATCH


def _parse_config(g, text):
    if text is None:
        raise UsageError("--config is required for this operation")
    c = Configuration.from_csv(text)
    if len(c) != g.num_vertices:
        raise UsageError(f"config has {len(c)} heights; graph has {g.num_vertices} vertices")
    return c


def cmd_dynamics(args):
    g, _ = _load_graph(args)
    if args.op == "stabilize":
        c = _parse_config(g, args.config)
        res = stabilize(g, c, seed=args.seed)
        return {"stable": res.stable.to_csv(), "odometer": ",".join(map(str, res.odometer)),
                "grains_to_sink": str(res.grains_to_sink)}, EXIT_OK
    if args.op == "recurrent":
        c = _parse_config(g, args.config)
        if not c.is_stable(g):
            raise UsageError("recurrence is defined for stable configurations only")
        return {"config": c.to_csv(), "recurrent": is_recurrent(g, c)}, EXIT_OK
    if args.op == "identity":
        return {"identity": recurrent_identity(g).to_csv()}, EXIT_OK
    size = stable_space_size(g)
    if size > ENUMERATION_LIMIT and not args.force:
        raise UsageError(f"stable configuration space has {size} elements, over "
                         f"{ENUMERATION_LIMIT}; pass --force to override")
    summary = recurrent_group(g, force=args.force)
    return {"stable_configurations": str(summary.stable_count),
            "recurrent_configurations": str(summary.recurrent_count),
            "group_order": str(summary.order), "exponent": str(summary.exponent),
            "identity": summary.identity.to_csv()}, EXIT_OK


def cmd_dot(args):
    g, coords = _load_graph(args)
    sys.stdout.write(to_dot(g, coords))
    return None, EXIT_OK


def _conjecture_row(d, h, p):
    pred = conjectured_sylow_rank(d, h, p)
    return {"h": h, "t_p": pred.t_p, "r": pred.r, "regime": pred.regime,
            "predicted": pred.predicted_rank, "computed": pred.computed_rank,
            "match": pred.match}


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("SANDPILE_THREADS", "1")))
    except ValueError:
        return 1


def cmd_conjecture(args):
    d, p, h_max = args.d, args.p, args.h_max
    if d < 3 or h_max < 1:
        raise UsageError("need d >= 3 and h-max >= 1")
    predicted_sylow_rank(d, 1, p)  # validates p before any heavy work
    hs = range(1, h_max + 1)
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_conjecture_row, [d] * len(hs), hs, [p] * len(hs)))
    else:
        rows = [_conjecture_row(d, h, p) for h in hs]
    return {"d": d, "p": p, "all_match": all(r["match"] for r in rows), "table": rows}, EXIT_OK


def cmd_asymptotics(args):
    rep = asymptotic_report(args.d, args.h_max, args.terms)
    payload = rep.to_dict()
    payload["table"] = [{"h": h, "order_ratio": payload["order_ratio"][str(h)],
                         "deviation": payload["order_deviation"][str(h)],
                         **{k: payload["sandwich"][str(h)][k]
                            for k in ("lower", "exponent", "upper", "holds")},
                         "exponent_ratio": payload["exponent_ratio"][str(h)]}
                        for h in range(1, args.h_max + 1)]
    return payload, EXIT_OK


def _params(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in vars(args).items() if k not in skip and v not in (None, False)}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"invariants": cmd_invariants, "verify": cmd_verify, "dynamics": cmd_dynamics,
               "dot": cmd_dot, "conjecture": cmd_conjecture, "asymptotics": cmd_asymptotics}
    name = getattr(args, "command", None) or args.source
    start = time.perf_counter()
    try:
        payload, code = handler[name](args)
    except GraphFormatError as exc:
        print(f"sandpile-trees: input format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ValueError as exc:
        print(f"sandpile-trees: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if payload is None:
        return code
    report = RunReport(name, _params(args), payload, time.perf_counter() - start)
    out = report.to_csv() if getattr(args, "format", "json") == "csv" else report.to_json() + "\n"
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
