"""Command line entry point: ``rlk analyze|compare|partitions|quiver|verify``.

Exit codes: 0 success, 2 parse/schema/input errors, 3 a declared hypothesis
does not hold, 4 an asserted theorem verdict fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import partitions as pt
from .config import ConfigError, bundled_names, load_config
from .lattice import InvalidComplement, MissingSides
from .quiver import block_quiver, node_quiver, to_dot
from .report import analyze, compare, failures, hypothesis_failures, render_text

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_VERDICT = 4


def _emit(args: argparse.Namespace, report: dict[str, Any]) -> None:
    if not args.quiet:
        sys.stdout.write(render_text(report))
    if args.json:
        if not args.quiet:
            sys.stdout.write("--- json ---\n")
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def _cmd_analyze(args: argparse.Namespace) -> int:
    _emit(args, analyze(load_config(args.config)))
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace) -> int:
    _emit(args, compare(load_config(args.config)))
    return EXIT_OK


def _cmd_partitions(args: argparse.Namespace) -> int:
    n = args.n
    lines = [f"B_{n} = {pt.bell(n)}"]
    result: dict[str, Any] = {"command": "partitions", "n": n, "bell": pt.bell(n)}
    if args.k is not None:
        lines.append(f"S({n},{args.k}) = {pt.stirling2(n, args.k)}")
        result["stirling2"] = {"k": args.k, "value": pt.stirling2(n, args.k)}
    if args.profile is not None:
        profile = pt.BlockProfile.parse(args.profile)
        if profile.n != n:
            raise ValueError(f"profile {profile.parts} does not sum to {n}")
        lines.append(f"N = {pt.profile_multiplicity(profile)}")
        result["profile"] = {"parts": list(profile.parts), "multiplicity": pt.profile_multiplicity(profile)}
    if args.list:
        listing = []
        lines.append("partition\tprofile\tdim_node\tdim_geom\tdim_rel")
        for p in pt.enumerate_partitions(n):
            if args.k is not None and len(p) != args.k:
                continue
            law = pt.dimension_law(n, p)
            lines.append(f"{p}\t{','.join(map(str, p.profile))}\t{law.dim_node}\t{law.dim_geom}\t{law.dim_rel}")
            listing.append({"blocks": [[k + 1 for k in b] for b in p.blocks], **law._asdict()})
        result["listing"] = listing
    if not args.quiet:
        sys.stdout.write("\n".join(lines) + "\n")
    if args.json:
        sys.stdout.write(json.dumps(result, indent=2) + "\n")
    return EXIT_OK


def _cmd_quiver(args: argparse.Namespace) -> int:
    d = load_config(args.config).datum()
    shadow = node_quiver(d) if args.flavor == "node" else block_quiver(d)
    Path(args.out).write_text(to_dot(shadow, f"{args.flavor}_quiver"), encoding="utf-8")
    if not args.quiet:
        print(f"coupling_dim = {shadow.coupling_dim}")
        if args.flavor == "block" and shadow.coupling_dim < len(shadow.local_vertices):
            print(f"note: rank {shadow.coupling_dim} < {len(shadow.local_vertices)} blocks (not block-adapted)")
    if args.json:
        print(json.dumps({"command": "quiver", "flavor": args.flavor, "out": str(args.out),
                          "vertices": len(shadow.vertices), "coupling_dim": shadow.coupling_dim}))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    reports = [analyze(cfg)]
    if cfg.sides:
        reports.append(compare(cfg))
    failed = [f for rep in reports for f in failures(rep)]
    bad_hyp = [h for rep in reports for h in hypothesis_failures(rep)]
    if failed:
        code = EXIT_VERDICT
    elif bad_hyp:
        code = EXIT_HYPOTHESIS
    else:
        code = EXIT_OK
    summary = {
        "command": "verify",
        "status": "ok" if code == EXIT_OK else "fail",
        "exit_code": code,
        "checked": sum(1 for rep in reports for v in rep["verdicts"] if v["asserted"]),
        "failures": [{"verdict": f["name"], "detail": f.get("detail", f["statement"])} for f in failed],
        "hypothesis_failures": [h["name"] for h in bad_hyp],
    }
    if not args.quiet:
        for rep in reports:
            sys.stdout.write(render_text(rep))
    if args.json or code != EXIT_OK:
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured JSON report")
    common.add_argument("--quiet", action="store_true", help="suppress the human-readable text")

    parser = argparse.ArgumentParser(
        prog="rlk",
        description="Relation lattices and incidence analysis for finite-node configurations.",
        epilog="CONFIG is a JSON file path or a bundled example written as @name "
        f"({', '.join('@' + n for n in bundled_names())}).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="blocks, dimensions and class checks")
    p.add_argument("config")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("compare", parents=[common], help="relation lattice comparison")
    p.add_argument("config")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("partitions", parents=[common], help="Bell/Stirling counts and partition listing")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--profile", default=None, help="block profile such as 2,1")
    p.add_argument("--list", action="store_true", help="list partitions with their dimension law")
    p.set_defaults(func=_cmd_partitions)

    p = sub.add_parser("quiver", parents=[common], help="write the node or block quiver as DOT")
    p.add_argument("config")
    p.add_argument("--flavor", choices=("node", "block"), default="block")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_quiver)

    p = sub.add_parser("verify", parents=[common], help="run every applicable check; nonzero exit on failure")
    p.add_argument("config")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, MissingSides, pt.TooLarge, ValueError, OSError) as exc:
        if isinstance(exc, InvalidComplement):
            code = EXIT_HYPOTHESIS
        else:
            code = EXIT_INPUT
        print(f"rlk: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
