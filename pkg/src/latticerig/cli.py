"""Command-line front end: generate, analyze, search, verify.

Every subcommand is deterministic given its flags and input files, prints a
human summary plus one machine-readable ``RESULT key=value ...`` line, and
follows one exit-code contract: 0 success, 2 search found nothing rigid,
1 anything else.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import core, generators, girth_builder, io_formats, rigidity

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FOUND = 2


def _result_line(**fields) -> str:
    return "RESULT " + " ".join(f"{k}={v}" for k, v in fields.items())


def _write(path: Path, text: str):
    path.write_text(text, encoding="ascii")
    print(f"wrote {path}")


def _export_2d(framework, out_dir: Path, grid: int):
    _write(out_dir / "framefile.txt", io_formats.write_framefile(framework, grid))
    _write(out_dir / "sparsematrix.txt", io_formats.write_sparsematrix(framework))


def _parse_board(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("board must look like MxN, e.g. 5x6")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("board sides must be integers")
    return m, n


def cmd_generate(args) -> int:
    if args.kind in ("knight2d", "leaper"):
        if args.board is None:
            print("error: --board is required for this kind", file=sys.stderr)
            return EXIT_ERROR
        m, n = args.board
        framework = generators.knight_2d(m, n, args.a, args.b)
        grid = max(m, n)
    else:
        if args.n is None or args.dim is None:
            print("error: --n and --dim are required for kind=lattice",
                  file=sys.stderr)
            return EXIT_ERROR
        framework = generators.knight_lattice(args.n, args.dim, args.a, args.b)
        grid = args.n
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write(out_dir / "framework.txt", io_formats.write_canonical(framework))
    if framework.dimension == 2:
        _export_2d(framework, out_dir, grid)
    v, e = len(framework.joints), len(framework.bars)
    print(f"{v} joints, {e} bars")
    print(_result_line(kind=args.kind, joints=v, bars=e,
                       dim=framework.dimension, a=args.a, b=args.b))
    return EXIT_OK


def _print_report(report: rigidity.AnalysisReport):
    print("Required rank for rigidity:")
    print(report.required_rank)
    print("Rank of rigidity matrix:")
    print(report.rank if report.rank is not None else "(skipped)")
    if report.note:
        print(f"note: {report.note}")
    print(report.verdict)


def cmd_analyze(args) -> int:
    try:
        framework = io_formats.read_canonical(Path(args.path).read_text())
    except (OSError, io_formats.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = rigidity.analyze(framework, mode=args.mode, tol=args.tol)
    _print_report(report)
    print(_result_line(
        verdict=report.verdict.replace(" ", "-"),
        rank=report.rank if report.rank is not None else "none",
        required=report.required_rank,
        joints=report.joints, bars=report.bars, dim=report.dimension,
        mode=report.mode,
        fell_back=report.fell_back,
    ))
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        config = girth_builder.BuildConfig(
            n=args.n, m=args.m, target_girth=args.girth,
            seed=args.seed, trials=args.trials,
        )
    except girth_builder.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    outcome = girth_builder.search(config, workers=args.workers, tol=args.tol)
    best = outcome.best
    if best is None:
        print("no rigid framework found (no nonempty candidates)")
        print(_result_line(found="none", trials=outcome.trials_run))
        return EXIT_NOT_FOUND
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fw = best.framework
    _write(out_dir / "framework.txt", io_formats.write_canonical(fw))
    _export_2d(fw, out_dir, args.n)
    _write(out_dir / "drawing.svg", io_formats.draw_svg(fw))
    _write(out_dir / "adjacency.pgm", io_formats.adjacency_image(fw))
    girth_str = "inf" if math.isinf(best.girth_achieved) else int(best.girth_achieved)
    print("girth | n | m | joints | bars | trials")
    print(f"{girth_str} | {args.n} | {args.m} | {best.joints} | {best.bars} "
          f"| {outcome.trials_run}")
    print(_result_line(
        found="rigid" if outcome.found_rigid else "best-candidate",
        joints=best.joints, bars=best.bars, girth=girth_str,
        trial=best.trial_index, seed=args.seed, trials=outcome.trials_run,
    ))
    if not outcome.found_rigid:
        print("no rigid framework found")
        return EXIT_NOT_FOUND
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        framework = io_formats.read_canonical(Path(args.path).read_text())
    except (OSError, io_formats.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    empty = not framework.joints
    observed_girth = core.girth(framework)
    coloring = core.bipartition(framework)
    checks: list[tuple[str, bool]] = []
    checks.append(("unit-bar", core.is_unit_bar(framework)))
    checks.append(("bipartite", coloring is not None))
    girth_ok = coloring is None or math.isinf(observed_girth) \
        or observed_girth % 2 == 0
    if args.girth is not None:
        girth_ok = girth_ok and observed_girth >= args.girth
    checks.append(("girth", girth_ok))
    degree_ok = empty or min(framework.degrees()) >= args.min_degree
    checks.append(("degree", degree_ok))
    round_trip = True
    try:
        round_trip = io_formats.read_canonical(
            io_formats.write_canonical(framework)) == framework
        if framework.dimension == 2 and framework.joints:
            span = 1 + max(max(p) for p in framework.joints)
            if all(min(p) >= 0 for p in framework.joints):
                echo = io_formats.read_framefile(
                    io_formats.write_framefile(framework, span), span)
                original = {
                    tuple(sorted((framework.joints[i], framework.joints[j])))
                    for i, j in framework.bars
                }
                recovered = {
                    tuple(sorted((echo.joints[i], echo.joints[j])))
                    for i, j in echo.bars
                }
                round_trip = round_trip and original == recovered
    except io_formats.FormatError:
        round_trip = False
    checks.append(("round-trip", round_trip))
    all_ok = True
    for name, ok in checks:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
        all_ok = all_ok and ok
    girth_str = "inf" if math.isinf(observed_girth) else int(observed_girth)
    print(_result_line(
        verified="yes" if all_ok else "no",
        girth=girth_str,
        joints=len(framework.joints), bars=len(framework.bars),
    ))
    return EXIT_OK if all_ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticerig",
        description="Generate lattice bar-joint frameworks and decide "
                    "infinitesimal rigidity by rigidity-matrix rank.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="construct a leaper framework")
    p_gen.add_argument("--kind", choices=("knight2d", "lattice", "leaper"),
                       required=True)
    p_gen.add_argument("--board", type=_parse_board, default=None,
                       help="board size MxN for knight2d/leaper")
    p_gen.add_argument("--n", type=int, default=None, help="lattice side")
    p_gen.add_argument("--dim", type=int, default=None, help="lattice dimension")
    p_gen.add_argument("--a", type=int, default=1, help="first leap offset")
    p_gen.add_argument("--b", type=int, default=2, help="second leap offset")
    p_gen.add_argument("--out-dir", default=".", help="output directory")
    p_gen.set_defaults(func=cmd_generate)

    p_an = sub.add_parser("analyze", help="rigidity verdict for a framework file")
    p_an.add_argument("path", help="canonical framework file")
    p_an.add_argument("--mode", choices=("auto", "exact", "numeric"),
                      default="auto")
    p_an.add_argument("--tol", type=float, default=rigidity.DEFAULT_NUMERIC_TOL)
    p_an.set_defaults(func=cmd_analyze)

    p_se = sub.add_parser("search", help="randomized search for rigid "
                                         "high-girth frameworks")
    p_se.add_argument("--n", type=int, required=True, help="lattice side")
    p_se.add_argument("--m", type=int, required=True, help="squared bar length")
    p_se.add_argument("--girth", type=int, required=True,
                      help="even target girth >= 4")
    p_se.add_argument("--trials", type=int, default=100)
    p_se.add_argument("--seed", type=int, default=0)
    p_se.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p_se.add_argument("--tol", type=float, default=rigidity.DEFAULT_NUMERIC_TOL)
    p_se.add_argument("--out-dir", default=".", help="output directory")
    p_se.set_defaults(func=cmd_search)

    p_ve = sub.add_parser("verify", help="recheck construction invariants "
                                         "of a framework file")
    p_ve.add_argument("path", help="canonical framework file")
    p_ve.add_argument("--girth", type=int, default=None,
                      help="require at least this girth")
    p_ve.add_argument("--min-degree", type=int, default=3)
    p_ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (core.FrameworkError, girth_builder.ConfigError,
            io_formats.FormatError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
