#!/usr/bin/env python3

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .analysis import analyze, checks_passed
from .config import ToleranceConfig, load_tolerances
from .errors import AntipolarError, InputError
from .flow import FlowConfig, summarize, sweep
from .io import CATALOG, build_report, catalog, format_points, read_point_file, render_text
from .io import write_sweep_csv, write_sweep_html
from .utils import ModelSerializer

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

SCHEDULE_FLAGS = ["max_iters", "step", "beta0", "beta_max", "beta_growth", "grad_tol", "active_eps", "restarts"]


def _fail(message: str, code: int = EXIT_INPUT_ERROR) -> int:
    print(f"antipolar: {message}", file=sys.stderr)
    return code


def _tolerances(args) -> ToleranceConfig:
    return load_tolerances(
        args.preset,
        eps_unit=args.eps_unit,
        eps_geom=args.eps_geom,
        eps_diam=args.eps_diam,
        eps_polar=args.eps_polar,
    )


def cmd_analyze(args) -> int:
    try:
        tol = _tolerances(args)
        cloud = read_point_file(args.path, eps_unit=tol.eps_unit)
        state = analyze(cloud, tol)
    except (InputError, ValueError) as e:
        return _fail(str(e))
    except AntipolarError as e:
        return _fail(f"{type(e).__name__}: {e}", EXIT_CHECK_FAILED)

    doc = build_report(state)
    if args.json == "-":
        print(ModelSerializer.to_json(doc))
    else:
        print(render_text(doc, source=str(args.path)), end="")
        if args.json:
            Path(args.json).write_text(ModelSerializer.to_json(doc) + "\n")
    return EXIT_OK if doc.checks_passed else EXIT_CHECK_FAILED


def _verify_targets(path: Path) -> List[Path]:
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith("."))
    return [path]


def cmd_verify(args) -> int:
    path = Path(args.path)
    if not path.exists():
        return _fail(f"{path} does not exist")
    try:
        tol = _tolerances(args)
    except ValueError as e:
        return _fail(str(e))

    failed = errors = 0
    for target in _verify_targets(path):
        try:
            state = analyze(read_point_file(target, eps_unit=tol.eps_unit), tol)
        except InputError as e:
            errors += 1
            print(f"ERROR {target}: {e}")
            continue
        except AntipolarError as e:
            failed += 1
            print(f"FAIL  {target}: {type(e).__name__}: {e}")
            continue
        if checks_passed(state):
            print(f"PASS  {target}")
        else:
            failed += 1
            print(f"FAIL  {target}: g2 {state.verify.g2_census}/{state.verify.g2_flag}, euler {state.euler}")

    print(f"{failed} failed, {errors} input errors")
    if failed:
        return EXIT_CHECK_FAILED
    return EXIT_INPUT_ERROR if errors else EXIT_OK


def cmd_generate(args) -> int:
    if args.trials < 1:
        return _fail("--trials must be at least 1")
    if args.n is not None:
        n_list = [args.n]
    else:
        lo, hi = args.n_range
        if lo > hi:
            return _fail("--n-range LO HI needs LO <= HI")
        n_list = list(range(lo, hi + 1))

    overrides = {k: getattr(args, k) for k in SCHEDULE_FLAGS if getattr(args, k) is not None}
    try:
        tol = _tolerances(args)
        config = FlowConfig(n=min(n_list), seed=args.seed, **overrides)
        rows = sweep(n_list, args.trials, args.seed, overrides=overrides, workers=args.workers, tol=tol)
    except ValueError as e:
        return _fail(str(e))

    summary = summarize(rows)
    write_sweep_csv(rows, args.out)
    if args.html:
        write_sweep_html(rows, summary, args.html, config=config)

    print(ModelSerializer.to_json({"config": config.model_dump(exclude={"n", "seed"}), "summary": summary}))
    if summary.theorem1_violations:
        return _fail(f"{summary.theorem1_violations} certified configurations violate e(G) >= 3 f0 - 5", EXIT_CHECK_FAILED)
    return EXIT_OK


def cmd_catalog(args) -> int:
    try:
        cloud = catalog(args.name)
    except InputError as e:
        return _fail(str(e))
    text = format_points(cloud, comment=args.name)
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    return EXIT_OK


def _add_tolerance_flags(parser: argparse.ArgumentParser, preset: str) -> None:
    defaults = ToleranceConfig.catalog() if preset == "catalog" else ToleranceConfig.flow()
    parser.add_argument(
        "--preset", choices=["catalog", "flow"], default=preset, help=f"tolerance preset (default: {preset})"
    )
    for name, text in [
        ("eps_unit", "unit-norm and duplicate-point slack"),
        ("eps_geom", "coplanarity and incidence slack"),
        ("eps_diam", "slack on the maximal distance for diameter-graph edges"),
        ("eps_polar", "anti-self-polar residual bound"),
    ]:
        parser.add_argument(
            f"--{name.replace('_', '-')}",
            dest=name,
            type=float,
            default=None,
            help=f"{text} (default: {getattr(defaults, name):g}, env ANTIPOLAR_{name.upper()})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antipolar", description="Anti-self-polar 4-polytope toolkit")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_parser = commands.add_parser("analyze", help="analyze one point file")
    analyze_parser.add_argument("path", help="point file: four reals per line")
    analyze_parser.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    _add_tolerance_flags(analyze_parser, "catalog")
    analyze_parser.set_defaults(handler=cmd_analyze)

    verify_parser = commands.add_parser("verify", help="check identities on a point file or a directory of them")
    verify_parser.add_argument("path", help="point file or directory")
    _add_tolerance_flags(verify_parser, "catalog")
    verify_parser.set_defaults(handler=cmd_verify)

    flow = FlowConfig.model_fields
    generate_parser = commands.add_parser("generate", help="run the diameter flow sweep")
    sizes = generate_parser.add_mutually_exclusive_group(required=True)
    sizes.add_argument("--n", type=int, help="number of points")
    sizes.add_argument("--n-range", type=int, nargs=2, metavar=("LO", "HI"), help="inclusive range of n")
    generate_parser.add_argument("--trials", type=int, required=True, help="trials per n")
    generate_parser.add_argument("--seed", type=int, default=0, help="master seed (default: 0)")
    generate_parser.add_argument("--out", required=True, help="CSV output path")
    generate_parser.add_argument("--html", help="optional static HTML table")
    generate_parser.add_argument("--workers", type=int, default=None, help="parallel trials (default: executor default)")
    for name in SCHEDULE_FLAGS:
        kind = int if name in ("max_iters", "restarts") else float
        generate_parser.add_argument(
            f"--{name.replace('_', '-')}",
            dest=name,
            type=kind,
            default=None,
            help=f"flow schedule (default: {flow[name].default:g})",
        )
    _add_tolerance_flags(generate_parser, "flow")
    generate_parser.set_defaults(handler=cmd_generate)

    catalog_parser = commands.add_parser("catalog", help="write a catalog polytope as a point file")
    catalog_parser.add_argument("name", help=f"one of {', '.join(CATALOG)}")
    catalog_parser.add_argument("--out", help="output path (default: stdout)")
    catalog_parser.set_defaults(handler=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code

    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
