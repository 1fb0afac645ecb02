"""Command-line entry point: render_all and per-figure render.

Exit codes: 0 success, 1 missing/ill-formed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .discover import build_specs, require_all
from .spec import FIGURE_COUNT, FigureError, render


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="echowave-figures", description="Render publication figures from echowave run directories")
    p.add_argument("--version", action="version", version=f"echowave-figures {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("render_all", "render all seven figures"),
        ("render", "render a single figure"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("run_dir", help="directory containing simulator run directories")
        sp.add_argument("out_dir", help="directory for the rendered images")
        if name == "render":
            sp.add_argument("--figure", type=int, required=True, metavar="N", help=f"figure number 1-{FIGURE_COUNT}")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        specs = build_specs(args.run_dir, args.out_dir)
        if args.command == "render":
            if args.figure not in specs:
                raise FigureError(f"no run directory under {args.run_dir} supplies figure {args.figure}")
            results = [render(specs[args.figure])]
        else:
            ordered = require_all(specs, args.run_dir)
            # one process per figure, no shared state
            with ProcessPoolExecutor(max_workers=len(ordered)) as pool:
                results = list(pool.map(render, ordered))
        for r in results:
            print(f"figure {r.figure_id}: {r.out_path} ({r.curve_count} curves)")
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
