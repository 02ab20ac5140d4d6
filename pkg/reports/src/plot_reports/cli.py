import argparse
import sys

from .render import render_convergence
from .traces import ReportError, parse_baseline


def build_parser():
    p = argparse.ArgumentParser(
        prog="plot-convergence",
        description="Plot solver convergence traces (dual/primal curves "
                    "plus baseline lines) from CSV files.")
    p.add_argument("--trace", action="append", required=True,
                   metavar="CSV", help="trace file; repeat to overlay")
    p.add_argument("--baseline", action="append", default=[],
                   metavar="LABEL=VALUE",
                   help="horizontal reference line; repeatable")
    p.add_argument("-o", "--output", required=True, help="image path")
    p.add_argument("--format", choices=("png", "svg"),
                   help="image format (default: from the output suffix)")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        baselines = [parse_baseline(s) for s in args.baseline]
        render_convergence(args.trace, baselines, args.output, fmt=args.format)
        print(f"wrote {args.output}")
        return 0
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    except ReportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
