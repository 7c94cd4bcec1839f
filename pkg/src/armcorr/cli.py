"""Command-line pipeline: ``armcorr simulate | analyze | segment``.

Exit codes: 0 success, 1 usage error, 2 config/validation error, 3 data
error (unreadable or malformed artifacts).
"""

from __future__ import annotations

import argparse
import sys

from .agency import AgencyParams
from .config import ConfigError, DEFAULT_CONFIG, load_config
from .correlation import DEFAULT_MIN_SAMPLES, PanelFormatError
from .pipeline import REPORT_FILENAME, stage_analyze, stage_segment, stage_simulate
from .trace import TraceFormatError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_DATA = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; the pipeline contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _load_config_arg(spec: str):
    if spec == "default":
        return DEFAULT_CONFIG
    return load_config(spec)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="armcorr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="run the babbling simulation and write a trace")
    sim.add_argument("--config", default="default", help="config YAML path, or 'default'")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--steps", type=_positive_int, default=216000)
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--force", action="store_true", help="write into a non-empty directory")

    ana = sub.add_parser("analyze", help="compute correlation panels A-D from a trace")
    ana.add_argument("--log", required=True, help="trace file from simulate")
    ana.add_argument("--out", required=True, help="output directory for panel CSVs")
    ana.add_argument("--min-samples", type=_positive_int, default=DEFAULT_MIN_SAMPLES)

    seg = sub.add_parser("segment", help="cluster entities and label them for one observer")
    seg.add_argument("--panels", required=True, help="directory holding panel CSVs")
    seg.add_argument("--log", required=True, help="trace file from simulate")
    seg.add_argument("--perspective", type=int, choices=(0, 1), required=True)
    seg.add_argument("--out", default=None, help=f"report path (default: <panels>/{REPORT_FILENAME})")
    seg.add_argument("--cluster-threshold", type=float, default=AgencyParams.cluster_threshold)
    seg.add_argument("--control-threshold", type=float, default=AgencyParams.control_threshold)
    seg.add_argument("--min-samples", type=_positive_int, default=DEFAULT_MIN_SAMPLES)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            config = _load_config_arg(args.config)
            path = stage_simulate(config, args.seed, args.steps, args.out, force=args.force)
            print(f"wrote {path}")
        elif args.command == "analyze":
            written = stage_analyze(args.log, args.out, min_samples=args.min_samples)
            print(f"wrote {len(written)} panel files to {args.out}")
        elif args.command == "segment":
            params = AgencyParams(
                cluster_threshold=args.cluster_threshold,
                control_threshold=args.control_threshold,
            )
            out = args.out if args.out else f"{args.panels}/{REPORT_FILENAME}"
            path = stage_segment(
                args.panels, args.log, args.perspective, out, params, min_samples=args.min_samples
            )
            print(f"wrote {path}")
    except ConfigError as exc:
        print(f"armcorr: config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileExistsError as exc:
        print(f"armcorr: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (TraceFormatError, PanelFormatError) as exc:
        print(f"armcorr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"armcorr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"armcorr: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
