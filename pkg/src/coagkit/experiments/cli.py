"""``coagkit <study> --config PATH``: run one study and write its CSV files."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ..errors import ConfigError
from .config import builtin_config, builtin_names, load_config
from .studies import run_study

log = logging.getLogger("coagkit")

STUDY_NAMES = {
    "validate": "validate",
    "self-converge": "self_converge",
    "moments": "moments",
    "cost": "cost",
    "xmax-sweep": "xmax_sweep",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coagkit", description=__doc__)
    p.add_argument("study", choices=sorted(STUDY_NAMES))
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", type=Path, help="config file (key = value lines)")
    src.add_argument("--builtin", metavar="NAME", help=f"shipped config, one of: {', '.join(builtin_names())}")
    p.add_argument("--output-dir", type=Path, help="overrides output_dir from the config")
    p.add_argument("--threads", type=int, default=1, help="run independent cases in parallel")
    p.add_argument("--seedless", action="store_true",
                   help="accepted for compatibility; nothing here is random")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    study = STUDY_NAMES[args.study]
    try:
        cfg = load_config(args.config) if args.config else builtin_config(args.builtin)
    except (OSError, ConfigError) as exc:
        print(f"coagkit: {exc}", file=sys.stderr)
        return 2
    if cfg.study != study:
        print(f"coagkit: config is for study {cfg.study!r}, not {study!r}", file=sys.stderr)
        return 2
    if args.threads < 1:
        print("coagkit: --threads must be >= 1", file=sys.stderr)
        return 2
    out = args.output_dir or Path(cfg.output_dir)
    table = run_study(cfg, threads=args.threads)
    for path in table.write(out):
        print(path)
    failures = [c for c in table.children if c.name.endswith("_failures")]
    for f in failures:
        for row in f.rows:
            log.warning("case failed: %s", row)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
