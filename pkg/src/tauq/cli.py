"""Command-line entry point: ``tauq --config run.cfg --suite tau-jacobi --json report.json``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .config import ConfigError, SuiteConfig, parse_config, validate
from .report import VerificationReport
from .verify import SUITES, run

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tauq", description="Run exact property suites for Courant structures and their transgression.")
    p.add_argument("--config", metavar="PATH", help="key = value configuration file")
    p.add_argument("--suite", metavar="NAME", action="append", default=[], help="suite to run (repeatable; default: all applicable)")
    p.add_argument("--seed", type=int, help="override the configured seed")
    p.add_argument("--samples", type=int, help="override the samples per property")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--list-suites", action="store_true", help="list suite names and exit")
    return p


def summary(report: VerificationReport) -> str:
    lines = []
    for s in report.suites:
        tag = "ok" if s.ok else "FAIL"
        kind = " (negative control)" if s.expect_failure else ""
        failed = [p for p in s.properties if not p.passed]
        lines.append(f"[{tag}] {s.suite}{kind}: {len(s.properties) - len(failed)}/{len(s.properties)} properties hold")
        for p in failed:
            lines.append(f"    {p.name}: fails on sample {p.sample_index} ({p.statement})")
            if not s.expect_failure:
                for k, v in sorted((p.counterexample or {}).items()):
                    lines.append(f"        {k} = {v}")
    lines.append("all suites ok" if report.ok else "some suites failed")
    return "\n".join(lines)


def load_config(args: argparse.Namespace) -> SuiteConfig:
    if args.config:
        path = args.config
        try:
            text = Path(path).read_text()
        except OSError as e:
            raise ConfigError(f"cannot read config: {e.strerror}") from None
        cfg = parse_config(text)
    else:
        cfg = SuiteConfig()
    if args.suite:
        for name in args.suite:
            if name != "all" and name not in SUITES:
                raise ConfigError(f"unknown suite {name!r}")
        cfg.suites = list(args.suite)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.samples is not None:
        cfg.samples = args.samples
    cfg.positions = {k: v for k, v in cfg.positions.items() if k not in ("seed", "samples", "suites")}
    validate(cfg)
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_suites:
        for s in SUITES.values():
            kind = " [negative control]" if s.negative_control else ""
            print(f"{s.name:18s} {s.description}{kind}")
        return EXIT_OK
    where = args.config or "<args>"
    try:
        cfg = load_config(args)
        report = run(cfg)
    except ConfigError as e:
        pos = f"{e.line}:{e.column}:" if e.line else ""
        print(f"{where}:{pos} {e.message}", file=sys.stderr)
        return EXIT_CONFIG
    text = report.dumps()
    if args.json == "-":
        sys.stdout.write(text)
    else:
        if args.json:
            Path(args.json).write_text(text)
        print(summary(report))
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
