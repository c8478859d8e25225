"""Command-line entry point: ``cayley-variation --command NAME [options]``.

Exit status is 0 when every property passes, 1 when a property fails and 2
for a bad configuration.  ``CAYLEY_VARIATION_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .campaigns import COMMANDS, CampaignConfig, run_and_write
from .errors import ConfigError, PropertyFailure

SEED_ENV = "CAYLEY_VARIATION_SEED"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley-variation", description=__doc__.splitlines()[0])
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int)
    p.add_argument("--m1", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--lambda-sq", type=float, dest="lambda_sq")
    p.add_argument("--tol", type=float, default=1e-12, help="absolute tolerance (default 1e-12)")
    p.add_argument("--out", dest="output_path", help="report path; stdout when omitted")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=1)
    return p


def config_from_args(args: argparse.Namespace, environ=os.environ) -> CampaignConfig:
    seed = args.seed
    if environ.get(SEED_ENV):
        try:
            seed = int(environ[SEED_ENV], 0)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} is not an integer") from exc
    return CampaignConfig(
        command=args.command,
        seed=seed,
        trials=args.trials,
        m1=args.m1,
        m2=args.m2,
        n=args.n,
        d=args.d,
        lambda_sq=args.lambda_sq,
        tol=args.tol,
        output_path=args.output_path,
        format=args.format,
        threads=args.threads,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        run_and_write(config_from_args(args))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PropertyFailure as exc:
        print(f"property failure: {exc}", file=sys.stderr)
        return 1
    return 0


def entry():
    sys.exit(main())
