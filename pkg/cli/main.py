"""
Command-line harness for the reranking toolkit
Every command is reproducible from its arguments and the root seed
"""

import argparse
import json
import sys
from typing import List, Optional
from dotenv import load_dotenv
from cli.commands import (
    EXIT_OK,
    EXIT_FAIL,
    emit_table,
    cmd_gen,
    cmd_run,
    cmd_compare,
    cmd_audit,
    cmd_bounds,
    cmd_eta,
    cmd_scan,
    cmd_dump_lp,
    run_table,
    load_instances,
)
from instance.storage import load
from policies.registry import PolicyRegistry
from util.config import ConfigParser
from util.logger import logger

EXIT_USAGE = 2

EPILOG = """
Example usage:

  python run.py gen example1 --d 10 --out ex1.json
  python run.py run ex1.json pr --beta 0.89 --trials 100000
  python run.py compare kvv.json ex1.json --baseline opt
  python run.py audit ex1.json --alpha 0.589 --trials 20000
  python run.py bounds --beta 0.89 --svg fig1.svg
"""


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument('--config', type=str, default=None, help='YAML config file (default: config/default.yaml)')
    p.add_argument('--workers', type=int, default=None, help='Worker processes for trials (env RERANK_WORKERS)')
    p.add_argument('--log-level', type=str, default=None, help='DEBUG, INFO, WARNING or ERROR')
    p.add_argument('--log-file', action='store_true', help='Also log to a timestamped file under logs/')


def _output(p: argparse.ArgumentParser) -> None:
    p.add_argument('--out', type=str, default=None, help='Write to this file instead of stdout')
    p.add_argument('--json', action='store_true', help='Emit JSON instead of CSV')


def _seeded(p: argparse.ArgumentParser) -> None:
    p.add_argument('--beta', type=float, default=None, help='Steepness of g(y) = exp(beta (y - 1)), default 0.89')
    p.add_argument('--root-seed', type=int, default=None, help='Root seed every trial seed derives from')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Online matching with reusable resources: policies, offline benchmarks and certificate checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='Generate an instance file')
    gen.add_argument('family', choices=['example1', 'kvv', 'random'])
    gen.add_argument('--d', type=int, default=None, help='Usage duration')
    gen.add_argument('--gap-small', type=int, default=1)
    gen.add_argument('--gap-large', type=int, default=19)
    gen.add_argument('--n', type=int, default=8, help='Resources per KVV block')
    gen.add_argument('--blocks', type=int, default=1)
    gen.add_argument('--no-permute', action='store_true', help='Identity resource order in KVV blocks')
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--n-resources', type=int, default=None)
    gen.add_argument('--n-arrivals', type=int, default=None)
    gen.add_argument('--edge-prob', type=float, default=None)
    gen.add_argument('--horizon', type=int, default=None)
    gen.add_argument('--reward-range', type=float, nargs=2, default=None, metavar=('LO', 'HI'))
    gen.add_argument('--usage-atoms', type=int, default=0, help='Random discrete usage with up to this many atoms')
    gen.add_argument('--out', type=str, default=None)
    _common(gen)

    run = sub.add_parser('run', help='Simulate one policy on one instance')
    run.add_argument('instance')
    run.add_argument('policy', choices=PolicyRegistry.get_all_policy_keys())
    run.add_argument('--trials', type=int, default=None)
    run.add_argument('--baselines', action='store_true', help='Also compute brute force and LP ratios')
    run.add_argument('--dump-lp', type=str, default=None, help='Write the LP model in CPLEX LP format')
    _seeded(run)
    _output(run)
    _common(run)

    compare = sub.add_parser('compare', help='Competitive-ratio table over instances and policies')
    compare.add_argument('instances', nargs='+')
    compare.add_argument('--policies', nargs='+', default=None, choices=PolicyRegistry.get_all_policy_keys())
    compare.add_argument('--baseline', choices=['opt', 'lp'], default='opt')
    compare.add_argument('--trials', type=int, default=None)
    _seeded(compare)
    _output(compare)
    _common(compare)

    audit = sub.add_parser('audit', help='Monte Carlo check of the per-edge certificate constraint')
    audit.add_argument('instance')
    audit.add_argument('--alpha', type=float, default=None)
    audit.add_argument('--trials', type=int, default=None, help='Samples per audit (default audit_trials)')
    _seeded(audit)
    _output(audit)
    _common(audit)

    bounds = sub.add_parser('bounds', help='Minimise the bound function')
    bounds.add_argument('--beta', type=float, default=None)
    bounds.add_argument('--alpha', type=float, default=None)
    bounds.add_argument('--grid', type=int, default=None)
    bounds.add_argument('--svg', type=str, default=None)
    bounds.add_argument('--sweep', action='store_true', help='Also sweep beta over 0.80..1.00')
    _common(bounds)

    eta = sub.add_parser('eta', help='Availability probabilities per resource')
    eta.add_argument('instance')
    eta.add_argument('--resource', type=int, default=None)
    eta.add_argument('--mc', action='store_true', help='Add the Monte Carlo estimate')
    eta.add_argument('--root-seed', type=int, default=None)
    _output(eta)
    _common(eta)

    scan = sub.add_parser('scan', help='Structural scans over the previous-period seed')
    scan.add_argument('instance')
    scan.add_argument('--resource', type=int, default=None)
    scan.add_argument('--arrival', type=int, default=None)
    scan.add_argument('--trial', type=int, default=0, help='Trial index selecting the fixed seeds')
    scan.add_argument('--grid', type=int, default=None)
    _seeded(scan)
    _output(scan)
    _common(scan)

    return parser


def _defaults(cfg) -> dict:
    return {"beta": cfg["beta"], "alpha": cfg["alpha"], "root_seed": cfg["root_seed"]}


def dispatch(args: argparse.Namespace, cfg: dict) -> int:
    if args.command == 'gen':
        rnd = cfg["random"]
        params = {
            "d": args.d if args.d is not None else rnd["d"],
            "gap_small": args.gap_small,
            "gap_large": args.gap_large,
            "n": args.n,
            "blocks": args.blocks,
            "permute": not args.no_permute,
            "seed": args.seed,
            "n_resources": args.n_resources or rnd["n_resources"],
            "n_arrivals": args.n_arrivals or rnd["n_arrivals"],
            "edge_prob": args.edge_prob if args.edge_prob is not None else rnd["edge_prob"],
            "horizon": args.horizon or rnd["horizon"],
            "reward_range": tuple(args.reward_range or rnd["reward_range"]),
            "usage_atoms": args.usage_atoms,
        }
        cmd_gen(args.family, params, args.out)
        return EXIT_OK

    if args.command == 'run':
        instance = load(args.instance)
        stats = cmd_run(instance, args.policy, cfg, baselines=args.baselines)
        if args.dump_lp:
            cmd_dump_lp(instance, args.dump_lp)
        emit_table(run_table([stats]), args.out, args.json, _defaults(cfg))
        return EXIT_OK

    if args.command == 'compare':
        policies = args.policies or PolicyRegistry.get_all_policy_keys()
        table = cmd_compare(load_instances(args.instances), policies, args.baseline, cfg)
        emit_table(table, args.out, args.json, _defaults(cfg))
        return EXIT_OK

    if args.command == 'audit':
        samples = args.trials if args.trials is not None else cfg["audit_trials"]
        table = cmd_audit(load(args.instance), cfg, samples)
        emit_table(table, args.out, args.json, _defaults(cfg))
        return EXIT_OK if (table["verdict"] == "pass").all() else EXIT_FAIL

    if args.command == 'bounds':
        payload = cmd_bounds(cfg, args.grid or cfg["bounds_grid"], args.svg, args.sweep)
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK if payload["passed"] else EXIT_FAIL

    if args.command == 'eta':
        table = cmd_eta(load(args.instance), cfg, args.resource, args.mc)
        emit_table(table, args.out, args.json, {"root_seed": cfg["root_seed"]})
        return EXIT_OK

    if args.command == 'scan':
        instance = load(args.instance)
        if (args.resource is None) != (args.arrival is None):
            raise ValueError("--resource and --arrival go together")
        edges = [(args.resource, args.arrival)] if args.resource is not None else instance.edges()
        table = cmd_scan(instance, cfg, edges, args.trial, args.grid or cfg["scan_grid"])
        emit_table(table, args.out, args.json, _defaults(cfg))
        return EXIT_OK if (table["violations"] == 0).all() else EXIT_FAIL

    raise ValueError(f"unknown command {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    """Parse, configure and run one command; returns the process exit code."""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        cfg = ConfigParser(args).get_config()
    except ValueError as e:
        logger.error(f"Error: {e}")
        return EXIT_USAGE

    logger.set_level(cfg["log_level"])
    if args.log_file:
        logger.attach_file(args.command)

    try:
        return dispatch(args, cfg)
    except (ValueError, FileNotFoundError) as e:
        logger.error(f"Error running {args.command}: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Error running {args.command}: {e}")
        return EXIT_FAIL
