"""aerprov command line.

Examples
--------
  python -m app.cli consumption --preset gas-node
  python -m app.cli size --preset tree-node --n 12 --charge-time-s 300
  python -m app.cli autonomy --preset tree-node --chemistry alkaline --capacity-j 21000 --n 0
  python -m app.cli simulate --preset tree-fleet --seed 7 --out runs/fleet
  python -m app.cli reproduce capacity-vs-n --out figures --svg
  python -m app.cli assess-wpt --require-feasible
  python -m app.cli verify --preset tree-node
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from app import __version__
from app.errors import AerprovError
from app.logger import init_logger
from app.settings import get_settings

from . import commands

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    scenario = argparse.ArgumentParser(add_help=False)
    source = scenario.add_mutually_exclusive_group()
    source.add_argument("--preset", type=str, default=None, help="bundled preset name (default tree-node)")
    source.add_argument("--config", type=str, default=None, help="path to a scenario YAML file")
    scenario.add_argument("--verbose", "-v", action="store_true")

    overrides = argparse.ArgumentParser(add_help=False)
    overrides.add_argument("--n", type=int, default=None, help="interventions per year")
    overrides.add_argument("--charge-time-s", type=float, default=None)
    overrides.add_argument("--c-rate", type=float, default=None)

    capacity = argparse.ArgumentParser(add_help=False)
    group = capacity.add_mutually_exclusive_group()
    group.add_argument("--capacity-wh", type=float, default=None)
    group.add_argument("--capacity-j", type=float, default=None)
    group.add_argument("--capacity-ah", type=float, default=None, help="at the chemistry's nominal voltage")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--out", type=str, default="out")

    p = argparse.ArgumentParser(prog="aerprov", description="Energy provisioning of UAV-recharged IoT nodes")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("consumption", parents=[scenario], help="daily energy breakdown of a node")
    pc.set_defaults(func=commands.cmd_consumption)

    ps = sub.add_parser("size", parents=[scenario, overrides, capacity],
                        help="minimum capacity for unlimited autonomy")
    ps.add_argument("--chemistry", type=str, default=None)
    ps.add_argument("--daily-energy-j", type=float, default=None,
                    help="size for this daily energy instead of the node's")
    ps.add_argument("--target-days", type=float, default=None,
                    help="also size a non-rechargeable pack for this many days")
    ps.set_defaults(func=commands.cmd_size)

    pa = sub.add_parser("autonomy", parents=[scenario, overrides, capacity], help="days until depletion")
    pa.add_argument("--chemistry", type=str, default=None)
    pa.set_defaults(func=commands.cmd_autonomy)

    pm = sub.add_parser("simulate", parents=[scenario, overrides, capacity, run], help="day-stepped fleet simulation")
    pm.add_argument("--horizon-days", type=int, default=None)
    pm.set_defaults(func=commands.cmd_simulate)

    pr = sub.add_parser("reproduce", parents=[scenario, overrides, run], help="figure datasets")
    pr.add_argument("figure", choices=commands.FIGURES)
    pr.add_argument("--svg", action="store_true", help="also render an SVG next to the CSV")
    pr.set_defaults(func=commands.cmd_reproduce)

    pw = sub.add_parser("assess-wpt", parents=[scenario], help="WPT technology and localization assessment")
    pw.add_argument("--require-feasible", action="store_true", help="exit 3 when any requirement is infeasible")
    pw.set_defaults(func=commands.cmd_assess_wpt)

    pv = sub.add_parser("verify", parents=[scenario, overrides, capacity],
                        help="check the simulator against the closed form")
    pv.add_argument("--seed", type=int, default=None)
    pv.add_argument("--horizon-days", type=int, default=None)
    pv.set_defaults(func=commands.cmd_verify)

    pp = sub.add_parser("presets", help="list bundled presets")
    pp.set_defaults(func=commands.cmd_presets, verbose=False)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.command_line = " ".join(["aerprov", *argv])
    init_logger("DEBUG" if args.verbose else get_settings().log_level)
    try:
        return args.func(args)
    except AerprovError as error:
        logger.debug("command failed", exc_info=True)
        print(f"error: {error}", file=sys.stderr)
        return error.exit_code
    except (ValidationError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
