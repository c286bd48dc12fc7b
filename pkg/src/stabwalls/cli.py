"""Command-line front end.

    stabwalls charge eval    --config cfg.yaml
    stabwalls phase compare  --config cfg.yaml
    stabwalls walls mini     --config cfg.yaml --interval 1/2 2 --rank-bound 1 --filter aside
    stabwalls walls chambers --config cfg.yaml
    stabwalls walls classical --config cfg.yaml --box-bound 5
    stabwalls threshold      --config cfg.yaml --filter bside
    stabwalls classify       --config cfg.yaml
    stabwalls strata         --config cfg.yaml
    stabwalls oracle verify  --config cfg.yaml

Exit codes: 0 success, 2 invalid input, 3 refused computation.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, List, Optional

from . import report as rp
from .charge import central_charge, display_phase, imag_cross, phase_compare
from .classicalwalls import omega_on_wall, saturation_probe
from .config import ConfigError, EngineConfig, apply_overrides, build_config, load_raw
from .lattice import LatticeError
from .miniwalls import (Chamber, RefusedComputation, chamber_decomposition, find_mini_walls,
                        threshold_report)
from .moduli import classify_moduli, uhlenbeck_strata
from .oracle import crosscheck_walls

EXIT_OK, EXIT_INVALID, EXIT_REFUSED = 0, 2, 3

_ORDER_NAMES = {-1: "Less", 0: "Equal", 1: "Greater"}


def _need(value, path: str):
    if value is None:
        raise ConfigError(path, "required for this command")
    return value


def _bounded_interval(cfg: EngineConfig):
    a, b = _need(cfg.interval, "interval")
    if b is None:
        raise ConfigError("interval[1]", "this command needs a finite upper end")
    return a, b


def cmd_charge_eval(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    q = central_charge(t, cfg.params)
    result = {"re2": rp.rat(q.re2), "im1": rp.rat(q.im1), "re0": rp.rat(q.re0),
              "at_m": None, "display_phase": None}
    if cfg.m is not None:
        re, im = q.at(cfg.m)
        result["at_m"] = {"m": rp.rat(cfg.m), "re": rp.rat(re), "im": rp.rat(im)}
        result["display_phase"] = display_phase(t, cfg.params, cfg.m)
    return rp.record("charge", rp.config_input(cfg), result)


def cmd_phase_compare(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    other = _need(cfg.other, "other")
    m = _need(cfg.m, "m")
    order = phase_compare(t, other, cfg.params, m)
    inp = rp.config_input(cfg)
    inp["other"] = rp.charvec(other)
    return rp.record("phase_compare", inp, {
        "ordering": _ORDER_NAMES[order.value], "m": rp.rat(m),
        "imag_cross": rp.rat(imag_cross(t, other, cfg.params, m))})


def cmd_walls_mini(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    walls = find_mini_walls(t, cfg.params, _need(cfg.interval, "interval"), cfg.search)
    return rp.record("mini_walls", rp.config_input(cfg), {"walls": [rp.mini_wall(w) for w in walls]})


def cmd_walls_chambers(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    items = []
    for it in chamber_decomposition(t, cfg.params, _bounded_interval(cfg), cfg.search):
        if isinstance(it, Chamber):
            items.append({"item": "chamber", **rp.chamber(it)})
        else:
            items.append({"item": "wall", **rp.mini_wall(it)})
    return rp.record("chambers", rp.config_input(cfg), {"items": items})


def cmd_walls_classical(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    region = cfg.region if cfg.region is not None else (cfg.params.omega, cfg.params.omega)
    if t.rk == 0:
        raise ConfigError("type.rank", "classical walls need a nonzero rank")
    walls, saturated = saturation_probe(t, cfg.lattice, region, cfg.box_bound)
    inp = rp.config_input(cfg)
    inp["region"] = [rp.vec(p) for p in region]
    return rp.record("classical_walls", inp, {
        "walls": [rp.wall_xi(w) for w in walls], "saturated": saturated, "box_bound": cfg.box_bound})


def cmd_threshold(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    rep = threshold_report(t, cfg.params, cfg.search)
    return rp.record("threshold", rp.config_input(cfg), {
        "M": rp.rat(rep.M), "a0": rp.rat(rep.a0),
        "max_wall_m_squared": rp.rat_or_none(rep.max_wall_m_squared),
        "candidate_count": rep.candidate_count, "rank_bound": rep.rank_bound})


def cmd_classify(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    wall = None
    if t.rk != 0:
        if cfg.lattice.rank > 2:
            raise RefusedComputation("classical wall check is only available for lattice rank <= 2")
        wall = omega_on_wall(cfg.params.omega, t, cfg.lattice, cfg.box_bound)
    mc = classify_moduli(t, cfg.params, wall)
    return rp.record("classification", rp.config_input(cfg), rp.moduli_class(mc))


def cmd_strata(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    if t.rk <= 0:
        raise ConfigError("type.rank", "Uhlenbeck strata need positive rank")
    strata = [{"type": rp.charvec(s), "c2": rp.rat(s.c2(cfg.lattice)), "sym_power": k}
              for s, k in uhlenbeck_strata(t, cfg.lattice)]
    return rp.record("strata", rp.config_input(cfg), {"strata": strata})


def cmd_oracle_verify(cfg: EngineConfig) -> Dict:
    t = _need(cfg.type_t, "type")
    rep = crosscheck_walls(t, cfg.params, _bounded_interval(cfg), cfg.search, cfg.oracle_step)
    mismatches = [{"candidate": rp.candidate(mm.candidate),
                   "expected_m_squared": rp.rat_or_none(mm.expected_m_squared),
                   "brackets": [[rp.rat(lo), rp.rat(hi)] for lo, hi in mm.brackets]}
                  for mm in rep.mismatches]
    return rp.record("oracle_report", rp.config_input(cfg), {
        "candidate_count": rep.candidate_count, "wall_count": len(rep.walls),
        "bracket_count": rep.bracket_count, "mismatches": mismatches, "ok": rep.ok})


COMMANDS: Dict[str, Callable[[EngineConfig], Dict]] = {
    "charge eval": cmd_charge_eval,
    "phase compare": cmd_phase_compare,
    "walls mini": cmd_walls_mini,
    "walls chambers": cmd_walls_chambers,
    "walls classical": cmd_walls_classical,
    "threshold": cmd_threshold,
    "classify": cmd_classify,
    "strata": cmd_strata,
    "oracle verify": cmd_oracle_verify,
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", required=True, help="YAML engine config")
    p.add_argument("--interval", nargs=2, metavar=("A", "B"), help="m-interval; B may be 'inf'")
    p.add_argument("--rank-bound", type=int, metavar="N", help="rank truncation N")
    p.add_argument("--filter", choices=("heart", "aside", "bside"), help="Bogomolov filter level")
    p.add_argument("--box-bound", type=int, metavar="K", help="coordinate box for classical walls")
    p.add_argument("--format", choices=("records", "table"), help="output format")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabwalls", description="Exact wall-and-chamber computations.")
    top = parser.add_subparsers(dest="group", required=True)
    common = _common()
    groups: Dict[str, argparse._SubParsersAction] = {}
    for name in COMMANDS:
        head, _, leaf = name.partition(" ")
        if not leaf:
            top.add_parser(head, parents=[common]).set_defaults(command=name)
            continue
        if head not in groups:
            groups[head] = top.add_parser(head).add_subparsers(dest="leaf", required=True)
        groups[head].add_parser(leaf, parents=[common]).set_defaults(command=name)
    return parser


def run(command: str, cfg: EngineConfig) -> Dict:
    return COMMANDS[command](cfg)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = apply_overrides(load_raw(args.config), args.interval, args.rank_bound,
                              args.filter, args.box_bound, args.format)
        cfg = build_config(raw)
        rec = run(args.command, cfg)
    except RefusedComputation as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ConfigError, LatticeError, ValueError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = rp.render_table(rec) if cfg.format == "table" else rp.dumps(rec)
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
