"""Structured report records, their JSON schemas and a plain-text renderer.

Every record is ``{"kind", "schema_version", "input", "result"}``.  Rationals
travel as ``{"num", "den", "decimal"}``; the decimal string is an annotation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from .charge import CharVec
from .classicalwalls import WallXi
from .config import EngineConfig
from .miniwalls import CandidateShadow, Chamber, MiniWall
from .moduli import ModuliClass, TAGS
from .rational import wire

SCHEMA_VERSION = 1

KINDS = ("charge", "phase_compare", "mini_walls", "chambers", "classical_walls",
         "threshold", "classification", "strata", "oracle_report")


def rat(q) -> Dict[str, Any]:
    return wire(Fraction(q))


def rat_or_none(q) -> Optional[Dict[str, Any]]:
    return None if q is None else rat(q)


def vec(v: Iterable) -> List[Dict[str, Any]]:
    return [rat(a) for a in v]


def charvec(E: Optional[CharVec]) -> Optional[Dict[str, Any]]:
    if E is None:
        return None
    return {"rank": E.rk, "c1": list(E.c1), "ch2": rat(E.ch2)}


def candidate(A: CandidateShadow) -> Dict[str, Any]:
    return {"rk": A.rk, "x": rat(A.x), "c": rat(A.c), "filter_level_passed": A.filter_level_passed.label}


def mini_wall(w: MiniWall) -> Dict[str, Any]:
    return {"m_squared": rat(w.m_squared), "witnesses": [candidate(a) for a in w.witnesses]}


def chamber(ch: Chamber) -> Dict[str, Any]:
    return {"lo_m_squared": rat(ch.lo_sq), "hi_m_squared": rat(ch.hi_sq)}


def wall_xi(w: Optional[WallXi]) -> Optional[Dict[str, Any]]:
    if w is None:
        return None
    return {"xi": list(w.xi), "s": w.s, "F": list(w.F)}


def moduli_class(mc: ModuliClass) -> Dict[str, Any]:
    return {
        "tag": mc.tag,
        "type": charvec(mc.type_t),
        "n": mc.n,
        "wall": wall_xi(mc.wall),
        "precondition_notes": list(mc.precondition_notes),
    }


def config_input(cfg: EngineConfig) -> Dict[str, Any]:
    L = cfg.lattice
    iv = None
    if cfg.interval is not None:
        iv = [rat(cfg.interval[0]), rat_or_none(cfg.interval[1])]
    return {
        "lattice": {"name": L.name, "gram": [vec(row) for row in L.gram], "ample_ref": vec(L.ample_ref)},
        "beta": vec(cfg.params.beta),
        "omega": vec(cfg.params.omega),
        "type": charvec(cfg.type_t),
        "search": {
            "rank_bound": cfg.search.rank_bound,
            "filter_level": cfg.search.filter_level.label,
            "c_step": rat_or_none(cfg.search.c_step),
            "a0": rat(cfg.search.a0),
        },
        "interval": iv,
    }


def record(kind: str, inp: Dict[str, Any], result: Dict[str, Any]) -> Dict[str, Any]:
    if kind not in KINDS:
        raise ValueError(f"unknown record kind {kind!r}")
    return {"kind": kind, "schema_version": SCHEMA_VERSION, "input": inp, "result": result}


def dumps(rec: Dict[str, Any]) -> str:
    return json.dumps(rec, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def parse_rational(obj: Dict[str, Any]) -> Fraction:
    return Fraction(obj["num"], obj["den"])


# -- schemas --------------------------------------------------------------------

RATIONAL_SCHEMA = {
    "type": "object",
    "required": ["num", "den", "decimal"],
    "properties": {
        "num": {"type": "integer"},
        "den": {"type": "integer", "minimum": 1},
        "decimal": {"type": "string"},
    },
    "additionalProperties": False,
}

_RAT = {"$ref": "#/$defs/rational"}
_RAT_OR_NULL = {"anyOf": [_RAT, {"type": "null"}]}
_CHARVEC = {
    "type": "object",
    "required": ["rank", "c1", "ch2"],
    "properties": {"rank": {"type": "integer"}, "c1": {"type": "array", "items": {"type": "integer"}},
                   "ch2": _RAT},
}
_CANDIDATE = {
    "type": "object",
    "required": ["rk", "x", "c", "filter_level_passed"],
    "properties": {"rk": {"type": "integer"}, "x": _RAT, "c": _RAT,
                   "filter_level_passed": {"enum": ["HeartOnly", "ASideBogomolov", "BSideBogomolov"]}},
}
_WALL = {
    "type": "object",
    "required": ["m_squared", "witnesses"],
    "properties": {"m_squared": _RAT, "witnesses": {"type": "array", "minItems": 1, "items": _CANDIDATE}},
}
_WALL_XI = {
    "type": "object",
    "required": ["xi", "s", "F"],
    "properties": {"xi": {"type": "array", "items": {"type": "integer"}}, "s": {"type": "integer"},
                   "F": {"type": "array", "items": {"type": "integer"}}},
}

RESULT_SCHEMAS = {
    "charge": {"type": "object", "required": ["re2", "im1", "re0"],
               "properties": {"re2": _RAT, "im1": _RAT, "re0": _RAT, "at_m": {"type": ["object", "null"]},
                              "display_phase": {"type": ["number", "null"]}}},
    "phase_compare": {"type": "object", "required": ["ordering", "m", "imag_cross"],
                      "properties": {"ordering": {"enum": ["Less", "Equal", "Greater"]}, "m": _RAT,
                                     "imag_cross": _RAT}},
    "mini_walls": {"type": "object", "required": ["walls"],
                   "properties": {"walls": {"type": "array", "items": _WALL}}},
    "chambers": {"type": "object", "required": ["items"],
                 "properties": {"items": {"type": "array", "items": {"type": "object",
                                                                      "required": ["item"]}}}},
    "classical_walls": {"type": "object", "required": ["walls", "saturated", "box_bound"],
                        "properties": {"walls": {"type": "array", "items": _WALL_XI},
                                       "saturated": {"type": "boolean"}, "box_bound": {"type": "integer"}}},
    "threshold": {"type": "object", "required": ["M", "a0", "max_wall_m_squared", "candidate_count"],
                  "properties": {"M": _RAT, "a0": _RAT, "max_wall_m_squared": _RAT_OR_NULL,
                                 "candidate_count": {"type": "integer"}}},
    "classification": {"type": "object", "required": ["tag", "precondition_notes"],
                       "properties": {"tag": {"enum": list(TAGS)}, "type": {"anyOf": [_CHARVEC, {"type": "null"}]},
                                      "precondition_notes": {"type": "array", "items": {"type": "string"}}}},
    "strata": {"type": "object", "required": ["strata"],
               "properties": {"strata": {"type": "array", "items": {
                   "type": "object", "required": ["type", "c2", "sym_power"],
                   "properties": {"type": _CHARVEC, "c2": _RAT, "sym_power": {"type": "integer"}}}}}},
    "oracle_report": {"type": "object", "required": ["candidate_count", "wall_count", "mismatches", "ok"],
                      "properties": {"candidate_count": {"type": "integer"}, "wall_count": {"type": "integer"},
                                     "bracket_count": {"type": "integer"},
                                     "mismatches": {"type": "array"}, "ok": {"type": "boolean"}}},
}


def schema_for(kind: str) -> Dict[str, Any]:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$defs": {"rational": RATIONAL_SCHEMA},
        "type": "object",
        "required": ["kind", "schema_version", "input", "result"],
        "properties": {
            "kind": {"const": kind},
            "schema_version": {"const": SCHEMA_VERSION},
            "input": {"type": "object"},
            "result": RESULT_SCHEMAS[kind],
        },
    }


# -- plain-text rendering -----------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, dict) and set(value) == {"num", "den", "decimal"}:
        return value["decimal"] if value["den"] == 1 else f"{value['num']}/{value['den']} (~{value['decimal']})"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return "-" if value is None else str(value)


def render_table(rec: Dict[str, Any]) -> str:
    lines = [f"# {rec['kind']}"]
    inp = rec["input"]
    for key in sorted(inp):
        lines.append(f"  {key}: {_fmt(inp[key])}")
    lines.append("")
    for key, value in rec["result"].items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            cols = list(dict.fromkeys(k for row in value for k in row))
            rows = [[_fmt(row.get(c)) for c in cols] for row in value]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in rows:
                lines.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)))
        else:
            lines.append(f"{key}: {_fmt(value)}")
    return "\n".join(lines) + "\n"

