"""Engine configuration: a YAML file validated into exact objects.

Example::

    lattice: P2                 # or {gram: [[0, 1], [1, 0]], ample_ref: [1, 1]}
    beta: ["-1/2"]
    omega: [1]
    type: {rank: 0, c1: [1], ch2: "-3/2"}   # or c2: ..., c2_convention: chern|length
    other: {rank: 1, c1: [0], ch2: 0}       # second class for `phase compare`
    m: 1
    interval: ["1/2", 2]        # upper end null or "inf" for [a, infinity)
    search: {rank_bound: 1, filter: aside, c_step: null, a0: 1, threshold_den: 1024}
    box_bound: 5
    region: [[2, 1], [1, 2]]    # segment for `walls classical`
    oracle: {step: null}
    format: records             # or table

Rationals may be written as integers, "p/q" strings or decimal literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence, Tuple

import yaml

from .charge import CharVec, StabilityParams
from .lattice import LatticeError, LatticeModel, preset
from .miniwalls import FilterLevel, SearchBounds, default_rank_bound
from .rational import to_fraction


class ConfigError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


FORMATS = ("records", "table")


@dataclass(frozen=True)
class EngineConfig:
    lattice: LatticeModel
    params: StabilityParams
    type_t: Optional[CharVec]
    other: Optional[CharVec]
    m: Optional[Fraction]
    interval: Optional[Tuple[Fraction, Optional[Fraction]]]
    search: SearchBounds
    box_bound: int
    region: Optional[Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]]
    oracle_step: Optional[Fraction]
    format: str
    c2_convention: str = "chern"


def _rational(value, path: str) -> Fraction:
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(path, f"expected a rational number, got {value!r}") from exc


def _vector(value, path: str) -> Tuple[Fraction, ...]:
    if not isinstance(value, (list, tuple)):
        raise ConfigError(path, f"expected a list of rationals, got {value!r}")
    return tuple(_rational(v, f"{path}[{i}]") for i, v in enumerate(value))


def _int(value, path: str) -> int:
    q = _rational(value, path)
    if q.denominator != 1:
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return int(q)


def _lattice(raw, path: str) -> LatticeModel:
    try:
        if isinstance(raw, str):
            return preset(raw)
        if isinstance(raw, dict):
            if "preset" in raw:
                return preset(raw["preset"])
            gram = raw.get("gram")
            if not isinstance(gram, list):
                raise ConfigError(f"{path}.gram", "missing or not a list of rows")
            rows = tuple(_vector(row, f"{path}.gram[{i}]") for i, row in enumerate(gram))
            if "ample_ref" not in raw:
                raise ConfigError(f"{path}.ample_ref", "required for an explicit lattice")
            ref = _vector(raw["ample_ref"], f"{path}.ample_ref")
            return LatticeModel(rows, ref, str(raw.get("name", "custom")))
    except LatticeError as exc:
        raise ConfigError(path, str(exc)) from exc
    raise ConfigError(path, "expected a preset name or a mapping with gram and ample_ref")


def _chern(raw, L: LatticeModel, path: str, convention: str) -> CharVec:
    if not isinstance(raw, dict):
        raise ConfigError(path, "expected a mapping with rank, c1 and ch2 or c2")
    for key in ("rank", "c1"):
        if key not in raw:
            raise ConfigError(f"{path}.{key}", "required")
    rank = _int(raw["rank"], f"{path}.rank")
    c1 = _vector(raw["c1"], f"{path}.c1")
    if len(c1) != L.rank:
        raise ConfigError(f"{path}.c1", f"has length {len(c1)}, lattice rank is {L.rank}")
    for i, a in enumerate(c1):
        if a.denominator != 1:
            raise ConfigError(f"{path}.c1[{i}]", "must be an integer")
    conv = raw.get("c2_convention", convention)
    if conv not in ("chern", "length"):
        raise ConfigError(f"{path}.c2_convention", f"must be 'chern' or 'length', got {conv!r}")
    if ("ch2" in raw) == ("c2" in raw):
        raise ConfigError(path, "give exactly one of ch2 or c2")
    if "ch2" in raw:
        return CharVec(rank, c1, _rational(raw["ch2"], f"{path}.ch2"))
    return CharVec.from_c2(L, rank, c1, _rational(raw["c2"], f"{path}.c2"), conv)


def _upper(value, path: str) -> Optional[Fraction]:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "+inf")):
        return None
    return _rational(value, path)


def build_config(raw: Dict[str, Any]) -> EngineConfig:
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a mapping")
    L = _lattice(raw.get("lattice", "P2"), "lattice")
    for key in ("beta", "omega"):
        if key not in raw:
            raise ConfigError(key, "required")
    beta = _vector(raw["beta"], "beta")
    omega = _vector(raw["omega"], "omega")
    for key, v in (("beta", beta), ("omega", omega)):
        if len(v) != L.rank:
            raise ConfigError(key, f"has length {len(v)}, lattice rank is {L.rank}")
    try:
        params = StabilityParams(L, beta, omega)
    except (ValueError, LatticeError) as exc:
        raise ConfigError("omega", str(exc)) from exc

    convention = raw.get("c2_convention", "chern")
    type_t = _chern(raw["type"], L, "type", convention) if raw.get("type") is not None else None
    other = _chern(raw["other"], L, "other", convention) if raw.get("other") is not None else None
    m = _rational(raw["m"], "m") if raw.get("m") is not None else None

    interval = None
    if raw.get("interval") is not None:
        iv = raw["interval"]
        if not isinstance(iv, (list, tuple)) or len(iv) != 2:
            raise ConfigError("interval", "expected [a, b]")
        a = _rational(iv[0], "interval[0]")
        b = _upper(iv[1], "interval[1]")
        if a <= 0:
            raise ConfigError("interval[0]", "must be positive")
        if b is not None and b < a:
            raise ConfigError("interval", f"empty interval [{a}, {b}]")
        interval = (a, b)

    search_raw = raw.get("search") or {}
    if not isinstance(search_raw, dict):
        raise ConfigError("search", "expected a mapping")
    if "rank_bound" in search_raw and search_raw["rank_bound"] is not None:
        N = _int(search_raw["rank_bound"], "search.rank_bound")
    else:
        N = default_rank_bound(type_t) if type_t is not None else 4
    if N < 1:
        raise ConfigError("search.rank_bound", "must be >= 1")
    try:
        level = FilterLevel.parse(search_raw.get("filter", "aside"))
    except ValueError as exc:
        raise ConfigError("search.filter", str(exc)) from exc
    c_step = search_raw.get("c_step")
    c_step = _rational(c_step, "search.c_step") if c_step is not None else None
    if c_step is not None and c_step <= 0:
        raise ConfigError("search.c_step", "must be positive")
    a0 = _rational(search_raw.get("a0", 1), "search.a0")
    if a0 <= 0:
        raise ConfigError("search.a0", "must be positive")
    den = _int(search_raw.get("threshold_den", 1024), "search.threshold_den")
    if den < 1:
        raise ConfigError("search.threshold_den", "must be positive")
    search = SearchBounds(N, level, c_step, a0, den)

    box = _int(raw.get("box_bound", 5), "box_bound")
    if box < 1:
        raise ConfigError("box_bound", "must be positive")

    region = None
    if raw.get("region") is not None:
        rg = raw["region"]
        if not isinstance(rg, (list, tuple)) or len(rg) != 2:
            raise ConfigError("region", "expected two endpoints [[..], [..]]")
        region = (_vector(rg[0], "region[0]"), _vector(rg[1], "region[1]"))
        for i, p in enumerate(region):
            if len(p) != L.rank:
                raise ConfigError(f"region[{i}]", f"has length {len(p)}, lattice rank is {L.rank}")

    oracle_raw = raw.get("oracle") or {}
    step = oracle_raw.get("step") if isinstance(oracle_raw, dict) else None
    step = _rational(step, "oracle.step") if step is not None else None
    if step is not None and step <= 0:
        raise ConfigError("oracle.step", "must be positive")

    fmt = raw.get("format", "records")
    if fmt not in FORMATS:
        raise ConfigError("format", f"must be one of {FORMATS}, got {fmt!r}")
    return EngineConfig(L, params, type_t, other, m, interval, search, box, region, step, fmt, convention)


def load_raw(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path}: {exc.strerror}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError("<file>", f"invalid YAML: {exc}") from exc
    return raw if raw is not None else {}


def apply_overrides(raw: Dict[str, Any], interval: Optional[Sequence[str]] = None,
                    rank_bound: Optional[int] = None, filter_level: Optional[str] = None,
                    box_bound: Optional[int] = None, fmt: Optional[str] = None) -> Dict[str, Any]:
    raw = dict(raw)
    if interval is not None:
        raw["interval"] = list(interval)
    search = dict(raw.get("search") or {})
    if rank_bound is not None:
        search["rank_bound"] = rank_bound
    if filter_level is not None:
        search["filter"] = filter_level
    raw["search"] = search
    if box_bound is not None:
        raw["box_bound"] = box_bound
    if fmt is not None:
        raw["format"] = fmt
    return raw
