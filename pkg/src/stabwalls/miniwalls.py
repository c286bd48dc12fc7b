"""Potential mini-walls of a numerical type along the ray m -> Z_m.

A candidate destabilizer is recorded only through its shadow (rk, x, c)
with x = c1(A).omega and c = c(A).  Against a type t with
y_t = c1.omega - r beta.omega > 0, the phases of A and t agree exactly at

    m^2 = 2 (c_A y_t - c_t y_A) / (omega^2 (r y_A - rk_A y_t)),

so the walls in an interval [a, b] come from a finite family once the rank
is truncated at N: x runs over a discrete grid squeezed between the two
heart inequalities, and c over a discrete grid inside the window that the
root condition m^2 in [a^2, b^2] cuts out.  The walls reported are a
certified superset relative to that candidate family; the engine never
decides whether an actual object realises a candidate.

Optional Bogomolov filters shrink the c-window.  A shadow is admitted at
the A-side level when it can be written as T + F[1] with T, F
mu-semistable torsion-free sheaves (or T torsion when its rank is 0),
mu(T) > beta.omega >= mu(F), rk T + rk F <= N.  A pure T part forces
c >= -y^2 / (2 rk omega^2), a pure shifted F part forces
c <= y^2 / (2 |rk| omega^2); mixed or torsion decompositions impose nothing.
The B-side level applies the same test to the quotient shadow t - A.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .charge import CharVec, Ordering, Reduced, StabilityParams, phase_compare, reduce
from .rational import ceil_frac, floor_frac, frac_gcd, grid_points, lcm, sqrt_ceil, to_fraction


class RefusedComputation(Exception):
    """The requested search has no finite answer at the chosen filter level."""


class FilterLevel(enum.IntEnum):
    HEART = 0
    ASIDE = 1
    BSIDE = 2

    @classmethod
    def parse(cls, value) -> "FilterLevel":
        if isinstance(value, FilterLevel):
            return value
        key = str(value).strip().lower()
        aliases = {
            "heart": cls.HEART, "heartonly": cls.HEART,
            "aside": cls.ASIDE, "asidebogomolov": cls.ASIDE,
            "bside": cls.BSIDE, "bsidebogomolov": cls.BSIDE,
        }
        if key not in aliases:
            raise ValueError(f"unknown filter level {value!r}")
        return aliases[key]

    @property
    def label(self) -> str:
        return {0: "HeartOnly", 1: "ASideBogomolov", 2: "BSideBogomolov"}[int(self)]


def default_rank_bound(t: CharVec) -> int:
    return 2 * abs(t.rk) + 4


@dataclass(frozen=True)
class SearchBounds:
    rank_bound: int
    filter_level: FilterLevel = FilterLevel.ASIDE
    c_step: Optional[Fraction] = None
    a0: Fraction = Fraction(1)
    threshold_den: int = 1024

    def __post_init__(self):
        if int(self.rank_bound) != self.rank_bound or self.rank_bound < 1:
            raise ValueError("rank_bound must be an integer >= 1")
        object.__setattr__(self, "filter_level", FilterLevel.parse(self.filter_level))
        if self.c_step is not None:
            step = to_fraction(self.c_step)
            if step <= 0:
                raise ValueError("c_step must be positive")
            object.__setattr__(self, "c_step", step)
        a0 = to_fraction(self.a0)
        if a0 <= 0:
            raise ValueError("a0 must be positive")
        object.__setattr__(self, "a0", a0)
        if self.threshold_den < 1:
            raise ValueError("threshold_den must be positive")


@dataclass(frozen=True, order=True)
class CandidateShadow:
    rk: int
    x: Fraction
    c: Fraction
    filter_level_passed: FilterLevel = field(default=FilterLevel.HEART, compare=False)


@dataclass(frozen=True)
class MiniWall:
    m_squared: Fraction
    witnesses: Tuple[CandidateShadow, ...]


@dataclass(frozen=True)
class Chamber:
    """Open chamber between two consecutive walls, in m^2 coordinates."""

    lo_sq: Fraction
    hi_sq: Fraction


@dataclass(frozen=True)
class Window:
    """Closed interval of c values; None marks an infinite end."""

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def __and__(self, other: "Window") -> "Window":
        lo = self.lo if other.lo is None else other.lo if self.lo is None else max(self.lo, other.lo)
        hi = self.hi if other.hi is None else other.hi if self.hi is None else min(self.hi, other.hi)
        return Window(lo, hi)

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def empty(self) -> bool:
        return self.bounded and self.lo > self.hi

    def __contains__(self, c) -> bool:
        return (self.lo is None or c >= self.lo) and (self.hi is None or c <= self.hi)

    def hull(self, other: "Window") -> "Window":
        lo = None if self.lo is None or other.lo is None else min(self.lo, other.lo)
        hi = None if self.hi is None or other.hi is None else max(self.hi, other.hi)
        return Window(lo, hi)


Interval = Tuple[Fraction, Optional[Fraction]]


def _interval(interval) -> Interval:
    a, b = interval
    a = to_fraction(a)
    b = None if b is None else to_fraction(b)
    if a <= 0:
        raise ValueError(f"interval must start at a positive m, got a={a}")
    if b is not None and b < a:
        raise ValueError(f"empty interval [{a}, {b}]")
    return a, b


# -- discreteness grids ------------------------------------------------------

def x_step(P: StabilityParams) -> Fraction:
    """Generator of the group {c1.omega : c1 integral}."""
    return frac_gcd(P.lattice.dual_pairings(P.omega))


def c_grid(rk: int, x: Fraction, P: StabilityParams,
           override: Optional[Fraction] = None) -> Optional[Tuple[Fraction, Fraction]]:
    """(offset, step) with every attainable c(A) for shadows (rk, x) in offset + step*Z.

    None when no integral c1 has c1.omega = x.  On a rank-one lattice c1 is
    recovered from x and c2 integrality pins c to a coset of Z; otherwise the
    grid is the coarse group spanned by c1^2/2, c1.beta and 1.
    """
    L = P.lattice
    if L.rank == 1:
        g, w, b = L.gram[0][0], P.omega[0], P.beta[0]
        a = x / (g * w)
        if a.denominator != 1:
            return None
        offset = -a * a * g / 2 + a * g * b - rk * g * b * b / 2
        step = Fraction(1)
    else:
        gens = [Fraction(1)]
        for i in range(L.rank):
            gens.append(L.gram[i][i] / 2)
            gens.extend(L.gram[i][j] for j in range(i + 1, L.rank))
        gens.extend(L.dual_pairings(P.beta))
        step = frac_gcd(gens)
        offset = -rk * P.beta_sq / 2
    if override is not None:
        step = override
    return offset, step


def _c_denominator(P: StabilityParams, B: SearchBounds) -> int:
    """Common denominator of every c on the grids of c_grid."""
    L = P.lattice
    if L.rank == 1:
        g, b = L.gram[0][0], P.beta[0]
        gens = [g / 2, g * b, g * b * b / 2]
        step = Fraction(1)
    else:
        gens = [P.beta_sq / 2]
        step = c_grid(0, Fraction(0), P)[1]
    if B.c_step is not None:
        step = B.c_step
    return lcm(step.denominator, *(q.denominator for q in gens))


def _open_grid(step: Fraction, lo: Fraction, hi: Fraction) -> Iterator[Fraction]:
    """Multiples of step strictly between lo and hi."""
    if step == 0:
        return
    k0 = floor_frac(lo / step) + 1
    k1 = ceil_frac(hi / step) - 1
    for k in range(k0, k1 + 1):
        yield k * step


def _grid_meets_half_open(step: Fraction, lo: Fraction, hi: Fraction) -> bool:
    """Is there a multiple of step in (lo, hi]?"""
    if hi <= lo:
        return False
    k = floor_frac(lo / step) + 1
    return k * step <= hi


# -- Bogomolov windows -------------------------------------------------------

def bogomolov_window(rk: int, x: Fraction, N: int, P: StabilityParams) -> Optional[Window]:
    """Range of c compatible with some decomposition T + F[1] of the shadow (rk, x).

    None when no decomposition with rk T + rk F <= N exists at all.
    """
    bw, w2 = P.beta_omega, P.omega_sq
    y = x - rk * bw
    h = x_step(P)
    out: Optional[Window] = None
    for n in range(0, N + 1):
        p = rk + n
        if p < 0 or p + n > N:
            continue
        if p == 0 and n == 0:
            win = Window() if x >= 0 else None
        elif n == 0:
            win = Window(-y * y / (2 * p * w2), None) if y > 0 else None
        elif p == 0:
            win = Window(None, y * y / (2 * n * w2)) if y >= 0 else None
        else:
            ok = y > 0 and _grid_meets_half_open(h, p * bw, p * bw + y)
            win = Window() if ok else None
        if win is not None:
            out = win if out is None else out.hull(win)
    return out


# -- walls ---------------------------------------------------------------------

def wall_of_pair(E, A, P: StabilityParams) -> Optional[Fraction]:
    """Positive m^2 where phi(Z_m(A)) = phi(Z_m(E)), or None.

    None when r_E y_A - rk_A y_E = 0 (the phase relation does not depend on m)
    or when the root is not positive.
    """
    e, a = reduce(E, P), reduce(A, P)
    y_e = e.x - e.rk * P.beta_omega
    if y_e < 0:
        raise ValueError("E violates the heart inequality")
    y_a = a.x - a.rk * P.beta_omega
    den = e.rk * y_a - a.rk * y_e
    if den == 0:
        return None
    m2 = 2 * (a.c * y_e - e.c * y_a) / (P.omega_sq * den)
    return m2 if m2 > 0 else None


def _c_at(m2: Fraction, e: Reduced, y_e: Fraction, y_a: Fraction, den: Fraction,
          P: StabilityParams) -> Fraction:
    # inverse of wall_of_pair in the c_A variable
    return (m2 * P.omega_sq * den / 2 + e.c * y_a) / y_e


def enumerate_candidates(t: CharVec, P: StabilityParams, B: SearchBounds,
                         interval) -> List[CandidateShadow]:
    """All candidate shadows whose wall against t lies in [a^2, b^2].

    ``interval`` is (a, b) in m; b=None means [a, infinity), which needs the
    B-side filter and still refuses if some c-window stays unbounded.
    """
    a, b = _interval(interval)
    level = B.filter_level
    if b is None and level < FilterLevel.BSIDE:
        raise RefusedComputation(
            "unbounded interval needs the B-side Bogomolov filter; "
            "at weaker levels the c-window has no upper control")
    e = reduce(t, P)
    bw = P.beta_omega
    y_e = e.x - e.rk * bw
    if y_e <= 0:
        return []
    N = B.rank_bound
    h = x_step(P)
    out: List[CandidateShadow] = []
    for rk in range(-N, N + 1):
        for x in _open_grid(h, rk * bw, rk * bw + y_e):
            y_a = x - rk * bw
            den = e.rk * y_a - rk * y_e
            if den == 0:
                continue
            grid = c_grid(rk, x, P, B.c_step)
            if grid is None:
                continue
            lo = _c_at(a * a, e, y_e, y_a, den, P)
            hi = None if b is None else _c_at(b * b, e, y_e, y_a, den, P)
            if hi is None:
                root = Window(lo, None) if den > 0 else Window(None, lo)
            else:
                root = Window(min(lo, hi), max(lo, hi))
            wa = bogomolov_window(rk, x, N, P)
            wb = bogomolov_window(e.rk - rk, e.x - x, N, P)
            if wb is not None:
                wb = Window(None if wb.hi is None else e.c - wb.hi,
                            None if wb.lo is None else e.c - wb.lo)
            win = root
            if level >= FilterLevel.ASIDE:
                if wa is None:
                    continue
                win = win & wa
            if level >= FilterLevel.BSIDE:
                if wb is None:
                    continue
                win = win & wb
            if win.empty:
                continue
            if not win.bounded:
                raise RefusedComputation(
                    f"c-window for cell rk={rk}, x={x} is unbounded at level {level.label}; "
                    f"the candidate family has walls accumulating at infinity")
            offset, step = grid
            for c in grid_points(offset, step, win.lo, win.hi):
                passed = FilterLevel.HEART
                if wa is not None and c in wa:
                    passed = FilterLevel.ASIDE
                    if wb is not None and c in wb:
                        passed = FilterLevel.BSIDE
                out.append(CandidateShadow(rk, x, c, passed))
    out.sort()
    return out


def find_mini_walls(t: CharVec, P: StabilityParams, interval, B: SearchBounds) -> List[MiniWall]:
    """Walls of the candidate family in [a^2, b^2], ascending, witnesses merged.

    b=None is allowed at the B-side level (the family is then still finite
    or the enumeration refuses).
    """
    a, b = _interval(interval)
    groups = {}
    for cand in enumerate_candidates(t, P, B, (a, b)):
        m2 = wall_of_pair(t, cand, P)
        groups.setdefault(m2, []).append(cand)
    return [MiniWall(m2, tuple(sorted(groups[m2]))) for m2 in sorted(groups)]


def chamber_decomposition(t: CharVec, P: StabilityParams, interval,
                          B: SearchBounds) -> List[Union[MiniWall, Chamber]]:
    """Walls and the open chambers between them, in increasing m^2.

    Chambers are reported by their m^2 endpoints; a wall sitting exactly on
    an end of the interval produces no empty chamber next to it.
    """
    a, b = _interval(interval)
    if b is None:
        raise ValueError("chamber_decomposition needs a bounded interval")
    walls = find_mini_walls(t, P, (a, b), B)
    return decompose(a * a, b * b, walls)


def decompose(lo_sq: Fraction, hi_sq: Fraction, walls: Sequence[MiniWall]) -> List[Union[MiniWall, Chamber]]:
    out: List[Union[MiniWall, Chamber]] = []
    left = lo_sq
    for wall in sorted(walls, key=lambda w: w.m_squared):
        if wall.m_squared > left:
            out.append(Chamber(left, wall.m_squared))
        out.append(wall)
        left = wall.m_squared
    if hi_sq > left:
        out.append(Chamber(left, hi_sq))
    return out


def destabilizers_at(t: CharVec, P: StabilityParams, m, B: SearchBounds,
                     interval) -> List[CandidateShadow]:
    """Candidates of the family on ``interval`` whose phase beats t at m."""
    m = to_fraction(m)
    if m <= 0:
        raise ValueError("m must be positive")
    return [cand for cand in enumerate_candidates(t, P, B, interval)
            if phase_compare(cand, t, P, m) is Ordering.GREATER]


@dataclass(frozen=True)
class ThresholdReport:
    M: Fraction
    a0: Fraction
    max_wall_m_squared: Optional[Fraction]
    candidate_count: int
    rank_bound: int


def threshold_report(t: CharVec, P: StabilityParams, B: SearchBounds) -> ThresholdReport:
    if B.filter_level < FilterLevel.BSIDE:
        raise RefusedComputation("large-volume threshold needs the B-side Bogomolov filter")
    cands = enumerate_candidates(t, P, B, (B.a0, None))
    top = max((wall_of_pair(t, c, P) for c in cands), default=None)
    M = B.a0
    if top is not None:
        M = max(M, sqrt_ceil(top, B.threshold_den))
    return ThresholdReport(M, B.a0, top, len(cands), B.rank_bound)


def large_volume_threshold(t: CharVec, P: StabilityParams, B: SearchBounds) -> Fraction:
    """Rational M with no candidate wall above M.

    M is a0 when the family is empty, otherwise the square root of the
    largest wall rounded up to a multiple of 1/threshold_den.
    """
    return threshold_report(t, P, B).M


# -- denominator bookkeeping ------------------------------------------------------

@dataclass(frozen=True)
class DenominatorData:
    """Integers K, q with K*2*(c_A y_t - c_t y_A) and q*(r x_A - rk_A x_t) integral.

    A wall's reduced denominator then divides K * num(omega^2) * |q D|, and
    |q D| never exceeds ``qd_max``.
    """

    K: int
    q: int
    omega_sq_num: int
    qd_max: int

    def bound(self, qd: int) -> int:
        return self.K * self.omega_sq_num * abs(qd)


def denominator_data(t: CharVec, P: StabilityParams, B: SearchBounds) -> DenominatorData:
    e = reduce(t, P)
    bw = P.beta_omega
    y_e = e.x - e.rk * bw
    h = x_step(P)
    k_c = _c_denominator(P, B)
    k_y = lcm(h.denominator, bw.denominator)
    K = lcm(k_c * y_e.denominator, e.c.denominator * k_y)
    q = lcm(h.denominator, e.x.denominator)
    qd_max = floor_frac(q * (abs(e.rk) + B.rank_bound) * max(y_e, Fraction(0)))
    return DenominatorData(K, q, abs(P.omega_sq.numerator), qd_max)


def wall_qd(t: CharVec, A, P: StabilityParams, data: DenominatorData) -> int:
    e, a = reduce(t, P), reduce(A, P)
    qd = data.q * (e.rk * a.x - a.rk * e.x)
    if qd.denominator != 1:
        raise AssertionError("x grid denominator bookkeeping is wrong")
    return int(qd)
