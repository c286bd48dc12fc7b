"""Brute-force cross-checks for the wall solver.

Nothing here calls the closed-form machinery of ``charge`` to get its
numbers.  The phase polynomial Im(conj Z_E(m) Z_A(m)) is rebuilt by
expanding -int e^{-(beta + i m omega)} ch(E) degree by degree with complex
rational coefficients, and walls are located by scanning its sign on a
rational grid.  The closed form is only consulted to compare answers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .charge import CharVec, StabilityParams, reduce
from .miniwalls import (CandidateShadow, FilterLevel, MiniWall, SearchBounds, _interval, c_grid,
                        enumerate_candidates, find_mini_walls, wall_of_pair, x_step)
from .rational import ceil_frac, floor_frac, grid_points, lcm, sign, to_fraction

# -- polynomials in m with Gaussian-rational coefficients ---------------------

CPoly = Dict[int, Tuple[Fraction, Fraction]]


def _cadd(p: CPoly, k: int, re, im) -> None:
    r0, i0 = p.get(k, (Fraction(0), Fraction(0)))
    p[k] = (r0 + re, i0 + im)


def _charge_poly(E: CharVec, P: StabilityParams) -> CPoly:
    """Coefficients of Z_m(E) in powers of m, from the degree-2 part of -e^{-D} ch(E).

    D = beta + i m omega.  Degree 0 of e^{-D} is 1, degree 1 is -D,
    degree 2 is D^2 / 2.  Only products landing in H^4 survive the integral.
    """
    L = P.lattice
    b, w = P.beta, P.omega
    poly: CPoly = {}
    # ch2 * 1
    _cadd(poly, 0, E.ch2, 0)
    # c1 * (-D) = -c1.beta - i m c1.omega
    _cadd(poly, 0, -L.pair(E.c1, b), 0)
    _cadd(poly, 1, 0, -L.pair(E.c1, w))
    # r * D^2/2 = r/2 (beta^2 + 2 i m beta.omega - m^2 omega^2)
    _cadd(poly, 0, E.rk * P.beta_sq / 2, 0)
    _cadd(poly, 1, 0, E.rk * P.beta_omega)
    _cadd(poly, 2, -E.rk * P.omega_sq / 2, 0)
    # Z = -integral
    return {k: (-re, -im) for k, (re, im) in poly.items()}


def imag_pair_polynomial(E, A, P: StabilityParams) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Coefficients (a0, a1, a2, a3) of Im(conj Z_E(m) Z_A(m)) in powers of m."""
    return _imag_pair(_charge_poly(lift(E, P), P), _charge_poly(lift(A, P), P))


def _imag_pair(ze: CPoly, za: CPoly) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    out = [Fraction(0)] * 5
    for i, (re_e, im_e) in ze.items():
        for j, (re_a, im_a) in za.items():
            # Im(conj(u) v) = Re u Im v - Im u Re v
            out[i + j] += re_e * im_a - im_e * re_a
    if out[4]:
        raise AssertionError("charge polynomial has an imaginary m^2 term")
    return tuple(out[:4])


# -- lifting shadows to Chern characters -------------------------------------

def _ext_gcd_vec(vals: Sequence[int]) -> Tuple[int, List[int]]:
    """g = gcd(vals) and integer coefficients u with sum u_i vals_i = g."""
    g, coeffs = 0, [0] * len(vals)
    for i, v in enumerate(vals):
        if v == 0:
            continue
        # extended Euclid on (g, v)
        old_r, r, old_s, s, old_t, t = g, v, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    return g, coeffs


@functools.lru_cache(maxsize=64)
def _lift_data(P: StabilityParams):
    pair = P.lattice.dual_pairings(P.omega)
    den = lcm(*(q.denominator for q in pair))
    ints = [int(q * den) for q in pair]
    g, u = _ext_gcd_vec(ints)
    return den, ints, g, u


def lift(E, P: StabilityParams) -> CharVec:
    """A Chern character realising a shadow (rk, x, c); CharVecs pass through."""
    if isinstance(E, CharVec):
        return E
    rk, x, c = int(E.rk), Fraction(E.x), Fraction(E.c)
    den0, ints, g, u = _lift_data(P)
    den = lcm(den0, x.denominator)
    scale = den // den0
    g *= scale
    target = x * den
    if target.denominator != 1 or (g == 0 and target != 0) or (g and target.numerator % g):
        raise ValueError(f"no integral c1 has c1.omega = {x}")
    k = target.numerator // g if g else 0
    c1 = tuple(k * a for a in u)
    ch2 = P.lattice.pair(c1, P.beta) - rk * P.beta_sq / 2 - c
    return CharVec(rk, c1, ch2)


# -- sign scanning -------------------------------------------------------------

_INT64_SAFE = 1 << 62


def _deflated(coeffs: Sequence[Fraction]) -> List[int]:
    """Integer multiple of Im(...)/m, as coefficients (b0, b1, b2) in m."""
    if coeffs[0]:
        raise AssertionError("phase polynomial must vanish at m = 0")
    rest = coeffs[1:]
    den = lcm(*(a.denominator for a in rest))
    return [int(a * den) for a in rest]


def _sign_vector(coeffs: Sequence[Fraction], us: np.ndarray, v: int) -> np.ndarray:
    """Signs of Im(conj Z_E Z_A) at m = u/v for each u > 0 in ``us``.

    Exact: int64 arithmetic when every term provably fits, Python ints otherwise.
    """
    b0, b1, b2 = _deflated(coeffs)
    top = max(int(np.max(np.abs(us))), v)
    if (abs(b0) + abs(b1) + abs(b2)) * top * top < _INT64_SAFE:
        u = us.astype(np.int64)
        return np.sign(b2 * u * u + b1 * v * u + b0 * v * v)
    return np.array([sign(b2 * u * u + b1 * v * u + b0 * v * v) for u in us.tolist()], dtype=np.int64)


@dataclass(frozen=True)
class ScanReport:
    E: object
    A: object
    interval: Tuple[Fraction, Fraction]
    step: Fraction
    brackets: Tuple[Tuple[Fraction, Fraction], ...]
    expected_m_squared: Optional[Fraction]
    agreement: Optional[bool]


def _grid(a: Fraction, b: Fraction, step: Fraction) -> Tuple[np.ndarray, int]:
    """Grid a, a + step, ..., ending exactly at b, as numerators over a common v."""
    v = lcm(a.denominator, b.denominator, step.denominator)
    ua, ub, us = int(a * v), int(b * v), int(step * v)
    pts = list(range(ua, ub + 1, us))
    if pts[-1] != ub:
        pts.append(ub)
    return np.array(pts, dtype=object), v


def _brackets(coeffs, a: Fraction, b: Fraction, step: Fraction) -> List[Tuple[Fraction, Fraction]]:
    if not any(coeffs):
        return []
    pts, v = _grid(a, b, step)
    signs = _sign_vector(coeffs, pts, v).tolist()
    pts = pts.tolist()
    out = []
    if signs[0] == 0:
        out.append((Fraction(pts[0], v),) * 2)
    for k in range(1, len(pts)):
        if signs[k] == 0:
            out.append((Fraction(pts[k], v),) * 2)
        elif signs[k - 1] != 0 and signs[k - 1] != signs[k]:
            out.append((Fraction(pts[k - 1], v), Fraction(pts[k], v)))
    return out


def _agrees(brackets, m2: Optional[Fraction], a: Fraction, b: Fraction) -> bool:
    inside = m2 is not None and a * a <= m2 <= b * b
    if not inside:
        return not brackets
    if len(brackets) != 1:
        return False
    lo, hi = brackets[0]
    return lo * lo <= m2 <= hi * hi


def scan_sign_changes(E, A, P: StabilityParams, interval, step=None, max_halvings: int = 4) -> ScanReport:
    """Scan Im(conj Z_E Z_A) on a rational grid over [a, b] and bracket its roots.

    The default step is (b - a)/128.  When the brackets disagree with the
    closed-form root the scan is repeated at half the step, a few times.
    """
    a, b = _interval(interval)
    if b is None:
        raise ValueError("scanning needs a bounded interval")
    step = (b - a) / 128 if step is None else to_fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    try:
        expected = wall_of_pair(E, A, P)
        checkable = True
    except ValueError:
        expected, checkable = None, False
    coeffs = imag_pair_polynomial(E, A, P)
    return _scan(E, A, coeffs, a, b, step, expected, checkable, max_halvings)


def _scan(E, A, coeffs, a, b, step, expected, checkable, max_halvings) -> ScanReport:
    if a == b:
        step = Fraction(1)
    for _ in range(max_halvings + 1):
        brackets = _brackets(coeffs, a, b, step)
        ok = _agrees(brackets, expected, a, b) if checkable else None
        if ok is not False:
            break
        step /= 2
    return ScanReport(E, A, (a, b), step, tuple(brackets), expected, ok)


@dataclass(frozen=True)
class Mismatch:
    candidate: CandidateShadow
    expected_m_squared: Optional[Fraction]
    brackets: Tuple[Tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class CrosscheckReport:
    candidate_count: int
    walls: Tuple[MiniWall, ...]
    bracket_count: int
    mismatches: Tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def crosscheck_walls(t: CharVec, P: StabilityParams, interval, B: SearchBounds, step=None) -> CrosscheckReport:
    """Scan every enumerated candidate against t and compare with the wall list."""
    a, b = _interval(interval)
    cands = enumerate_candidates(t, P, B, (a, b))
    walls = find_mini_walls(t, P, (a, b), B)
    wall_keys = {w.m_squared for w in walls}
    step = (b - a) / 128 if step is None else to_fraction(step)
    zt = _charge_poly(t, P)
    mismatches = []
    bracket_count = 0
    witnessed = set()
    for cand in cands:
        expected = wall_of_pair(t, cand, P)
        witnessed.add(expected)
        coeffs = _imag_pair(zt, _charge_poly(lift(cand, P), P))
        rep = _scan(t, cand, coeffs, a, b, step, expected, True, 4)
        bracket_count += len(rep.brackets)
        if not rep.agreement or expected not in wall_keys:
            mismatches.append(Mismatch(cand, expected, rep.brackets))
    for w in walls:
        if w.m_squared not in witnessed:
            mismatches.append(Mismatch(w.witnesses[0], w.m_squared, ()))
    return CrosscheckReport(len(cands), tuple(walls), bracket_count, tuple(mismatches))


# -- independent candidate enumeration -----------------------------------------

def bogomolov_admissible(rk: int, x: Fraction, c: Fraction, N: int, P: StabilityParams) -> bool:
    """Point test: does some T + F[1] decomposition of (rk, x, c) pass the pure-part bounds?"""
    bw, w2 = P.beta_omega, P.omega_sq
    h = x_step(P)
    for p in range(0, N + 1):
        for n in range(0, N + 1 - p):
            if p - n != rk:
                continue
            if p == 0 and n == 0:
                if x >= 0:
                    return True
            elif n == 0:
                yt = x - p * bw
                if yt > 0 and 2 * p * w2 * c >= -yt * yt:
                    return True
            elif p == 0:
                yf = x + n * bw  # c1(F).omega = -x, so n.bw - c1(F).omega = x + n bw
                if yf >= 0 and 2 * n * w2 * c <= yf * yf:
                    return True
            else:
                # is there an attainable c1(T).omega in (p bw, x + n bw]?
                k = floor_frac(p * bw / h) + 1
                if k * h <= x + n * bw:
                    return True
    return False


def _passes(level: FilterLevel, t_red, rk, x, c, N, P) -> bool:
    if level >= FilterLevel.ASIDE and not bogomolov_admissible(rk, x, c, N, P):
        return False
    if level >= FilterLevel.BSIDE and not bogomolov_admissible(t_red.rk - rk, t_red.x - x, t_red.c - c, N, P):
        return False
    return True


def brute_force_candidates(t: CharVec, P: StabilityParams, B: SearchBounds, interval) -> List[CandidateShadow]:
    """Candidates with wall in [a^2, b^2], found by testing every c in a crude box.

    The box comes from |c_A y_t - c_t y_A| <= b^2 omega^2 |D| / 2; each grid
    point is then kept only if the phase polynomial changes sign (or
    vanishes) on [a, b] and it passes the pointwise Bogomolov tests.
    """
    a, b = _interval(interval)
    if b is None:
        raise ValueError("brute force needs a bounded interval")
    e = reduce(t, P)
    bw, w2 = P.beta_omega, P.omega_sq
    y_e = e.x - e.rk * bw
    if y_e <= 0:
        return []
    N = B.rank_bound
    h = x_step(P)
    out = []
    for rk in range(-N, N + 1):
        k0 = floor_frac(rk * bw / h) + 1
        k1 = ceil_frac((rk * bw + y_e) / h) - 1
        for k in range(k0, k1 + 1):
            x = k * h
            y_a = x - rk * bw
            D = e.rk * y_a - rk * y_e
            if D == 0:
                continue
            grid = c_grid(rk, x, P, B.c_step)
            if grid is None:
                continue
            radius = (abs(e.c) * y_a + b * b * w2 * abs(D) / 2) / y_e
            for c in grid_points(grid[0], grid[1], -radius, radius):
                # alpha m^2 + gamma is Im(...)/m; a root in [a^2, b^2] means opposite signs or zero
                alpha = w2 * D / 2
                gamma = e.c * y_a - c * y_e
                lo_v, hi_v = alpha * a * a + gamma, alpha * b * b + gamma
                if sign(lo_v) * sign(hi_v) > 0:
                    continue
                if not _passes(B.filter_level, e, rk, x, c, N, P):
                    continue
                out.append(CandidateShadow(rk, x, c, B.filter_level))
    out.sort()
    return out


# -- dense scans for threshold audits -------------------------------------------

def count_sign_changes(t: CharVec, A, P: StabilityParams, lo: Fraction, width: Fraction, points: int) -> int:
    """Sign changes of Im(conj Z_t Z_A) over the grid lo + k*width/points, k = 1..points.

    Counts strict flips between consecutive points plus exact zeros.
    """
    lo, width = Fraction(lo), Fraction(width)
    v = lo.denominator * points * width.denominator
    base = lo.numerator * points * width.denominator
    inc = width.numerator * lo.denominator
    us = np.array([base + inc * k for k in range(1, points + 1)], dtype=object)
    s = _sign_vector(imag_pair_polynomial(t, A, P), us, v)
    zeros = int(np.count_nonzero(s == 0))
    flips = int(np.count_nonzero(s[1:] * s[:-1] < 0))
    return zeros + flips
