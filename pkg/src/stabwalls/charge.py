"""Chern-character shadows, the central charge Z_m and exact phase comparison.

The central charge of a class E with Chern character (r, c1, ch2) is

    Z_m(E) = -int e^{-(beta + i m omega)} ch(E)
           = (r omega^2 / 2) m^2 + i (c1.omega - r beta.omega) m + c(E),
    c(E)   = -ch2 + c1.beta - r beta^2 / 2.

Phases are never computed as angles: every ordering decision goes through
the sign of Im(conj(Z_E) Z_B), which is a polynomial in m with rational
coefficients.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .lattice import ClassVec, LatticeError, LatticeModel, is_ample_numerical
from .rational import sign, to_fraction

# Fixed data of the large-volume stability data Omega = (omega, rho, p, U).
# Carried for documentation; nothing below consumes them.
RHO = ("-1", "i", "1/2")  # rho_d = -(-i)^d / d!


def perversity(d: int) -> int:
    return -(d // 2)


@dataclass(frozen=True)
class CharVec:
    """Numerical shadow (rank, c1, ch2) of an object of D^b(X).

    ch2 is canonical; c2 = c1.c1/2 - ch2 is available through ``c2(lattice)``.
    """

    rk: int
    c1: Tuple[int, ...]
    ch2: Fraction

    def __post_init__(self):
        if isinstance(self.rk, bool) or int(self.rk) != self.rk:
            raise TypeError("rank must be an integer")
        object.__setattr__(self, "rk", int(self.rk))
        c1 = []
        for x in self.c1:
            q = to_fraction(x)
            if q.denominator != 1:
                raise ValueError(f"c1 must be integral, got coordinate {q}")
            c1.append(int(q))
        object.__setattr__(self, "c1", tuple(c1))
        object.__setattr__(self, "ch2", to_fraction(self.ch2))

    @classmethod
    def from_c2(cls, lattice: LatticeModel, rk, c1, c2, convention: str = "chern") -> "CharVec":
        """Build from (r, c1, c2).

        ``convention`` only matters for 0-dimensional types (r = 0, c1 = 0):
        under "length" the entry is read as the length n of the type (0, 0, n),
        under "chern" it is the honest second Chern class, so length n means c2 = -n.
        """
        c2 = to_fraction(c2)
        probe = cls(rk, c1, 0)
        if convention not in ("chern", "length"):
            raise ValueError(f"unknown c2 convention {convention!r}")
        if convention == "length" and probe.rk == 0 and not any(probe.c1):
            return cls(rk, c1, c2)
        return cls(rk, c1, lattice.square(probe.c1) / 2 - c2)

    def c2(self, lattice: LatticeModel) -> Fraction:
        return lattice.square(self.c1) / 2 - self.ch2

    def __add__(self, other: "CharVec") -> "CharVec":
        if len(self.c1) != len(other.c1):
            raise LatticeError("c1 length mismatch")
        return CharVec(self.rk + other.rk, tuple(a + b for a, b in zip(self.c1, other.c1)),
                       self.ch2 + other.ch2)

    def __neg__(self) -> "CharVec":
        return CharVec(-self.rk, tuple(-a for a in self.c1), -self.ch2)

    def __sub__(self, other: "CharVec") -> "CharVec":
        return self + (-other)

    @classmethod
    def zero(cls, rank: int) -> "CharVec":
        return cls(0, (0,) * rank, 0)


@dataclass(frozen=True)
class StabilityParams:
    """The pair (beta, omega) on a lattice, with cached intersection numbers."""

    lattice: LatticeModel
    beta: ClassVec
    omega: ClassVec

    def __post_init__(self):
        beta = self.lattice.vec(self.beta)
        omega = self.lattice.vec(self.omega)
        if not is_ample_numerical(self.lattice, omega):
            raise ValueError(f"omega={tuple(map(str, omega))} is not ample on {self.lattice.name}")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "omega", omega)

    @functools.cached_property
    def omega_sq(self) -> Fraction:
        return self.lattice.square(self.omega)

    @functools.cached_property
    def beta_omega(self) -> Fraction:
        return self.lattice.pair(self.beta, self.omega)

    @functools.cached_property
    def beta_sq(self) -> Fraction:
        return self.lattice.square(self.beta)


@dataclass(frozen=True)
class Reduced:
    """What the charge sees of a class: rank, x = c1.omega and c = c(E)."""

    rk: int
    x: Fraction
    c: Fraction


def reduce(E, P: StabilityParams) -> Reduced:
    """Accept a CharVec or anything already carrying (rk, x, c)."""
    if isinstance(E, CharVec):
        return _reduce_charvec(E, P)
    return Reduced(int(E.rk), Fraction(E.x), Fraction(E.c))


@functools.lru_cache(maxsize=4096)
def _reduce_charvec(E: "CharVec", P: "StabilityParams") -> Reduced:
    return Reduced(E.rk, P.lattice.pair(E.c1, P.omega), c_value(E, P))


def c_value(E: CharVec, P: StabilityParams) -> Fraction:
    return -E.ch2 + P.lattice.pair(E.c1, P.beta) - E.rk * P.beta_sq / 2


def twisted_degree(E, P: StabilityParams) -> Fraction:
    """y(E) = c1.omega - rk * beta.omega, the coefficient of i*m in Z_m(E)."""
    e = reduce(E, P)
    return e.x - e.rk * P.beta_omega


@dataclass(frozen=True)
class ChargeQuadratic:
    """Z(m) = re2 m^2 + i im1 m + re0."""

    re2: Fraction
    im1: Fraction
    re0: Fraction

    def at(self, m) -> Tuple[Fraction, Fraction]:
        m = to_fraction(m)
        return self.re2 * m * m + self.re0, self.im1 * m

    def __add__(self, other: "ChargeQuadratic") -> "ChargeQuadratic":
        return ChargeQuadratic(self.re2 + other.re2, self.im1 + other.im1, self.re0 + other.re0)


def central_charge(E, P: StabilityParams) -> ChargeQuadratic:
    e = reduce(E, P)
    return ChargeQuadratic(e.rk * P.omega_sq / 2, e.x - e.rk * P.beta_omega, e.c)


@functools.total_ordering
class _TorsionSlope:
    """Slope of a rank-zero class: compares greater than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("TorsionSlope")

    def __repr__(self):
        return "TorsionSlope"


TORSION_SLOPE = _TorsionSlope()


def slope_mu(E, P: StabilityParams):
    e = reduce(E, P)
    if e.rk == 0:
        return TORSION_SLOPE
    return e.x / e.rk


def heart_admissible(E, P: StabilityParams) -> bool:
    """Necessary numerical condition c1.omega >= rk * beta.omega for lying in the tilted heart.

    Not sufficient: passing says nothing about the cohomology sheaves.
    """
    return twisted_degree(E, P) >= 0


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def flipped(self) -> "Ordering":
        return Ordering(-self.value)


def imag_cross(E, B, P: StabilityParams, m) -> Fraction:
    """Im(conj(Z_E(m)) * Z_B(m)) = Re Z_E * Im Z_B - Im Z_E * Re Z_B."""
    re_e, im_e = central_charge(E, P).at(m)
    re_b, im_b = central_charge(B, P).at(m)
    return re_e * im_b - im_e * re_b


def phase_compare(E, B, P: StabilityParams, m) -> Ordering:
    """Compare phi(Z_m(E)) with phi(Z_m(B)); GREATER means phi(E) > phi(B).

    Both classes must pass heart_admissible, so their charges lie in the
    closed upper half plane where the cross product orders phases.
    """
    m = to_fraction(m)
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    for name, obj in (("E", E), ("B", B)):
        if not heart_admissible(obj, P):
            raise ValueError(f"{name} violates the heart inequality c1.omega >= rk beta.omega")
    # phi(E) > phi(B)  <=>  Im(conj Z_E * Z_B) < 0
    return Ordering(-sign(imag_cross(E, B, P, m)))


def phase_inequality_gap(E, B, P: StabilityParams, m) -> Fraction:
    """LHS - RHS of the rearranged phase inequality

        (w^2 m^2 / 2)(rk_E x_B - rk_B x_E) < c_B y_E - c_E y_B,

    which holds exactly when phi(E) > phi(B).
    """
    m = to_fraction(m)
    e, b = reduce(E, P), reduce(B, P)
    y_e = e.x - e.rk * P.beta_omega
    y_b = b.x - b.rk * P.beta_omega
    lhs = P.omega_sq * m * m / 2 * (e.rk * b.x - b.rk * e.x)
    rhs = b.c * y_e - e.c * y_b
    return lhs - rhs


def display_phase(E, P: StabilityParams, m) -> Optional[float]:
    """Phase in (0, 1] for reports, or None when Z_m(E) is outside the heart's half plane.

    Returns exactly 1.0 on the negative real axis.  Presentation only.
    """
    re, im = central_charge(E, P).at(m)
    if im > 0:
        return math.atan2(float(im), float(re)) / math.pi
    if im == 0 and re < 0:
        return 1.0
    return None
