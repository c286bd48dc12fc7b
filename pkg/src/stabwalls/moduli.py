"""Large-volume moduli classification of a numerical type.

Branches, for t = (r, c1, c2) and t~ = (-r, c1, c1^2 - c2):

* r = 0, c1 = 0: length-n torsion, moduli Sym^n(X).
* r = 0, c1 != 0: Simpson moduli of pure 1-dimensional sheaves, valid only
  for the twist U = e^{-K_X/2}; the hypothesis is reported, not assumed.
* r != 0 and omega on a classical wall: undetermined.
* r > 0: Gieseker/Simpson moduli of t.
* r < 0, mu < beta.omega: Gieseker/Simpson moduli of t~.
* r < 0, mu = beta.omega: Uhlenbeck compactification for t~.
* r < 0, mu > beta.omega: outside the classification (the type fails the
  heart inequality).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .charge import CharVec, StabilityParams
from .classicalwalls import WallXi
from .lattice import LatticeModel


SYMMETRIC_PRODUCT = "SymmetricProduct"
SIMPSON_TORSION = "SimpsonTorsion"
GIESEKER_SIMPSON = "GiesekerSimpson"
DUAL_GIESEKER = "DualGieseker"
UHLENBECK = "Uhlenbeck"
ON_WALL = "OnWallUndetermined"
EMPTY_OR_UNKNOWN = "EmptyOrUnknown"

TAGS = (SYMMETRIC_PRODUCT, SIMPSON_TORSION, GIESEKER_SIMPSON, DUAL_GIESEKER,
        UHLENBECK, ON_WALL, EMPTY_OR_UNKNOWN)


@dataclass(frozen=True)
class ModuliClass:
    tag: str
    type_t: Optional[CharVec] = None
    n: Optional[int] = None
    wall: Optional[WallXi] = None
    precondition_notes: Tuple[str, ...] = field(default=())


def dual_type(t: CharVec) -> CharVec:
    """(r, c1, c2) -> (-r, c1, c1^2 - c2); in ch2 terms (-r, c1, -ch2)."""
    return CharVec(-t.rk, t.c1, -t.ch2)


def classify_moduli(t: CharVec, P: StabilityParams, wall_check: Optional[WallXi] = None) -> ModuliClass:
    """Total classifier.  ``wall_check`` is the result of omega_on_wall for (omega, t)."""
    if t.rk == 0 and not any(t.c1):
        # a length-n sheaf has ch2 = n whatever sign convention c2 was read with
        n = t.ch2
        if n >= 0 and n.denominator == 1:
            return ModuliClass(SYMMETRIC_PRODUCT, t, n=int(n))
        return ModuliClass(EMPTY_OR_UNKNOWN, t, precondition_notes=(
            "0-dimensional type with ch2 not a non-negative integer",))
    if t.rk == 0:
        return ModuliClass(SIMPSON_TORSION, t, precondition_notes=(
            "requires U = e^{-K_X/2}, i.e. beta = K_X/2",))
    if wall_check is not None:
        return ModuliClass(ON_WALL, t, wall=wall_check, precondition_notes=(
            "omega lies on a classical wall of this type",))
    if t.rk > 0:
        return ModuliClass(GIESEKER_SIMPSON, t)
    mu = P.lattice.pair(t.c1, P.omega) / t.rk
    bw = P.beta_omega
    if mu < bw:
        return ModuliClass(DUAL_GIESEKER, dual_type(t))
    if mu == bw:
        return ModuliClass(UHLENBECK, dual_type(t))
    return ModuliClass(EMPTY_OR_UNKNOWN, t, precondition_notes=(
        "r < 0 with c1.omega/r > beta.omega is not covered by the classification",))


def discriminant(t: CharVec, L: LatticeModel, c2: Fraction) -> Fraction:
    return 2 * t.rk * c2 - (t.rk - 1) * L.square(t.c1)


def uhlenbeck_strata(t_tilde: CharVec, L: LatticeModel) -> List[Tuple[CharVec, int]]:
    """Strata (r, c1, c2 - k) x Sym^k(X), k = 0, 1, ..., while the discriminant stays >= 0.

    The cutoff 2 r c2' - (r - 1) c1^2 >= 0 is a design choice: below it the
    mu-stable moduli are empty for numerical reasons.
    """
    if t_tilde.rk <= 0:
        raise ValueError("Uhlenbeck strata need positive rank")
    c2 = t_tilde.c2(L)
    out = []
    k = 0
    while discriminant(t_tilde, L, c2 - k) >= 0:
        out.append((CharVec.from_c2(L, t_tilde.rk, t_tilde.c1, c2 - k), k))
        k += 1
    return out
