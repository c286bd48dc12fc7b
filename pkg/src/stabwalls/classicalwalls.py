"""Classical walls W^xi of a numerical type in the ample cone.

For t = (r, c1, c2) with r != 0 a class xi = r F - s c1 (F integral,
0 < s < |r|) defines a wall when

    -(r^2 / 4) (2 r c2 - (r - 1) c1^2) <= xi^2 < 0,

and the wall is the hyperplane {alpha : alpha.xi = 0}.  Enumeration is
restricted to lattices of rank <= 2, where a box in xi coordinates plus a
doubling probe gives an honest saturation flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .charge import CharVec
from .lattice import LatticeError, LatticeModel, is_ample_numerical
from .rational import to_fraction


@dataclass(frozen=True)
class WallXi:
    xi: Tuple[int, ...]
    s: int
    F: Tuple[int, ...]
    type_t: CharVec


def _int_vec(v) -> Tuple[int, ...]:
    out = []
    for a in v:
        q = to_fraction(a)
        if q.denominator != 1:
            raise ValueError(f"xi must be integral, got coordinate {q}")
        out.append(int(q))
    return tuple(out)


def xi_lower_bound(t: CharVec, L: LatticeModel) -> Fraction:
    r = t.rk
    c1sq = L.square(t.c1)
    return -Fraction(r * r, 4) * (2 * r * t.c2(L) - (r - 1) * c1sq)


def xi_admissible(xi, s: int, t: CharVec, L: LatticeModel) -> bool:
    if t.rk == 0:
        raise ValueError("classical walls are undefined for rank-zero types")
    xi = _int_vec(L.vec(xi))
    r = t.rk
    if isinstance(s, bool) or int(s) != s or not 0 < s < abs(r):
        return False
    s = int(s)
    # xi = r F - s c1 with F integral
    if any((a + s * c) % r for a, c in zip(xi, t.c1)):
        return False
    sq = L.square(xi)
    return xi_lower_bound(t, L) <= sq < 0


def admissible_s(xi, t: CharVec, L: LatticeModel) -> Optional[int]:
    """Smallest s making xi admissible, or None."""
    for s in range(1, abs(t.rk)):
        if xi_admissible(xi, s, t, L):
            return s
    return None


def _make_wall(xi: Tuple[int, ...], s: int, t: CharVec) -> WallXi:
    F = tuple((a + s * c) // t.rk for a, c in zip(xi, t.c1))
    return WallXi(xi, s, F, t)


def _canonical(xi: Tuple[int, ...]) -> Tuple[int, ...]:
    for a in xi:
        if a:
            return xi if a > 0 else tuple(-b for b in xi)
    return xi


def _check_rank(L: LatticeModel):
    if L.rank > 2:
        raise LatticeError("classical wall enumeration is only supported for lattice rank <= 2")


def all_walls_in_box(t: CharVec, L: LatticeModel, box_bound: int) -> List[WallXi]:
    """Every admissible xi (one sign representative) with coordinates in [-K, K]."""
    _check_rank(L)
    if t.rk == 0:
        raise ValueError("classical walls are undefined for rank-zero types")
    if box_bound < 1:
        raise ValueError("box_bound must be positive")
    out = []
    rng = range(-box_bound, box_bound + 1)
    for xi in itertools.product(rng, repeat=L.rank):
        if not any(xi) or _canonical(xi) != xi:
            continue
        # admissibility is symmetric under xi -> -xi (with s -> |r| - s)
        s = admissible_s(xi, t, L)
        if s is None:
            continue
        out.append(_make_wall(xi, s, t))
    return out


def _side(L: LatticeModel, w, xi) -> int:
    v = L.pair(w, xi)
    return (v > 0) - (v < 0)


def walls_through_region(t: CharVec, L: LatticeModel, region: Sequence, box_bound: int) -> List[WallXi]:
    """Admissible walls in the box whose hyperplane meets the segment ``region = (p, q)``."""
    _check_rank(L)
    p, q = (L.vec(v) for v in region)
    for v in (p, q):
        if not is_ample_numerical(L, v):
            raise ValueError("region endpoints must lie in the positive cone")
    if L.rank == 1:
        return []
    return [w for w in all_walls_in_box(t, L, box_bound)
            if _side(L, p, w.xi) * _side(L, q, w.xi) <= 0]


def saturation_probe(t: CharVec, L: LatticeModel, region: Sequence, box_bound: int) -> Tuple[List[WallXi], bool]:
    """Walls within box_bound plus whether doubling the box changes the answer."""
    found = walls_through_region(t, L, region, box_bound)
    if L.rank == 1:
        return found, True
    wider = walls_through_region(t, L, region, 2 * box_bound)
    return found, [w.xi for w in wider] == [w.xi for w in found]


def omega_on_wall(w, t: CharVec, L: LatticeModel, box_bound: int) -> Optional[WallXi]:
    _check_rank(L)
    w = L.vec(w)
    if not is_ample_numerical(L, w):
        raise ValueError("omega_on_wall needs an ample class")
    if L.rank == 1 or t.rk == 0:
        return None
    for wall in all_walls_in_box(t, L, box_bound):
        if L.pair(w, wall.xi) == 0:
            return wall
    return None


def wall_dual_type(t: CharVec) -> CharVec:
    """Type with total Chern class (1 + c1 + c2)^-1 and rank -r.

    With c1' = -c1 and c2' = c1^2 - c2 this is simply -t in (r, c1, ch2) terms.
    """
    return -t


def dual_wall_equivalence(xi, t: CharVec, L: LatticeModel) -> bool:
    """Recheck that an admissible xi is also admissible for the dual type."""
    s = admissible_s(xi, t, L)
    if s is None:
        raise ValueError("xi is not admissible for t")
    return xi_admissible(xi, abs(t.rk) - s, wall_dual_type(t), L)
