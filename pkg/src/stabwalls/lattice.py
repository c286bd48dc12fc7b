"""Exact model of the numerical lattice Num(X)_Q of a surface.

A lattice is a rational symmetric Gram matrix of signature (1, rho - 1)
together with a reference ample class that fixes the component of the
positive cone playing the role of the ample cone.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from .rational import to_fraction

ClassVec = Tuple[Fraction, ...]


class LatticeError(ValueError):
    """Raised for malformed Gram matrices or mismatched class vectors."""


def inertia(gram: Sequence[Sequence[Fraction]]) -> Tuple[int, int, int]:
    """Return (n_pos, n_neg, n_zero) of a symmetric rational matrix.

    Uses symmetric Gaussian elimination (congruence), so the count is exact.
    """
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = zero = 0
    while a:
        n = len(a)
        if a[0][0] == 0:
            k = next((i for i in range(1, n) if a[i][i] != 0), None)
            if k is not None:
                a[0], a[k] = a[k], a[0]
                for row in a:
                    row[0], row[k] = row[k], row[0]
            else:
                j = next((j for j in range(1, n) if a[0][j] != 0), None)
                if j is None:
                    zero += 1
                    a = [row[1:] for row in a[1:]]
                    continue
                # e_0 -> e_0 + e_j makes the pivot 2*a[0][j] (a[j][j] is 0 here)
                for c in range(n):
                    a[0][c] += a[j][c]
                for r in range(n):
                    a[r][0] += a[r][j]
        d = a[0][0]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = []
        for i in range(1, n):
            f = a[i][0] / d
            rest.append([a[i][j] - f * a[0][j] for j in range(1, n)])
        a = rest
    return pos, neg, zero


@dataclass(frozen=True)
class LatticeModel:
    gram: Tuple[Tuple[Fraction, ...], ...]
    ample_ref: ClassVec
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        gram = tuple(tuple(to_fraction(x) for x in row) for row in self.gram)
        rho = len(gram)
        if rho == 0:
            raise LatticeError("lattice rank must be positive")
        if any(len(row) != rho for row in gram):
            raise LatticeError("Gram matrix must be square")
        for i in range(rho):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        pos, neg, zero = inertia(gram)
        if (pos, neg, zero) != (1, rho - 1, 0):
            raise LatticeError(
                f"Gram matrix has inertia (+{pos}, -{neg}, 0x{zero}); "
                f"a surface lattice needs signature (1, {rho - 1})")
        object.__setattr__(self, "gram", gram)
        ref = tuple(to_fraction(x) for x in self.ample_ref)
        if len(ref) != rho:
            raise LatticeError("ample_ref length does not match lattice rank")
        object.__setattr__(self, "ample_ref", ref)
        if self.pair(ref, ref) <= 0:
            raise LatticeError("ample_ref must have positive square")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def vec(self, coords) -> ClassVec:
        v = tuple(to_fraction(x) for x in coords)
        if len(v) != self.rank:
            raise LatticeError(f"class vector has length {len(v)}, lattice rank is {self.rank}")
        return v

    def pair(self, a, b) -> Fraction:
        if len(a) != self.rank or len(b) != self.rank:
            raise LatticeError(
                f"dimension mismatch: {len(a)} and {len(b)} vs lattice rank {self.rank}")
        total = Fraction(0)
        for i, j, g in self._entries:
            total += a[i] * g * b[j]
        return total

    @functools.cached_property
    def _entries(self):
        return tuple((i, j, g) for i, row in enumerate(self.gram) for j, g in enumerate(row) if g)

    def square(self, a) -> Fraction:
        return self.pair(a, a)

    def dual_pairings(self, a) -> ClassVec:
        """Values a . e_i on the standard basis (the row gram @ a)."""
        if len(a) != self.rank:
            raise LatticeError("dimension mismatch")
        return tuple(sum((self.gram[i][j] * Fraction(a[j]) for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))


def pairing(lattice: LatticeModel, a, b) -> Fraction:
    return lattice.pair(a, b)


def is_ample_numerical(lattice: LatticeModel, w) -> bool:
    """Numerical ampleness proxy: positive square, same cone component as ample_ref."""
    w = lattice.vec(w)
    return lattice.square(w) > 0 and lattice.pair(w, lattice.ample_ref) > 0


def hodge_square_bound(lattice: LatticeModel, w, c, d) -> Fraction:
    """Upper bound for alpha.alpha over all alpha with c <= alpha.w <= d.

    On a lattice of signature (1, rho-1) the orthogonal complement of an
    ample class is negative definite, so alpha^2 <= (alpha.w)^2 / w^2.
    """
    c, d = to_fraction(c), to_fraction(d)
    if c > d:
        raise ValueError(f"empty range: c={c} > d={d}")
    w = lattice.vec(w)
    if not is_ample_numerical(lattice, w):
        raise ValueError("hodge_square_bound needs an ample class")
    return max(c * c, d * d) / lattice.square(w)


P2 = LatticeModel(gram=((1,),), ample_ref=(1,), name="P2")
P1xP1 = LatticeModel(gram=((0, 1), (1, 0)), ample_ref=(1, 1), name="P1xP1")

PRESETS = {"P2": P2, "P1xP1": P1xP1}


def preset(name: str) -> LatticeModel:
    try:
        return PRESETS[name]
    except KeyError:
        raise LatticeError(f"unknown lattice preset {name!r}; known: {sorted(PRESETS)}") from None
