import random
from fractions import Fraction as F

import pytest

from stabwalls.charge import CharVec, StabilityParams
from stabwalls.classicalwalls import omega_on_wall
from stabwalls.lattice import P1xP1, P2
from stabwalls.moduli import (DUAL_GIESEKER, EMPTY_OR_UNKNOWN, GIESEKER_SIMPSON, ON_WALL, SIMPSON_TORSION,
                              SYMMETRIC_PRODUCT, TAGS, UHLENBECK, classify_moduli, dual_type,
                              uhlenbeck_strata)


def c2(L, r, c1, n):
    return CharVec.from_c2(L, r, c1, n)


def test_dual_type_examples():
    t = c2(P1xP1, 2, (1, 1), 1)
    d = dual_type(t)
    assert (d.rk, d.c1, d.c2(P1xP1)) == (-2, (1, 1), 1)
    d = dual_type(c2(P2, -1, (0,), 1))
    assert (d.rk, d.c1, d.c2(P2)) == (1, (0,), -1)


def test_dual_type_involution():
    rng = random.Random(1)
    for _ in range(1000):
        L = rng.choice([P2, P1xP1])
        t = CharVec(rng.randint(-5, 5), tuple(rng.randint(-5, 5) for _ in range(L.rank)),
                    F(rng.randint(-40, 40), rng.randint(1, 4)))
        assert dual_type(dual_type(t)) == t
        assert dual_type(t).c2(L) == L.square(t.c1) - t.c2(L)


P2_0 = StabilityParams(P2, (0,), (1,))
UHL = StabilityParams(P1xP1, (F(-3, 2), 0), (2, 1))

BRANCHES = [
    (CharVec(0, (0,), 3), P2_0, None, SYMMETRIC_PRODUCT),
    (CharVec(0, (0,), 0), P2_0, None, SYMMETRIC_PRODUCT),
    (CharVec(0, (0,), -2), P2_0, None, EMPTY_OR_UNKNOWN),
    (CharVec(0, (1,), F(-3, 2)), StabilityParams(P2, (F(-3, 2),), (1,)), None, SIMPSON_TORSION),
    (c2(P2, 2, (1,), 3), P2_0, None, GIESEKER_SIMPSON),
    (c2(P1xP1, 2, (1, 1), 1), StabilityParams(P1xP1, (0, 0), (2, 1)), None, GIESEKER_SIMPSON),
    (c2(P1xP1, -2, (1, 1), 1), UHL, None, UHLENBECK),
    (c2(P1xP1, -2, (1, 1), 1), StabilityParams(P1xP1, (0, 0), (2, 1)), None, DUAL_GIESEKER),
    (c2(P2, -1, (0,), 1), StabilityParams(P2, (-1,), (1,)), None, EMPTY_OR_UNKNOWN),
    (c2(P1xP1, 2, (1, 1), 1), StabilityParams(P1xP1, (0, 0), (1, 1)), "probe", ON_WALL),
]


@pytest.mark.parametrize("t,P,wall,tag", BRANCHES)
def test_branch_table(t, P, wall, tag):
    if wall == "probe":
        wall = omega_on_wall(P.omega, t, P.lattice, 5)
        assert wall is not None
    mc = classify_moduli(t, P, wall)
    assert mc.tag == tag


def test_branch_details():
    assert {row[3] for row in BRANCHES} == set(TAGS)
    mc = classify_moduli(CharVec(0, (0,), 3), P2_0)
    assert mc.n == 3
    mc = classify_moduli(c2(P1xP1, -2, (1, 1), 1), UHL)
    assert (mc.type_t.rk, mc.type_t.c1, mc.type_t.c2(P1xP1)) == (2, (1, 1), 1)
    mc = classify_moduli(CharVec(0, (1,), F(-3, 2)), P2_0)
    assert mc.precondition_notes and "K_X" in mc.precondition_notes[0]


def test_wall_gating():
    rng = random.Random(4)
    gated = 0
    for _ in range(200):
        r = rng.choice([-3, -2, 2, 3])
        t = c2(P1xP1, r, (rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(-1, 4))
        omega = (rng.randint(1, 3), rng.randint(1, 3))
        P = StabilityParams(P1xP1, (0, 0), omega)
        wall = omega_on_wall(omega, t, P1xP1, 4)
        tag = classify_moduli(t, P, wall).tag
        if wall is not None:
            gated += 1
            assert tag == ON_WALL
        else:
            assert tag != ON_WALL
    assert gated > 0


def _strata(t):
    return [(s.c2(P1xP1 if len(t.c1) == 2 else P2), k) for s, k in uhlenbeck_strata(t, P1xP1 if len(t.c1) == 2 else P2)]


def test_strata_examples():
    assert _strata(c2(P1xP1, 2, (1, 0), 3)) == [(3, 0), (2, 1), (1, 2), (0, 3)]
    assert _strata(c2(P2, 1, (0,), 0)) == [(0, 0)]
    assert _strata(c2(P1xP1, 2, (1, 1), 1)) == [(1, 0)]
    with pytest.raises(ValueError):
        uhlenbeck_strata(c2(P2, 0, (1,), 0), P2)


def test_strata_telescoping():
    rng = random.Random(8)
    for _ in range(200):
        t = c2(P1xP1, rng.randint(1, 4), (rng.randint(-3, 3), rng.randint(-3, 3)), rng.randint(-2, 8))
        top = t.c2(P1xP1)
        strata = uhlenbeck_strata(t, P1xP1)
        prev = None
        for s, k in strata:
            assert s.c2(P1xP1) + k == top
            assert prev is None or s.c2(P1xP1) < prev
            prev = s.c2(P1xP1)
