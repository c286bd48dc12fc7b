from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from stabwalls.charge import CharVec, Ordering, Reduced, StabilityParams, phase_compare
from stabwalls.lattice import P1xP1, P2
from stabwalls.miniwalls import (CandidateShadow, Chamber, FilterLevel, MiniWall, RefusedComputation,
                                 SearchBounds, bogomolov_window, c_grid, chamber_decomposition,
                                 decompose, default_rank_bound, denominator_data,
                                 destabilizers_at, enumerate_candidates, find_mini_walls,
                                 large_volume_threshold, threshold_report, wall_of_pair, wall_qd,
                                 x_step)
from stabwalls.oracle import imag_pair_polynomial
from stabwalls.rational import sqrt_ceil

import gen

P = StabilityParams(P2, (F(-1, 2),), (1,))
T = CharVec(0, (1,), F(-3, 2))
WITNESS = (1, F(0), F(-1, 8))
IV = (F(1, 2), F(2))


def key(c):
    return (c.rk, c.x, c.c)


# -- per-pair walls ----------------------------------------------------------

def test_wall_of_worked_pair():
    assert wall_of_pair(T, Reduced(*WITNESS), P) == F(5, 4)
    assert wall_of_pair(T, CharVec(1, (0,), 0), P) == F(5, 4)


def test_wall_absent_cases():
    # zero root
    assert wall_of_pair(T, Reduced(-1, F(1), F(1, 2)), P) is None
    # vanishing denominator: both rank zero
    assert wall_of_pair(T, Reduced(0, F(3), F(5)), P) is None
    with pytest.raises(ValueError):
        wall_of_pair(CharVec(1, (-2,), 0), T, P)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_root_identity(seed):
    """wall_of_pair is the positive root of Im(conj Z_E Z_A)/m, expanded independently."""
    rng = gen.seeded(seed)
    lattice = rng.choice([P2, P1xP1])
    t, Q = gen.instance(rng, lattice)
    A = gen.charvec(rng, lattice)
    a0, a1, a2, a3 = imag_pair_polynomial(t, A, Q)
    assert a0 == 0 and a2 == 0
    m2 = wall_of_pair(t, A, Q)
    if a3 == 0:
        assert m2 is None
    elif -a1 / a3 > 0:
        assert m2 == -a1 / a3
    else:
        assert m2 is None


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_sign_flip_across_wall(seed):
    rng = gen.seeded(seed)
    t, Q = gen.instance(rng, P1xP1)
    while True:
        A = gen.charvec(rng, P1xP1)
        y = Q.lattice.pair(A.c1, Q.omega) - A.rk * Q.beta_omega
        if y >= 0:
            break
    m2 = wall_of_pair(t, A, Q)
    if m2 is None:
        return
    # rationals whose squares sit just below and above the wall
    below = sqrt_ceil(m2 * F(99, 100), 10 ** 6) - F(1, 10 ** 6)
    above = sqrt_ceil(m2 * F(101, 100), 10 ** 6)
    assert below * below < m2 < above * above
    before, after = phase_compare(t, A, Q, below), phase_compare(t, A, Q, above)
    assert before is not after and Ordering.EQUAL not in (before, after)


# -- grids -------------------------------------------------------------------

def test_grids():
    assert x_step(P) == 1
    assert x_step(StabilityParams(P1xP1, (0, 0), (2, 1))) == 1
    assert x_step(StabilityParams(P2, (0,), (F(1, 2),))) == F(1, 2)
    # rank one lattice: c1 recovered from x, c on a coset of Z
    assert c_grid(1, F(0), P) == (F(-1, 8), 1)
    assert c_grid(-1, F(1), P)[1] == 1
    assert c_grid(1, F(1, 2), StabilityParams(P2, (0,), (1,))) is None
    assert c_grid(1, F(0), P, F(1, 3)) == (F(-1, 8), F(1, 3))


def test_c_grid_contains_actual_values():
    rng = gen.seeded(11)
    from stabwalls.charge import reduce
    for _ in range(300):
        lattice = rng.choice([P2, P1xP1])
        Q = gen.params(rng, lattice, beta_dens=(1, 2, 3))
        E = CharVec.from_c2(lattice, rng.randint(-3, 3), tuple(rng.randint(-3, 3) for _ in range(lattice.rank)),
                            rng.randint(-6, 6))
        r = reduce(E, Q)
        offset, step = c_grid(r.rk, r.x, Q)
        assert ((r.c - offset) / step).denominator == 1


def test_bogomolov_windows_of_worked_cells():
    assert bogomolov_window(1, F(0), 1, P).lo == F(-1, 8)
    assert bogomolov_window(-1, F(1), 1, P).hi == F(1, 8)
    assert bogomolov_window(0, F(1), 1, P).bounded is False
    assert bogomolov_window(2, F(0), 1, P) is None


# -- enumeration ---------------------------------------------------------------

def test_enumeration_levels_on_worked_instance():
    heart = enumerate_candidates(T, P, SearchBounds(1, "heart"), IV)
    aside = enumerate_candidates(T, P, SearchBounds(1, "aside"), IV)
    bside = enumerate_candidates(T, P, SearchBounds(1, "bside"), IV)
    assert [key(c) for c in aside] == [WITNESS]
    assert aside[0].filter_level_passed is FilterLevel.ASIDE
    assert bside == []
    assert {key(c) for c in aside} <= {key(c) for c in heart}
    # rank -1 cells need c in [5/8, 5/2] but the A-side bound is c <= 1/8
    assert {key(c) for c in heart if c.rk == -1} == {(-1, F(1), F(9, 8)), (-1, F(1), F(17, 8))}


def test_zero_twisted_degree_has_no_candidates():
    Q = StabilityParams(P2, (0,), (1,))
    t = CharVec(1, (0,), 0)
    assert enumerate_candidates(t, Q, SearchBounds(2, "heart"), (F(1, 10), 10)) == []
    assert find_mini_walls(t, Q, (F(1, 10), 10), SearchBounds(2)) == []
    assert large_volume_threshold(t, Q, SearchBounds(2, "bside")) == 1


def test_unbounded_interval_refused_below_bside():
    for level in ("heart", "aside"):
        with pytest.raises(RefusedComputation):
            enumerate_candidates(T, P, SearchBounds(1, level), (1, None))
    assert enumerate_candidates(T, P, SearchBounds(1, "bside"), (1, None)) == []


def test_interval_validation():
    with pytest.raises(ValueError):
        find_mini_walls(T, P, (0, 2), SearchBounds(1))
    with pytest.raises(ValueError):
        find_mini_walls(T, P, (2, 1), SearchBounds(1))


def test_search_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(0)
    with pytest.raises(ValueError):
        SearchBounds(1, c_step=0)
    with pytest.raises(ValueError):
        SearchBounds(1, "strong")
    assert SearchBounds(1, "BSideBogomolov").filter_level is FilterLevel.BSIDE
    assert default_rank_bound(CharVec(-2, (0,), 0)) == 8


# -- walls and chambers ----------------------------------------------------------

def test_find_mini_walls_worked():
    (wall,) = find_mini_walls(T, P, IV, SearchBounds(1, "aside"))
    assert wall.m_squared == F(5, 4)
    assert [key(c) for c in wall.witnesses] == [WITNESS]
    assert find_mini_walls(T, P, (F(3, 2), 2), SearchBounds(1, "aside")) == []


def test_chambers_worked():
    items = chamber_decomposition(T, P, IV, SearchBounds(1, "aside"))
    assert items[0] == Chamber(F(1, 4), F(5, 4))
    assert isinstance(items[1], MiniWall) and items[1].m_squared == F(5, 4)
    assert items[2] == Chamber(F(5, 4), 4)
    assert chamber_decomposition(T, P, IV, SearchBounds(1, "bside")) == [Chamber(F(1, 4), 4)]


def test_decompose_synthetic_walls():
    w = [MiniWall(F(3), (CandidateShadow(1, F(0), F(0)),)), MiniWall(F(2), (CandidateShadow(1, F(0), F(1)),))]
    items = decompose(F(1), F(4), w)
    assert items[0] == Chamber(F(1), F(2)) and items[2] == Chamber(F(2), F(3)) and items[4] == Chamber(F(3), F(4))
    # a wall on the boundary does not create an empty chamber
    assert decompose(F(2), F(3), w)[0].m_squared == 2
    assert len(decompose(F(2), F(3), w)) == 3


def test_destabilizers_worked():
    B = SearchBounds(1, "aside")
    assert [key(c) for c in destabilizers_at(T, P, 1, B, IV)] == [WITNESS]
    assert destabilizers_at(T, P, 2, B, IV) == []
    with pytest.raises(ValueError):
        destabilizers_at(T, P, 0, B, IV)


def test_threshold_worked():
    B = SearchBounds(1, "bside")
    assert large_volume_threshold(T, P, B) == 1
    assert large_volume_threshold(T, P, SearchBounds(1, "bside", a0=F(3, 2))) == F(3, 2)
    with pytest.raises(RefusedComputation):
        large_volume_threshold(T, P, SearchBounds(1, "aside"))


def _random_walls_case(seed, lattice=P1xP1):
    rng = gen.seeded(seed)
    t, Q = gen.instance(rng, lattice)
    return rng, t, Q


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_monotone_filtering(seed):
    rng, t, Q = _random_walls_case(seed)
    N = rng.randint(1, 2)
    sets = [{w.m_squared for w in find_mini_walls(t, Q, (F(1, 2), 3), SearchBounds(N, lvl))}
            for lvl in ("heart", "aside", "bside")]
    assert sets[2] <= sets[1] <= sets[0]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 7), st.fractions(min_value=F(11, 10), max_value=F(29, 10), max_denominator=10))
def test_interval_split(seed, c):
    rng, t, Q = _random_walls_case(seed)
    B = SearchBounds(rng.randint(1, 2), rng.choice(["heart", "aside", "bside"]))
    whole = find_mini_walls(t, Q, (1, 3), B)
    left, right = find_mini_walls(t, Q, (1, c), B), find_mini_walls(t, Q, (c, 3), B)
    merged = {}
    for w in left + right:
        merged.setdefault(w.m_squared, set()).update(key(x) for x in w.witnesses)
    assert merged == {w.m_squared: {key(x) for x in w.witnesses} for w in whole}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_chamber_constancy(seed):
    rng, t, Q = _random_walls_case(seed)
    B = SearchBounds(rng.randint(1, 2), rng.choice(["aside", "bside"]))
    iv = (F(1, 2), F(3))
    for item in chamber_decomposition(t, Q, iv, B):
        if not isinstance(item, Chamber):
            continue
        samples = []
        for frac in (F(1, 4), F(1, 2), F(3, 4)):
            m2 = item.lo_sq + frac * (item.hi_sq - item.lo_sq)
            # a rational m with m^2 strictly inside the chamber
            m = sqrt_ceil(m2, 10 ** 4)
            if not item.lo_sq < m * m < item.hi_sq:
                continue
            samples.append({key(c) for c in destabilizers_at(t, Q, m, B, iv)})
        assert all(s == samples[0] for s in samples)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 7))
def test_wall_denominators_divide_grid_bound(seed):
    rng, t, Q = _random_walls_case(seed, P2 if seed % 2 else P1xP1)
    B = SearchBounds(rng.randint(1, 2), rng.choice(["heart", "aside"]))
    data = denominator_data(t, Q, B)
    for wall in find_mini_walls(t, Q, (F(1, 2), 4), B):
        for wit in wall.witnesses:
            qd = wall_qd(t, wit, Q, data)
            assert 0 < abs(qd) <= data.qd_max
            assert data.bound(qd) % wall.m_squared.denominator == 0


def test_threshold_report_fields():
    rep = threshold_report(T, P, SearchBounds(1, "bside"))
    assert rep.candidate_count == 0 and rep.max_wall_m_squared is None and rep.rank_bound == 1
