from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rotalg import (Arc, CIdealFunction, ClosedCircleSet, all_empty,
                    check_c_closed, check_closed, classify_algebra,
                    function_from_json, function_to_json, golden_angle,
                    make_basic, make_ideal_IQ, meet, naive_join, omega,
                    q_intersection, support, triviality, values_equal,
                    window_function)
from rotalg.circleset import pt
from rotalg.idealfn import ExtensionViolation, OutsideWindowError, extend_from_positive

import oracles

F = Fraction
_G = golden_angle()
_P = ClosedCircleSet.from_points(_G, [pt(F(1, 7))])


def orbit_set(*exps):
    return ClosedCircleSet.from_points(_G, [pt(F(1, 7), e) for e in exps])


def exps_of(circle_set):
    if circle_set.full:
        return oracles.FULL
    assert not circle_set.arcs
    return frozenset(p.n for p in circle_set.points)


# -- the basic family -------------------------------------------------------


def test_basic_values_match_closed_form():
    b1 = make_basic(1, _P)
    assert b1.value_set(3) == orbit_set(0, -1, -2)
    assert b1.value_set(-2) == orbit_set(1, 2)
    assert b1.value_set(0).is_empty()
    b2 = make_basic(2, _P)
    assert b2.value_set(3).full
    assert b2.value_set(4) == orbit_set(0, -2)


@given(st.integers(min_value=1, max_value=3), st.integers(min_value=-12, max_value=12))
def test_basic_against_exponent_oracle(q, m):
    b = make_basic(q, _P)
    expected = oracles.basic_value(q, frozenset([0]), m)
    assert exps_of(b.value_set(m)) == expected


def test_basic_q_zero_convention():
    b0 = make_basic(0, _P)
    assert b0.value_set(0).is_empty()
    assert b0.value_set(5).full and b0.value_set(-3).full
    assert support(b0, 8).members == [0]


def test_basics_are_closed():
    for q in (1, 2, 3):
        assert check_closed(make_basic(q, _P), 10).ok
    arc = ClosedCircleSet.from_components(_G, (), (Arc(pt(0), pt(F(7, 10))),))
    assert check_closed(make_basic(1, arc), 10).ok


def test_all_empty_passes():
    assert check_closed(all_empty(_G), 8).ok


# -- the naive join and its closure defect ----------------------------------


def test_naive_join_displayed_values():
    b1 = make_basic(1, _P)
    b1t = make_basic(1, _P.rotate(1))
    nj = naive_join(b1, b1t)
    for n in range(-6, 7):
        got = exps_of(nj.value_set(n))
        if abs(n) <= 1:
            assert got == frozenset()
        elif n >= 2:
            assert got == frozenset(range(-n + 2, 1))
        else:
            assert got == frozenset(range(2, -n + 1))
        # cross-checked against the independent exponent model
        assert got == oracles.naive_join_value(
            lambda m: oracles.basic_value(1, frozenset([0]), m),
            lambda m: oracles.basic_value(1, frozenset([1]), m), n)


def test_naive_join_not_closed_with_witness():
    b1 = make_basic(1, _P)
    nj = naive_join(b1, make_basic(1, _P.rotate(1)))
    rep = check_closed(nj, 6)
    assert not rep.ok
    assert ("product", 1, 1) in rep.violations


def test_naive_join_trivialities():
    b1 = make_basic(1, _P)
    assert values_equal(naive_join(b1, all_empty(_G)), all_empty(_G), 6)
    assert values_equal(naive_join(b1, b1), b1, 6)


# -- meet ---------------------------------------------------------------------


def test_meet_is_pointwise_union():
    b1 = make_basic(1, _P)
    bq = make_basic(1, _P.rotate(3))
    assert meet(b1, bq).value_set(1) == _P.union(_P.rotate(3))
    assert values_equal(meet(b1, b1), b1, 6)


def test_meet_absorbing_trivial():
    b1 = make_basic(1, _P)
    triv = make_basic(0, _P)
    m = meet(b1, triv)
    for n in range(1, 5):
        assert m.value_set(n).full
    assert m.value_set(0).is_empty()


def test_meet_of_closed_is_closed():
    pairs = [(make_basic(1, _P), make_basic(1, _P.rotate(2))),
             (make_basic(2, _P), make_basic(3, _P)),
             (make_basic(1, orbit_set(0, 1)), make_basic(2, _P))]
    for a, b in pairs:
        assert check_closed(meet(a, b), 6).ok


def test_meet_of_two_and_three_equals_basic_at_six():
    # verified independently in the exponent model: the meet is exactly the
    # basic with data (6, value at 6)
    m = meet(make_basic(2, _P), make_basic(3, _P))
    b6 = make_basic(6, m.value_set(6))
    assert values_equal(m, b6, 18)
    for n in range(-18, 19):
        assert exps_of(m.value_set(n)) == oracles.meet_value(
            lambda k: oracles.basic_value(2, frozenset([0]), k),
            lambda k: oracles.basic_value(3, frozenset([0]), k), n)


# -- windows and extension -----------------------------------------------------


def test_window_defaults():
    w = window_function(_G, {1: _P}, default="full")
    assert w.value_set(9).full
    w2 = window_function(_G, {1: _P}, default="unknown")
    with pytest.raises(OutsideWindowError):
        w2.value(9)


def test_extension_reproduces_basic_window():
    b1 = make_basic(1, _P)
    ext = extend_from_positive(_G, {n: b1.value_set(n) for n in range(0, 7)})
    assert values_equal(ext, b1, 6)


def test_extension_finite_support_complete():
    arc = ClosedCircleSet.from_components(_G, (), (Arc(pt(0), pt(F(7, 10))),))
    ext = extend_from_positive(_G, {0: ClosedCircleSet.empty(_G), 1: arc},
                               default="full")
    assert values_equal(ext, make_basic(1, arc), 8)
    assert check_closed(ext, 8).ok


def test_extension_all_empty():
    ext = extend_from_positive(_G, {n: ClosedCircleSet.empty(_G) for n in range(5)})
    assert all(ext.value_set(n).is_empty() for n in range(-4, 5))


def test_extension_violation():
    with pytest.raises(ExtensionViolation) as exc:
        extend_from_positive(_G, {0: ClosedCircleSet.empty(_G),
                                  1: ClosedCircleSet.empty(_G),
                                  2: _P})
    assert exc.value.condition == "sum-rule"
    assert (exc.value.m, exc.value.n) == (1, 1)


# -- support and classification ---------------------------------------------


def test_support_symbolic_progression():
    assert support(make_basic(2, _P), 10).symbolic == "2Z"
    assert support(all_empty(_G), 10).symbolic == "Z"


def test_support_finite_arc():
    arc = ClosedCircleSet.from_components(_G, (), (Arc(pt(0), pt(F(7, 10))),))
    rep = support(make_basic(1, arc), 10)
    assert rep.members == [-1, 0, 1]
    assert rep.symbolic == "finite"


def test_classification():
    assert classify_algebra(make_basic(1, _P)).verdict == "residual"
    arc = ClosedCircleSet.from_components(_G, (), (Arc(pt(0), pt(F(7, 10))),))
    assert classify_algebra(make_basic(1, arc)).verdict == "small"
    assert classify_algebra(all_empty(_G)).verdict == "residual"
    # the basic dichotomy: small iff not residual
    for P in (_P, orbit_set(0, 2), arc):
        v = classify_algebra(make_basic(1, P)).verdict
        assert v in ("residual", "small")


# -- omega ---------------------------------------------------------------------


def test_omega_direct_union():
    for c, window in ((make_basic(1, _P), 2), (make_basic(2, _P), 4)):
        om, truncated = omega(c, window)
        expected = ClosedCircleSet.empty(_G)
        members = support(c, window).members
        for m in members:
            for n in members:
                expected = expected.union(c.value_set(n).rotate(-m))
        assert om == expected and truncated
    om0, trunc0 = omega(all_empty(_G), 4)
    assert om0.is_empty()


def test_omega_finite_support_not_truncated():
    arc = ClosedCircleSet.from_components(_G, (), (Arc(pt(0), pt(F(7, 10))),))
    _, truncated = omega(make_basic(1, arc), 4)
    assert not truncated


# -- the common zero set and ideals -------------------------------------------


def test_q_intersection_basic_closed_form(silver, golden):
    half = ClosedCircleSet.from_components(silver, (), (Arc(pt(0), pt(F(1, 2))),))
    Q, cert = q_intersection(make_basic(1, half), 10)
    assert cert.exact
    assert Q == ClosedCircleSet.from_components(silver, (), (Arc(pt(0, 1), pt(F(1, 2))),))
    # for the golden step the rotated arc wraps; the overlap survives near 0
    half_g = ClosedCircleSet.from_components(golden, (), (Arc(pt(0), pt(F(1, 2))),))
    Qg, cg = q_intersection(make_basic(1, half_g), 10)
    assert cg.exact and Qg == half_g.intersect(half_g.rotate(1))
    assert not Qg.is_empty()


def test_q_intersection_general():
    assert q_intersection(all_empty(_G), 8)[0].is_empty()
    b = make_basic(1, orbit_set(0, 1))
    Q, cert = q_intersection(b, 8)
    assert cert.exact and Q == orbit_set(1)
    # window truncation on a non-basic: still an upper bound of the basic formula
    m = meet(b, b)
    Qm, certm = q_intersection(m, 8)
    assert Qm.contains_set(Q)


def test_make_ideal_IQ_and_checks(silver):
    half = ClosedCircleSet.from_components(silver, (), (Arc(pt(0), pt(F(1, 2))),))
    c = make_basic(1, half)
    Q, _ = q_intersection(c, 10)
    j = make_ideal_IQ(c, Q)
    assert triviality(j) == "proper"
    assert check_c_closed(j, 10).ok
    # a single point of the common zero set also works
    point = ClosedCircleSet.from_points(silver, [Q.arcs[0].start])
    j2 = make_ideal_IQ(c, point)
    assert check_c_closed(j2, 8).ok and triviality(j2) == "proper"


def test_make_ideal_IQ_rejections():
    b1 = make_basic(1, _P)
    with pytest.raises(ValueError):
        make_ideal_IQ(b1, ClosedCircleSet.empty(_G))
    with pytest.raises(ValueError):
        make_ideal_IQ(b1, ClosedCircleSet.full_circle(_G))
    with pytest.raises(ValueError):
        make_ideal_IQ(b1, _P)  # not inside the (empty) common zero set


def test_c_ideal_failure_and_triviality():
    b1 = make_basic(1, _P)
    bad = CIdealFunction(b1, {0: _P})
    assert not check_c_closed(bad, 6).ok
    as_whole = CIdealFunction(b1, {0: ClosedCircleSet.empty(_G)})
    assert triviality(as_whole) == "whole"
    as_zero = CIdealFunction(b1, {0: ClosedCircleSet.full_circle(_G)})
    assert triviality(as_zero) == "zero"
    assert check_c_closed(CIdealFunction(b1, {}), 6).ok


def test_c_ideal_zero_slice_inside_all_values(silver):
    half = ClosedCircleSet.from_components(silver, (), (Arc(pt(0), pt(F(1, 2))),))
    c = make_basic(1, half)
    j = make_ideal_IQ(c, q_intersection(c, 10)[0])
    for n in range(-10, 11):
        assert j.value_set(n).contains_set(j.value_set(0))


# -- minimality of basics -------------------------------------------------------


def test_basic_minimality_below_closed():
    for c in (make_basic(1, orbit_set(0, 1)), make_basic(2, _P)):
        for n in range(1, 5):
            vn = c.value_set(n)
            if vn.full:
                continue
            b = make_basic(n, vn)
            assert meet(c, b).value_set(n) == vn
            for k in range(-8, 9):
                assert b.value_set(k).contains_set(c.value_set(k))


# -- serialization ----------------------------------------------------------------


def test_function_json_round_trip():
    import json
    for fn in (make_basic(2, _P),
               window_function(_G, {1: _P, -1: _P.rotate(1)})):
        doc = json.loads(json.dumps(function_to_json(fn)))
        assert values_equal(function_from_json(doc), fn, 5)
