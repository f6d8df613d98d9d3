from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rotalg import Angle, golden_angle, named_angle, silver_angle


def test_refine_golden_hundredth(golden):
    lo, hi = golden.refine(Fraction(1, 100))
    assert hi - lo <= Fraction(1, 100)
    # the two consecutive convergents 13/21 and 21/34 bracket the value
    assert lo <= Fraction(21, 34) or lo <= Fraction(13, 21)
    assert Fraction(21, 34) <= hi or lo <= Fraction(21, 34) <= hi
    assert lo > Fraction(61, 100) and hi < Fraction(62, 100)


def test_refine_vacuous_precision(golden):
    lo, hi = golden.refine(Fraction(1))
    assert 0 < lo < hi < 1


def test_refine_silver_micro(silver):
    lo, hi = silver.refine(Fraction(1, 10**6))
    assert hi - lo <= Fraction(1, 10**6)
    assert lo < Fraction(414214, 10**6) < hi or lo > Fraction(414213, 10**6)
    assert abs(float(lo) - 0.4142135) < 1e-5


def test_refine_nested(golden):
    a = golden.refine(Fraction(1, 10))
    b = golden.refine(Fraction(1, 10**9))
    c = golden.refine(Fraction(1, 100))
    assert a[0] <= b[0] and b[1] <= a[1]
    # later coarse requests never loosen the cached enclosure
    assert c[0] >= b[0] and c[1] <= b[1]


def test_compare_linear_examples(golden):
    assert golden.compare_linear(Fraction(-1, 2), 1) == 1
    assert golden.compare_linear(Fraction(0), 0) == 0
    assert golden.compare_linear(Fraction(-2, 3), 1) == -1


_G = golden_angle()


@given(st.fractions(min_value=-3, max_value=3, max_denominator=20),
       st.integers(min_value=-6, max_value=6))
def test_compare_linear_negation(q, n):
    assert _G.compare_linear(q, n) == -_G.compare_linear(-q, -n)


@given(st.lists(st.tuples(
    st.fractions(min_value=-2, max_value=2, max_denominator=12),
    st.integers(min_value=-5, max_value=5)), min_size=3, max_size=3))
def test_compare_linear_transitive(triples):
    g = _G
    (q1, n1), (q2, n2), (q3, n3) = triples
    # order expressions by their exact sign differences and check consistency
    def le(a, b):
        return g.compare_linear(a[0] - b[0], a[1] - b[1]) <= 0
    items = sorted(triples, key=lambda t: t[0] + t[1] * 0.6180339887498949)
    assert le(items[0], items[1]) and le(items[1], items[2])
    assert le(items[0], items[2])


def test_best_denominators_golden(golden):
    assert golden.best_denominators(5) == [1, 2, 3, 5, 8]


def test_best_denominators_silver(silver):
    assert silver.best_denominators(4) == [2, 5, 12, 29]


def test_best_denominators_decreasing_distance(golden):
    rho = golden.float_value()
    dens = golden.best_denominators(8)
    dists = [abs(d * rho - round(d * rho)) for d in dens]
    assert all(a > b for a, b in zip(dists, dists[1:]))
    assert dists[0] < 0.5


def test_convergent_quality(golden):
    # |q_k rho - p_k| < 1/q_{k+1}
    dens = golden.best_denominators(9)
    rho = golden.float_value()
    for k in range(len(dens) - 1):
        assert abs(dens[k] * rho - round(dens[k] * rho)) < 1.0 / dens[k + 1]


def test_match_phase_half(golden):
    # best |k| <= 100 for the half turn: verified by float scan, 72 beats 17
    rho = golden.float_value()
    def dist(k):
        e = (k * rho) % 1.0
        return min(abs(e - 0.5), 1 - abs(e - 0.5))
    best = min(range(1, 101), key=dist)
    assert best == 72
    assert golden.match_phase(Fraction(1, 2), Fraction(1, 100), 100) == 72


def test_match_phase_zero_hits_denominator(golden):
    # with the bound at the first denominator below tolerance, that
    # denominator is the match
    assert golden.match_phase(Fraction(0), Fraction(1, 100), 55) == 55


def test_match_phase_not_found(golden):
    assert golden.match_phase(Fraction(1, 3), Fraction(1, 10**6), 10) is None


def test_match_phase_third_bound_200(golden):
    # verified by exact comparison: -48 lands closer to 1/3 than 96
    assert golden.match_phase(Fraction(1, 3), Fraction(1, 100), 200) == -48
    assert golden.match_phase(Fraction(2, 3), Fraction(1, 100), 200) == 48


def test_cf_descriptor_stream():
    a = Angle("cf", cf_prefix=[0, 2, 2], cf_rule="repeat-last")
    s = silver_angle()
    assert a.best_denominators(4) == s.best_denominators(4)
    lo, hi = a.refine(Fraction(1, 10**8))
    slo, shi = s.refine(Fraction(1, 10**8))
    assert not (hi < slo or shi < lo)


def test_cf_periodic_rule():
    a = Angle("cf", cf_prefix=[0, 1, 2], cf_rule="periodic:2")
    # coefficients 1,2,1,2,...: the value is a quadratic irrational in (0,1)
    lo, hi = a.refine(Fraction(1, 10**6))
    assert 0 < lo < hi < 1
    dens = a.best_denominators(6)
    assert dens[0] == 1 and all(b > a for a, b in zip(dens, dens[1:]))


def test_descriptor_validation():
    with pytest.raises(ValueError):
        Angle("surd", surd=(0, 1, 4, 2))   # square
    with pytest.raises(ValueError):
        Angle("surd", surd=(1, 0, 5, 2))   # rational
    with pytest.raises(ValueError):
        Angle("surd", surd=(3, 1, 5, 2))   # outside (0, 1)
    with pytest.raises(ValueError):
        Angle("cf", cf_prefix=[1, 2], cf_rule="repeat-last")  # a0 != 0


def test_json_round_trip(golden):
    doc = golden.to_json()
    assert doc == {"kind": "surd", "a": -1, "b": 1, "c": 5, "den": 2}
    again = Angle.from_json(doc)
    assert again.best_denominators(5) == golden.best_denominators(5)
    cf = Angle("cf", cf_prefix=[0, 1, 1, 1], cf_rule="repeat-last")
    cf2 = Angle.from_json(cf.to_json())
    assert cf2.best_denominators(5) == [1, 2, 3, 5, 8]


def test_named_angles():
    assert abs(named_angle("golden").float_value() - 0.6180339887) < 1e-9
    assert abs(named_angle("silver").float_value() - 0.4142135624) < 1e-9
    assert abs(named_angle("silver5").float_value() - 0.0828427125) < 1e-9
    assert abs(named_angle('{"kind":"surd","a":-1,"b":1,"c":5,"den":2}')
               .float_value() - 0.6180339887) < 1e-9


def test_concurrent_refinement():
    import threading
    g = golden_angle()
    errs = []

    def work():
        try:
            for k in range(10, 40):
                g.refine(Fraction(1, 2**k))
                g.compare_linear(Fraction(-13, 21), 1)
        except Exception as exc:  # pragma: no cover
            errs.append(exc)

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errs
    lo, hi = g.refine(Fraction(1, 2**39))
    assert hi - lo <= Fraction(1, 2**39)
