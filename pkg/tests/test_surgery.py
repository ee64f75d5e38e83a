import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.character_variety import load_presentation, projective_closure
from charvar.exact.algorithms import squarefree_part
from charvar.exact.polynomial import ProjectivePoint, Ring
from charvar.groebner import Ideal, buchberger, normal_form, quotient_dimension, saturation
from charvar.surgery import (
    COUNT_RING,
    InvariantReport,
    SurgeryError,
    SurgerySlope,
    _reduce_on_curve,
    b_invariant,
    cs_norm_from_ideal_points,
    cs_norm_generic_fiber,
    epq_image_ideal,
    f_gamma,
    format_reports,
    ideal_point_data,
    invariant_report,
    knot_data,
    lambda_hat,
    lambda_invariant,
    local_order,
    parse_slopes,
    pole_order,
    surgery_character_count,
)
from charvar.traces import BOUNDARY_RING, CURVE_RING
from charvar.verify import norm_formula, random_primitive_slopes

S = SurgerySlope


@pytest.fixture(scope="module")
def fig8():
    return knot_data(load_presentation("figure8"))


@pytest.fixture(scope="module")
def cubic(fig8):
    return projective_closure(fig8.x0.generator)


def test_slopes():
    assert S.parse("-9/4") == S(-9, 4)
    assert S.parse(" 3 1 ") == S(3, 1)
    assert str(S(7, 2)) == "7/2"
    assert parse_slopes("2/1, 3/1\n# c\n-1/2  # tail\n") == [S(2, 1), S(3, 1), S(-1, 2)]
    for bad in ("0/0", "2/4", "x/1", "1/2/3"):
        with pytest.raises(SurgeryError):
            S.parse(bad)


def test_trace_mode_generators():
    U = BOUNDARY_RING.parse
    torus = U("u^2 + v^2 + w^2 - u*v*w - 4")
    assert set(epq_image_ideal(S(1, 0), "trace").generators) == {U("u^2 - 4"), torus}
    assert set(epq_image_ideal(S(0, 1), "trace").generators) == {U("v^2 - 4"), torus}
    with pytest.raises(ValueError):
        epq_image_ideal(S(1, 0), "bogus")


def _in_radical(f, ideal):
    return buchberger(saturation(ideal, f)).is_unit()


def test_modes_cut_out_the_same_points(fig8):
    s = S(2, 1)
    elim = fig8.image + epq_image_ideal(s, "elimination")
    trace = fig8.image + epq_image_ideal(s, "trace")
    inv = fig8.image + epq_image_ideal(s, "invariant")
    for a, b in ((elim, trace), (trace, elim), (inv, elim), (elim, inv)):
        assert all(_in_radical(g, b) for g in a)


def test_saturating_by_ml_changes_nothing():
    for s in (S(2, 1), S(-1, 2)):
        plain = buchberger(epq_image_ideal(s, "elimination"))
        sat = buchberger(epq_image_ideal(s, "elimination", saturate=True))
        assert plain == sat


def test_table_examples_that_agree(fig8):
    assert b_invariant(S(2, 1), fig8.image) == 8
    assert b_invariant(S(4, 1), fig8.image) == 6
    assert lambda_invariant(S(2, 1), fig8.image) == 6
    assert lambda_invariant(S(6, 1), fig8.image) == 10


@pytest.mark.parametrize("slope", [S(2, 1), S(3, 1), S(4, 1), S(-1, 2)])
def test_mode_relations(fig8, slope):
    b, lam = b_invariant(slope, fig8.image), lambda_invariant(slope, fig8.image)
    assert b_invariant(slope, fig8.image, "invariant") == b
    assert lambda_invariant(slope, fig8.image, "invariant") == lam
    # P^2 - 4 is a square on the torus, so the trace mode counts everything twice
    assert b_invariant(slope, fig8.image, "trace") == 2 * b
    assert lambda_invariant(slope, fig8.image, "trace") == 2 * lam


@pytest.mark.parametrize("slope", [S(1, 0), S(0, 1), S(1, 1), S(5, 1), S(-3, 2), S(5, 3)])
def test_b_positive_and_dominates_lambda(fig8, slope):
    r = invariant_report(slope, fig8, with_lambda_hat=False)
    assert r.b > 0
    assert r.b >= r.lam >= 0
    assert r.on_locus == r.b - r.lam
    assert r.lam <= r.norm


def test_report_consistency_guard():
    with pytest.raises(AssertionError):
        InvariantReport(S(2, 1), 8, 6, None, 16, 1)


# -- functions on the curve ---------------------------------------------------------


def test_pole_orders(fig8, cubic):
    one = CURVE_RING.one()
    fm, fl = f_gamma(S(1, 0), fig8), f_gamma(S(0, 1), fig8)
    p0, p1 = ProjectivePoint((0, 0, 1)), ProjectivePoint((1, 0, 0))
    assert pole_order((fm, one), p0, cubic) == -2
    assert pole_order((fm, one), p1, cubic) == -2
    assert pole_order((fl, one), p1, cubic) == -8
    assert pole_order((fl, one), p0, cubic) == -8
    assert pole_order((CURVE_RING.constant(5), one), p0, cubic) == 0
    # a quotient: f_lambda / f_mu
    assert pole_order((fl, fm), p1, cubic) == -6
    with pytest.raises(SurgeryError):
        pole_order((fig8.x0.generator, one), p0, cubic)


def test_local_order_methods_agree(fig8, cubic):
    P = cubic.ring
    forms = ["X", "Y", "Z", "X + Z", "X^2 - Y*Z", "Z^3 - X*Y^2"]
    for pt in (ProjectivePoint((0, 0, 1)), ProjectivePoint((1, 0, 0)), ProjectivePoint((1, 1, 1))):
        for f in forms:
            h = P.parse(f)
            assert local_order(h, pt, cubic, "series") == local_order(h, pt, cubic, "ideal"), (pt, f)
    # the line at infinity is tangent at [0:0:1] and meets [1:0:0] simply
    assert local_order(P.parse("Y"), ProjectivePoint((0, 0, 1)), cubic) == 2
    assert local_order(P.parse("Y"), ProjectivePoint((1, 0, 0)), cubic) == 1
    assert local_order(P.parse("X"), ProjectivePoint((0, 0, 1)), cubic) == 1


def test_local_order_rejects_points_off_the_curve(cubic):
    with pytest.raises(SurgeryError):
        local_order(cubic.ring.parse("X"), ProjectivePoint((1, 1, 0)), cubic)


def test_ideal_point_data(fig8):
    data = ideal_point_data(fig8)
    assert [(d.pole_order_meridian, d.pole_order_longitude) for d in data] == [(2, 8), (2, 8)]


def test_norm_examples(fig8):
    points = ideal_point_data(fig8)
    for slope, expected in [(S(1, 0), 4), (S(0, 1), 16), (S(3, 1), 16), (S(-4, 1), 16)]:
        assert cs_norm_generic_fiber(slope, fig8).norm == expected
        assert cs_norm_from_ideal_points(slope, points) == expected


def test_norm_routes_agree_with_closed_form(fig8):
    points = ideal_point_data(fig8)
    for s in random_primitive_slopes(12, 9, seed=5):
        expected = norm_formula(s.p, s.q)
        assert cs_norm_generic_fiber(s, fig8, seed=3).norm == expected
        assert cs_norm_from_ideal_points(s, points) == expected


def _degree(fig8, p, q, seed=0):
    """Generic-fiber degree of I^2 - 4 for any (p, q), primitive or not."""
    gb = fig8.x0.gb()
    rec, bind = _reduce_on_curve(gb)
    bind(CURVE_RING.var("x"), fig8.boundary.F, fig8.boundary.G)
    I = rec(p, q)
    f = normal_form(I * I - 4, gb)
    if f.is_constant():
        return 0
    rng = random.Random(seed)
    dims = set()
    for _ in range(2):
        c = Fraction(rng.randint(1, 50), rng.randint(1, 7)) + 1
        gens = fig8.curve_gens() + [(f - c).to_ring(COUNT_RING)]
        dims.add(quotient_dimension(buchberger(Ideal(COUNT_RING, gens)))[0])
    assert len(dims) == 1
    return dims.pop()


@pytest.mark.parametrize("p,q,k", [(1, 0, 2), (0, 1, 2), (1, 1, 3), (2, -1, 2)])
def test_norm_scales_with_multiples(fig8, p, q, k):
    assert _degree(fig8, k * p, k * q) == k * _degree(fig8, p, q)


small = st.tuples(st.integers(-3, 3), st.integers(-2, 2)).filter(lambda v: v != (0, 0))


@settings(max_examples=12, deadline=None)
@given(small, small)
def test_norm_triangle_inequality(fig8, g1, g2):
    s = (g1[0] + g2[0], g1[1] + g2[1])
    assert _degree(fig8, *s) <= _degree(fig8, *g1) + _degree(fig8, *g2)


def test_generic_fiber_is_deterministic(fig8):
    a = cs_norm_generic_fiber(S(7, 2), fig8, seed=42)
    b = cs_norm_generic_fiber(S(7, 2), fig8, seed=42)
    assert a == b and len(a.draws) >= 2
    assert all(c not in (0, -4) for c in a.draws)


# -- zero masses ---------------------------------------------------------------------


def test_lambda_hat(fig8):
    lh = lambda_hat(S(2, 1), fig8)
    assert lh.value == 12 and lh.ideal_point_zero_mass == 0
    assert lambda_invariant(S(2, 1), fig8.image) <= lh.value
    assert lambda_invariant(S(2, 1), fig8.image) + lh.ideal_point_zero_mass <= 16
    meridian = lambda_hat(S(1, 0), fig8)
    assert meridian.total_zero_mass == 4 == 2 + 2
    assert lambda_hat(S(-4, 1), fig8).ideal_point_zero_mass == 4


# -- counting characters ---------------------------------------------------------------


def test_count_three_one(fig8):
    X = Ring(("x",))
    r = surgery_character_count(S(3, 1), fig8)
    assert r.eliminant == X.parse("(x^2 + x - 2)*(x^2 - 2*x - 1)^2")
    assert (X.parse("x^2 - 2*x - 1"), 2) in r.factors
    assert (r.points, r.points_at_pm2, r.points_on_reducible_locus, r.survivors) == (5, 2, 0, 3)
    assert str(r.fibers[Fraction(1)]) == "z^2 - 2*z + 1"


def test_count_zero_one(fig8):
    r = surgery_character_count(S(0, 1), fig8)
    assert squarefree_part(r.eliminant) == Ring(("x",)).parse("x*(x^2 - 5)")
    assert r.points == 4


def test_count_one_zero(fig8):
    r = surgery_character_count(S(1, 0), fig8)
    assert str(r.eliminant) == "x - 2"
    assert str(r.fibers[Fraction(2)]) == "z^2 - 5*z + 7"
    with pytest.raises(ValueError):
        surgery_character_count(S(1, 0), fig8, trace_value=3)


# -- reports ---------------------------------------------------------------------------


def test_report_formats(fig8):
    reps = [invariant_report(S(2, 1), fig8), invariant_report(S(4, 1), fig8)]
    tsv = format_reports(reps, "tsv")
    assert tsv.splitlines()[0] == "p\tq\tb\tlambda\tlambda_hat\tnorm\ton_locus"
    assert tsv.splitlines()[1] == "2\t1\t8\t6\t12\t16\t2"
    data = json.loads(format_reports(reps, "json"))
    assert data[1]["b"] == 6 and data[1]["lambda"] == 4
    assert data[0]["diagnostics"]["mode"] == "elimination"
    assert format_reports(reps, "text").startswith("2/1: b=8 lambda=6")
    with pytest.raises(ValueError):
        format_reports(reps, "xml")
    assert format_reports(reps, "json") == format_reports([invariant_report(S(2, 1), fig8), reps[1]], "json")
