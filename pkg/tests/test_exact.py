from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.exact.algorithms import (
    arith,
    dehomogenize,
    divides,
    divmod_poly,
    gcd,
    homogenize,
    partial_derivative,
    rational_roots,
    resultant,
    squarefree_decomposition,
    squarefree_part,
)
from charvar.exact.polynomial import (
    Polynomial,
    PolynomialParseError,
    ProjectivePoint,
    Ring,
    RingMismatchError,
    format_polynomial,
)

XZ = Ring(("z", "x"), "lex")
XY = Ring(("x", "y"), "grevlex")
PROJ = Ring(("X", "Y", "Z"))
X1 = Ring(("x",))
CURVE = "z^2 - (1 + x^2)*z + 2*x^2 - 1"


def small_poly(ring, max_terms=5, max_exp=3):
    n = ring.nvars
    mono = st.tuples(*[st.integers(0, max_exp)] * n)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def test_product_of_conjugates():
    x = X1.var("x")
    assert arith("mul", x + 1, x - 1) == X1.parse("x^2 - 1")


def test_curve_assembled_from_monomials():
    z, x = XZ.gens()
    built = z**2 - (1 + x**2) * z + 2 * x**2 - 1
    assert built == XZ.parse(CURVE)
    assert str(built) == "z^2 - x^2*z - z + 2*x^2 - 1"


@settings(max_examples=50, deadline=None)
@given(small_poly(XY))
def test_adding_zero(p):
    assert p + XY.zero() == p


def test_arith_errors():
    with pytest.raises(RingMismatchError):
        XY.var("x") + XZ.var("x")
    with pytest.raises(ValueError):
        arith("pow", XY.var("x"), -1)


def test_no_zero_coefficients_stored():
    p = XY.parse("x + y") - XY.parse("x")
    assert p.terms == {(0, 1): Fraction(1)}
    assert Polynomial(XY, {(1, 0): 0}).is_zero()


def test_substitute():
    R = Ring(("x", "z"))
    T = Ring(("y",))
    y = T.var("y")
    assert R.parse("x + z").substitute({"x": y, "z": y}, T) == T.parse("2*y")
    assert XZ.parse(CURVE).substitute({"x": 1, "z": 1}, Ring(("y",))).is_zero()
    with pytest.raises(KeyError):
        R.parse("x + z").substitute({"x": y}, T)


def test_substitute_diagonal_form():
    # u = m + 1/m cleared: u*m = m^2 + 1
    R = Ring(("m", "u"))
    m, u = R.gens()
    rel = u * m - m**2 - 1
    assert rel.substitute({"u": m + 1, "m": m}, R) == R.parse("m - 1") * 1


def test_homogenize_examples():
    hm = {"x": "X", "z": "Z"}
    cubic = homogenize(XZ.parse(CURVE), PROJ, hm, "Y")
    assert cubic == PROJ.parse("Y*Z^2 - Y^2*Z - X^2*Z + 2*X^2*Y - Y^3")
    assert homogenize(XZ.parse("x"), PROJ, hm, "Y") == PROJ.parse("X")
    assert homogenize(XZ.parse("z - x^2"), PROJ, hm, "Y") == PROJ.parse("Z*Y - X^2")
    with pytest.raises(ValueError):
        homogenize(XZ.zero(), PROJ, hm, "Y")


@settings(max_examples=100, deadline=None)
@given(small_poly(XZ, max_terms=6, max_exp=4))
def test_homogenize_round_trip(p):
    if p.is_zero():
        return
    hm = {"x": "X", "z": "Z"}
    P = homogenize(p, PROJ, hm, "Y")
    assert P.is_homogeneous()
    assert P.total_degree() == p.total_degree()
    assert dehomogenize(P, XZ, hm, "Y") == p


def test_gcd_examples():
    assert gcd(X1.parse("x^2 - 1"), X1.parse("x^2 - 2*x + 1")) == X1.parse("x - 1")
    f = X1.parse("(x^2 - 2*x - 1)^2")
    assert gcd(f, partial_derivative(f, "x")) == X1.parse("x^2 - 2*x - 1")
    assert gcd(X1.parse("3*x + 6"), X1.zero()) == X1.parse("x + 2")


def test_gcd_multivariate_with_content():
    a = XY.parse("(x + y)^2 * (x - 1)")
    b = XY.parse("(x + y) * (y + 3) * (x - 1)")
    assert gcd(a, b) == XY.parse("(x + y)*(x - 1)").monic()


@settings(max_examples=60, deadline=None)
@given(small_poly(XY, 4, 2), small_poly(XY, 4, 2), small_poly(XY, 3, 2))
def test_gcd_divides_both(p, q, c):
    p, q = p * c, q * c
    g = gcd(p, q)
    if p.is_zero() and q.is_zero():
        assert g.is_zero()
        return
    assert divmod_poly(p, g)[1].is_zero()
    assert divmod_poly(q, g)[1].is_zero()
    if not c.is_zero() and not p.is_zero() and not q.is_zero():
        assert divides(c.monic(), g) or c.is_constant()


def test_squarefree_examples():
    assert squarefree_part(X1.parse("(x^2 - 2*x - 1)^2")) == X1.parse("x^2 - 2*x - 1")
    assert squarefree_part(X1.parse("x^2 - 5")) == X1.parse("x^2 - 5")
    assert squarefree_part(X1.parse("(x - 1)^3*(x + 1)")) == X1.parse("(x - 1)*(x + 1)")
    with pytest.raises(ValueError):
        squarefree_part(X1.zero())


def test_squarefree_factor_free_of_main_variable():
    # y^2 does not involve x, so a derivative in x alone would miss it
    p = XY.parse("y^2 * (x + 1)")
    assert squarefree_part(p) == XY.parse("y*(x + 1)").monic()


def test_squarefree_decomposition():
    f = X1.parse("(x - 1)^3 * (x + 2)^2 * (x^2 + 1)")
    got = squarefree_decomposition(f)
    assert got == [(X1.parse("x^2 + 1"), 1), (X1.parse("x + 2"), 2), (X1.parse("x - 1"), 3)]


def test_rational_roots():
    f = X1.parse("x^2 * (x - 1/2) * (x^2 - 5) * (3*x + 2)^2")
    assert rational_roots(f) == [(Fraction(-2, 3), 2), (Fraction(0), 2), (Fraction(1, 2), 1)]


def test_resultant_examples():
    R = Ring(("x", "a", "b"))
    assert resultant(R.parse("x - a"), R.parse("x - b"), "x") == R.parse("a - b")
    r = resultant(XZ.parse(CURVE), XZ.parse("z - 3"), "z")
    assert r == XZ.parse("5 - x^2")
    with pytest.raises(ValueError):
        resultant(R.parse("a"), R.parse("b"), "x")


def _sylvester_det(f, g):
    # dense Sylvester matrix determinant by fraction-exact elimination
    fc = [f.coefficient((i,)) for i in range(f.degree("x") + 1)][::-1]
    gc = [g.coefficient((i,)) for i in range(g.degree("x") + 1)][::-1]
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        for r in range(c + 1, size):
            f_ = rows[r][c] / rows[c][c]
            if f_:
                rows[r] = [a - f_ * b for a, b in zip(rows[r], rows[c])]
    return det


roots = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@settings(max_examples=80, deadline=None)
@given(roots, roots, st.integers(1, 3))
def test_resultant_vanishes_iff_common_root(ra, rb, lead):
    x = X1.var("x")
    f = X1.constant(lead)
    for r in ra:
        f = f * (x - r)
    g = X1.one()
    for r in rb:
        g = g * (x - r)
    res = resultant(f, g, "x")
    assert res.is_constant()
    assert (res.constant_value() == 0) == bool(set(ra) & set(rb))
    assert (res.constant_value() == 0) == (gcd(f, g).degree("x") > 0)
    assert res.constant_value() == _sylvester_det(f, g)


def test_partial_derivatives():
    f = XZ.parse(CURVE)
    assert partial_derivative(f, "x") == XZ.parse("-2*x*z + 4*x")
    assert partial_derivative(f, "z") == XZ.parse("2*z - 1 - x^2")
    assert partial_derivative(XZ.constant(7), "x").is_zero()


R3 = Ring(("x", "y", "z"))


@settings(max_examples=200, deadline=None)
@given(small_poly(R3, 4, 2), small_poly(R3, 4, 2), small_poly(R3, 4, 2))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


def test_parse_and_print_round_trip():
    for text in ["z^2 - x^2*z - z + 2*x^2 - 1", "-1/2*x^3 + 7", "0", "x*z"]:
        p = XZ.parse(text)
        assert XZ.parse(str(p)) == p
    assert str(XZ.parse("x**2 * 3")) == "3*x^2"
    with pytest.raises(PolynomialParseError):
        XZ.parse("x +* z")
    with pytest.raises(PolynomialParseError):
        XZ.parse("q + 1")


def test_print_follows_ring_order():
    assert format_polynomial(Ring(("x", "y", "z")).parse("z^2 + x*y + 1")) == "x*y + z^2 + 1"


def test_projective_point_canonical():
    assert ProjectivePoint((0, 3, 6)) == ProjectivePoint((0, 1, 2))
    assert str(ProjectivePoint((2, 0, 0))) == "[1:0:0]"
    with pytest.raises(ValueError):
        ProjectivePoint((0, 0, 0))


def test_rings_validate():
    with pytest.raises(ValueError):
        Ring(("x", "x"))
    with pytest.raises(ValueError):
        Ring(("x", "y"), "block", 3)
    with pytest.raises(ValueError):
        Ring(("x",), "weird")
