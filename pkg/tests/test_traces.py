from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charvar.exact.polynomial import Ring
from charvar.groebner import Ideal, buchberger, normal_form
from charvar.traces import (
    BOUNDARY_RING,
    CURVE_RING,
    TRACE_RING,
    FreeWord,
    commuting_trace,
    peripheral_word,
    specialize_conjugate,
    trace_polynomial,
)

FIG8_LONGITUDE = FreeWord("BabAAbaB")


def T(text):
    return TRACE_RING.parse(text)


def C(text):
    return CURVE_RING.parse(text)


def U(text):
    return BOUNDARY_RING.parse(text)


def test_free_word_reduction():
    assert str(FreeWord("aAbBa")) == "a"
    assert str(FreeWord("")) == "1"
    assert FreeWord.parse("1") == FreeWord("")
    assert FreeWord("ab").inverse() == FreeWord("BA")
    assert FreeWord("ab") ** -2 == FreeWord("BABA")
    with pytest.raises(ValueError):
        FreeWord("abc")


def test_trace_examples():
    assert trace_polynomial("a") == T("x")
    assert trace_polynomial("") == T("2")
    assert trace_polynomial("aB") == T("x*y - z")
    assert trace_polynomial("aba") == trace_polynomial("aab")
    assert trace_polynomial("aBAb") == T("x^2 + y^2 + z^2 - x*y*z - 2")
    assert trace_polynomial("abAB") == T("x^2 + y^2 + z^2 - x*y*z - 2")


def test_conjugate_specializations():
    assert specialize_conjugate(trace_polynomial("BabA")) == C("z^2 - x^2*z + 2*x^2 - 2")
    assert specialize_conjugate(trace_polynomial("bAAb")) == C("x^4 - z*x^2 - 2*x^2 + 2")
    assert specialize_conjugate(trace_polynomial("aab")) == C("x*z - x")
    assert specialize_conjugate(T("x*y - z")) == C("x^2 - z")
    assert specialize_conjugate(T("y")) == C("x")
    assert specialize_conjugate(T("x^2 + y^2 + z^2 - x*y*z - 2")) == C("2*x^2 + z^2 - x^2*z - 2")


def test_commuting_trace_examples():
    assert commuting_trace(1, 0) == U("u")
    assert commuting_trace(0, 1) == U("v")
    assert commuting_trace(1, 1) == U("w")
    assert commuting_trace(2, 1) == U("u*w - v")
    assert commuting_trace(3, 1) == U("(u^2 - 1)*w - u*v")
    assert commuting_trace(2, 0) == U("u^2 - 2")
    assert commuting_trace(-1, 1) == U("u*v - w")
    assert commuting_trace(0, 0) == U("2")


def test_peripheral_word_examples():
    a = FreeWord("a")
    assert peripheral_word(1, 0, a, FIG8_LONGITUDE) == a
    assert peripheral_word(3, 1, a, FIG8_LONGITUDE) == FreeWord("aaa" + "BabAAbaB")
    assert peripheral_word(0, 1, a, FIG8_LONGITUDE) == FIG8_LONGITUDE
    with pytest.raises(ValueError):
        peripheral_word(0, 0, a, FIG8_LONGITUDE)
    with pytest.raises(ValueError):
        peripheral_word(2, 4, a, FIG8_LONGITUDE)


# -- exact matrix oracle -------------------------------------------------------------


def _mat(letter, s, r, t):
    A = ((s, Fraction(1)), (Fraction(0), 1 / s))
    B = ((r, Fraction(0)), (t, 1 / r))
    inv = lambda M: ((M[1][1], -M[0][1]), (-M[1][0], M[0][0]))  # noqa: E731
    return {"a": A, "A": inv(A), "b": B, "B": inv(B)}[letter]


def _mul(P, Q):
    return tuple(tuple(sum(P[i][k] * Q[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _matrix_trace(word, s, r, t):
    M = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for c in word:
        M = _mul(M, _mat(c, s, r, t))
    return M[0][0] + M[1][1]


nonzero = st.fractions(min_value=-7, max_value=7, max_denominator=5).filter(lambda v: v != 0)
words = st.text(alphabet="aAbB", min_size=0, max_size=12)


@settings(max_examples=200, deadline=None)
@given(words, nonzero, nonzero, st.fractions(min_value=-7, max_value=7, max_denominator=5))
def test_trace_matches_matrix_products(word, s, r, t):
    vals = {"x": s + 1 / s, "y": r + 1 / r, "z": s * r + t + 1 / (s * r)}
    assert trace_polynomial(word).evaluate(vals) == _matrix_trace(word, s, r, t)


@settings(max_examples=60, deadline=None)
@given(words, st.integers(0, 12))
def test_fricke_symmetries(word, k):
    w = FreeWord(word)
    tp = trace_polynomial(w)
    assert trace_polynomial(w.inverse()) == tp
    if word:
        k %= len(word)
        assert trace_polynomial(word[k:] + word[:k]) == tp
    assert tp.total_degree() <= len(w)


def test_trace_of_relator_like_words_is_well_defined():
    # conjugating by any word leaves the trace unchanged
    w = FreeWord("abAAb")
    g = FreeWord("bab")
    assert trace_polynomial(g * w * g.inverse()) == trace_polynomial(w)


# -- P_{p,q} ---------------------------------------------------------------------------

LAURENT = Ring(("m", "l"))


def _laurent_check(p, q):
    """Clear denominators: P(m+1/m, l+1/l, ml+1/(ml)) * (m l)^D == (m^p l^q + m^-p l^-q) * (m l)^D."""
    P = commuting_trace(p, q)
    m, l = LAURENT.gens()
    D = max(P.total_degree(), abs(p), abs(q)) + 1
    lhs = LAURENT.zero()
    for (a, b, c), coeff in P.items():
        term = (m**2 + 1) ** a * (l**2 + 1) ** b * (m**2 * l**2 + 1) ** c
        term = term.mul_monomial((D - a - c, D - b - c)) * coeff
        lhs = lhs + term
    rhs = LAURENT.monomial({"m": D + p, "l": D + q}) + LAURENT.monomial({"m": D - p, "l": D - q})
    return lhs == rhs


def test_laurent_identity_small_box():
    bad = [(p, q) for p in range(-8, 9) for q in range(-8, 9) if not _laurent_check(p, q)]
    assert bad == []


def test_commuting_trace_symmetric():
    for p in range(-5, 6):
        for q in range(-5, 6):
            assert commuting_trace(p, q) == commuting_trace(-p, -q)


def test_doubling_on_torus():
    # P_{2p,2q} = P_{p,q}^2 - 2 on the character variety of the torus
    torus = buchberger(Ideal(BOUNDARY_RING, [U("u^2 + v^2 + w^2 - u*v*w - 4")]))
    for p, q in [(1, 0), (2, 1), (3, 1), (-1, 2), (7, 2), (-9, 4)]:
        diff = commuting_trace(2 * p, 2 * q) - (commuting_trace(p, q) ** 2 - 2)
        assert normal_form(diff, torus).is_zero()


def test_p_squared_minus_four_is_a_square_of_a_laurent_form():
    # on diagonal points P^2 - 4 = (m^p l^q - m^-p l^-q)^2
    for m in (Fraction(2), Fraction(-3, 5)):
        for l in (Fraction(7, 3), Fraction(1, 4)):
            vals = {"u": m + 1 / m, "v": l + 1 / l, "w": m * l + 1 / (m * l)}
            for p, q in [(2, 1), (7, 2), (-9, 4)]:
                P = commuting_trace(p, q).evaluate(vals)
                mono = m**p * l**q
                assert P * P - 4 == (mono - 1 / mono) ** 2
