"""gcd, resultants, squarefree parts and projective closure over the rationals.

Univariate work in a chosen variable treats the other variables as part of
the coefficient domain, so every routine here is multivariate by recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomial import Polynomial, Ring, RingMismatchError

Coeffs = list[Polynomial]  # index = degree in the main variable


class DivisionError(ArithmeticError):
    pass


def arith(op: str, lhs: Polynomial, rhs) -> Polynomial:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "pow":
        return lhs**rhs
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.derivative(var)


def _check(p: Polynomial, q: Polynomial):
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")


def divmod_poly(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Multivariate division of p by a single divisor under the ring order."""
    _check(p, q)
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = p.ring
    lm, lc = q.leading_monomial(), q.leading_coefficient()
    rest = [(m, c) for m, c in q.items()[1:]]
    key = ring.sort_key
    work = dict(p._terms)
    quot: dict = {}
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        if all(a >= b for a, b in zip(m, lm)):
            t = tuple(a - b for a, b in zip(m, lm))
            f = c / lc
            quot[t] = f
            for mm, cc in rest:
                k = tuple(a + b for a, b in zip(mm, t))
                v = work.get(k, 0) - f * cc
                if v:
                    work[k] = v
                else:
                    work.pop(k, None)
        else:
            rem[m] = c
    return Polynomial._raw(ring, quot), Polynomial._raw(ring, rem)


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise DivisionError(f"{q} does not divide {p}")
    return quot


def divides(q: Polynomial, p: Polynomial) -> bool:
    return divmod_poly(p, q)[1].is_zero()


# -- univariate-in-one-variable helpers ----------------------------------


def _trim(a: Coeffs) -> Coeffs:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _deg(a: Coeffs) -> int:
    return len(a) - 1


def _assemble(a: Coeffs, var: str, ring: Ring) -> Polynomial:
    i = ring.index(var)
    out = {}
    for k, c in enumerate(a):
        for m, v in c._terms.items():
            out[m[:i] + (m[i] + k,) + m[i + 1 :]] = v
    return Polynomial._raw(ring, out)


def _prem(a: Coeffs, b: Coeffs) -> Coeffs:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    a = list(a)
    db = _deg(b)
    lb = b[-1]
    e = _deg(a) - db + 1
    while a and _deg(a) >= db:
        la = a[-1]
        shift = _deg(a) - db
        a = [c * lb for c in a]
        for k, c in enumerate(b):
            a[k + shift] = a[k + shift] - la * c
        a.pop()
        _trim(a)
        e -= 1
    if e > 0:
        f = lb**e
        a = [c * f for c in a]
    return a


def _scale_div(a: Coeffs, d: Polynomial) -> Coeffs:
    if d.is_constant():
        inv = 1 / d.constant_value()
        return [c.scale(inv) for c in a]
    return [exact_divide(c, d) for c in a]


def _content(a: Coeffs) -> Polynomial:
    out = None
    for c in a:
        if c:
            out = c if out is None else gcd(out, c)
            if out.is_constant():
                return out.ring.one()
    return out if out is not None else a[0].ring.zero()


def _normalize(p: Polynomial) -> Polynomial:
    return p.monic() if p else p


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, monic in the ring order (0 if both are 0)."""
    _check(p, q)
    if p.is_zero():
        return _normalize(q)
    if q.is_zero():
        return _normalize(p)
    if p.is_constant() or q.is_constant():
        return p.ring.one()
    ring = p.ring
    var = _main_variable(p, q)
    if p.degree(var) == 0:
        return _normalize(gcd(p, _content(q.coefficients_in(var))))
    if q.degree(var) == 0:
        return _normalize(gcd(q, _content(p.coefficients_in(var))))
    a, b = p.coefficients_in(var), q.coefficients_in(var)
    ca, cb = _content(a), _content(b)
    c = gcd(ca, cb)
    a, b = _scale_div(a, ca), _scale_div(b, cb)
    if _deg(a) < _deg(b):
        a, b = b, a
    g = h = ring.one()
    while True:
        delta = _deg(a) - _deg(b)
        r = _prem(a, b)
        if not r:
            break
        if _deg(r) == 0:
            return _normalize(c)
        a, b = b, _scale_div(r, g * h**delta)
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_divide(g**delta, h ** (delta - 1))
    b = _scale_div(b, _content(b))
    return _normalize(_assemble(b, var, ring) * c)


def _main_variable(p: Polynomial, q: Polynomial) -> str:
    used = set(p.variables()) | set(q.variables())
    # last variable in ring order keeps the coefficient recursion shallow
    for v in reversed(p.ring.variables):
        if v in used:
            return v
    raise ValueError("constant inputs have no main variable")


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant of p and q with respect to var (subresultant algorithm)."""
    _check(p, q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if p.degree(var) <= 0 and q.degree(var) <= 0:
        raise ValueError(f"both inputs are constant in {var}")
    ring = p.ring
    a, b = p.coefficients_in(var), q.coefficients_in(var)
    sign = 1
    if _deg(a) < _deg(b):
        a, b = b, a
        if _deg(a) % 2 and _deg(b) % 2:
            sign = -1
    if _deg(b) == 0:
        return b[0] ** _deg(a) * sign
    g = ring.one()
    h = ring.one()
    while True:
        delta = _deg(a) - _deg(b)
        if _deg(a) % 2 and _deg(b) % 2:
            sign = -sign
        r = _prem(a, b)
        a = b
        if not r:
            return ring.zero()
        b = _scale_div(r, g * h**delta)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_divide(g**delta, h ** (delta - 1))
        if _deg(b) == 0:
            break
    da = _deg(a)
    if da == 0:
        return h * sign
    if da == 1:
        h = b[0]
    else:
        h = exact_divide(b[0] ** da, h ** (da - 1))
    return h * sign


def squarefree_part(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of p, monic."""
    if p.is_zero():
        raise ValueError("squarefree part of zero")
    if p.is_constant():
        return p.ring.one()
    var = _main_variable(p, p)
    coeffs = p.coefficients_in(var)
    cont = _content(coeffs)
    prim = _assemble(_scale_div(coeffs, cont), var, p.ring)
    # every factor of prim involves var, so one derivative gcd suffices
    prim_sqf = exact_divide(prim, gcd(prim, prim.derivative(var)))
    return _normalize(squarefree_part(cont) * prim_sqf)


def squarefree_decomposition(p: Polynomial, var: str | None = None) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm for a univariate polynomial: [(factor, multiplicity)]."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    vars_ = p.variables()
    if var is None:
        if len(vars_) != 1:
            raise ValueError("pass var for multivariate input")
        var = vars_[0]
    out = []
    a = p.monic()
    da = a.derivative(var)
    b = gcd(a, da)
    c = exact_divide(a, b)
    d = exact_divide(da, b) - c.derivative(var)
    k = 1
    while not c.is_constant():
        y = gcd(c, d)
        if not y.is_constant():
            out.append((y, k))
        c = exact_divide(c, y)
        d = exact_divide(d, y) - c.derivative(var)
        k += 1
    return out


def homogenize(p: Polynomial, target: Ring, mapping: dict[str, str], hvar: str) -> Polynomial:
    """Projective closure: send each variable to ``mapping[v]`` and pad with ``hvar``."""
    if p.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    d = p.total_degree()
    hi = target.index(hvar)
    pos = [target.index(mapping[v]) for v in p.ring.variables]
    out = {}
    for m, c in p._terms.items():
        mm = [0] * target.nvars
        for i, e in enumerate(m):
            mm[pos[i]] += e
        mm[hi] += d - sum(m)
        out[tuple(mm)] = c
    return Polynomial._raw(target, out)


def dehomogenize(P: Polynomial, target: Ring, mapping: dict[str, str], hvar: str) -> Polynomial:
    """Inverse of homogenize: set ``hvar`` to 1 and rename back."""
    inverse = {v: k for k, v in mapping.items()}
    bindings = {hvar: 1}
    for v in P.ring.variables:
        if v != hvar:
            bindings[v] = target.var(inverse[v])
    return P.substitute(bindings, target)


def rational_roots(p: Polynomial) -> list[tuple[Fraction, int]]:
    """Rational roots of a univariate polynomial with multiplicities, ascending."""
    vars_ = p.variables()
    if p.is_zero():
        raise ValueError("zero polynomial")
    if not vars_:
        return []
    if len(vars_) != 1:
        raise ValueError("rational_roots expects a univariate polynomial")
    var = vars_[0]
    i = p.ring.index(var)
    roots = []
    for factor, mult in squarefree_decomposition(p, var):
        prim = factor.primitive()
        coeffs = [0] * (prim.degree(var) + 1)
        for m, c in prim._terms.items():
            coeffs[m[i]] = int(c)
        low = next(k for k, c in enumerate(coeffs) if c)
        if low:
            roots.append((Fraction(0), mult))
        coeffs = coeffs[low:]
        a0, an = abs(coeffs[0]), abs(coeffs[-1])
        for num in _divisors(a0):
            for den in _divisors(an):
                for s in (1, -1):
                    r = Fraction(s * num, den)
                    if r.denominator != den:
                        continue
                    if sum(c * r**k for k, c in enumerate(coeffs)) == 0:
                        roots.append((r, mult))
    return sorted(set(roots))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def univariate_coefficients(p: Polynomial, var: str) -> list[Fraction]:
    i = p.ring.index(var)
    out = [Fraction(0)] * (max(p.degree(var), 0) + 1)
    for m, c in p._terms.items():
        if any(e for j, e in enumerate(m) if j != i):
            raise ValueError(f"{p} is not univariate in {var}")
        out[m[i]] = c
    return out


def content_in(p: Polynomial, var: str) -> Polynomial:
    return _content(p.coefficients_in(var))


def lcm_poly(p: Polynomial, q: Polynomial) -> Polynomial:
    return _normalize(exact_divide(p * q, gcd(p, q)))


def product(polys: Sequence[Polynomial], ring: Ring) -> Polynomial:
    out = ring.one()
    for p in polys:
        out = out * p
    return out
