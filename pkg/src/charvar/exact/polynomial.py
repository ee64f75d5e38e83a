"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]

ORDERS = ("lex", "grevlex", "block")


class RingMismatchError(ValueError):
    pass


class PolynomialParseError(ValueError):
    pass


def _revneg(mono: Sequence[int]) -> tuple[int, ...]:
    return tuple(-e for e in reversed(mono))


@dataclass(frozen=True)
class Ring:
    """Ordered variables plus a monomial order.

    ``order`` is ``"lex"``, ``"grevlex"`` or ``"block"``; a block order
    compares the first ``split`` variables by grevlex and breaks ties with
    grevlex on the remaining ones, so the first block is eliminated first.
    """

    variables: tuple[str, ...]
    order: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        if self.order == "block" and not 0 <= self.split <= len(self.variables):
            raise ValueError("block split index out of range")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"variable {name!r} not in ring {self.variables}") from None

    def sort_key(self, mono: Monomial):
        """Tuple key whose natural ordering is the ring's monomial order."""
        if self.order == "lex":
            return mono
        if self.order == "grevlex":
            return (sum(mono),) + _revneg(mono)
        head, tail = mono[: self.split], mono[self.split :]
        return (sum(head),) + _revneg(head) + (sum(tail),) + _revneg(tail)

    def with_order(self, order: str, split: int = 0) -> "Ring":
        return Ring(self.variables, order, split)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        mono = [0] * self.nvars
        mono[self.index(name)] = 1
        return Polynomial(self, {tuple(mono): Fraction(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps: Mapping[str, int], coeff: Scalar = 1) -> "Polynomial":
        mono = [0] * self.nvars
        for name, e in exps.items():
            mono[self.index(name)] = e
        return Polynomial(self, {tuple(mono): Fraction(coeff)})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self):
        extra = f", split={self.split}" if self.order == "block" else ""
        return f"Ring({' '.join(self.variables)}; {self.order}{extra})"


class Polynomial:
    """Immutable sparse polynomial: a map from exponent vectors to nonzero rationals."""

    __slots__ = ("ring", "_terms", "_hash", "_sorted")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Scalar] | None = None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} has wrong length for {ring}")
            if c:
                clean[tuple(mono)] = c if isinstance(c, Fraction) else Fraction(c)
        self._terms = clean
        self._hash = None
        self._sorted = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        # terms already validated: tuple keys, nonzero Fraction values
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        p._sorted = None
        return p

    # -- basic accessors ------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing monomial order."""
        if self._sorted is None:
            key = self.ring.sort_key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return list(self._sorted)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items()[0][0]

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items()[0][1]

    def leading_term(self) -> "Polynomial":
        m, c = self.items()[0]
        return Polynomial._raw(self.ring, {m: c})

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree(self, var: str) -> int:
        if not self._terms:
            return -1
        i = self.ring.index(var)
        return max(m[i] for m in self._terms)

    def min_degree(self, var: str) -> int:
        i = self.ring.index(var)
        return min(m[i] for m in self._terms) if self._terms else 0

    def variables(self) -> tuple[str, ...]:
        """Variables that actually occur, in ring order."""
        used = [False] * self.ring.nvars
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ring.variables, used) if u)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Polynomial) and other.is_constant() and other:
            return self.scale(1 / other.constant_value())
        raise TypeError("use exact_divide for polynomial division")

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, mono: Monomial, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self._terms.items()},
        )

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- normalization -------------------------------------------------

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def content(self) -> Fraction:
        """Positive rational c with self / c primitive over the integers."""
        if not self._terms:
            return Fraction(0)
        nums = [c.numerator for c in self._terms.values()]
        dens = [c.denominator for c in self._terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def primitive(self) -> "Polynomial":
        """Integer-primitive multiple with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self.scale(1 / c)

    # -- calculus and substitution --------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        i = self.ring.index(var)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                mm = m[:i] + (m[i] - 1,) + m[i + 1 :]
                out[mm] = c * m[i]
        return Polynomial._raw(self.ring, out)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a rational point; every occurring variable must be bound."""
        idx = [(self.ring.index(v), Fraction(x)) for v, x in values.items()]
        point = [None] * self.ring.nvars
        for i, x in idx:
            point[i] = x
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    if point[i] is None:
                        raise KeyError(f"unbound variable {self.ring.variables[i]!r}")
                    t *= point[i] ** e
            total += t
        return total

    def substitute(self, bindings: Mapping[str, "Polynomial | Scalar"], target: Ring | None = None) -> "Polynomial":
        """Compose: replace each variable by a polynomial in ``target``.

        Unbound variables are carried over by name when ``target`` has them;
        otherwise a KeyError is raised.
        """
        target = target or self.ring
        images = []
        for v in self.ring.variables:
            if v in bindings:
                b = bindings[v]
                if isinstance(b, Polynomial):
                    if b.ring != target:
                        raise RingMismatchError(f"binding for {v} lives in {b.ring}, expected {target}")
                    images.append(b)
                else:
                    images.append(target.constant(b))
            elif v in target.variables:
                images.append(target.var(v))
            else:
                images.append(None)
        powers: list[dict[int, Polynomial]] = [dict() for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        out = target.zero()
        acc: dict = {}
        for m, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    if images[i] is None:
                        raise KeyError(f"unbound variable {self.ring.variables[i]!r}")
                    term = term * power(i, e)
            for mm, cc in term._terms.items():
                v = acc.get(mm, 0) + cc
                if v:
                    acc[mm] = v
                else:
                    del acc[mm]
        out = Polynomial._raw(target, acc)
        return out

    def to_ring(self, target: Ring) -> "Polynomial":
        """Re-embed in a ring with (a superset of) the occurring variables."""
        if target == self.ring:
            return self
        pos = []
        for v in self.ring.variables:
            pos.append(target.variables.index(v) if v in target.variables else None)
        out = {}
        for m, c in self._terms.items():
            mm = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    if pos[i] is None:
                        raise KeyError(f"variable {self.ring.variables[i]!r} missing from {target}")
                    mm[pos[i]] = e
            out[tuple(mm)] = c
        return Polynomial._raw(target, out)

    def coefficients_in(self, var: str) -> list["Polynomial"]:
        """Coefficients as a univariate polynomial in ``var`` (index = degree)."""
        i = self.ring.index(var)
        d = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(max(d + 1, 0))]
        for m, c in self._terms.items():
            buckets[m[i]][m[:i] + (0,) + m[i + 1 :]] = c
        return [Polynomial._raw(self.ring, b) for b in buckets]

    # -- printing ------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {' '.join(self.ring.variables)})"


def from_coefficients(coeffs: Sequence[Polynomial], var: str, ring: Ring) -> Polynomial:
    x = ring.var(var)
    out = ring.zero()
    for k, c in enumerate(coeffs):
        if c:
            out = out + c * x**k
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    names = p.ring.variables
    # factors inside a monomial are printed alphabetically; terms follow the ring order
    slots = sorted(range(len(names)), key=lambda i: names[i])
    parts = []
    for k, (m, c) in enumerate(p.items()):
        factors = [names[i] if m[i] == 1 else f"{names[i]}^{m[i]}" for i in slots if m[i]]
        mag = abs(c)
        if factors:
            body = "*".join(factors if mag == 1 else [_format_coeff(mag)] + factors)
        else:
            body = _format_coeff(mag)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, tokens, ring):
        self.toks = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            acc = self.term()
            if val == "-":
                acc = -acc
        else:
            acc = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                f = self.factor()
                if val == "*":
                    acc = acc * f
                else:
                    if not f.is_constant() or f.is_zero():
                        raise PolynomialParseError("division only by nonzero constants")
                    acc = acc / f
            else:
                return acc

    def factor(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num":
                raise PolynomialParseError("exponent must be a nonnegative integer literal")
            base = base ** int(v2)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.ring.variables:
                raise PolynomialParseError(f"unknown variable {val!r} for ring {self.ring.variables}")
            return self.ring.var(val)
        if kind == "op" and val == "(":
            e = self.expr()
            k2, v2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise PolynomialParseError("missing ')'")
            return e
        raise PolynomialParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    toks = _tokenize(text)
    if not toks:
        raise PolynomialParseError("empty polynomial")
    parser = _Parser(toks, ring)
    result = parser.expr()
    if parser.i != len(toks):
        raise PolynomialParseError(f"trailing input after token {parser.i}")
    return result


@dataclass(frozen=True)
class ProjectivePoint:
    coordinates: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coordinates)
        if len(coords) != 3:
            raise ValueError("projective plane points have three coordinates")
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("all coordinates zero")
        object.__setattr__(self, "coordinates", tuple(c / lead for c in coords))

    def chart(self) -> int:
        """Index of the first nonzero coordinate (which is 1)."""
        return next(i for i, c in enumerate(self.coordinates) if c)

    def __str__(self):
        return "[" + ":".join(_format_coeff(c) for c in self.coordinates) + "]"


def lcm_denominator(polys: Iterable[Polynomial]) -> int:
    d = 1
    for p in polys:
        for c in p._terms.values():
            d = lcm(d, c.denominator)
    return d
