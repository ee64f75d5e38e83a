"""SL2 trace polynomials of words in the free group on a, b.

Traces are expressed in x = tr(a), y = tr(b), z = tr(ab).  The reduction works
on cyclic words (trace is a class function and tr(w) = tr(w^-1)) using

    tr(gXgY)     = tr(gX) tr(gY) - tr(X Y^-1)
    tr(gX g^-1 Y) = tr(gX) tr(g^-1 Y) - tr(gX Y^-1 g)

The first strictly shortens every word involved; the second only fires on
words of length <= 4 with no repeated letter and produces a word with one.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .exact.polynomial import Polynomial, Ring

TRACE_RING = Ring(("x", "y", "z"), "grevlex")
# lex with z > x puts z^2 first in the figure-eight curve equation
CURVE_RING = Ring(("z", "x"), "lex")
BOUNDARY_RING = Ring(("u", "v", "w"), "grevlex")

_INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}


def _reduce(letters: str) -> str:
    out: list[str] = []
    for ch in letters:
        if out and out[-1] == _INVERSE[ch]:
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word over a, A = a^-1, b, B = b^-1."""

    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - set(_INVERSE)
        if bad:
            raise ValueError(f"word letters must be among a, A, b, B; got {''.join(sorted(bad))!r}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        text = "".join(text.split())
        if text in ("1", "e"):
            text = ""
        return cls(text)

    def inverse(self) -> "FreeWord":
        return FreeWord("".join(_INVERSE[c] for c in reversed(self.letters)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** (-n)
        return FreeWord(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return self.letters or "1"


def _cyclic_reduce(w: str) -> str:
    while len(w) > 1 and w[0] == _INVERSE[w[-1]]:
        w = w[1:-1]
    return w


def _canonical(w: str) -> str:
    w = _cyclic_reduce(_reduce(w))
    if not w:
        return w
    inv = "".join(_INVERSE[c] for c in reversed(w))
    return min(min(s[i:] + s[:i] for i in range(len(s))) for s in (w, inv))


_X, _Y, _Z = TRACE_RING.gens()
_TWO = TRACE_RING.constant(2)

_memo: dict[str, Polynomial] = {}
_memo_lock = threading.Lock()


def _chebyshev(t: Polynomial, k: int) -> Polynomial:
    # tr(g^k) from tr(g)
    prev, cur = _TWO, t
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, t * cur - prev
    return cur


def _base(w: str) -> Polynomial | None:
    if not w:
        return _TWO
    if len(set(w)) == 1:
        t = _X if w[0] in "aA" else _Y
        return _chebyshev(t, len(w))
    if len(w) == 2 and set(w.lower()) == {"a", "b"}:
        mixed = (w[0].isupper()) != (w[1].isupper())
        return _X * _Y - _Z if mixed else _Z
    return None


def _trace(w: str) -> Polynomial:
    w = _canonical(w)
    hit = _memo.get(w)
    if hit is not None:
        return hit
    res = _base(w)
    if res is None:
        res = _split(w)
    with _memo_lock:
        _memo[w] = res
    return res


def _split(w: str) -> Polynomial:
    n = len(w)
    # a repeated letter: rotate so the word reads g X g Y
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] == w[j]:
                r = w[i:] + w[:i]
                k = j - i
                X, Y = r[1:k], r[k + 1 :]
                g = r[0]
                Yinv = "".join(_INVERSE[c] for c in reversed(Y))
                return _trace(g + X) * _trace(g + Y) - _trace(X + Yinv)
    # otherwise some letter meets its inverse: g X g^-1 Y
    for i in range(n):
        for j in range(n):
            if w[j] == _INVERSE[w[i]]:
                r = w[i:] + w[:i]
                k = (j - i) % n
                g, X, Y = r[0], r[1:k], r[k + 1 :]
                Yinv = "".join(_INVERSE[c] for c in reversed(Y))
                return _trace(g + X) * _trace(_INVERSE[g] + Y) - _trace(g + X + Yinv + g)
    raise AssertionError(f"no reduction applies to {w!r}")


def trace_polynomial(w: FreeWord | str) -> Polynomial:
    """tr(rho(w)) as a polynomial in x = tr(a), y = tr(b), z = tr(ab)."""
    letters = w.letters if isinstance(w, FreeWord) else FreeWord.parse(w).letters
    return _trace(letters)


def specialize_conjugate(tp: Polynomial) -> Polynomial:
    """Set y = x (conjugate generators); result lives in the (z, x) curve ring."""
    x = CURVE_RING.var("x")
    z = CURVE_RING.var("z")
    return tp.substitute({"x": x, "y": x, "z": z}, CURVE_RING)


@lru_cache(maxsize=None)
def _commuting(p: int, q: int) -> Polynomial:
    u, v, w = BOUNDARY_RING.gens()
    if p < 0 or (p == 0 and q < 0):
        return _commuting(-p, -q)
    if (p, q) == (0, 0):
        return BOUNDARY_RING.constant(2)
    if (p, q) == (1, 0):
        return u
    if (p, q) == (0, 1):
        return v
    if (p, q) == (1, 1):
        return w
    if (p, q) == (1, -1):
        return u * v - w
    if p == 0:
        return v * _commuting(0, q - 1) - _commuting(0, q - 2)
    if p == 1:
        if q > 1:
            return v * _commuting(1, q - 1) - _commuting(1, q - 2)
        return v * _commuting(1, q + 1) - _commuting(1, q + 2)
    return u * _commuting(p - 1, q) - _commuting(p - 2, q)


def commuting_trace(p: int, q: int) -> Polynomial:
    """P with P(m+1/m, l+1/l, ml+1/(ml)) = m^p l^q + m^-p l^-q.

    Recursion runs in q along p in {0, 1}, then in p.
    """
    return _commuting(int(p), int(q))


def peripheral_word(p: int, q: int, meridian: FreeWord, longitude: FreeWord) -> FreeWord:
    """meridian^p * longitude^q as a reduced word (meridian power first)."""
    if p == 0 and q == 0:
        raise ValueError("(0, 0) is not a peripheral slope")
    if gcd(p, q) != 1:
        raise ValueError(f"slope ({p}, {q}) is not primitive")
    return meridian**p * longitude**q
