"""Buchberger kernel over the integers.

Polynomials are dicts ``{exponent tuple: int}`` kept primitive with a positive
leading coefficient; reduction is fraction-free.  Pairs are chosen by sugar
degree and pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq
import logging
from math import gcd
from typing import Callable, Iterable

log = logging.getLogger(__name__)

IntPoly = dict  # {tuple[int, ...]: int}


def _content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


class _Elem:
    __slots__ = ("lm", "lc", "tail", "poly", "sugar", "deg")

    def __init__(self, poly: IntPoly, order: "_Order", sugar: int):
        ordered = sorted(poly.items(), key=lambda t: order.key(t[0]), reverse=True)
        self.lm, self.lc = ordered[0]
        self.tail = ordered[1:]
        self.poly = poly
        self.sugar = sugar
        self.deg = sum(self.lm)


class _Order:
    """Caches negated sort keys so heapq (a min-heap) pops the largest monomial."""

    def __init__(self, key: Callable):
        self.key = key
        self._neg: dict = {}

    def negkey(self, mono):
        k = self._neg.get(mono)
        if k is None:
            k = tuple(-v for v in self.key(mono))
            self._neg[mono] = k
        return k


class Reducer:
    def __init__(self, order: _Order):
        self.order = order
        self.elems: list[_Elem] = []
        self._hits: dict = {}  # mono -> (index or -1, basis size when checked)

    def add(self, e: _Elem):
        self.elems.append(e)

    def find(self, mono) -> _Elem | None:
        hit = self._hits.get(mono)
        n = len(self.elems)
        start = 0
        if hit is not None:
            idx, seen = hit
            if idx >= 0:
                return self.elems[idx]
            start = seen
        for i in range(start, n):
            if _divides(self.elems[i].lm, mono):
                self._hits[mono] = (i, n)
                return self.elems[i]
        self._hits[mono] = (-1, n)
        return None

    def reduce(self, f: IntPoly, full: bool = True) -> IntPoly:
        """Primitive representative of the normal form of f (up to a positive scalar)."""
        f = dict(f)
        negkey = self.order.negkey
        heap = [(negkey(m), m) for m in f]
        heapq.heapify(heap)
        inheap = set(f)
        r: IntPoly = {}
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            inheap.discard(m)
            c = f.pop(m, 0)
            if not c:
                continue
            g = self.find(m)
            if g is None:
                r[m] = c
                if not full:
                    r.update(f)
                    f = {}
                    break
                continue
            t = tuple(x - y for x, y in zip(m, g.lm))
            a = g.lc
            d = gcd(a, c)
            a //= d
            c //= d
            if a != 1:
                for k in f:
                    f[k] *= a
                for k in r:
                    r[k] *= a
            for gm, gc in g.tail:
                mm = tuple(x + y for x, y in zip(gm, t))
                v = f.get(mm, 0) - c * gc
                if v:
                    if mm not in f and mm not in inheap:
                        heapq.heappush(heap, (negkey(mm), mm))
                        inheap.add(mm)
                    f[mm] = v
                else:
                    f.pop(mm, None)
            steps += 1
            if a != 1 and steps % 16 == 0:
                cont = _content(list(f.values()) + list(r.values()))
                if cont > 1:
                    for k in f:
                        f[k] //= cont
                    for k in r:
                        r[k] //= cont
        return _primitive(r, self.order)


def _primitive(p: IntPoly, order: _Order) -> IntPoly:
    if not p:
        return p
    cont = _content(p.values())
    lead = max(p, key=order.key)
    if p[lead] < 0:
        cont = -cont
    if cont == 1:
        return p
    return {m: c // cont for m, c in p.items()}


def _spoly(f: _Elem, g: _Elem) -> IntPoly:
    L = _lcm(f.lm, g.lm)
    tf = tuple(x - y for x, y in zip(L, f.lm))
    tg = tuple(x - y for x, y in zip(L, g.lm))
    d = gcd(f.lc, g.lc)
    af, ag = g.lc // d, f.lc // d
    out: IntPoly = {}
    for m, c in f.tail:
        mm = tuple(x + y for x, y in zip(m, tf))
        out[mm] = out.get(mm, 0) + af * c
    for m, c in g.tail:
        mm = tuple(x + y for x, y in zip(m, tg))
        v = out.get(mm, 0) - ag * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


class Stats:
    def __init__(self):
        self.pairs = 0
        self.reductions_to_zero = 0
        self.basis_size = 0


def groebner(polys: list[IntPoly], key: Callable, stats: Stats | None = None) -> list[IntPoly]:
    """Reduced Groebner basis (primitive, positive leading coefficients), sorted by leading monomial."""
    order = _Order(key)
    stats = stats or Stats()
    inputs = [_primitive(p, order) for p in polys if p]
    if not inputs:
        return []
    inputs.sort(key=lambda p: (max(key(m) for m in p), len(p)))
    red = Reducer(order)
    active: list[int] = []
    pairs: list = []  # heap of (sugar, lcm key, i, j)
    pair_set: dict = {}  # (i, j) -> lcm, live pairs

    def update(h_idx: int):
        h = red.elems[h_idx]
        # Gebauer-Moeller: new pairs (h, g) for g in active
        cand = []
        for g_idx in active:
            g = red.elems[g_idx]
            cand.append((g_idx, _lcm(h.lm, g.lm), _coprime(h.lm, g.lm)))
        kept = []
        for n, (gi, L, cop) in enumerate(cand):
            if cop:
                kept.append((gi, L, cop))
                continue
            redundant = False
            for m2, (gj, L2, cop2) in enumerate(cand):
                if m2 != n and _divides(L2, L) and (L2 != L or m2 < n):
                    redundant = True
                    break
            if not redundant:
                kept.append((gi, L, cop))
        # drop old pairs whose lcm is strictly divisible by lm(h)
        for (i, j), L in list(pair_set.items()):
            if _divides(h.lm, L):
                Li = _lcm(red.elems[i].lm, h.lm)
                Lj = _lcm(red.elems[j].lm, h.lm)
                if Li != L and Lj != L:
                    del pair_set[(i, j)]
        for gi, L, cop in kept:
            if cop:
                continue  # product criterion
            g = red.elems[gi]
            s = max(h.sugar + sum(L) - h.deg, g.sugar + sum(L) - g.deg)
            pair_set[(gi, h_idx)] = L
            heapq.heappush(pairs, (s, key(L), gi, h_idx))
        # new basis: drop elements whose leading monomial is a multiple of lm(h)
        active[:] = [i for i in active if not _divides(h.lm, red.elems[i].lm)] + [h_idx]

    for p in inputs:
        r = red.reduce(p)
        if r:
            e = _Elem(r, order, max(sum(m) for m in p))
            red.add(e)
            update(len(red.elems) - 1)

    while pairs:
        s, _, i, j = heapq.heappop(pairs)
        if (i, j) not in pair_set:
            continue
        del pair_set[(i, j)]
        stats.pairs += 1
        sp = _spoly(red.elems[i], red.elems[j])
        r = red.reduce(sp) if sp else {}
        if not r:
            stats.reductions_to_zero += 1
            continue
        e = _Elem(r, order, s)
        red.add(e)
        update(len(red.elems) - 1)
        if len(e.poly) == 1 and not any(e.lm):
            break  # unit ideal

    basis = [red.elems[i] for i in active]
    if any(not any(e.lm) for e in basis):
        return [{tuple(0 for _ in basis[0].lm): 1}]
    # minimal basis, then interreduce tails
    basis.sort(key=lambda e: key(e.lm))
    minimal: list[_Elem] = []
    for e in basis:
        if not any(_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    out = []
    for e in minimal:
        others = Reducer(order)
        for o in minimal:
            if o is not e:
                others.add(o)
        # lm(e) is irreducible by the others, so reducing the whole polynomial
        # only touches the tail
        out.append(others.reduce(e.poly))
    stats.basis_size = len(out)
    return out


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def normal_form(f: IntPoly, basis: list[IntPoly], key: Callable) -> IntPoly:
    order = _Order(key)
    red = Reducer(order)
    for g in basis:
        red.add(_Elem(g, order, 0))
    return red.reduce(f)
