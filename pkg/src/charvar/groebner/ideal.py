"""Ideals, reduced Groebner bases and the operations built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ..exact.algorithms import squarefree_part
from ..exact.polynomial import Monomial, Polynomial, Ring, RingMismatchError
from . import engine


class NotZeroDimensionalError(ValueError):
    pass


def _to_int(p: Polynomial) -> dict:
    den = lcm(*(c.denominator for c in p._terms.values())) if p._terms else 1
    return {m: int(c * den) for m, c in p._terms.items()}


def _from_int(ring: Ring, d: dict) -> Polynomial:
    if not d:
        return ring.zero()
    lead = max(d, key=ring.sort_key)
    lc = d[lead]
    return Polynomial._raw(ring, {m: Fraction(c, lc) for m, c in d.items()})


class Ideal:
    """Generators in a common ring; zero generators are dropped."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} lives in {g.ring}, expected {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.generators))}])"

    def groebner(self) -> "GroebnerBasis":
        return buchberger(self)

    def is_unit(self) -> bool:
        return buchberger(self).is_unit()


@dataclass(frozen=True)
class GroebnerBasis:
    ring: Ring
    elements: tuple[Polynomial, ...]
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial() for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "\n".join(str(g) for g in self.elements)


@dataclass(frozen=True)
class Staircase:
    """Standard monomials: those outside the leading-term ideal."""

    ring: Ring
    monomials: tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)


def buchberger(ideal: Ideal, check: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis; elements monic and sorted by leading monomial."""
    ring = ideal.ring
    stats = engine.Stats()
    basis = engine.groebner([_to_int(g) for g in ideal.generators], ring.sort_key, stats)
    elems = tuple(_from_int(ring, b) for b in basis)
    elems = tuple(sorted(elems, key=lambda g: ring.sort_key(g.leading_monomial())))
    gb = GroebnerBasis(ring, elems, {"pairs": stats.pairs, "zero_reductions": stats.reductions_to_zero})
    if check:
        verify_groebner(gb, ideal)
    return gb


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    L = tuple(max(a, b) for a, b in zip(lf, lg))
    tf = tuple(a - b for a, b in zip(L, lf))
    tg = tuple(a - b for a, b in zip(L, lg))
    return f.mul_monomial(tf, 1 / f.leading_coefficient()) - g.mul_monomial(tg, 1 / g.leading_coefficient())


def verify_groebner(gb: GroebnerBasis, ideal: Ideal | None = None) -> None:
    """Assert the Buchberger criterion, reducedness and (optionally) input membership."""
    elems = gb.elements
    for i, f in enumerate(elems):
        for g in elems[i + 1 :]:
            if normal_form(s_polynomial(f, g), gb):
                raise AssertionError(f"S-polynomial of {f} and {g} does not reduce to 0")
    lms = gb.leading_monomials
    for i, g in enumerate(elems):
        if g.leading_coefficient() != 1:
            raise AssertionError(f"{g} is not monic")
        for j, lm in enumerate(lms):
            if i != j and any(all(a >= b for a, b in zip(m, lm)) for m in g._terms):
                raise AssertionError(f"{g} is not reduced against element {j}")
    if ideal is not None:
        for p in ideal.generators:
            if normal_form(p, gb):
                raise AssertionError(f"generator {p} does not reduce to 0")


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of p on division by gb (unique because gb is a Groebner basis)."""
    if p.ring != gb.ring:
        raise RingMismatchError(f"{p.ring} vs {gb.ring}")
    ring = p.ring
    lead = [(g.leading_monomial(), g) for g in gb.elements]
    work = dict(p._terms)
    out = {}
    key = ring.sort_key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, g in lead:
            if all(a >= b for a, b in zip(m, lm)):
                t = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g._terms.items():
                    if gm == lm:
                        continue
                    mm = tuple(a + b for a, b in zip(gm, t))
                    v = work.get(mm, 0) - c * gc
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            out[m] = c
    return Polynomial._raw(ring, out)


def ideal_membership(p: Polynomial, ideal: Ideal | GroebnerBasis) -> bool:
    gb = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal)
    return not normal_form(p, gb)


def _eliminate_gb(ideal: Ideal, drop: Sequence[str]) -> tuple[GroebnerBasis, Ring]:
    ring = ideal.ring
    drop = list(dict.fromkeys(drop))
    for v in drop:
        ring.index(v)
    keep = [v for v in ring.variables if v not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    block = Ring(tuple(drop) + tuple(keep), "block", len(drop))
    gb = buchberger(Ideal(block, [g.to_ring(block) for g in ideal.generators]))
    sub = Ring(tuple(keep), ring.order if ring.order != "block" else "grevlex")
    return gb, sub


def elimination_ideal(ideal: Ideal, drop: Iterable[str]) -> Ideal:
    """ideal intersected with the subring of the remaining variables (order kept)."""
    drop = list(drop)
    gb, sub = _eliminate_gb(ideal, drop)
    nd = len(set(drop))
    gens = [g.to_ring(sub) for g in gb.elements if not any(g.leading_monomial()[:nd])]
    return Ideal(sub, gens)


def saturation(ideal: Ideal, f: Polynomial, tvar: str = "T_sat") -> Ideal:
    """(ideal : f^oo) by adjoining T*f - 1 and eliminating T."""
    if not f:
        raise ValueError("saturation by the zero polynomial")
    ring = ideal.ring
    if tvar in ring.variables:
        raise ValueError(f"auxiliary variable {tvar} clashes with the ring")
    big = Ring((tvar,) + ring.variables, "grevlex")
    T = big.var(tvar)
    gens = [g.to_ring(big) for g in ideal.generators] + [T * f.to_ring(big) - 1]
    out = elimination_ideal(Ideal(big, gens), [tvar])
    return Ideal(ring, [g.to_ring(ring) for g in out.generators])


def _pure_powers(gb: GroebnerBasis) -> list[int | None]:
    n = gb.ring.nvars
    bounds: list[int | None] = [None] * n
    for lm in gb.leading_monomials:
        nz = [i for i, e in enumerate(lm) if e]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
        elif not nz:
            return [0] * n
    return bounds


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials.

    The unit ideal counts as zero-dimensional (its variety is empty).
    """
    return all(b is not None for b in _pure_powers(gb))


def staircase(gb: GroebnerBasis) -> Staircase:
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError("ideal is not zero-dimensional")
    ring = gb.ring
    if gb.is_unit():
        return Staircase(ring, ())
    lms = gb.leading_monomials
    start = (0,) * ring.nvars
    seen = {start}
    todo = deque([start])
    while todo:
        m = todo.popleft()
        for i in range(ring.nvars):
            mm = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if mm in seen:
                continue
            if any(all(a >= b for a, b in zip(mm, lm)) for lm in lms):
                continue
            seen.add(mm)
            todo.append(mm)
    return Staircase(ring, tuple(sorted(seen, key=ring.sort_key)))


def quotient_dimension(gb: GroebnerBasis) -> tuple[int, Staircase]:
    """Dimension over Q of the quotient ring, with its monomial basis."""
    st = staircase(gb)
    return len(st), st


def univariate_eliminant(gb: GroebnerBasis, var: str) -> Polynomial:
    """Monic generator of ideal ∩ Q[var] for a zero-dimensional ideal.

    Found as the first linear dependency among normal forms of 1, var, var^2, ...
    """
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError("ideal is not zero-dimensional")
    ring = gb.ring
    if gb.is_unit():
        return ring.one()
    x = ring.var(var)
    # rows of (normal form vector, combination vector), kept in echelon form
    pivots: dict = {}
    power = ring.one()
    k = 0
    while True:
        nf = normal_form(power, gb)
        vec = dict(nf._terms)
        comb = {k: Fraction(1)}
        for piv, (pvec, pcomb) in pivots.items():
            c = vec.get(piv)
            if c:
                for mm, cc in pvec.items():
                    v = vec.get(mm, 0) - c * cc
                    if v:
                        vec[mm] = v
                    else:
                        vec.pop(mm, None)
                for j, cc in pcomb.items():
                    v = comb.get(j, 0) - c * cc
                    if v:
                        comb[j] = v
                    else:
                        comb.pop(j, None)
        if not vec:
            terms = {}
            i = ring.index(var)
            for j, c in comb.items():
                mono = [0] * ring.nvars
                mono[i] = j
                terms[tuple(mono)] = c
            return Polynomial(ring, terms).monic()
        piv = max(vec, key=ring.sort_key)
        inv = 1 / vec[piv]
        vec = {m: c * inv for m, c in vec.items()}
        comb = {j: c * inv for j, c in comb.items()}
        # keep existing rows reduced against the new pivot so the echelon stays consistent
        for opiv, (ovec, ocomb) in pivots.items():
            c = ovec.get(piv)
            if c:
                for mm, cc in vec.items():
                    v = ovec.get(mm, 0) - c * cc
                    if v:
                        ovec[mm] = v
                    else:
                        ovec.pop(mm, None)
                for j, cc in comb.items():
                    v = ocomb.get(j, 0) - c * cc
                    if v:
                        ocomb[j] = v
                    else:
                        ocomb.pop(j, None)
        pivots[piv] = (vec, comb)
        power = power * x
        k += 1


def radical_zero_dimensional(ideal: Ideal | GroebnerBasis) -> GroebnerBasis:
    """Radical of a zero-dimensional ideal: adjoin squarefree parts of the eliminants."""
    gb = ideal if isinstance(ideal, GroebnerBasis) else buchberger(ideal)
    extra = []
    for v in gb.ring.variables:
        e = univariate_eliminant(gb, v)
        s = squarefree_part(e) if not e.is_constant() else e
        if s != e:
            extra.append(s)
    if not extra:
        return gb
    return buchberger(Ideal(gb.ring, list(gb.elements) + extra))


# -- ideal files ------------------------------------------------------------


def parse_ideal(text: str, order: str = "grevlex") -> Ideal:
    """Read the ``ring: x z`` header followed by one generator per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("ring:"):
        raise ValueError("ideal file must start with a 'ring: <variables>' line")
    names = tuple(lines[0][len("ring:") :].split())
    if not names:
        raise ValueError("ring header names no variables")
    ring = Ring(names, order)
    return Ideal(ring, [ring.parse(ln) for ln in lines[1:]])


def format_ideal(ideal: Ideal | GroebnerBasis) -> str:
    gens = ideal.elements if isinstance(ideal, GroebnerBasis) else ideal.generators
    lines = ["ring: " + " ".join(ideal.ring.variables)]
    lines += [str(g) for g in gens]
    return "\n".join(lines) + "\n"
