"""Surgery invariants b, lambda, lambda-hat and Culler-Shalen norms.

All counts are dimensions over Q of quotient rings, so conjugate algebraic
points are counted without ever being written down.
"""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .character_variety import (
    PROJECTIVE_RING,
    BoundaryData,
    CharacterCurve,
    IdealPoint,
    KnotPresentation,
    boundary_image_ideal,
    character_ideal,
    characters_at_meridian_trace,
    projective_closure,
    projective_closure_and_ideal_points,
    reducible_character_locus,
    restriction_map,
    smoothness_check,
    split_components,
    torus_surface,
)
from .exact.algorithms import homogenize, rational_roots, squarefree_decomposition
from .exact.polynomial import Polynomial, ProjectivePoint, Ring
from .groebner import (
    GroebnerBasis,
    Ideal,
    NotZeroDimensionalError,
    buchberger,
    elimination_ideal,
    is_zero_dimensional,
    normal_form,
    quotient_dimension,
    radical_zero_dimensional,
    saturation,
    univariate_eliminant,
)
from .traces import BOUNDARY_RING, CURVE_RING, commuting_trace

log = logging.getLogger(__name__)

MODES = ("elimination", "trace", "invariant")
# (x, z) grevlex: same quotient dimensions as the lex curve ring, cheaper bases
COUNT_RING = Ring(("x", "z"), "grevlex")


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SurgerySlope:
    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise SurgeryError("slope (0, 0) is not allowed")
        if gcd(self.p, self.q) != 1:
            raise SurgeryError(f"slope {self.p}/{self.q} is not coprime")

    @classmethod
    def parse(cls, text: str) -> "SurgerySlope":
        text = text.strip()
        try:
            if "/" in text:
                a, b = text.split("/")
            else:
                a, b = text.replace(",", " ").split()
            return cls(int(a), int(b))
        except ValueError as exc:
            if isinstance(exc, SurgeryError):
                raise
            raise SurgeryError(f"cannot parse slope {text!r}; expected p/q") from None

    def __str__(self):
        return f"{self.p}/{self.q}"


def parse_slopes(text: str) -> list[SurgerySlope]:
    """Comma- or newline-separated p/q entries; '#' starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for item in line.split(","):
            if item.strip():
                out.append(SurgerySlope.parse(item))
    return out


# -- the knot pipeline ------------------------------------------------------------


@dataclass
class KnotData:
    """Everything the invariants need, computed once per presentation."""

    presentation: KnotPresentation
    full: CharacterCurve
    x0: CharacterCurve
    boundary: BoundaryData
    image: Ideal
    reducible_locus: Polynomial | None
    ideal_points: list[IdealPoint]
    smooth: bool

    @classmethod
    def build(cls, kp: KnotPresentation) -> "KnotData":
        full = character_ideal(kp)
        parts = split_components(full)
        if parts["empty"]:
            raise SurgeryError("presentation has no nonabelian character curve")
        x0 = parts["nonabelian"]
        bd = restriction_map(x0, kp)
        image = boundary_image_ideal(bd, x0)
        locus = reducible_character_locus(kp.alexander) if kp.alexander is not None else None
        proj = projective_closure_and_ideal_points(x0)
        smooth = smoothness_check(x0.generator)[0] and smoothness_check(proj["closure"], True)[0]
        return cls(kp, full, x0, bd, image, locus, proj["points"], smooth)

    def curve_gens(self) -> list[Polynomial]:
        return [self.x0.generator.to_ring(COUNT_RING)]


@lru_cache(maxsize=8)
def knot_data(kp: KnotPresentation) -> KnotData:
    return KnotData.build(kp)


# -- E(p, q) and its image ------------------------------------------------------

_DIAG_RING = Ring(("m", "l", "u", "v", "w"), "grevlex")


def diagonal_curve_ideal(slope: SurgerySlope) -> Ideal:
    """m^2p l^2q = 1 (both signs of m^p l^q) with the trace coordinates tied to m, l."""
    m, l, u, v, w = _DIAG_RING.gens()
    a, b = 2 * slope.p, 2 * slope.q
    num = m ** max(a, 0) * l ** max(b, 0)
    den = m ** max(-a, 0) * l ** max(-b, 0)
    return Ideal(_DIAG_RING, [num - den, u * m - m**2 - 1, v * l - l**2 - 1, w * m * l - m**2 * l**2 - 1])


def epq_image_ideal(slope: SurgerySlope, mode: str = "elimination", saturate: bool = False) -> Ideal:
    """Ideal in (u, v, w) of the image of the curve m^p l^q = +-1.

    elimination: eliminate m, l from the diagonal equations.  Saturating by m*l
        changes nothing, since m*(u - m) = 1 and l*(v - l) = 1 already make m
        and l units; ``saturate=True`` performs it anyway.
    trace: <P_pq^2 - 4, torus>.  Same points, but P^2 - 4 is a square on the
        surface, so every multiplicity doubles.
    invariant: <torus, P_{p+1,q} - P_{p-1,q}, P_{p,q+1} - P_{p,q-1}>, the
        involution-anti-invariant part of m^p l^q - m^-p l^-q; equal to the
        elimination ideal.
    """
    p, q = slope.p, slope.q
    if mode == "elimination":
        I = diagonal_curve_ideal(slope)
        if saturate:
            m, l = _DIAG_RING.var("m"), _DIAG_RING.var("l")
            I = saturation(I, m * l)
        elim = elimination_ideal(I, ["m", "l"])
        return Ideal(BOUNDARY_RING, [g.to_ring(BOUNDARY_RING) for g in elim.generators])
    P = commuting_trace
    if mode == "trace":
        return Ideal(BOUNDARY_RING, [P(p, q) ** 2 - 4, torus_surface()])
    if mode == "invariant":
        return Ideal(BOUNDARY_RING, [torus_surface(), P(p + 1, q) - P(p - 1, q), P(p, q + 1) - P(p, q - 1)])
    raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")


def intersection_basis(slope: SurgerySlope, y0: Ideal, mode: str = "elimination") -> GroebnerBasis:
    gb = buchberger(y0 + epq_image_ideal(slope, mode))
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(f"intersection for {slope} is not zero-dimensional")
    return gb


def b_invariant(slope: SurgerySlope, y0: Ideal, mode: str = "elimination") -> int:
    return quotient_dimension(intersection_basis(slope, y0, mode))[0]


def lambda_invariant(slope: SurgerySlope, y0: Ideal, mode: str = "elimination") -> int:
    u = BOUNDARY_RING.var("u")
    sat = saturation(y0 + epq_image_ideal(slope, mode), u**2 - 4)
    gb = buchberger(sat)
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(f"intersection for {slope} is not zero-dimensional")
    return quotient_dimension(gb)[0]


# -- functions on the curve -------------------------------------------------------


def _reduce_on_curve(gb: GroebnerBasis):
    cache: dict = {}
    ring = gb.ring
    u_img, v_img, w_img = None, None, None

    def rec(p: int, q: int) -> Polynomial:
        if p < 0 or (p == 0 and q < 0):
            return rec(-p, -q)
        key = (p, q)
        if key in cache:
            return cache[key]
        if key == (0, 0):
            r = ring.constant(2)
        elif key == (1, 0):
            r = u_img
        elif key == (0, 1):
            r = v_img
        elif key == (1, 1):
            r = w_img
        elif key == (1, -1):
            r = normal_form(u_img * v_img - w_img, gb)
        elif p == 0:
            r = normal_form(v_img * rec(0, q - 1) - rec(0, q - 2), gb)
        elif p == 1:
            step = 1 if q > 1 else -1
            r = normal_form(v_img * rec(1, q - step) - rec(1, q - 2 * step), gb)
        else:
            r = normal_form(u_img * rec(p - 1, q) - rec(p - 2, q), gb)
        cache[key] = r
        return r

    def bind(x, F, G):
        nonlocal u_img, v_img, w_img
        u_img, v_img, w_img = x, F, G

    return rec, bind


def peripheral_trace_on_curve(slope: SurgerySlope, data: KnotData) -> Polynomial:
    """I_gamma = P_pq(x, F, G) reduced modulo the curve, in the (z, x) curve ring."""
    gb = data.x0.gb()
    rec, bind = _reduce_on_curve(gb)
    bind(CURVE_RING.var("x"), data.boundary.F, data.boundary.G)
    return rec(slope.p, slope.q)


def f_gamma(slope: SurgerySlope, data: KnotData) -> Polynomial:
    I = peripheral_trace_on_curve(slope, data)
    return normal_form(I * I - 4, data.x0.gb())


def _fiber_dimension(data: KnotData, f: Polynomial) -> int | None:
    gb = buchberger(Ideal(COUNT_RING, data.curve_gens() + [f.to_ring(COUNT_RING)]))
    if not is_zero_dimensional(gb):
        return None
    return quotient_dimension(gb)[0]


def _draw(rng: random.Random) -> Fraction:
    while True:
        c = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        # f = I^2 - 4: c = 0 is I = +-2, c = -4 is I = 0
        if c not in (0, -4):
            return c


@dataclass
class NormResult:
    norm: int
    draws: list[Fraction]


def cs_norm_generic_fiber(
    slope: SurgerySlope, data: KnotData, seed: int = 0, max_draws: int = 8
) -> NormResult:
    """deg f_gamma as the size of a generic fiber f_gamma = c, agreed on by two draws."""
    f = f_gamma(slope, data)
    if f.is_constant():
        return NormResult(0, [])
    rng = random.Random(f"{seed}:{slope.p}/{slope.q}")
    draws: list[Fraction] = []
    seen: list[int] = []
    for _ in range(max_draws):
        c = _draw(rng)
        if c in draws:
            continue
        draws.append(c)
        d = _fiber_dimension(data, f - c)
        log.debug("slope %s draw c=%s fiber=%s", slope, c, d)
        if d is None:
            continue
        if d in seen:
            return NormResult(d, draws)
        seen.append(d)
    raise SurgeryError(f"generic fiber for {slope} not settled after {max_draws} draws: {seen}")


# -- valuations at points of the projective closure -------------------------------


def _chart(pt: ProjectivePoint, cubic: Polynomial):
    """Affine chart through pt with pt moved to the origin."""
    k = pt.chart()
    names = PROJECTIVE_RING.variables
    rest = [n for i, n in enumerate(names) if i != k]
    ring = Ring(tuple(rest), "grevlex")
    coords = pt.coordinates
    bindings = {names[k]: 1}
    for i, n in enumerate(names):
        if i != k:
            bindings[n] = ring.var(n) + coords[i]
    return ring, bindings


def _local_setup(h: Polynomial, pt: ProjectivePoint, cubic: Polynomial):
    ring, bindings = _chart(pt, cubic)
    C = cubic.substitute(bindings, ring)
    H = h.substitute(bindings, ring)
    origin = {n: 0 for n in ring.variables}
    if C.evaluate(origin) != 0:
        raise SurgeryError(f"{pt} is not on the curve")
    grad = [C.derivative(n).evaluate(origin) for n in ring.variables]
    if not any(grad):
        raise SurgeryError(f"curve is singular at {pt}")
    return ring, C, H, grad


def local_order(h: Polynomial, pt: ProjectivePoint, cubic: Polynomial, method: str = "series") -> int:
    """Order of vanishing of a homogeneous form h at a smooth point of the curve.

    series: one chart coordinate t is a uniformizer; solve the curve for the
        other as a power series in t and read off the order of h(t, b(t)).
    ideal: dim Q[a,b]/(C, h, m^N) = min(v(h), N) at a smooth point; raise N
        until the dimension stops short of N.
    """
    ring, C, H, grad = _local_setup(h, pt, cubic)
    if method == "ideal":
        return _order_by_ideal(ring, C, H)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    return _order_by_series(ring, C, H, grad)


def _order_by_ideal(ring: Ring, C: Polynomial, H: Polynomial) -> int:
    a, b = ring.gens()
    N = 4
    while True:
        maxpow = [a ** (N - i) * b**i for i in range(N + 1)]
        gb = buchberger(Ideal(ring, [C, H] + maxpow))
        d = quotient_dimension(gb)[0]
        if d < N:
            return d
        N *= 2
        if N > 4096:
            raise SurgeryError("function vanishes identically near the point")


def _series_coeffs(p: Polynomial, tvar: int) -> list[list[Fraction]]:
    """p as sum_j c_j(t) s^j with each c_j a dense coefficient list in t."""
    svar = 1 - tvar
    ds = max(m[svar] for m in p.terms)
    dt = max(m[tvar] for m in p.terms)
    out = [[Fraction(0)] * (dt + 1) for _ in range(ds + 1)]
    for m, c in p.terms.items():
        out[m[svar]][m[tvar]] = c
    return out


def _mul_trunc(x: list, y: list, K: int) -> list:
    out = [Fraction(0)] * K
    for i, xi in enumerate(x[:K]):
        if xi:
            for j, yj in enumerate(y[: K - i]):
                if yj:
                    out[i + j] += xi * yj
    return out


def _eval_series(coeffs: list[list[Fraction]], s: list[Fraction], K: int) -> list[Fraction]:
    # Horner in s with truncation at t^K
    acc = [Fraction(0)] * K
    for cj in reversed(coeffs):
        acc = _mul_trunc(acc, s, K)
        for i, c in enumerate(cj[:K]):
            acc[i] += c
    return acc


def _order_by_series(ring: Ring, C: Polynomial, H: Polynomial, grad: list[Fraction]) -> int:
    if not H:
        raise SurgeryError("function vanishes identically")
    # t is the coordinate whose partial vanishes less: dC/ds(0) != 0
    svar = 1 if grad[1] else 0
    tvar = 1 - svar
    Cc = _series_coeffs(C, tvar)
    Hc = _series_coeffs(H, tvar)
    dC = _series_coeffs(C.derivative(ring.variables[svar]), tvar)
    K = 16
    s = [Fraction(0)]
    prec = 1
    while True:
        # Newton on s(t): each step doubles the number of correct coefficients
        s = s + [Fraction(0)] * (K - len(s))
        while prec < K:
            prec = min(2 * prec, K)
            val = _eval_series(Cc, s, prec)
            der = _eval_series(dC, s, prec)
            inv = _series_inverse(der, prec)
            corr = _mul_trunc(val, inv, prec)
            for i in range(prec):
                s[i] -= corr[i]
        h = _eval_series(Hc, s, K)
        for i, c in enumerate(h):
            if c:
                return i
        if K > 8192:
            raise SurgeryError("function vanishes identically near the point")
        K *= 2


def _series_inverse(x: list[Fraction], K: int) -> list[Fraction]:
    if not x[0]:
        raise ZeroDivisionError("series with zero constant term")
    out = [Fraction(0)] * K
    out[0] = 1 / x[0]
    for n in range(1, K):
        acc = Fraction(0)
        for i in range(1, min(n, len(x) - 1) + 1):
            if x[i]:
                acc += x[i] * out[n - i]
        out[n] = -acc / x[0]
    return out


def pole_order(
    fn: tuple[Polynomial, Polynomial], pt: ProjectivePoint, cubic: Polynomial, method: str = "series"
) -> int:
    """Valuation v_pt(num/den) on the projective curve (negative at a pole)."""
    num, den = fn
    if not num:
        raise SurgeryError("function is identically zero")
    g = _dehomogenized(cubic)
    if not normal_form(num.to_ring(CURVE_RING), buchberger(Ideal(CURVE_RING, [g]))):
        raise SurgeryError("function vanishes identically on the curve")
    mapping = {"x": "X", "z": "Z"}
    Y = PROJECTIVE_RING.var("Y")
    out = 0
    for poly, sign in ((num, 1), (den, -1)):
        poly = poly.to_ring(CURVE_RING)
        if poly.is_constant():
            continue
        # poly(x, z) = H(X, Y, Z) / Y^deg
        H = homogenize(poly, PROJECTIVE_RING, mapping, "Y")
        out += sign * (local_order(H, pt, cubic, method) - poly.total_degree() * local_order(Y, pt, cubic, method))
    return out


def _dehomogenized(cubic: Polynomial) -> Polynomial:
    x, z = CURVE_RING.var("x"), CURVE_RING.var("z")
    return cubic.substitute({"X": x, "Y": 1, "Z": z}, CURVE_RING)


@dataclass(frozen=True)
class IdealPointData:
    point: ProjectivePoint
    pole_order_meridian: int
    pole_order_longitude: int


def ideal_point_data(data: KnotData) -> list[IdealPointData]:
    cubic = projective_closure(data.x0.generator)
    one = CURVE_RING.one()
    fm = f_gamma(SurgerySlope(1, 0), data)
    fl = f_gamma(SurgerySlope(0, 1), data)
    out = []
    for ip in data.ideal_points:
        vm = -pole_order((fm, one), ip.point, cubic)
        vl = -pole_order((fl, one), ip.point, cubic)
        out.append(IdealPointData(ip.point, vm, vl))
    return out


def _admissible_signs(points: list[IdealPointData]) -> list[tuple[int, ...]]:
    """Sign patterns under which no nonzero slope gets norm zero.

    phi_x(gamma) = a_x p + e_x b_x q; some primitive slope is killed at every
    point exactly when all vectors (a_x, e_x b_x) are parallel.
    """
    ok = []
    for signs in product((1, -1), repeat=len(points)):
        if signs and signs[0] == -1:
            continue  # an overall flip changes nothing
        vecs = [(pt.pole_order_meridian, e * pt.pole_order_longitude) for pt, e in zip(points, signs)]
        a0, b0 = vecs[0]
        if all(a * b0 - b * a0 == 0 for a, b in vecs[1:]):
            continue
        ok.append(signs)
    return ok


def cs_norm_from_ideal_points(slope: SurgerySlope, points: list[IdealPointData]) -> int:
    """Sum over ideal points of |v_x(f_mu) p +- v_x(f_lambda) q|."""
    if not points:
        raise SurgeryError("no ideal points")
    signs = _admissible_signs(points)
    if not signs:
        raise SurgeryError("no admissible sign assignment at the ideal points")
    values = {
        sum(abs(pt.pole_order_meridian * slope.p + e * pt.pole_order_longitude * slope.q) for pt, e in zip(points, s))
        for s in signs
    }
    if len(values) != 1:
        raise SurgeryError(f"sign assignments disagree for {slope}: {sorted(values)}")
    return values.pop()


# -- zero masses ----------------------------------------------------------------


@dataclass
class LambdaHat:
    value: int
    total_zero_mass: int
    ideal_point_zero_mass: int


def lambda_hat(slope: SurgerySlope, data: KnotData) -> LambdaHat:
    """Zero mass of f_gamma on the curve away from x = +-2, plus the zero mass at ideal points."""
    if not data.smooth:
        raise SurgeryError("the curve is singular; zero orders on its smooth model are not computed")
    f = f_gamma(slope, data)
    if f.is_constant():
        raise SurgeryError(f"f_gamma is constant for {slope}")
    gens = data.curve_gens() + [f.to_ring(COUNT_RING)]
    total = quotient_dimension(buchberger(Ideal(COUNT_RING, gens)))[0]
    x = COUNT_RING.var("x")
    off = quotient_dimension(buchberger(saturation(Ideal(COUNT_RING, gens), x**2 - 4)))[0]
    cubic = projective_closure(data.x0.generator)
    at_infinity = 0
    for ip in data.ideal_points:
        v = pole_order((f, CURVE_RING.one()), ip.point, cubic)
        at_infinity += max(v, 0)
    return LambdaHat(off, total, at_infinity)


# -- counting characters on a surgery ---------------------------------------------


@dataclass
class CharacterCount:
    slope: SurgerySlope
    trace_value: int
    eliminant: Polynomial
    factors: list[tuple[Polynomial, int]]
    points: int  # distinct points of the fiber
    points_at_pm2: int
    points_on_reducible_locus: int
    survivors: int
    fibers: dict = field(default_factory=dict)  # rational x -> polynomial in z


def _point_count(gens: list[Polynomial]) -> int:
    gb = buchberger(Ideal(COUNT_RING, gens))
    if gb.is_unit():
        return 0
    return quotient_dimension(radical_zero_dimensional(gb))[0]


def surgery_character_count(slope: SurgerySlope, data: KnotData, trace_value: int = 2) -> CharacterCount:
    """Points of the curve where the peripheral trace equals +-2, with the exclusions."""
    if trace_value not in (2, -2):
        raise ValueError("trace value must be 2 or -2")
    I = peripheral_trace_on_curve(slope, data).to_ring(COUNT_RING)
    gens = data.curve_gens() + [I - trace_value]
    gb = buchberger(Ideal(COUNT_RING, gens))
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(f"trace of {slope} is constant on a component")
    elim = univariate_eliminant(gb, "x").to_ring(Ring(("x",)))
    factors = squarefree_decomposition(elim, "x") if not elim.is_constant() else []
    radical = radical_zero_dimensional(gb)
    total = quotient_dimension(radical)[0]
    x = COUNT_RING.var("x")
    excl = radical.ideal()
    after_pm2 = saturation(excl, x**2 - 4)
    n_after_pm2 = quotient_dimension(buchberger(after_pm2))[0]
    survivors_ideal = after_pm2
    if data.reducible_locus is not None and not data.reducible_locus.is_constant():
        survivors_ideal = saturation(after_pm2, data.reducible_locus.to_ring(COUNT_RING))
    survivors = quotient_dimension(buchberger(survivors_ideal))[0]
    fibers = {}
    for root, _ in rational_roots(elim) if not elim.is_constant() else []:
        fibers[root] = characters_at_meridian_trace(data.x0, root)
    return CharacterCount(
        slope,
        trace_value,
        elim,
        factors,
        total,
        total - n_after_pm2,
        n_after_pm2 - survivors,
        survivors,
        fibers,
    )


# -- the report -----------------------------------------------------------------


@dataclass
class InvariantReport:
    slope: SurgerySlope
    b: int
    lam: int
    lambda_hat: int | None
    norm: int
    on_locus: int
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.on_locus != self.b - self.lam:
            raise AssertionError("on-locus mass must equal b - lambda")

    def row(self) -> list[str]:
        lh = "" if self.lambda_hat is None else str(self.lambda_hat)
        return [str(self.slope.p), str(self.slope.q), str(self.b), str(self.lam), lh, str(self.norm), str(self.on_locus)]

    def to_json(self) -> dict:
        return {
            "p": self.slope.p,
            "q": self.slope.q,
            "b": self.b,
            "lambda": self.lam,
            "lambda_hat": self.lambda_hat,
            "norm": self.norm,
            "on_locus": self.on_locus,
            "diagnostics": self.diagnostics,
        }


TSV_HEADER = ["p", "q", "b", "lambda", "lambda_hat", "norm", "on_locus"]


def invariant_report(
    slope: SurgerySlope,
    data: KnotData,
    mode: str = "elimination",
    seed: int = 0,
    with_lambda_hat: bool = True,
    timings: bool = False,
) -> InvariantReport:
    t0 = time.perf_counter()
    gb_b = intersection_basis(slope, data.image, mode)
    b, st_b = quotient_dimension(gb_b)
    t1 = time.perf_counter()
    lam = lambda_invariant(slope, data.image, mode)
    t2 = time.perf_counter()
    norm = cs_norm_generic_fiber(slope, data, seed)
    t3 = time.perf_counter()
    lh = lambda_hat(slope, data) if with_lambda_hat and data.smooth else None
    t4 = time.perf_counter()
    diag = {
        "mode": mode,
        "staircase_b": len(st_b),
        "staircase_lambda": lam,
        "norm_draws": [str(c) for c in norm.draws],
    }
    if lh is not None:
        diag["zero_mass"] = lh.total_zero_mass
        diag["ideal_point_zero_mass"] = lh.ideal_point_zero_mass
    if timings:
        diag["seconds"] = {
            "b": round(t1 - t0, 3),
            "lambda": round(t2 - t1, 3),
            "norm": round(t3 - t2, 3),
            "lambda_hat": round(t4 - t3, 3),
        }
    report = InvariantReport(slope, b, lam, None if lh is None else lh.value, norm.norm, b - lam, diag)
    if b <= 0:
        log.warning("b(%s) = %d is not positive", slope, b)
    return report


def format_reports(reports: list[InvariantReport], fmt: str = "tsv") -> str:
    if fmt == "tsv":
        lines = ["\t".join(TSV_HEADER)] + ["\t".join(r.row()) for r in reports]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        lines = []
        for r in reports:
            lh = "-" if r.lambda_hat is None else r.lambda_hat
            lines.append(
                f"{r.slope}: b={r.b} lambda={r.lam} lambda_hat={lh} norm={r.norm} on_locus={r.on_locus}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
