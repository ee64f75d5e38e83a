"""Character curves of two-generator knot groups and their boundary data."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .exact.algorithms import (
    divmod_poly,
    exact_divide,
    gcd,
    homogenize,
    rational_roots,
    resultant,
    squarefree_part,
)
from .exact.polynomial import Polynomial, ProjectivePoint, Ring
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    elimination_ideal,
    is_zero_dimensional,
    normal_form,
    saturation,
    univariate_eliminant,
)
from .traces import BOUNDARY_RING, CURVE_RING, FreeWord, specialize_conjugate, trace_polynomial

ALEXANDER_RING = Ring(("t",))
PROJECTIVE_RING = Ring(("X", "Y", "Z"), "grevlex")
APOLY_RING = Ring(("l", "m"), "lex")
_PROJ_MAP = {"x": "X", "z": "Z"}


class CharacterVarietyError(ValueError):
    pass


@dataclass(frozen=True)
class KnotPresentation:
    relator: FreeWord
    longitude: FreeWord
    meridian: FreeWord = FreeWord("a")
    alexander: Polynomial | None = None
    name: str = "knot"

    def __post_init__(self):
        if not len(self.relator):
            raise ValueError("relator must be a nonempty reduced word")


def parse_presentation(text: str) -> KnotPresentation:
    """Read ``key: value`` lines (name, relator, meridian, longitude, alexander)."""
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"expected 'key: value', got {raw!r}")
        key, value = (s.strip() for s in line.split(":", 1))
        if key not in ("name", "relator", "meridian", "longitude", "alexander"):
            raise ValueError(f"unknown presentation field {key!r}")
        fields[key] = value
    for key in ("relator", "longitude"):
        if key not in fields:
            raise ValueError(f"presentation is missing the {key!r} field")
    alex = ALEXANDER_RING.parse(fields["alexander"]) if "alexander" in fields else None
    return KnotPresentation(
        relator=FreeWord.parse(fields["relator"]),
        longitude=FreeWord.parse(fields["longitude"]),
        meridian=FreeWord.parse(fields.get("meridian", "a")),
        alexander=alex,
        name=fields.get("name", "knot"),
    )


def load_presentation(source: str | Path) -> KnotPresentation:
    """A presentation file path, or the name of a bundled one (e.g. ``figure8``)."""
    path = Path(source)
    if path.is_file():
        return parse_presentation(path.read_text())
    bundled = resources.files("charvar") / "data" / f"{source}.txt"
    if bundled.is_file():
        return parse_presentation(bundled.read_text())
    raise FileNotFoundError(f"no presentation file or bundled presentation named {source!r}")


@dataclass(frozen=True)
class CharacterCurve:
    generator: Polynomial
    tag: str  # abelian | nonabelian | full

    @property
    def ideal(self) -> Ideal:
        return Ideal(CURVE_RING, [self.generator])

    def gb(self) -> GroebnerBasis:
        return buchberger(self.ideal)


@dataclass
class BoundaryData:
    F: Polynomial
    G: Polynomial
    image: Ideal | None = None
    notes: list[str] = field(default_factory=list)


def abelian_factor() -> Polynomial:
    return CURVE_RING.parse("x^2 - z - 2")


# -- character ideal ----------------------------------------------------------

_REP_RING = Ring(("t", "s", "si", "x", "z"), "grevlex")


def _matrices():
    t, s, si, _, _ = _REP_RING.gens()
    one, zero = _REP_RING.one(), _REP_RING.zero()
    return {
        "a": ((s, one), (zero, si)),
        "A": ((si, -one), (zero, s)),
        "b": ((s, zero), (t, si)),
        "B": ((si, zero), (-t, s)),
    }


def _matmul(P, Q):
    return tuple(tuple(P[i][0] * Q[0][j] + P[i][1] * Q[1][j] for j in range(2)) for i in range(2))


def _word_matrix(w: FreeWord):
    mats = _matrices()
    one, zero = _REP_RING.one(), _REP_RING.zero()
    M = ((one, zero), (zero, one))
    for ch in w.letters:
        M = _matmul(M, mats[ch])
    return M


def representation_ideal(kp: KnotPresentation) -> Ideal:
    """Relator equations on the triangular slice, with x and z tied to s and t."""
    t, s, si, x, z = _REP_RING.gens()
    M = _word_matrix(kp.relator)
    gens = [M[0][0] - 1, M[0][1], M[1][0], M[1][1] - 1]
    gens += [s * si - 1, x * s - s**2 - 1, z - s**2 - t - si**2]
    return Ideal(_REP_RING, gens)


def character_ideal(kp: KnotPresentation) -> CharacterCurve:
    """Full character curve in (x, z): abelian factor times the nonabelian eliminant.

    The slice rho(a) = [[s,1],[0,1/s]], rho(b) = [[s,0],[t,1/s]] sees the
    nonabelian characters; s is a unit because s*si = 1, so no separate
    saturation is needed.  The abelian line x^2 - z - 2 is adjoined directly.
    """
    elim = elimination_ideal(representation_ideal(kp), ["t", "s", "si"])
    gens = [g.to_ring(CURVE_RING) for g in elim.generators]
    if not gens:
        raise CharacterVarietyError("relator imposes no condition on (x, z)")
    g = gens[0]
    for h in gens[1:]:
        g = gcd(g, h)
    if g.is_constant():
        # only isolated (or no) nonabelian characters
        nonab = CURVE_RING.one()
    else:
        nonab = squarefree_part(g)
    full = (abelian_factor() * nonab).primitive()
    return CharacterCurve(full, "full")


def split_components(curve: CharacterCurve) -> dict:
    """Strip every power of x^2 - z - 2; what remains is the nonabelian curve."""
    ab = abelian_factor()
    rest = curve.generator
    k = 0
    while True:
        q, r = divmod_poly(rest, ab)
        if r:
            break
        rest, k = q, k + 1
    if k == 0:
        raise CharacterVarietyError("abelian factor x^2 - z - 2 is absent")
    rest = rest.primitive() if not rest.is_constant() else CURVE_RING.one()
    return {
        "abelian": ab,
        "nonabelian": CharacterCurve(rest, "nonabelian"),
        "empty": rest.is_constant(),
    }


def reducible_character_locus(alexander: Polynomial) -> Polynomial:
    """Squarefree polynomial in x vanishing at m + 1/m for every root m^2 of the Alexander polynomial."""
    if not alexander:
        raise ValueError("Alexander polynomial is zero")
    var = alexander.ring.variables[0]
    if alexander.evaluate({var: 1}) == 0:
        raise ValueError("Alexander polynomial vanishes at 1")
    ring = Ring(("m", "x"))
    m, x = ring.gens()
    delta = alexander.substitute({var: m**2}, ring)
    out = ring.one() if delta.is_constant() else resultant(delta, x * m - m**2 - 1, "m")
    out = out.to_ring(Ring(("x",)))
    return squarefree_part(out) if not out.is_constant() else Ring(("x",)).one()


# -- boundary data ------------------------------------------------------------


def restriction_map(x0: CharacterCurve, kp: KnotPresentation) -> BoundaryData:
    """Longitude trace F and meridian-longitude trace G reduced modulo the curve."""
    gb = x0.gb()
    F = normal_form(specialize_conjugate(trace_polynomial(kp.longitude)), gb)
    G = normal_form(specialize_conjugate(trace_polynomial(kp.meridian * kp.longitude)), gb)
    return BoundaryData(F, G)


_GRAPH_RING = Ring(("z", "x", "u", "v", "w"), "grevlex")


def boundary_image_ideal(bd: BoundaryData, x0: CharacterCurve) -> Ideal:
    """Closure of the image of the curve in (u, v, w), by eliminating x and z."""
    u, v, w = (_GRAPH_RING.var(n) for n in "uvw")
    x = _GRAPH_RING.var("x")
    F, G, g = (p.to_ring(_GRAPH_RING) for p in (bd.F, bd.G, x0.generator))
    elim = elimination_ideal(Ideal(_GRAPH_RING, [u - x, v - F, w - G, g]), ["z", "x"])
    image = Ideal(BOUNDARY_RING, [p.to_ring(BOUNDARY_RING) for p in elim.generators])
    gb = buchberger(image)
    if gb.is_unit():
        raise CharacterVarietyError("boundary image is empty (unit ideal)")
    if is_zero_dimensional(gb):
        raise CharacterVarietyError("boundary image is zero-dimensional")
    bd.image = Ideal(BOUNDARY_RING, gb.elements)
    return bd.image


def torus_surface() -> Polynomial:
    return BOUNDARY_RING.parse("u^2 + v^2 + w^2 - u*v*w - 4")


def diagonal_trace_point(m, l) -> tuple[Fraction, Fraction, Fraction]:
    m, l = Fraction(m), Fraction(l)
    return (m + 1 / m, l + 1 / l, m * l + 1 / (m * l))


def _clear_laurent(p: Polynomial, ring: Ring) -> Polynomial:
    """Substitute u, v, w by their diagonal Laurent forms and clear m, l powers."""
    du, dv, dw = p.degree("u"), p.degree("v"), p.degree("w")
    m, l = ring.var("m"), ring.var("l")
    # u = (m^2+1)/m etc; multiply through by m^(du+dw) l^(dv+dw)
    out = ring.zero()
    cu, cv, cw = m**2 + 1, l**2 + 1, m**2 * l**2 + 1
    for mono, c in p.items():
        i, j, k = mono
        term = cu**i * cv**j * cw**k * m ** (du + dw - i - k) * l ** (dv + dw - j - k)
        out = out + term.scale(c)
    if not out:
        return out
    # strip monomial content
    low_m = min(mm[ring.index("m")] for mm in out.terms)
    low_l = min(mm[ring.index("l")] for mm in out.terms)
    return exact_divide(out, m**low_m * l**low_l)


def a_polynomial_component(bd: BoundaryData) -> Polynomial:
    """Squarefree A-polynomial factor of the boundary image, integer-primitive."""
    if bd.image is None:
        raise CharacterVarietyError("boundary image not computed")
    gens = [_clear_laurent(g, APOLY_RING) for g in bd.image.generators]
    m, l = APOLY_RING.var("m"), APOLY_RING.var("l")
    sat = saturation(Ideal(APOLY_RING, gens), m * l)
    gb = buchberger(sat)
    if len(gb) != 1:
        raise CharacterVarietyError(
            "A-polynomial ideal is not principal: " + "; ".join(str(g) for g in gb.elements)
        )
    return squarefree_part(gb.elements[0]).primitive()


def invert_monomially(p: Polynomial) -> Polynomial:
    """p(1/m, 1/l) with the minimal monomial cleared."""
    i, j = p.ring.index("m"), p.ring.index("l")
    dm = max(mono[i] for mono in p.terms)
    dl = max(mono[j] for mono in p.terms)
    out = {}
    for mono, c in p.terms.items():
        mm = list(mono)
        mm[i], mm[j] = dm - mono[i], dl - mono[j]
        out[tuple(mm)] = c
    q = Polynomial(p.ring, out)
    low_m = min(mono[i] for mono in q.terms)
    low_l = min(mono[j] for mono in q.terms)
    shift = [0] * p.ring.nvars
    shift[i], shift[j] = low_m, low_l
    return Polynomial(p.ring, {tuple(a - b for a, b in zip(mono, shift)): c for mono, c in q.terms.items()})


# -- projective picture ---------------------------------------------------------


@dataclass(frozen=True)
class IdealPoint:
    point: ProjectivePoint
    multiplicity: int


def projective_closure(p: Polynomial) -> Polynomial:
    return homogenize(p, PROJECTIVE_RING, _PROJ_MAP, "Y")


def projective_closure_and_ideal_points(x0: CharacterCurve) -> dict:
    """Homogenize and read off the points at infinity (Y = 0) over Q.

    Returns the cubic (or higher) form, the rational points with multiplicity
    and any leftover factor with no rational linear pieces.
    """
    P = projective_closure(x0.generator)
    bin_ring = Ring(("X", "Z"))
    form = P.substitute({"X": bin_ring.var("X"), "Y": 0, "Z": bin_ring.var("Z")}, bin_ring)
    points: list[IdealPoint] = []
    # power of Z  <->  the point [1:0:0]
    kz = min(mono[1] for mono in form.terms)
    if kz:
        points.append(IdealPoint(ProjectivePoint((1, 0, 0)), kz))
    xr = Ring(("X",))
    rest = form.substitute({"X": xr.var("X"), "Z": 1}, xr)
    leftover = rest
    for root, mult in rational_roots(rest):
        points.append(IdealPoint(ProjectivePoint((root, 0, 1)), mult))
        leftover = exact_divide(leftover, (xr.var("X") - root) ** mult)
    points.sort(key=lambda ip: ip.point.coordinates)
    return {
        "closure": P,
        "form_at_infinity": form,
        "points": points,
        "irrational_factor": None if leftover.is_constant() else leftover.monic(),
    }


def smoothness_check(p: Polynomial, projective: bool = False) -> tuple[bool, GroebnerBasis | None]:
    """True when p and its partials have no common zero (away from the origin if projective)."""
    if not p:
        raise ValueError("zero polynomial")
    ring = p.ring
    gens = [p] + [p.derivative(v) for v in ring.variables]
    if not projective:
        gb = buchberger(Ideal(ring, gens))
        return (gb.is_unit(), None if gb.is_unit() else gb)
    # check every affine chart
    for v in ring.variables:
        others = tuple(n for n in ring.variables if n != v)
        chart = Ring(others)
        local = [g.substitute({v: 1}, chart) for g in gens]
        gb = buchberger(Ideal(chart, local))
        if not gb.is_unit():
            return False, gb
    return True, None


def characters_at_meridian_trace(x0: CharacterCurve, value) -> Polynomial:
    """Fiber polynomial in z over a rational meridian trace or over the roots of a minimal polynomial in x."""
    zr = Ring(("z",))
    if isinstance(value, Polynomial):
        minpoly = value.to_ring(CURVE_RING)
        ideal = Ideal(CURVE_RING, [x0.generator, minpoly])
        gb = buchberger(ideal)
        if not is_zero_dimensional(gb):
            raise CharacterVarietyError("fiber is not finite")
        return univariate_eliminant(gb, "z").to_ring(zr)
    fiber = x0.generator.substitute({"x": Fraction(value), "z": zr.var("z")}, zr)
    if not fiber:
        raise CharacterVarietyError(f"every z lies over x = {value}")
    return fiber.monic()
