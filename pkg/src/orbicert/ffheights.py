"""Heights, proximity and counting over the rational function field.

Points of projective space over Q(t) are held as coprime integer
polynomial coordinates.  Places are the monic irreducible polynomials
(weight = degree) together with the infinite place (v = -deg), so the sum
of deg * v over all places of any nonzero element is 0.

For a homogeneous form F of degree e and a point x the local value
lambda = v(F(x)) - e * min_j v(x_j) is nonnegative, the proximity m_S
collects lambda over S, the counting N_S collects deg * v(F(x)) outside S,
and m_S + N_S = e * h(x) exactly.  N1_S truncates counting to multiplicity
one; the radical degree makes that computable without factoring.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from multiprocessing import Pool
from typing import Iterable, Mapping, Sequence

from . import polys
from .lattice import ConfigError, SurfaceConfig
from .polys import IntPoly
from .positivity import WeightedBoundary


class DegenerateError(Exception):
    """Input violates a nondegeneracy hypothesis of the inequality."""


class ProbeExcluded(Exception):
    """The sampled curve is outside the scope of the probe."""


# -- places --------------------------------------------------------------------


@lru_cache(maxsize=None)
def _certify_irreducible(poly: IntPoly) -> bool:
    if polys.degree(poly) == 1:
        return True
    import sympy

    t = sympy.Symbol("t")
    expr = sum(c * t**i for i, c in enumerate(poly))
    return sympy.Poly(expr, t, domain="QQ").is_irreducible


@dataclass(frozen=True)
class Place:
    """A finite place (irreducible polynomial) or the infinite place."""

    poly: IntPoly | None

    @staticmethod
    def finite(coeffs: Iterable[int | Fraction]) -> "Place":
        p = polys.clear_rationals(Fraction(c) for c in coeffs)
        if p and p[-1] < 0:
            p = polys.neg(p)
        if polys.degree(p) < 1:
            raise ConfigError("a finite place needs positive degree")
        if not _certify_irreducible(p):
            raise ConfigError(f"reducible place {polys.to_string(p)}")
        return Place(poly=p)

    @staticmethod
    def infinite() -> "Place":
        return Place(poly=None)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else polys.degree(self.poly)

    def valuation(self, f: IntPoly) -> int:
        """v(f) for nonzero f; raises on the zero polynomial."""
        if polys.is_zero(f):
            raise ValueError("valuation of the zero polynomial")
        if self.poly is None:
            return -polys.degree(f)
        if polys.degree(self.poly) == 1:
            c0, c1 = self.poly[0], self.poly[1]
            return polys.valuation_linear(-c0, c1, f)
        return polys.valuation(self.poly, f)

    def __str__(self) -> str:
        return "inf" if self.poly is None else f"({polys.to_string(self.poly)})"


# -- points of projective space -------------------------------------------------


@dataclass(frozen=True)
class RatMap:
    """Coprime integer coordinates of a point of P^m over Q(t)."""

    coords: tuple[IntPoly, ...]

    @staticmethod
    def make(raw: Sequence[Iterable[int | Fraction]]) -> "RatMap":
        rows = [tuple(Fraction(c) for c in coord) for coord in raw]
        den = 1
        for row in rows:
            for c in row:
                den = den * c.denominator // _gcd(den, c.denominator)
        ints = [polys.trim([int(c * den) for c in row]) for row in rows]
        if all(polys.is_zero(p) for p in ints):
            raise ConfigError("all coordinates vanish")
        ints = _divide_common(ints)
        lead = next(p for p in ints if not polys.is_zero(p))
        if lead[-1] < 0:
            ints = [polys.neg(p) for p in ints]
        return RatMap(coords=tuple(ints))

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    @property
    def height(self) -> int:
        return max(polys.degree(c) for c in self.coords)

    def __str__(self) -> str:
        return "[" + " : ".join(polys.to_string(c) for c in self.coords) + "]"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divide_common(ints: list[IntPoly]) -> list[IntPoly]:
    cont = 0
    for p in ints:
        if not polys.is_zero(p):
            cont = _gcd(cont, polys.content(p))
    ints = [polys.trim([c // cont for c in p]) for p in ints]
    g: IntPoly = ()
    for p in ints:
        if not polys.is_zero(p):
            g = polys.gcd_poly(g, p)
    if polys.degree(g) > 0:
        out = []
        for p in ints:
            if polys.is_zero(p):
                out.append(p)
                continue
            quo, rem = polys.divmod_rational(p, g)
            assert not rem, "gcd fails to divide a coordinate"
            # Gauss: a primitive divisor of an integer polynomial has an
            # integer cofactor
            out.append(polys.trim([int(c) for c in quo]))
        ints = out
    return ints


# -- homogeneous forms -----------------------------------------------------------


@dataclass(frozen=True)
class HForm:
    """Homogeneous integer form; terms map exponent tuples to coefficients."""

    nvars: int
    degree: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def make(nvars: int, terms: Mapping[tuple[int, ...], int | Fraction]) -> "HForm":
        cleaned = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff.denominator != 1:
                raise ConfigError("form coefficients must be integers")
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ConfigError(f"bad exponent tuple {exps}")
            cleaned[exps] = cleaned.get(exps, 0) + int(coeff)
        cleaned = {e: c for e, c in cleaned.items() if c}
        if not cleaned:
            raise ConfigError("zero form")
        degrees = {sum(e) for e in cleaned}
        if len(degrees) != 1:
            raise ConfigError(f"form is not homogeneous: degrees {sorted(degrees)}")
        return HForm(
            nvars=nvars,
            degree=degrees.pop(),
            terms=tuple(sorted(cleaned.items())),
        )

    def evaluate(self, x: RatMap) -> IntPoly:
        if len(x.coords) != self.nvars:
            raise ConfigError(f"{len(x.coords)} coordinates for {self.nvars} variables")
        powers: dict[tuple[int, int], IntPoly] = {}
        total: IntPoly = ()
        for exps, coeff in self.terms:
            term: IntPoly = (coeff,)
            for j, e in enumerate(exps):
                if e:
                    key = (j, e)
                    if key not in powers:
                        powers[key] = polys.pow_(x.coords[j], e)
                    term = polys.mul(term, powers[key])
            total = polys.add(total, term)
        return total

    def evaluate_point(self, point: Sequence[int]) -> int:
        if len(point) != self.nvars:
            raise ConfigError(f"{len(point)} coordinates for {self.nvars} variables")
        total = 0
        for exps, coeff in self.terms:
            term = coeff
            for v, e in zip(point, exps):
                term *= v**e
            total += term
        return total

    def linear_vector(self) -> tuple[Fraction, ...]:
        if self.degree != 1:
            raise ConfigError("not a linear form")
        vec = [Fraction(0)] * self.nvars
        for exps, coeff in self.terms:
            vec[exps.index(1)] = Fraction(coeff)
        return tuple(vec)

    def __str__(self) -> str:
        names = _var_names(self.nvars)
        parts = []
        for exps, coeff in sorted(self.terms, reverse=True):
            body = "*".join(
                f"{names[j]}^{e}" if e > 1 else names[j]
                for j, e in enumerate(exps)
                if e
            )
            mag = abs(coeff)
            txt = body if mag == 1 and body else (f"{mag}*{body}" if body else str(mag))
            parts.append(("- " if coeff < 0 else "+ ") + txt)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else ("-" + out[2:])


def _var_names(nvars: int) -> tuple[str, ...]:
    base = ("X", "Y", "Z", "W")
    if nvars <= len(base):
        return base[:nvars]
    return tuple(f"X{j}" for j in range(nvars))


# -- form parser -----------------------------------------------------------------


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ConfigError(f"bad character {ch!r} in form")
    return tokens


class _Parser:
    """Recursive descent over +, -, *, ^ and parentheses."""

    def __init__(self, tokens: list[str], names: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = {name: j for j, name in enumerate(names)}
        self.nvars = len(names)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ConfigError("unexpected end of form")
        self.pos += 1
        return tok

    def parse(self) -> dict[tuple[int, ...], int]:
        out = self.expr()
        if self.peek() is not None:
            raise ConfigError(f"trailing token {self.peek()!r}")
        return out

    def expr(self) -> dict:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        total = _poly_scale(self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            total = _poly_add(total, _poly_scale(self.term(), sign))
        return total

    def term(self) -> dict:
        total = self.factor()
        while self.peek() == "*":
            self.take()
            total = _poly_mul(total, self.factor())
        return total

    def factor(self) -> dict:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ConfigError(f"bad exponent {tok!r}")
            out = {(0,) * self.nvars: 1}
            for _ in range(int(tok)):
                out = _poly_mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ConfigError("unbalanced parentheses")
            return inner
        if tok.isdigit():
            return {(0,) * self.nvars: int(tok)}
        if tok in self.names:
            exps = [0] * self.nvars
            exps[self.names[tok]] = 1
            return {tuple(exps): 1}
        raise ConfigError(f"unknown token {tok!r}")


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _poly_scale(a: dict, k: int) -> dict:
    return {e: c * k for e, c in a.items() if c * k}


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def parse_form(text: str, nvars: int = 3) -> HForm:
    """Parse a homogeneous integer form in X, Y, Z, W (or X0, X1, ...)."""
    names = _var_names(nvars)
    table = _Parser(_tokenize(text), names).parse()
    return HForm.make(nvars, table)


def parse_poly(text: str) -> IntPoly:
    """Parse a univariate integer polynomial in t."""
    table = _Parser(_tokenize(text), ("t",)).parse()
    out = [0] * (1 + max((e[0] for e in table), default=0))
    for (e,), c in table.items():
        out[e] = c
    return polys.trim(out)


def parse_place(text: str) -> Place:
    stripped = text.strip()
    if stripped in ("inf", "oo", "infinity"):
        return Place.infinite()
    return Place.finite(parse_poly(stripped))


# -- heights and counting --------------------------------------------------------


def height(x: RatMap) -> int:
    """Height of a point with coprime coordinates: the maximal degree."""
    return x.height


def _local_lambda(e: int, fx: IntPoly, x: RatMap, place: Place) -> int:
    if polys.is_zero(fx):
        raise DegenerateError("the point lies on the hypersurface")
    base = min(
        place.valuation(c) for c in x.coords if not polys.is_zero(c)
    )
    return place.valuation(fx) - e * base


def weil_hypersurface(form: HForm, x: RatMap, place: Place) -> int:
    """Local Weil value v(F(x)) - deg(F) * min_j v(x_j); nonnegative."""
    return _local_lambda(form.degree, form.evaluate(x), x, place)


@dataclass(frozen=True)
class Counting:
    proximity: int
    counting: int
    counting_truncated: int | None
    total: int


def _check_places(places: Sequence[Place]) -> None:
    if len(set(places)) != len(places):
        raise ConfigError("repeated place in S")


def counting_functions(
    form: HForm, x: RatMap, places: Sequence[Place], *, truncated: bool = True
) -> Counting:
    """Proximity, counting and truncated counting of F at x relative to S.

    proximity + counting equals deg(F) * height(x) exactly.  Pass
    truncated=False to skip the radical computation behind the truncated
    count; the field is then None.
    """
    _check_places(places)
    fx = form.evaluate(x)
    if polys.is_zero(fx):
        raise DegenerateError("the point lies on the hypersurface")
    e = form.degree
    lam_inf = _local_lambda(e, fx, x, Place.infinite())
    deg_fx = polys.degree(fx)

    prox = 0
    finite_in_s = 0
    trunc_in_s = 0
    inf_in_s = False
    for place in places:
        if place.is_infinite:
            inf_in_s = True
            prox += lam_inf
            continue
        v = place.valuation(fx)
        prox += place.degree * _local_lambda(e, fx, x, place)
        finite_in_s += place.degree * v
        if v > 0:
            trunc_in_s += place.degree

    counting = deg_fx - finite_in_s
    trunc = polys.radical_degree(fx) - trunc_in_s if truncated else None
    if not inf_in_s:
        counting += lam_inf
        if truncated and lam_inf > 0:
            trunc += 1
    return Counting(
        proximity=prox,
        counting=counting,
        counting_truncated=trunc,
        total=e * x.height,
    )


# -- linear algebra over Q -------------------------------------------------------


def gaussian_rank(rows: Iterable[Sequence[Fraction | int]]) -> int:
    mat = [list(row) for row in rows]
    if any(c.denominator != 1 for row in mat for c in row):
        scaled = []
        for row in mat:
            fracs = [Fraction(c) for c in row]
            den = 1
            for f in fracs:
                den = den * f.denominator // _gcd(den, f.denominator)
            scaled.append([int(f * den) for f in fracs])
        mat = scaled
    else:
        mat = [[int(c) for c in row] for row in mat]
    # fraction-free elimination: replace row_r by lead*row_r - factor*row_rank
    rank = 0
    col = 0
    width = len(mat[0]) if mat else 0
    while rank < len(mat) and col < width:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        lead = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col]
                mat[r] = [lead * a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def coordinates_nondegenerate(x: RatMap) -> bool:
    """Coordinates linearly independent over the constants."""
    width = max(polys.degree(c) for c in x.coords) + 1
    rows = [list(c) + [0] * (width - len(c)) for c in x.coords]
    return gaussian_rank(rows) == len(x.coords)


# -- the subspace-type inequality -------------------------------------------------


@dataclass(frozen=True)
class SubspaceReport:
    lhs: int
    rhs: Fraction
    holds: bool
    family_rank: int


def subspace_inequality(
    x: RatMap, hyperplanes: Sequence[HForm], places: Sequence[Place]
) -> SubspaceReport:
    """Sum over S of the best independent-subfamily proximity, against
    (m+1) h(x) + (m(m+1)/2) (#S - 2).

    Requires coordinates linearly independent over the constants; the
    point then lies on none of the hyperplanes.
    """
    _check_places(places)
    if not hyperplanes:
        raise ConfigError("empty hyperplane family")
    m = x.m
    for hp in hyperplanes:
        if hp.degree != 1 or hp.nvars != m + 1:
            raise ConfigError("hyperplanes must be linear forms in the same space")
    if not coordinates_nondegenerate(x):
        raise DegenerateError("coordinates satisfy a constant linear relation")

    vectors = [hp.linear_vector() for hp in hyperplanes]
    family_rank = gaussian_rank(vectors)
    bases = [
        combo
        for combo in itertools.combinations(range(len(hyperplanes)), family_rank)
        if gaussian_rank([vectors[j] for j in combo]) == family_rank
    ]
    assert bases, "a nonempty family has a basis"

    values = [hyperplanes[j].evaluate(x) for j in range(len(hyperplanes))]
    for fx in values:
        if polys.is_zero(fx):
            raise DegenerateError("the point lies on a hyperplane")

    lhs = 0
    for place in places:
        # one coordinate minimum per place, shared by every hyperplane
        base = min(place.valuation(c) for c in x.coords if not polys.is_zero(c))
        lams = [place.valuation(fx) - base for fx in values]
        lhs += place.degree * max(sum(lams[j] for j in combo) for combo in bases)
    rhs = (m + 1) * Fraction(x.height) + Fraction(m * (m + 1), 2) * (len(places) - 2)
    return SubspaceReport(
        lhs=lhs, rhs=rhs, holds=lhs <= rhs, family_rank=family_rank
    )


# -- plane realizations and the hyperbolicity probe -------------------------------


@dataclass(frozen=True)
class PlaneRealization:
    """Explicit plane curves realizing the boundary components."""

    boundary_forms: tuple[HForm, ...]
    pairing_forms: tuple[HForm | None, ...]
    blown_points: tuple[tuple[str, tuple[int, int, int]], ...]

    @staticmethod
    def make(boundary_forms, pairing_forms, blown_points) -> "PlaneRealization":
        return PlaneRealization(
            boundary_forms=tuple(boundary_forms),
            pairing_forms=tuple(pairing_forms),
            blown_points=tuple(sorted((str(k), tuple(v)) for k, v in dict(blown_points).items())),
        )

    def validate_against(self, cfg: SurfaceConfig) -> None:
        if len(self.boundary_forms) != len(cfg.components):
            raise ConfigError("one form per boundary component is required")
        if len(self.pairing_forms) != len(cfg.components):
            raise ConfigError("one pairing slot per component is required")
        points = dict(self.blown_points)
        for i, comp in enumerate(cfg.components):
            form = self.boundary_forms[i]
            if form.nvars != 3 or form.degree != comp.degree:
                raise ConfigError(f"form degree mismatch at component {i}")
            pairing = self.pairing_forms[i]
            if comp.paired != (pairing is not None):
                raise ConfigError(f"pairing form mismatch at component {i}")
            if pairing is not None and pairing.degree != comp.pairing_degree:
                raise ConfigError(f"pairing degree mismatch at component {i}")
        on_component = {
            p.ident: i for i in range(len(cfg.components)) for p in cfg.points_on(i)
        }
        seen = set()
        for point in cfg.points:
            coords = points.get(point.ident)
            if coords is None:
                raise ConfigError(f"no coordinates for blown point {point.ident}")
            norm = _normalize_point(coords)
            if norm in seen:
                raise ConfigError(f"blown points collide at {coords}")
            seen.add(norm)
            home = on_component[point.ident]
            for i, form in enumerate(self.boundary_forms):
                value = form.evaluate_point(coords)
                if i == home and value != 0:
                    raise ConfigError(f"{point.ident} is not on its component")
                if i != home and value == 0:
                    raise ConfigError(f"{point.ident} lies on a foreign component")
            pairing = self.pairing_forms[home]
            if pairing is not None and pairing.evaluate_point(coords) != 0:
                raise ConfigError(f"{point.ident} misses its pairing curve")


def _normalize_point(coords: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for c in coords:
        g = _gcd(g, c)
    if g == 0:
        raise ConfigError("zero projective point")
    out = tuple(c // g for c in coords)
    lead = next(c for c in out if c)
    return tuple(-c for c in out) if lead < 0 else out


def realization_from_config(cfg: SurfaceConfig) -> PlaneRealization:
    doc = cfg.metadata.get("realization")
    if not doc:
        raise ConfigError("configuration carries no plane realization")
    boundary = [parse_form(text) for text in doc["forms"]]
    pairing: list[HForm | None] = [None] * len(cfg.components)
    for key, text in doc.get("pairings", {}).items():
        pairing[int(key)] = parse_form(text)
    points = {k: tuple(int(c) for c in v) for k, v in doc.get("points", {}).items()}
    real = PlaneRealization.make(boundary, pairing, points)
    real.validate_against(cfg)
    return real


@dataclass(frozen=True)
class ProbeRecord:
    height: int
    pullback_degree: Fraction
    support_count: int
    ratio: Fraction


def height_bound_probe(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    realization: PlaneRealization,
    x: RatMap,
) -> ProbeRecord:
    """Pullback degree of the weighted boundary against truncated support.

    Curves through a blown point, inside a component or constant are out
    of scope and raise ProbeExcluded.
    """
    if len(x.coords) != 3:
        raise ConfigError("the probe needs points of the projective plane")
    h = x.height
    if h == 0:
        raise ProbeExcluded("constant curve")
    values = []
    for i, form in enumerate(realization.boundary_forms):
        fx = form.evaluate(x)
        if polys.is_zero(fx):
            raise ProbeExcluded(f"curve lies inside boundary component {i}")
        values.append(fx)
    for i, pairing in enumerate(realization.pairing_forms):
        if pairing is None:
            continue
        bx = pairing.evaluate(x)
        if polys.is_zero(bx):
            raise ProbeExcluded(f"curve lies inside pairing curve {i}")
        if polys.degree(polys.gcd_poly(values[i], bx)) > 0:
            raise ProbeExcluded(f"curve passes through a blown point of component {i}")
        lam_f = realization.boundary_forms[i].degree * h - polys.degree(values[i])
        lam_b = pairing.degree * h - polys.degree(bx)
        if lam_f > 0 and lam_b > 0:
            raise ProbeExcluded(
                f"curve passes through a blown point of component {i} at infinity"
            )

    product: IntPoly = (1,)
    for fx in values:
        product = polys.mul(product, fx)
    support = polys.radical_degree(product)
    if polys.degree(product) < sum(f.degree for f in realization.boundary_forms) * h:
        support += 1
    degree = sum(
        Fraction(w) * form.degree * h
        for w, form in zip(wb.weights, realization.boundary_forms)
    )
    ratio = Fraction(degree) / max(1, support - 2)
    return ProbeRecord(
        height=h, pullback_degree=degree, support_count=support, ratio=ratio
    )


# -- randomized sweeps -----------------------------------------------------------

_PLACE_POOL: tuple[IntPoly, ...] = (
    (0, 1),          # t
    (-1, 1),         # t - 1
    (2, 1),          # t + 2
    (1, 0, 1),       # t^2 + 1
    (-2, 0, 1),      # t^2 - 2
    (1, 1, 0, 1),    # t^3 + t + 1
)


def _random_poly(rng: random.Random, max_deg: int, bound: int) -> IntPoly:
    deg = rng.randint(0, max_deg)
    return polys.trim([rng.randint(-bound, bound) for _ in range(deg + 1)])


def random_map(
    rng: random.Random, m: int, max_deg: int, bound: int, *, nondegenerate: bool = False
) -> RatMap:
    while True:
        raw = [_random_poly(rng, max_deg, bound) for _ in range(m + 1)]
        if all(polys.is_zero(p) for p in raw):
            continue
        x = RatMap.make(raw)
        if nondegenerate and not coordinates_nondegenerate(x):
            continue
        if nondegenerate and x.height == 0:
            continue
        return x


@lru_cache(maxsize=1)
def _pool_places() -> tuple[Place, ...]:
    return tuple(Place.finite(p) for p in _PLACE_POOL)


def random_places(rng: random.Random, low: int = 2, high: int = 4) -> list[Place]:
    count = rng.randint(low, min(high, len(_PLACE_POOL) + 1))
    chosen: list[Place] = [Place.infinite()] if rng.random() < 0.7 else []
    pool = list(_pool_places())
    rng.shuffle(pool)
    for p in pool:
        if len(chosen) >= count:
            break
        chosen.append(p)
    return chosen[:count] if len(chosen) >= 2 else [Place.infinite(), Place.finite((0, 1))]


def random_hyperplanes(
    rng: random.Random, m: int, q: int, bound: int
) -> list[HForm]:
    """q integer hyperplanes with every min(q, m+1)-subfamily independent."""
    k = min(q, m + 1)
    while True:
        forms = []
        for _ in range(q):
            while True:
                vec = [rng.randint(-bound, bound) for _ in range(m + 1)]
                if any(vec):
                    break
            forms.append(
                HForm.make(
                    m + 1,
                    {
                        tuple(1 if j == i else 0 for j in range(m + 1)): c
                        for i, c in enumerate(vec)
                        if c
                    },
                )
            )
        vectors = [f.linear_vector() for f in forms]
        if all(
            gaussian_rank([vectors[j] for j in combo]) == k
            for combo in itertools.combinations(range(q), k)
        ):
            return forms


def _random_form(rng: random.Random, nvars: int, degree: int, bound: int) -> HForm:
    exps = [
        e
        for e in itertools.product(range(degree + 1), repeat=nvars)
        if sum(e) == degree
    ]
    while True:
        terms = {e: rng.randint(-bound, bound) for e in exps}
        if any(terms.values()):
            return HForm.make(nvars, terms)


def _subspace_chunk(args) -> dict:
    seed, count, max_m, max_deg, bound = args
    rng = random.Random(seed)
    out = {"samples": 0, "violations": 0, "fmt_failures": 0, "degenerate": 0}
    for _ in range(count):
        m = rng.randint(1, max_m)
        x = random_map(rng, m, max_deg, bound, nondegenerate=True)
        q = rng.randint(m + 1, m + 3)
        hyperplanes = random_hyperplanes(rng, m, q, 9)
        places = random_places(rng)
        try:
            report = subspace_inequality(x, hyperplanes, places)
        except DegenerateError:
            out["degenerate"] += 1
            continue
        out["samples"] += 1
        if not report.holds:
            out["violations"] += 1
        form = _random_form(rng, m + 1, rng.randint(1, 3), 9)
        fx = form.evaluate(x)
        if polys.is_zero(fx):
            out["degenerate"] += 1
            continue
        counting = counting_functions(form, x, places, truncated=False)
        if counting.proximity + counting.counting != counting.total:
            out["fmt_failures"] += 1
    return out


def subspace_sweep(
    samples: int,
    *,
    seed: int = 0,
    processes: int = 1,
    max_m: int = 3,
    max_deg: int = 10,
    bound: int = 100,
) -> dict:
    """Random subspace-inequality and height-identity sweep; returns tallies."""
    chunks = _split(samples, processes)
    args = [
        (seed * 1_000_003 + idx, count, max_m, max_deg, bound)
        for idx, count in enumerate(chunks)
    ]
    results = _run_chunks(_subspace_chunk, args, processes)
    return _merge_tallies(results)


def _product_formula_chunk(args) -> dict:
    seed, count = args
    rng = random.Random(seed)
    inf = Place.infinite()
    out = {"samples": 0, "failures": 0}
    for _ in range(count):
        exps = [rng.randint(0, 3) for _ in _PLACE_POOL]
        c = rng.choice([k for k in range(-9, 10) if k])
        f: IntPoly = (c,)
        for p, e in zip(_PLACE_POOL, exps):
            f = polys.mul(f, polys.pow_(p, e))
        total = 0
        ok = True
        for place, e in zip(_pool_places(), exps):
            v = place.valuation(f)
            if v != e:
                ok = False
            total += place.degree * v
        total += inf.degree * inf.valuation(f)
        out["samples"] += 1
        if not ok or total != 0:
            out["failures"] += 1
    return out


def product_formula_sweep(samples: int, *, seed: int = 0, processes: int = 1) -> dict:
    """Build elements with known factorizations and re-read their valuations."""
    chunks = _split(samples, processes)
    args = [(seed * 7_777_777 + idx, count) for idx, count in enumerate(chunks)]
    results = _run_chunks(_product_formula_chunk, args, processes)
    return _merge_tallies(results)


def _probe_chunk(args) -> dict:
    cfg, wb, realization, seed, count, max_deg, bound = args
    rng = random.Random(seed)
    out = {
        "samples": 0,
        "excluded": 0,
        "alpha_num": 0,
        "alpha_den": 1,
        "worst": None,
    }
    best = Fraction(0)
    for _ in range(count):
        x = random_map(rng, 2, max_deg, bound)
        try:
            record = height_bound_probe(cfg, wb, realization, x)
        except ProbeExcluded:
            out["excluded"] += 1
            continue
        out["samples"] += 1
        if record.ratio > best:
            best = record.ratio
            out["worst"] = {
                "height": record.height,
                "degree": str(record.pullback_degree),
                "support": record.support_count,
            }
    out["alpha_num"] = best.numerator
    out["alpha_den"] = best.denominator
    return out


def probe_sweep(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    realization: PlaneRealization,
    samples: int,
    *,
    seed: int = 0,
    processes: int = 1,
    max_deg: int = 6,
    bound: int = 20,
) -> dict:
    chunks = _split(samples, processes)
    args = [
        (cfg, wb, realization, seed * 31_337 + idx, count, max_deg, bound)
        for idx, count in enumerate(chunks)
    ]
    results = _run_chunks(_probe_chunk, args, processes)
    merged = {"samples": 0, "excluded": 0}
    alpha = Fraction(0)
    worst = None
    for r in results:
        merged["samples"] += r["samples"]
        merged["excluded"] += r["excluded"]
        cand = Fraction(r["alpha_num"], r["alpha_den"])
        if cand > alpha:
            alpha = cand
            worst = r["worst"]
    merged["alpha_emp"] = str(alpha)
    merged["alpha_emp_float"] = float(alpha)
    merged["worst"] = worst
    return merged


def _split(samples: int, processes: int) -> list[int]:
    if samples < 0:
        raise ValueError("negative sample count")
    parts = max(1, processes)
    base, extra = divmod(samples, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _run_chunks(worker, args, processes: int) -> list[dict]:
    if processes > 1:
        with Pool(processes) as pool:
            return pool.map(worker, args)
    return [worker(a) for a in args]


def _merge_tallies(results: list[dict]) -> dict:
    merged: dict = {}
    for r in results:
        for k, v in r.items():
            merged[k] = merged.get(k, 0) + v
    return merged
