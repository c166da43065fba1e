"""Sufficient positivity checks for divisor classes on the blown-up plane.

Ampleness is certified through a Nakai-Moishezon style argument that only
needs three verifiable facts: positive self-intersection, positive pairing
with every exceptional curve, and a positive Bezout residue that bounds the
multiplicity loss of any non-exceptional curve against the blown-up points
carried by each paired component.  The criterion is sufficient, never
necessary, so failures come back as inconclusive rather than as a
certified negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .lattice import (
    Coeff,
    ConfigError,
    DivisorClass,
    SurfaceConfig,
    intersect,
    strict_transform,
)

Multiplicity = Union[int, float]  # float admits only math.inf

CERTIFIED = "certified-ample"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    certified: bool
    reason: str = ""
    checks: tuple[tuple[str, bool], ...] = ()
    value: Fraction | None = None

    @property
    def label(self) -> str:
        return CERTIFIED if self.certified else f"{INCONCLUSIVE}({self.reason})"

    def __bool__(self) -> bool:
        return self.certified


@dataclass(frozen=True)
class WeightedBoundary:
    """Positive weights, one per boundary component in config order."""

    weights: tuple[Coeff, ...]

    @staticmethod
    def make(weights: Sequence[Coeff]) -> "WeightedBoundary":
        ws = []
        for w in weights:
            f = Fraction(w)
            if f <= 0:
                raise ConfigError(f"weight {w} must be positive")
            ws.append(int(f) if f.denominator == 1 else f)
        return WeightedBoundary(tuple(ws))

    def check_against(self, cfg: SurfaceConfig) -> None:
        if len(self.weights) != len(cfg.components):
            raise ConfigError(
                f"{len(self.weights)} weights for {len(cfg.components)} components"
            )


def boundary_class(cfg: SurfaceConfig, wb: WeightedBoundary) -> DivisorClass:
    """The weighted boundary divisor: sum of w_i times each strict transform."""
    wb.check_against(cfg)
    total = DivisorClass.make(0)
    for i, w in enumerate(wb.weights):
        total = total + w * strict_transform(cfg, i)
    return total


def ample_class_sufficient(cfg: SurfaceConfig, d: DivisorClass) -> Verdict:
    """Three-part sufficient ampleness test for an arbitrary class.

    The Bezout residue check groups stored exceptional coefficients by the
    paired component owning each point: a plane curve of degree c meets a
    degree d_i component in at most c*d_i points counted with multiplicity,
    so the worst loss per unit of plane degree is d_i times the largest
    coefficient sitting on that component.
    """
    checks: list[tuple[str, bool]] = []

    square = intersect(d, d)
    ok_square = square > 0
    checks.append(("self_intersection_positive", ok_square))

    # every blown point must pair positively; a missing entry means 0
    stored = d.e
    ok_exceptional = all(stored.get(p.ident, 0) > 0 for p in cfg.points)
    checks.append(("exceptional_pairings_positive", ok_exceptional))

    loss = Fraction(0)
    for i, comp in enumerate(cfg.components):
        if not comp.paired:
            continue
        coeffs = [d.coefficient(p.ident) for p in cfg.points_on(i)]
        if coeffs:
            loss += comp.degree * max(Fraction(0), max(Fraction(c) for c in coeffs))
    residue = Fraction(d.h) - loss
    ok_residue = residue > 0
    checks.append(("bezout_residue_positive", ok_residue))

    for name, ok in checks:
        if not ok:
            return Verdict(False, name, tuple(checks))
    return Verdict(True, "", tuple(checks))


def ample_sufficient(cfg: SurfaceConfig, wb: WeightedBoundary) -> Verdict:
    """Sufficient ampleness of the weighted boundary divisor."""
    return ample_class_sufficient(cfg, boundary_class(cfg, wb))


def _is_inf(m: Multiplicity) -> bool:
    return isinstance(m, float) and m == float("inf")


def check_multiplicity(m: Multiplicity) -> None:
    if _is_inf(m):
        return
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise ConfigError(f"multiplicity {m!r} must be a positive integer or inf")


def orbifold_coefficient(m: Multiplicity) -> Fraction:
    """1 - 1/m, with the logarithmic value 1 at m = inf."""
    check_multiplicity(m)
    if _is_inf(m):
        return Fraction(1)
    return 1 - Fraction(1, m)


def orbifold_canonical_big(
    cfg: SurfaceConfig, multiplicities: Sequence[Multiplicity]
) -> Verdict:
    """Plane-degree test for bigness of K plus the orbifold boundary.

    The class K + sum((1 - 1/m_i) * D_i) pushes forward to degree
    -3 + sum((1 - 1/m_i) * d_i); a positive total degree certifies bigness
    on the plane model, anything else is inconclusive.
    """
    if len(multiplicities) != len(cfg.components):
        raise ConfigError(
            f"{len(multiplicities)} multiplicities for {len(cfg.components)} components"
        )
    total = Fraction(-3)
    for comp, m in zip(cfg.components, multiplicities):
        total += orbifold_coefficient(m) * comp.degree
    if total > 0:
        return Verdict(True, "", (("orbifold_degree_positive", True),), total)
    return Verdict(
        False, "orbifold_degree_nonpositive",
        (("orbifold_degree_positive", False),), total,
    )
