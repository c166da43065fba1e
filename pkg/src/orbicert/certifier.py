"""Hyperbolicity hypothesis certificates for weighted boundary divisors.

The certified statement takes a blown-up plane with boundary components
D_1..D_r, positive integer weights p, and checks, in exact arithmetic:

* at least two boundary components, no three meeting at a point;
* the weighted divisor D_p = sum(p_i * D_i) passes the sufficient
  ampleness test;
* for every component, the filtration inequality
  2 * D_p^2 * x > (D_p . D_i) * x^2 + 3 * D_p^2 * p_i holds at the
  truncation root x of D_i^2 * x^2 - 2 (D_p . D_i) x + D_p^2;
* every volume-ratio lower bound exceeds its weight, with positive slack.

Each check lands in a Certificate with a named pass/fail/inconclusive
status, exact values (rational or quadratic) and a serialization that
round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from . import __version__ as _tool_version
from .lattice import (
    ConfigError,
    DivisorClass,
    SurfaceConfig,
    intersect,
    strict_transform,
)
from .positivity import (
    Multiplicity,
    Verdict,
    WeightedBoundary,
    ample_sufficient,
    boundary_class,
    check_multiplicity,
    orbifold_canonical_big,
)
from .quadext import (
    QuadExt,
    compare_cross,
    min_root_quadratic,
    rational_below,
)

CERTIFICATE_FORMAT_VERSION = 1

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
WAIVED = "waived"
ASSUMED = "assumed"
SKIPPED = "skipped"

_BLOCKING = {FAIL: 2, INCONCLUSIVE: 1, SKIPPED: 1}


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: str
    detail: str = ""


@dataclass(frozen=True)
class ComponentCheck:
    """Exact per-component record for the filtration argument."""

    index: int
    degree: int
    weight: Fraction
    self_square: Fraction
    dp_pairing: Fraction
    truncation_root: QuadExt
    inequality_holds: bool
    volume_ratio: QuadExt
    exceeds_weight: bool


@dataclass(frozen=True)
class BoundaryReport:
    dp_square: Fraction
    ample: Verdict
    components: tuple[ComponentCheck, ...]
    slack: QuadExt | None
    slack_lower: Fraction | None


def truncation_root(cfg: SurfaceConfig, wb: WeightedBoundary, i: int) -> QuadExt:
    """Smallest positive root of D_i^2 x^2 - 2 (D_p . D_i) x + D_p^2.

    With D_p certified ample the Hodge index theorem keeps the quarter
    discriminant nonnegative; a NoRealRootError therefore flags corrupted
    input upstream rather than a legitimate geometry.
    """
    dp = boundary_class(cfg, wb)
    di = strict_transform(cfg, i)
    return min_root_quadratic(intersect(di, di), intersect(dp, di), intersect(dp, dp))


def filtration_inequality(cfg: SurfaceConfig, wb: WeightedBoundary, i: int) -> bool:
    """2 D_p^2 x > (D_p . D_i) x^2 + 3 D_p^2 p_i at the truncation root."""
    dp = boundary_class(cfg, wb)
    di = strict_transform(cfg, i)
    dp2 = intersect(dp, dp)
    pairing = intersect(dp, di)
    root = min_root_quadratic(intersect(di, di), pairing, dp2)
    lhs = 2 * dp2 * root
    rhs = pairing * root * root + 3 * dp2 * Fraction(wb.weights[i])
    return (lhs - rhs).sign() > 0


def volume_ratio_lower(cfg: SurfaceConfig, wb: WeightedBoundary, i: int) -> QuadExt:
    """Closed-form lower bound for the asymptotic section volume ratio.

    ((2/3) x D_p^2 - (1/3) (D_p . D_i) x^2) / D_p^2 at the truncation root.
    """
    dp = boundary_class(cfg, wb)
    di = strict_transform(cfg, i)
    dp2 = intersect(dp, dp)
    pairing = intersect(dp, di)
    root = min_root_quadratic(intersect(di, di), pairing, dp2)
    return (root * dp2 * Fraction(2, 3) - root * root * pairing * Fraction(1, 3)) / dp2


def weight_slack(report: BoundaryReport) -> tuple[QuadExt, Fraction]:
    """Minimum of (ratio - weight)/weight plus a rational lower bound.

    The minimum is taken with exact cross-field comparisons.  The rational
    bound equals the minimum when it is rational; otherwise it is an
    even-index continued fraction convergent, hence strictly below.
    """
    if not report.components:
        raise ConfigError("empty component list")
    slack: QuadExt | None = None
    for check in report.components:
        rel = (check.volume_ratio - check.weight) / check.weight
        if slack is None or compare_cross(rel, slack) < 0:
            slack = rel
    assert slack is not None
    if slack.is_rational:
        return slack, slack.as_fraction()
    gap = Fraction(1)
    while not QuadExt(gap) < slack:
        gap /= 2
    return slack, rational_below(slack, gap / 2**40)


def build_report(cfg: SurfaceConfig, wb: WeightedBoundary) -> BoundaryReport:
    """Evaluate ampleness and all per-component checks once."""
    wb.check_against(cfg)
    dp = boundary_class(cfg, wb)
    dp2 = Fraction(intersect(dp, dp))
    ample = ample_sufficient(cfg, wb)
    components: list[ComponentCheck] = []
    if ample.certified:
        for i, comp in enumerate(cfg.components):
            di = strict_transform(cfg, i)
            self_sq = Fraction(intersect(di, di))
            pairing = Fraction(intersect(dp, di))
            root = min_root_quadratic(self_sq, pairing, dp2)
            weight = Fraction(wb.weights[i])
            lhs = 2 * dp2 * root
            rhs = pairing * root * root + 3 * dp2 * weight
            holds = (lhs - rhs).sign() > 0
            ratio = (root * dp2 * Fraction(2, 3) - root * root * pairing * Fraction(1, 3)) / dp2
            exceeds = compare_cross(ratio, weight) > 0
            # the inequality and the ratio bound are algebraically the same
            assert holds == exceeds, (i, root, ratio, weight)
            components.append(
                ComponentCheck(
                    index=i,
                    degree=comp.degree,
                    weight=weight,
                    self_square=self_sq,
                    dp_pairing=pairing,
                    truncation_root=root,
                    inequality_holds=holds,
                    volume_ratio=ratio,
                    exceeds_weight=exceeds,
                )
            )
    report = BoundaryReport(
        dp_square=dp2, ample=ample, components=tuple(components),
        slack=None, slack_lower=None,
    )
    if ample.certified and components and all(c.inequality_holds for c in components):
        slack, lower = weight_slack(report)
        report = replace(report, slack=slack, slack_lower=lower)
    return report


# -- number encoding ----------------------------------------------------------

TAG_RATIONAL = "exact-rational"
TAG_QUADRATIC = "exact-quadratic"
TAG_LOWER = "lower-bound"
TAG_UPPER = "upper-bound"
TAG_EMPIRICAL = "empirical"


def encode_number(value, tag: str | None = None) -> dict:
    if isinstance(value, QuadExt) and not value.is_rational:
        return {
            "kind": "quadratic",
            "a": str(value.a),
            "b": str(value.b),
            "delta": value.delta,
            "text": str(value),
            "tag": tag or TAG_QUADRATIC,
        }
    if isinstance(value, QuadExt):
        value = value.as_fraction()
    frac = Fraction(value)
    return {"kind": "rational", "value": str(frac), "tag": tag or TAG_RATIONAL}


def decode_number(doc: Mapping):
    if doc["kind"] == "quadratic":
        return QuadExt(Fraction(doc["a"]), Fraction(doc["b"]), int(doc["delta"]))
    return Fraction(doc["value"])


def encode_multiplicity(m: Multiplicity):
    return "inf" if isinstance(m, float) else int(m)


def decode_multiplicity(raw) -> Multiplicity:
    if raw in ("inf", "Inf", "INF", None):
        return float("inf")
    m = int(raw)
    check_multiplicity(m)
    return m


# -- certificate ---------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    config_echo: dict
    weights: tuple[Fraction, ...]
    multiplicities: tuple[Multiplicity, ...]
    dp_square: Fraction
    hypotheses: tuple[Hypothesis, ...]
    components: tuple[ComponentCheck, ...]
    slack: QuadExt | None
    slack_lower: Fraction | None
    overall: str
    first_failure: str | None
    constants: dict | None
    orbifold: dict | None
    formulas: tuple[tuple[str, str], ...]

    def to_json_dict(self) -> dict:
        doc = {
            "version": CERTIFICATE_FORMAT_VERSION,
            "tool": {"name": "orbicert", "version": _tool_version},
            "config": self.config_echo,
            "weights": [encode_number(w) for w in self.weights],
            "multiplicities": [encode_multiplicity(m) for m in self.multiplicities],
            "boundary_square": encode_number(self.dp_square),
            "hypotheses": [
                {"name": h.name, "status": h.status, "detail": h.detail}
                for h in self.hypotheses
            ],
            "components": [
                {
                    "index": c.index,
                    "degree": c.degree,
                    "weight": encode_number(c.weight),
                    "self_square": encode_number(c.self_square),
                    "boundary_pairing": encode_number(c.dp_pairing),
                    "truncation_root": encode_number(c.truncation_root),
                    "filtration_inequality": c.inequality_holds,
                    "volume_ratio_lower": encode_number(c.volume_ratio, TAG_LOWER),
                    "exceeds_weight": c.exceeds_weight,
                }
                for c in self.components
            ],
            "slack": encode_number(self.slack) if self.slack is not None else None,
            "slack_lower": (
                encode_number(self.slack_lower, TAG_LOWER)
                if self.slack_lower is not None
                else None
            ),
            "overall": self.overall,
            "first_failure": self.first_failure,
            "constants": self.constants,
            "orbifold": self.orbifold,
            "formulas": [list(pair) for pair in self.formulas],
        }
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_json(text: str) -> "Certificate":
        doc = json.loads(text)
        return Certificate.from_json_dict(doc)

    @staticmethod
    def from_json_dict(doc: Mapping) -> "Certificate":
        if doc.get("version") != CERTIFICATE_FORMAT_VERSION:
            raise ConfigError(f"unsupported certificate version {doc.get('version')}")
        components = tuple(
            ComponentCheck(
                index=int(c["index"]),
                degree=int(c["degree"]),
                weight=Fraction(decode_number(c["weight"])),
                self_square=Fraction(decode_number(c["self_square"])),
                dp_pairing=Fraction(decode_number(c["boundary_pairing"])),
                truncation_root=QuadExt.of(decode_number(c["truncation_root"])),
                inequality_holds=bool(c["filtration_inequality"]),
                volume_ratio=QuadExt.of(decode_number(c["volume_ratio_lower"])),
                exceeds_weight=bool(c["exceeds_weight"]),
            )
            for c in doc["components"]
        )
        return Certificate(
            config_echo=dict(doc["config"]),
            weights=tuple(Fraction(decode_number(w)) for w in doc["weights"]),
            multiplicities=tuple(
                decode_multiplicity(m) for m in doc["multiplicities"]
            ),
            dp_square=Fraction(decode_number(doc["boundary_square"])),
            hypotheses=tuple(
                Hypothesis(h["name"], h["status"], h.get("detail", ""))
                for h in doc["hypotheses"]
            ),
            components=components,
            slack=(
                QuadExt.of(decode_number(doc["slack"]))
                if doc.get("slack") is not None
                else None
            ),
            slack_lower=(
                Fraction(decode_number(doc["slack_lower"]))
                if doc.get("slack_lower") is not None
                else None
            ),
            overall=str(doc["overall"]),
            first_failure=doc.get("first_failure"),
            constants=doc.get("constants"),
            orbifold=doc.get("orbifold"),
            formulas=tuple((k, v) for k, v in doc.get("formulas", [])),
        )


_FORMULAS: tuple[tuple[str, str], ...] = (
    ("truncation_root", "least positive x with D_i^2 x^2 - 2 (D_p.D_i) x + D_p^2 = 0"),
    ("filtration_inequality", "2 D_p^2 x > (D_p.D_i) x^2 + 3 D_p^2 p_i at the truncation root"),
    ("volume_ratio_lower", "((2/3) x D_p^2 - (1/3) (D_p.D_i) x^2) / D_p^2"),
    ("slack", "min over components of (volume_ratio - weight) / weight"),
    ("sections_euler", "chi(d) = 1 + d.(d - K)/2"),
)


def certify(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    multiplicities: Sequence[Multiplicity] | None = None,
    *,
    twist_alpha: Fraction | int = 1,
    constants_cap: int = 200,
    include_constants: bool | None = None,
) -> Certificate:
    """Run the full hypothesis checklist and assemble a certificate.

    Failures are certified too: the checklist keeps evaluating whatever
    remains meaningful, overall status aggregates to pass, fail or
    inconclusive, and first_failure names the earliest definite failure.
    When finite multiplicities are supplied and the checklist passes, the
    certificate additionally carries the feasibility constants chain and
    the orbifold thresholds.
    """
    wb.check_against(cfg)
    if multiplicities is None:
        multiplicities = tuple(float("inf") for _ in cfg.components)
    multiplicities = tuple(multiplicities)
    if len(multiplicities) != len(cfg.components):
        raise ConfigError(
            f"{len(multiplicities)} multiplicities for {len(cfg.components)} components"
        )
    for m in multiplicities:
        check_multiplicity(m)

    hypotheses: list[Hypothesis] = []
    if cfg.r >= 2:
        hypotheses.append(Hypothesis("component_count", PASS, f"r = {cfg.r}"))
    elif cfg.allow_single_component:
        hypotheses.append(
            Hypothesis("component_count", WAIVED, "single component accepted by config flag")
        )
    else:
        hypotheses.append(
            Hypothesis("component_count", FAIL, "at least two boundary components required")
        )

    hypotheses.append(
        Hypothesis(
            "no_three_meet",
            PASS if cfg.no_three_meet else FAIL,
            "declared by the configuration; not derivable from blow-up data",
        )
    )
    if any(c.paired for c in cfg.components):
        hypotheses.append(
            Hypothesis(
                "pairing_points_generic",
                ASSUMED,
                "transversal pairing intersections and smooth padding points are assumed",
            )
        )

    report = build_report(cfg, wb)
    if report.ample.certified:
        hypotheses.append(Hypothesis("ampleness", PASS, "sufficient criterion certified"))
    else:
        hypotheses.append(
            Hypothesis("ampleness", INCONCLUSIVE, f"failed check: {report.ample.reason}")
        )

    if report.components:
        bad = [c.index for c in report.components if not c.inequality_holds]
        hypotheses.append(
            Hypothesis(
                "filtration_inequality",
                PASS if not bad else FAIL,
                "" if not bad else f"fails at component index {bad[0]}",
            )
        )
        hypotheses.append(
            Hypothesis(
                "volume_ratio_exceeds_weight",
                PASS if not bad else FAIL,
                "" if not bad else f"ratio at most weight at component index {bad[0]}",
            )
        )
        if report.slack is not None:
            positive = report.slack.sign() > 0
            hypotheses.append(
                Hypothesis(
                    "slack_positive",
                    PASS if positive else FAIL,
                    f"slack lower bound {report.slack_lower}",
                )
            )
    else:
        hypotheses.append(
            Hypothesis("filtration_inequality", SKIPPED, "ampleness not certified")
        )

    worst = max((_BLOCKING.get(h.status, 0) for h in hypotheses), default=0)
    overall = PASS if worst == 0 else (INCONCLUSIVE if worst == 1 else FAIL)
    first_failure = next((h.name for h in hypotheses if h.status == FAIL), None)

    constants_doc: dict | None = None
    orbifold_doc: dict | None = None
    finite = [m for m in multiplicities if not isinstance(m, float)]
    want_constants = (
        include_constants
        if include_constants is not None
        else bool(finite) and overall == PASS
    )
    if want_constants and overall == PASS:
        constants_doc, orbifold_doc = _conclusion_sections(
            cfg, wb, report, multiplicities, Fraction(twist_alpha), constants_cap
        )

    return Certificate(
        config_echo=cfg.to_json_dict(),
        weights=tuple(Fraction(w) for w in wb.weights),
        multiplicities=multiplicities,
        dp_square=report.dp_square,
        hypotheses=tuple(hypotheses),
        components=report.components,
        slack=report.slack,
        slack_lower=report.slack_lower,
        overall=overall,
        first_failure=first_failure,
        constants=constants_doc,
        orbifold=orbifold_doc,
        formulas=_FORMULAS,
    )


def _conclusion_sections(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    report: BoundaryReport,
    multiplicities: tuple[Multiplicity, ...],
    twist_alpha: Fraction,
    constants_cap: int,
):
    # local imports keep module dependencies acyclic
    from .constants import InfeasibleError, feasible_chain
    from .orbifold import OrbifoldDivisor, ample_twist_threshold

    try:
        chain = feasible_chain(
            cfg, wb, report, report.slack_lower, cap=constants_cap
        )
        constants_doc = chain.to_json_dict()
        finite = [m for m in multiplicities if not isinstance(m, float)]
        threshold_met = all(m >= chain.m0 for m in finite)
        mult_doc = {
            "multiplicity_threshold": chain.m0,
            "given_multiplicities_meet_threshold": threshold_met,
        }
    except InfeasibleError as exc:
        constants_doc = {"status": "infeasible-within-cap", "detail": str(exc)}
        mult_doc = {}

    delta = OrbifoldDivisor.make(
        [(i, m) for i, m in enumerate(multiplicities)]
    )
    twist = ample_twist_threshold(cfg, wb, twist_alpha, delta)
    big = orbifold_canonical_big(cfg, multiplicities)
    orbifold_doc = {
        **mult_doc,
        "ample_twist_threshold": twist,
        "twist_alpha": encode_number(twist_alpha),
        "orbifold_canonical_big": big.certified,
        "orbifold_canonical_degree": encode_number(big.value),
    }
    return constants_doc, orbifold_doc
