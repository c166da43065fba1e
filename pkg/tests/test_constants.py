"""Feasibility constants: section counts, the derived chain, verification."""

import random
from dataclasses import replace
from fractions import Fraction
from math import comb, floor

import pytest

from orbicert.catalog import load_builtin
from orbicert.certifier import build_report
from orbicert.constants import (
    ChainMismatchError,
    InfeasibleError,
    feasible_chain,
    filtration_sections_lower,
    sections_certified,
    sections_power_exact,
    verify_chain,
)
from orbicert.lattice import DivisorClass, SurfaceConfig
from orbicert.positivity import WeightedBoundary
from orbicert.quadext import QuadExt

FOUR_LINES = load_builtin("four-lines")
WEIGHTS = WeightedBoundary.make([4, 4, 4, 3])


def plane(weight: int) -> tuple[SurfaceConfig, WeightedBoundary]:
    cfg = SurfaceConfig.build(
        [], [], hyperplane=True, allow_single_component=True
    )
    return cfg, WeightedBoundary.make([weight])


def test_sections_certified_plane_binomials():
    cfg, wb = plane(1)
    h = DivisorClass.make(1)
    for d in range(0, 12):
        lower, exact = sections_certified(cfg, d * h, h)
        assert exact == comb(d + 2, 2)
        assert lower == exact


def test_sections_certified_guards():
    cfg, wb = plane(1)
    h = DivisorClass.make(1)
    with pytest.raises(ValueError):
        sections_certified(cfg, DivisorClass.make(Fraction(1, 2)), h)
    with pytest.raises(ValueError):
        sections_certified(cfg, h, DivisorClass.make(0))
    # negative plane degree: h^2 obstruction cannot be ruled in, only bounded
    lower, exact = sections_certified(cfg, -4 * h, h)
    assert lower == 0 and exact is None


def test_sections_certified_four_lines():
    dp = 15 * DivisorClass.make(1) - DivisorClass.make(
        0, {"P1.1": -4, "P2.1": -4, "P3.1": -4}
    )
    assert dp.e == {"P1.1": 4, "P2.1": 4, "P3.1": 4}
    for n in range(1, 6):
        lower, exact = sections_certified(FOUR_LINES, n * dp, dp)
        assert exact == 1 + Fraction(177 * n * n + 33 * n, 2)
        assert sections_power_exact(FOUR_LINES, WEIGHTS, n) == exact


def test_plane_sum_matches_closed_form():
    for a in (1, 2, 3, 5):
        cfg, wb = plane(a)
        report = build_report(cfg, wb)
        closed = report.components[0].volume_ratio
        assert closed == QuadExt(Fraction(a, 3))
        for n in (1, 2, 7, 40):
            s = filtration_sections_lower(cfg, wb, 0, n)
            m = sections_power_exact(cfg, wb, n)
            assert m == comb(a * n + 2, 2)
            assert Fraction(s, n * m) == Fraction(a, 3)


def test_filtration_sections_guards():
    cfg, wb = plane(3)
    with pytest.raises(ValueError):
        filtration_sections_lower(cfg, wb, 0, 0)
    with pytest.raises(ValueError):
        filtration_sections_lower(cfg, WeightedBoundary.make([Fraction(1, 2)]), 0, 3)
    bad = SurfaceConfig.build([2], [2], hyperplane=False, allow_single_component=True)
    with pytest.raises(ValueError):
        filtration_sections_lower(bad, WeightedBoundary.make([1]), 0, 3)


def test_sum_matches_naive_enumeration():
    # brute-force the certified lower bounds straight from the definitions
    dp_class = 15 * DivisorClass.make(1) - DivisorClass.make(
        0, {"P1.1": -4, "P2.1": -4, "P3.1": -4}
    )
    report = build_report(FOUR_LINES, WEIGHTS)
    for n in (1, 2, 3):
        for i in range(4):
            from orbicert.lattice import strict_transform

            di = strict_transform(FOUR_LINES, i)
            cap = floor(report.components[i].truncation_root * n)
            total = 0
            for m in range(1, cap + 1):
                lower, _ = sections_certified(
                    FOUR_LINES, n * dp_class - m * di, dp_class
                )
                total += lower
            assert filtration_sections_lower(FOUR_LINES, WEIGHTS, i, n) == total


FROZEN = dict(
    n=21,
    m_sections=39376,
    sums=(3321696, 3321696, 3321696, 2919644),
    argmax=3,
    b=37950,
    c_const=Fraction(353, 291067392),
    q_const=Fraction(15508246393, 58404665),
    m0=1458913,
)


def test_chain_frozen_values():
    chain = feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(1, 176))
    assert chain.eps_target == Fraction(1, 176)
    assert chain.eps_half == Fraction(1, 352)
    assert chain.n == FROZEN["n"]
    assert chain.m_sections == FROZEN["m_sections"]
    assert chain.sums == FROZEN["sums"]
    assert chain.ratios[0] == QuadExt(Fraction(435597, 434984))
    assert chain.argmax == FROZEN["argmax"]
    assert chain.b == FROZEN["b"]
    assert chain.c_const == FROZEN["c_const"]
    assert chain.q_const == FROZEN["q_const"]
    assert chain.beta_upper[0] == Fraction(1947, 484)
    assert chain.m0 == FROZEN["m0"]
    doc = chain.to_json_dict()
    assert doc["N"] == 21
    assert doc["multiplicity_threshold"] == FROZEN["m0"]
    assert doc["ratio_argmax"] == 3


def test_chain_verifies():
    chain = feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(1, 176))
    assert verify_chain(FOUR_LINES, WEIGHTS, chain) is True


def test_verify_rejects_tampering():
    chain = feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(1, 176))
    for broken in (
        replace(chain, m0=chain.m0 + 1),
        replace(chain, m0=chain.m0 - 1),
        replace(chain, b=chain.b - 1),
        replace(chain, b=chain.b + 1),
        replace(chain, n=chain.n - 1),
        replace(chain, m_sections=chain.m_sections + 1),
        replace(chain, sums=(1, 1, 1, 1)),
        replace(chain, argmax=0),
        replace(chain, c_const=chain.c_const * 2),
        replace(chain, q_const=chain.q_const - 1),
        replace(chain, eps_half=chain.eps_half * 2),
    ):
        with pytest.raises(ChainMismatchError):
            verify_chain(FOUR_LINES, WEIGHTS, broken)


def test_chain_argument_validation():
    with pytest.raises(ValueError):
        feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(0))
    with pytest.raises(ValueError):
        feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(-1, 2))
    with pytest.raises(InfeasibleError):
        feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(1, 176), cap=5)
    bad = SurfaceConfig.build([2], [2], hyperplane=False, allow_single_component=True)
    with pytest.raises(InfeasibleError):
        feasible_chain(bad, WeightedBoundary.make([1]), None, Fraction(1, 10))


def test_chain_respects_precomputed_report():
    report = build_report(FOUR_LINES, WEIGHTS)
    fresh = feasible_chain(FOUR_LINES, WEIGHTS, report, report.slack_lower)
    again = feasible_chain(FOUR_LINES, WEIGHTS, None, Fraction(1, 176))
    assert fresh == again


def test_chain_on_random_passing_weights():
    from orbicert.sampling import random_passing_candidate

    rng = random.Random(811)
    checked = 0
    while checked < 3:
        cfg, wb = random_passing_candidate(rng, max_degree=2)
        report = build_report(cfg, wb)
        if report.slack_lower is None or report.slack_lower <= 0:
            continue
        try:
            chain = feasible_chain(cfg, wb, report, report.slack_lower, cap=60)
        except InfeasibleError:
            continue
        assert verify_chain(cfg, wb, chain)
        checked += 1
