"""Exact feasibility constants for the degeneracy conclusion.

Everything here reduces to certified section counts.  For a divisor class
d and a certified-ample reference class A:

* if (K - d) . A < 0 then h^2 vanishes and h^0 >= max(0, chi(d));
* if additionally d - K passes the ampleness test then h^1 and h^2 both
  vanish and h^0 = chi(d) exactly.

The chain searches the least N for which the scaled ratio
beta_i * N * M / S_i(N) leaves room below 1 + eps/2 for every component,
then derives the least admissible b together with the constants C, Q and
the multiplicity threshold m0.  All comparisons are exact; the only
rounding is the explicit continued fraction bound used for Q and for the
upper bounds on the volume ratios, which only ever rounds in the safe
direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .certifier import (
    TAG_UPPER,
    BoundaryReport,
    build_report,
    encode_number,
)
from .lattice import (
    DivisorClass,
    SurfaceConfig,
    canonical_class,
    chi,
    intersect,
    strict_transform,
)
from .positivity import WeightedBoundary, ample_class_sufficient, boundary_class
from .quadext import QuadExt, compare_cross, rational_above


class InfeasibleError(Exception):
    """No admissible N at or below the requested cap."""


class ChainMismatchError(Exception):
    """A recorded constant disagrees with its recomputation."""


def sections_certified(
    cfg: SurfaceConfig, d: DivisorClass, ample: DivisorClass
) -> tuple[int, int | None]:
    """Certified (lower bound, exact value or None) for h^0 of d.

    The reference class must itself pass the ampleness test; the pairing
    (K - d) . ample < 0 rules out h^2, and ampleness of d - K rules out
    h^1 as well.
    """
    if not d.is_integral():
        raise ValueError("section counts need an integral class")
    if not ample_class_sufficient(cfg, ample).certified:
        raise ValueError("reference class is not certified ample")
    k = canonical_class(cfg)
    if not intersect(k - d, ample) < 0:
        return 0, None
    value = chi(cfg, d)
    lower = max(0, int(value))
    if ample_class_sufficient(cfg, d - k).certified:
        assert value >= 0, d
        return int(value), int(value)
    return lower, None


@dataclass(frozen=True)
class _Invariants:
    """Pairing numbers that make the section sums O(1) per term."""

    dp2: Fraction
    dpk: Fraction
    di2: tuple[Fraction, ...]
    dpdi: tuple[Fraction, ...]
    dik: tuple[Fraction, ...]
    roots: tuple[QuadExt, ...]


def _invariants(cfg: SurfaceConfig, wb: WeightedBoundary) -> _Invariants:
    dp = boundary_class(cfg, wb)
    k = canonical_class(cfg)
    di2, dpdi, dik, roots = [], [], [], []
    from .quadext import min_root_quadratic

    dp2 = Fraction(intersect(dp, dp))
    for i in range(len(cfg.components)):
        di = strict_transform(cfg, i)
        di2.append(Fraction(intersect(di, di)))
        dpdi.append(Fraction(intersect(dp, di)))
        dik.append(Fraction(intersect(di, k)))
        roots.append(min_root_quadratic(di2[-1], dpdi[-1], dp2))
    return _Invariants(
        dp2=dp2,
        dpk=Fraction(intersect(dp, k)),
        di2=tuple(di2),
        dpdi=tuple(dpdi),
        dik=tuple(dik),
        roots=tuple(roots),
    )


def _sum_lower_fast(inv: _Invariants, i: int, n: int) -> int:
    """Sum over m of the certified lower bounds for h^0(n D_p - m D_i)."""
    cap = floor(inv.roots[i] * n)
    total = 0
    for m in range(1, cap + 1):
        # h^2 guard: (K - d) . D_p < 0 for d = n D_p - m D_i
        if not inv.dpk - (n * inv.dp2 - m * inv.dpdi[i]) < 0:
            continue
        sq = n * n * inv.dp2 - 2 * n * m * inv.dpdi[i] + m * m * inv.di2[i]
        dk = n * inv.dpk - m * inv.dik[i]
        value = 1 + Fraction(sq - dk, 2)
        if value > 0:
            assert value.denominator == 1, (i, n, m)
            total += int(value)
    return total


def _require_integer_weights(wb: WeightedBoundary) -> None:
    if any(Fraction(w).denominator != 1 for w in wb.weights):
        raise ValueError("section counting needs integer weights")


def filtration_sections_lower(
    cfg: SurfaceConfig, wb: WeightedBoundary, i: int, n: int
) -> int:
    """Certified lower bound for sum_m h^0(n D_p - m D_i), m = 1..floor(x_i n)."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_integer_weights(wb)
    dp = boundary_class(cfg, wb)
    if not ample_class_sufficient(cfg, dp).certified:
        raise ValueError("weighted boundary is not certified ample")
    return _sum_lower_fast(_invariants(cfg, wb), i, n)


def sections_power_exact(cfg: SurfaceConfig, wb: WeightedBoundary, n: int) -> int | None:
    """Exact h^0(n D_p) when certifiable, else None."""
    dp = boundary_class(cfg, wb)
    _, exact = sections_certified(cfg, n * dp, dp)
    return exact


@dataclass(frozen=True)
class ConstantsChain:
    eps_target: Fraction
    eps_half: Fraction
    n: int
    m_sections: int
    sums: tuple[int, ...]
    ratios: tuple[QuadExt, ...]
    ratio_max: QuadExt
    argmax: int
    b: int
    c_const: Fraction
    q_const: Fraction
    beta_upper: tuple[Fraction, ...]
    m0: int

    def to_json_dict(self) -> dict:
        return {
            "eps_target": encode_number(self.eps_target),
            "eps_half": encode_number(self.eps_half),
            "N": self.n,
            "sections_of_power": self.m_sections,
            "filtration_sums": list(self.sums),
            "ratios": [encode_number(r) for r in self.ratios],
            "ratio_max": encode_number(self.ratio_max),
            "ratio_argmax": self.argmax,
            "b": self.b,
            "C": encode_number(self.c_const),
            "Q": encode_number(self.q_const, TAG_UPPER),
            "volume_ratio_upper": [encode_number(u, TAG_UPPER) for u in self.beta_upper],
            "multiplicity_threshold": self.m0,
        }


_CF_GAP = Fraction(1, 2**48)


def _ratios_at(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    inv: _Invariants,
    betas: tuple[QuadExt, ...],
    n: int,
) -> tuple[int, tuple[int, ...], tuple[QuadExt, ...]] | None:
    """(M, sums, ratios) at level n, or None when not certifiable."""
    m_sections = sections_power_exact(cfg, wb, n)
    if m_sections is None or m_sections <= 0:
        return None
    sums = []
    for i in range(len(cfg.components)):
        s = _sum_lower_fast(inv, i, n)
        if s <= 0:
            return None
        sums.append(s)
    ratios = tuple(
        beta * Fraction(n * m_sections, s) for beta, s in zip(betas, sums)
    )
    return m_sections, tuple(sums), ratios


def feasible_chain(
    cfg: SurfaceConfig,
    wb: WeightedBoundary,
    report: BoundaryReport | None,
    eps_target: Fraction,
    *,
    cap: int = 500,
) -> ConstantsChain:
    """Least N and b satisfying the scaled feasibility inequality, plus C, Q, m0.

    The inequality applied with eps/2 reads
    (1 + 2/b) * beta_i * N * M / S_i(N) < 1 + eps/2 for every component i.
    """
    eps_target = Fraction(eps_target)
    if eps_target <= 0:
        raise ValueError("eps_target must be positive")
    _require_integer_weights(wb)
    if report is None:
        report = build_report(cfg, wb)
    if not report.ample.certified or not report.components:
        raise InfeasibleError("weighted boundary is not certified ample")
    eps_half = eps_target / 2
    target = QuadExt(1 + eps_half)
    inv = _invariants(cfg, wb)
    betas = tuple(c.volume_ratio for c in report.components)

    found = None
    for n in range(1, cap + 1):
        got = _ratios_at(cfg, wb, inv, betas, n)
        if got is None:
            continue
        m_sections, sums, ratios = got
        worst = 0
        for i in range(1, len(ratios)):
            if compare_cross(ratios[i], ratios[worst]) > 0:
                worst = i
        if compare_cross(ratios[worst], target) < 0:
            found = (n, m_sections, sums, ratios, worst)
            break
    if found is None:
        raise InfeasibleError(f"no admissible N at or below {cap}")
    n, m_sections, sums, ratios, worst = found
    r_max = ratios[worst]

    # least b with (1 + 2/b) r < 1 + eps/2, so b > 2r / (1 + eps/2 - r)
    b = floor((2 * r_max) / (target - r_max)) + 1

    c_const = (1 + eps_half) / Fraction(m_sections * n)

    beta_min = betas[0]
    for beta in betas[1:]:
        if compare_cross(beta, beta_min) < 0:
            beta_min = beta
    q_exact = QuadExt(Fraction(m_sections - 1, 2 * n) * (1 + eps_half)) / beta_min
    q_const = (
        q_exact.as_fraction()
        if q_exact.is_rational
        else rational_above(q_exact, _CF_GAP)
    )
    beta_upper = tuple(
        beta.as_fraction() if beta.is_rational else rational_above(beta, _CF_GAP)
        for beta in betas
    )
    m0 = floor(q_const * sum(beta_upper) / eps_half) + 1

    return ConstantsChain(
        eps_target=eps_target,
        eps_half=eps_half,
        n=n,
        m_sections=m_sections,
        sums=sums,
        ratios=ratios,
        ratio_max=r_max,
        argmax=worst,
        b=b,
        c_const=c_const,
        q_const=q_const,
        beta_upper=beta_upper,
        m0=m0,
    )


def verify_chain(
    cfg: SurfaceConfig, wb: WeightedBoundary, chain: ConstantsChain
) -> bool:
    """Recompute every link of the chain and check minimality of N, b and m0."""
    report = build_report(cfg, wb)
    if not report.ample.certified or report.slack is None:
        raise ChainMismatchError("checklist no longer passes")
    inv = _invariants(cfg, wb)
    betas = tuple(c.volume_ratio for c in report.components)
    target = QuadExt(1 + chain.eps_half)
    if 2 * chain.eps_half != chain.eps_target:
        raise ChainMismatchError("eps_half is not half of eps_target")

    got = _ratios_at(cfg, wb, inv, betas, chain.n)
    if got is None:
        raise ChainMismatchError(f"level {chain.n} is not certifiable")
    m_sections, sums, ratios = got
    if m_sections != chain.m_sections or sums != chain.sums:
        raise ChainMismatchError("section counts changed")
    for r, r_rec in zip(ratios, chain.ratios):
        if compare_cross(r, r_rec) != 0:
            raise ChainMismatchError("a ratio changed")
    if compare_cross(ratios[chain.argmax], chain.ratio_max) != 0:
        raise ChainMismatchError("max ratio changed")
    for r in ratios:
        if compare_cross(r, chain.ratio_max) > 0:
            raise ChainMismatchError("argmax is not maximal")

    # minimality of N
    for n in range(1, chain.n):
        earlier = _ratios_at(cfg, wb, inv, betas, n)
        if earlier is None:
            continue
        _, _, rr = earlier
        w = 0
        for i in range(1, len(rr)):
            if compare_cross(rr[i], rr[w]) > 0:
                w = i
        if compare_cross(rr[w], target) < 0:
            raise ChainMismatchError(f"level {n} was already admissible")

    # b satisfies the inequality and b - 1 does not
    factor = QuadExt(Fraction(chain.b + 2, chain.b))
    if not compare_cross(factor * chain.ratio_max, target) < 0:
        raise ChainMismatchError("recorded b does not satisfy the inequality")
    if chain.b > 1:
        prev = QuadExt(Fraction(chain.b + 1, chain.b - 1))
        if compare_cross(prev * chain.ratio_max, target) < 0:
            raise ChainMismatchError("b is not minimal")

    if chain.c_const != (1 + chain.eps_half) / Fraction(chain.m_sections * chain.n):
        raise ChainMismatchError("C changed")

    beta_min = betas[0]
    for beta in betas[1:]:
        if compare_cross(beta, beta_min) < 0:
            beta_min = beta
    q_exact = QuadExt(
        Fraction(chain.m_sections - 1, 2 * chain.n) * (1 + chain.eps_half)
    ) / beta_min
    if not compare_cross(QuadExt(chain.q_const), q_exact) >= 0:
        raise ChainMismatchError("Q is not an upper bound")
    for u, beta in zip(chain.beta_upper, betas):
        if not compare_cross(QuadExt(u), beta) >= 0:
            raise ChainMismatchError("a volume ratio upper bound fails")

    x = chain.q_const * sum(chain.beta_upper) / chain.eps_half
    if not chain.m0 > x:
        raise ChainMismatchError("m0 does not clear the threshold")
    if chain.m0 - 1 > x:
        raise ChainMismatchError("m0 is not minimal")
    return True
