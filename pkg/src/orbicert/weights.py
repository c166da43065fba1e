"""Weight selection for the boundary components.

proportional_weights reproduces the closed-form choice for three paired
components plus a hyperplane: with degrees d1, d2, d3 set c = 4 d1 d2 d3,
give component i the weight c / d_i and the hyperplane 3c/4.  All four
are integers and the hyperplane weight is smaller than each of the others
whenever some d_i = 1.

search_weights enumerates positive integer weight vectors up to a bound
and keeps those whose full hypothesis checklist passes, optimizing either
the weight sum or the certified slack.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .certifier import build_report
from .lattice import ConfigError, SurfaceConfig
from .positivity import WeightedBoundary
from .quadext import QuadExt, compare_cross


def proportional_weights(cfg: SurfaceConfig) -> WeightedBoundary:
    """Closed-form weights for three paired components and one hyperplane."""
    paired = [c for c in cfg.components if c.paired]
    free = [c for c in cfg.components if not c.paired]
    if len(paired) != 3 or len(free) != 1 or free[0].degree != 1:
        raise ConfigError(
            "proportional weights need exactly three paired components and one line"
        )
    d1, d2, d3 = (c.degree for c in paired)
    c = 4 * d1 * d2 * d3
    by_component = {}
    it = iter((c // d1, c // d2, c // d3))
    for idx, comp in enumerate(cfg.components):
        by_component[idx] = next(it) if comp.paired else 3 * c // 4
    return WeightedBoundary.make([by_component[i] for i in range(len(cfg.components))])


@dataclass(frozen=True)
class SearchHit:
    weights: tuple[int, ...]
    slack: QuadExt
    slack_lower: Fraction
    weight_sum: int


@dataclass(frozen=True)
class SearchResult:
    objective: str
    bound: int
    feasible_count: int
    best: SearchHit | None
    hits: tuple[SearchHit, ...]


def _evaluate(cfg: SurfaceConfig, weights: tuple[int, ...]) -> SearchHit | None:
    report = build_report(cfg, WeightedBoundary.make(weights))
    if not report.ample.certified or report.slack is None:
        return None
    if report.slack.sign() <= 0:
        return None
    return SearchHit(
        weights=weights,
        slack=report.slack,
        slack_lower=report.slack_lower,
        weight_sum=sum(weights),
    )


def _search_chunk(args) -> list[SearchHit]:
    cfg, bound, first = args
    r = len(cfg.components)
    hits = []
    for rest in itertools.product(range(1, bound + 1), repeat=r - 1):
        hit = _evaluate(cfg, (first, *rest))
        if hit is not None:
            hits.append(hit)
    return hits


def _better(a: SearchHit, b: SearchHit, objective: str) -> bool:
    """True when a beats b; ties break toward smaller sum then lex order."""
    if objective == "max-slack":
        c = compare_cross(a.slack, b.slack)
        if c != 0:
            return c > 0
    if a.weight_sum != b.weight_sum:
        return a.weight_sum < b.weight_sum
    return a.weights < b.weights


def search_weights(
    cfg: SurfaceConfig,
    bound: int,
    objective: str = "min-sum",
    *,
    limit: int | None = None,
    processes: int = 1,
) -> SearchResult:
    """Exhaust integer weights in [1, bound]^r and rank passing vectors."""
    if objective not in ("min-sum", "max-slack"):
        raise ConfigError(f"unknown objective {objective!r}")
    if bound < 1:
        raise ConfigError("bound must be at least 1")
    r = len(cfg.components)
    if r == 0:
        raise ConfigError("empty component list")

    tasks = [(cfg, bound, first) for first in range(1, bound + 1)]
    if processes > 1 and bound > 1:
        with Pool(processes) as pool:
            chunks = pool.map(_search_chunk, tasks)
    else:
        chunks = [_search_chunk(t) for t in tasks]

    hits: list[SearchHit] = [h for chunk in chunks for h in chunk]
    best: SearchHit | None = None
    for hit in hits:
        if best is None or _better(hit, best, objective):
            best = hit
    ordered = sorted(hits, key=lambda h: (h.weight_sum, h.weights))
    if limit is not None:
        ordered = ordered[:limit]
    return SearchResult(
        objective=objective,
        bound=bound,
        feasible_count=len(hits),
        best=best,
        hits=tuple(ordered),
    )
