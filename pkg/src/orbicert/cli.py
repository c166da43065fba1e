"""Command line entry points.

Exit codes: 0 the requested property is certified, 1 it is certified to
fail (or a stress sweep found a violation), 2 the run is inconclusive,
3 the input is malformed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction

from . import ffheights, sampling
from .catalog import builtin_names, load_builtin
from .certifier import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    build_report,
    certify,
    decode_multiplicity,
    encode_number,
    filtration_inequality,
    volume_ratio_lower,
)
from .constants import InfeasibleError, feasible_chain, verify_chain
from .constants import filtration_sections_lower, sections_power_exact
from .lattice import Component, ConfigError, SurfaceConfig
from .positivity import WeightedBoundary, ample_sufficient
from .quadext import compare_cross
from .weights import proportional_weights, search_weights

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


def _load_config(args) -> SurfaceConfig:
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as handle:
            cfg = SurfaceConfig.from_json(handle.read())
    else:
        cfg = load_builtin(getattr(args, "builtin", None) or "four-lines")
    if getattr(args, "allow_single_component", False):
        cfg = dataclasses.replace(cfg, allow_single_component=True)
    return cfg


def _parse_number(text: str) -> int | Fraction:
    value = Fraction(text)
    return int(value) if value.denominator == 1 else value


def _resolve_weights(args, cfg: SurfaceConfig) -> WeightedBoundary:
    raw = getattr(args, "weights", None)
    if raw:
        parts = [p for p in raw.split(",") if p.strip()]
        return WeightedBoundary.make([_parse_number(p) for p in parts])
    if cfg.default_weights is not None:
        return WeightedBoundary.make([_parse_number(w) for w in cfg.default_weights])
    return proportional_weights(cfg)


def _resolve_multiplicities(args, cfg: SurfaceConfig):
    raw = getattr(args, "multiplicities", None)
    if raw:
        parts = [p.strip() for p in raw.split(",") if p.strip()]
        return tuple(decode_multiplicity(p) for p in parts)
    if cfg.default_multiplicities is not None:
        return tuple(decode_multiplicity(m) for m in cfg.default_multiplicities)
    return None


def _print_record(record: dict) -> None:
    print(json.dumps(record, sort_keys=True), flush=True)


# -- certify ---------------------------------------------------------------------


def cmd_certify(args) -> int:
    cfg = _load_config(args)
    wb = _resolve_weights(args, cfg)
    mults = _resolve_multiplicities(args, cfg)
    cert = certify(
        cfg,
        wb,
        mults,
        twist_alpha=Fraction(args.twist_alpha),
        constants_cap=args.cap,
        include_constants=False if args.skip_constants else None,
    )
    for h in cert.hypotheses:
        line = f"{h.name:<28} {h.status:<13}"
        print(line + (h.detail if h.detail else ""))
    for check in cert.components:
        print(
            f"component {check.index}: degree {check.degree}, weight {check.weight}, "
            f"root {check.truncation_root}, ratio {check.volume_ratio}, "
            f"holds {check.inequality_holds}"
        )
    if cert.slack is not None:
        print(f"slack {cert.slack} (rational lower bound {cert.slack_lower})")
    if cert.constants is not None:
        print("constants:", json.dumps(cert.constants, sort_keys=True))
    if cert.orbifold is not None:
        print("orbifold:", json.dumps(cert.orbifold, sort_keys=True))
    print(f"overall: {cert.overall}")
    if cert.first_failure:
        print(f"first failure: {cert.first_failure}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(cert.to_json())
    return {PASS: EXIT_PASS, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[
        cert.overall
    ]


# -- search ----------------------------------------------------------------------


def cmd_search(args) -> int:
    cfg = _load_config(args)
    result = search_weights(
        cfg,
        args.bound,
        args.objective,
        limit=args.limit,
        processes=args.threads,
    )
    print(f"feasible weight vectors: {result.feasible_count}")
    for hit in result.hits:
        print(
            f"weights {','.join(str(w) for w in hit.weights)} "
            f"sum {hit.weight_sum} slack {hit.slack}"
        )
    if result.best is None:
        print("no passing weights at this bound")
        return EXIT_FAIL
    print(
        f"best ({result.objective}): "
        f"{','.join(str(w) for w in result.best.weights)} slack {result.best.slack}"
    )
    return EXIT_PASS


# -- constants -------------------------------------------------------------------


def cmd_constants(args) -> int:
    cfg = _load_config(args)
    wb = _resolve_weights(args, cfg)
    report = build_report(cfg, wb)
    if report.slack_lower is None or report.slack_lower <= 0:
        print("hypothesis checklist does not pass; no constants to derive")
        return EXIT_FAIL
    eps = Fraction(args.eps) if args.eps else report.slack_lower
    try:
        chain = feasible_chain(cfg, wb, report, eps, cap=args.cap)
    except InfeasibleError as exc:
        print(f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    verify_chain(cfg, wb, chain)
    doc = chain.to_json_dict()
    doc["verified"] = True
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_PASS


# -- beta ------------------------------------------------------------------------


def _plane_config(args) -> SurfaceConfig:
    return SurfaceConfig(
        components=(Component(degree=1, paired=False, role="hyperplane"),),
        points=(),
        allow_single_component=True,
        name=f"plane-degree-{args.plane}",
    )


def cmd_beta(args) -> int:
    if args.plane:
        cfg = _plane_config(args)
        wb = WeightedBoundary.make([args.plane])
    else:
        cfg = _load_config(args)
        wb = _resolve_weights(args, cfg)
    report = build_report(cfg, wb)
    if not report.ample.certified:
        print(f"ampleness not certified: {report.ample.reason}")
        return EXIT_INCONCLUSIVE
    for check in report.components:
        print(
            f"component {check.index}: root {check.truncation_root}, "
            f"volume ratio {check.volume_ratio}"
        )
    if args.plane:
        n = args.level
        s = filtration_sections_lower(cfg, wb, 0, n)
        m = sections_power_exact(cfg, wb, n)
        ratio = Fraction(s, n * m)
        closed = report.components[0].volume_ratio.as_fraction()
        print(f"section-count ratio at level {n}: {ratio}")
        print(f"closed form: {closed}")
        if ratio != closed:
            print("MISMATCH between the sum and the closed form")
            return EXIT_FAIL
    if report.slack is not None:
        print(f"slack {report.slack}")
    return EXIT_PASS


# -- stress ----------------------------------------------------------------------


def _stress_boundary(args) -> int:
    import random

    rng = random.Random(args.seed)
    passes = 0
    samples = 0
    violations = 0
    not_ample = 0
    cap = 50 * args.samples
    while passes < args.samples and samples < cap:
        if rng.random() < 0.7:
            cfg, wb = sampling.random_passing_candidate(
                rng, max_degree=args.max_degree, bound=args.coeff_bound
            )
        else:
            cfg = sampling.random_config(rng, max_degree=args.max_degree)
            wb = sampling.random_weights(rng, cfg, bound=args.coeff_bound)
        samples += 1
        if not ample_sufficient(cfg, wb).certified:
            not_ample += 1
            continue
        all_hold = True
        for i in range(len(cfg.components)):
            holds = filtration_inequality(cfg, wb, i)
            exceeds = (
                compare_cross(
                    volume_ratio_lower(cfg, wb, i), Fraction(wb.weights[i])
                )
                > 0
            )
            if holds != exceeds:
                violations += 1
            all_hold = all_hold and holds
        if all_hold:
            passes += 1
            if passes % max(1, args.samples // 10) == 0:
                _print_record(
                    {
                        "suite": "boundary",
                        "passes": passes,
                        "samples": samples,
                        "violations": violations,
                    }
                )
    _print_record(
        {
            "suite": "boundary",
            "samples": samples,
            "passes": passes,
            "not_ample": not_ample,
            "violations": violations,
            "done": True,
        }
    )
    return EXIT_PASS if violations == 0 and passes >= args.samples else EXIT_FAIL


def cmd_stress(args) -> int:
    if args.suite == "boundary":
        return _stress_boundary(args)

    batches = max(1, args.batches)
    per = [args.samples // batches] * batches
    per[0] += args.samples - sum(per)

    total: dict = {}
    if args.suite == "subspace":
        for idx, count in enumerate(per):
            got = ffheights.subspace_sweep(
                count,
                seed=args.seed + idx,
                processes=args.threads,
                max_deg=args.max_degree,
                bound=args.coeff_bound,
            )
            got["suite"] = "subspace"
            got["batch"] = idx
            _print_record(got)
            for k in ("samples", "violations", "fmt_failures", "degenerate"):
                total[k] = total.get(k, 0) + got.get(k, 0)
        bad = total.get("violations", 0) + total.get("fmt_failures", 0)
    elif args.suite == "product":
        for idx, count in enumerate(per):
            got = ffheights.product_formula_sweep(
                count, seed=args.seed + idx, processes=args.threads
            )
            got["suite"] = "product"
            got["batch"] = idx
            _print_record(got)
            for k in ("samples", "failures"):
                total[k] = total.get(k, 0) + got.get(k, 0)
        bad = total.get("failures", 0)
    elif args.suite == "probe":
        cfg = _load_config(args)
        wb = _resolve_weights(args, cfg)
        realization = ffheights.realization_from_config(cfg)
        alpha = Fraction(0)
        for idx, count in enumerate(per):
            got = ffheights.probe_sweep(
                cfg,
                wb,
                realization,
                count,
                seed=args.seed + idx,
                processes=args.threads,
                max_deg=min(args.max_degree, 8),
                bound=min(args.coeff_bound, 50),
            )
            got["suite"] = "probe"
            got["batch"] = idx
            _print_record(got)
            alpha = max(alpha, Fraction(got["alpha_emp"]))
            for k in ("samples", "excluded"):
                total[k] = total.get(k, 0) + got.get(k, 0)
        total["alpha_emp"] = str(alpha)
        bad = 0
    else:
        raise ConfigError(f"unknown suite {args.suite!r}")

    total["suite"] = args.suite
    total["done"] = True
    _print_record(total)
    return EXIT_PASS if bad == 0 else EXIT_FAIL


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbicert",
        description="Exact certification of hyperbolicity hypotheses on blown-up planes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_args(p):
        p.add_argument("--config", help="path to a configuration JSON file")
        p.add_argument(
            "--builtin",
            choices=builtin_names(),
            help="bundled configuration name",
        )
        p.add_argument(
            "--allow-single-component",
            action="store_true",
            help="waive the two-component requirement",
        )
        p.add_argument("--weights", help="comma separated positive weights")

    p_cert = sub.add_parser("certify", help="run the full hypothesis checklist")
    add_config_args(p_cert)
    p_cert.add_argument("--multiplicities", help="comma separated, integers or inf")
    p_cert.add_argument("--out", help="write the certificate JSON here")
    p_cert.add_argument("--twist-alpha", default="1", help="numerator of the twist")
    p_cert.add_argument("--cap", type=int, default=200, help="level cap for constants")
    p_cert.add_argument(
        "--skip-constants", action="store_true", help="omit the constants chain"
    )
    p_cert.set_defaults(func=cmd_certify)

    p_search = sub.add_parser("search", help="enumerate passing weight vectors")
    add_config_args(p_search)
    p_search.add_argument("--bound", type=int, default=6)
    p_search.add_argument(
        "--objective", choices=["min-sum", "max-slack"], default="min-sum"
    )
    p_search.add_argument("--limit", type=int, default=10)
    p_search.add_argument("--threads", type=int, default=1)
    p_search.set_defaults(func=cmd_search)

    p_const = sub.add_parser("constants", help="derive the feasibility constants")
    add_config_args(p_const)
    p_const.add_argument("--eps", help="target slack, a fraction like 1/176")
    p_const.add_argument("--cap", type=int, default=500)
    p_const.add_argument("--out", help="write the chain JSON here")
    p_const.set_defaults(func=cmd_constants)

    p_beta = sub.add_parser("beta", help="volume ratio lower bounds")
    add_config_args(p_beta)
    p_beta.add_argument("--plane", type=int, help="single line on the plane, weight a")
    p_beta.add_argument("--level", type=int, default=10)
    p_beta.set_defaults(func=cmd_beta)

    p_stress = sub.add_parser("stress", help="randomized sweeps")
    add_config_args(p_stress)
    p_stress.add_argument(
        "--suite",
        choices=["boundary", "subspace", "product", "probe"],
        default="boundary",
    )
    p_stress.add_argument("--samples", type=int, default=500)
    p_stress.add_argument("--seed", type=int, default=0)
    p_stress.add_argument("--threads", type=int, default=1)
    p_stress.add_argument("--batches", type=int, default=8)
    p_stress.add_argument("--max-degree", type=int, default=4)
    p_stress.add_argument("--coeff-bound", type=int, default=50)
    p_stress.set_defaults(func=cmd_stress)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, ZeroDivisionError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
