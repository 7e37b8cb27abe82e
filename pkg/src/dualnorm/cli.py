"""Batch verification harness and command-line front end.

``dualnorm verify <suite>`` builds a dual model, draws seeded random fields,
runs one of the named check suites and emits machine-readable reports.
Report content is a pure function of the configuration: seeds for trial k
of a given case are mixed from (base seed, suite, case, k), so suites are
independent and insensitive to execution order.

Exit status: 0 all checks passed, 1 at least one verification failure,
2 configuration or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace

from . import inequalities as ineq
from . import matcore
from .dualmodel import (
    DualModel,
    decode_field,
    decode_model,
    encode_field,
    encode_model,
    mix_seed,
    parse_dual_arg,
    random_field,
)
from .duality import (
    direct_sum_dual_pair_check,
    dual_extremizer,
    dual_norm_via_search,
    pairing,
)
from .interpolation import InterpSpec, boundary_witness_norms, interp_norm_consistency, three_lines_check
from .norms import (
    FAMILIES,
    DirectSumSpec,
    ExponentP,
    adjoint_norm_check,
    embedding_check,
    field_norm,
    holder_check,
    lp_hs_norm,
    lp_sch_norm,
)
from .report import (
    TOL_REL,
    CheckReport,
    digest_inputs,
    equality_report,
    inequality_report,
    reports_to_csv,
    reports_to_json,
)

__all__ = ["SuiteConfig", "SUITES", "run_suite", "emit_report", "main"]

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2


class ConfigError(Exception):
    """Bad configuration or malformed input file."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    dual: DualModel
    p_list: tuple[ExponentP, ...]
    family: str = "sch"
    trials: int = 10
    seed: int = 0
    tol_override: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.p_list:
            raise ConfigError("p_list must be non-empty")
        if self.family not in (*FAMILIES, "both"):
            raise ConfigError(f"unknown family {self.family!r}")
        object.__setattr__(self, "p_list", tuple(ExponentP.parse(p) for p in self.p_list))

    @property
    def families(self) -> tuple[str, ...]:
        return FAMILIES if self.family == "both" else (self.family,)


def _pair(cfg: SuiteConfig, *parts):
    a = random_field(cfg.dual, mix_seed(cfg.seed, cfg.suite, *parts, "a"))
    b = random_field(cfg.dual, mix_seed(cfg.seed, cfg.suite, *parts, "b"))
    return a, b


def _ptag(p: ExponentP) -> str:
    return str(p)


def _finite_interior(p: ExponentP) -> bool:
    return 1.0 < p.value < math.inf


def _suite_norms(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        tag = _ptag(p)
        for k in range(cfg.trials):
            h1, h2 = _pair(cfg, tag, k)
            reports.append(
                embedding_check(h1, p, suite="norms", case_id=f"embedding[p={tag}][{k:04d}]")
            )
            for family in cfg.families:
                n1 = field_norm(h1, p, family)
                n2 = field_norm(h2, p, family)
                nsum = field_norm(h1 + h2, p, family)
                digest = digest_inputs(encode_field(h1), encode_field(h2), p.value, family)
                reports.append(
                    inequality_report(
                        "norms",
                        f"triangle.{family}[p={tag}][{k:04d}]",
                        float(p),
                        nsum,
                        n1 + n2,
                        TOL_REL * max(1.0, n1 + n2),
                        digest,
                        "triangle",
                    )
                )
                alpha = 0.5 + ((k % 7) + 1) * 0.25
                digest = digest_inputs(encode_field(h1), p.value, family, alpha)
                reports.append(
                    equality_report(
                        "norms",
                        f"homogeneity.{family}[p={tag}][{k:04d}]",
                        float(p),
                        field_norm(alpha * h1, p, family),
                        alpha * n1,
                        TOL_REL * max(1.0, alpha * n1),
                        digest,
                        "homogeneity",
                    )
                )
    for k in range(cfg.trials):
        h1, _ = _pair(cfg, "p2", k)
        digest = digest_inputs(encode_field(h1))
        reports.append(
            equality_report(
                "norms",
                f"p2_coincidence[{k:04d}]",
                2.0,
                lp_sch_norm(h1, 2.0),
                lp_hs_norm(h1, 2.0),
                1e-12 * max(1.0, lp_hs_norm(h1, 2.0)),
                digest,
                "p2_coincidence",
            )
        )
    return reports


def _suite_holder(cfg: SuiteConfig):
    reports = []
    inf = ExponentP(math.inf)
    for p in cfg.p_list:
        tag = _ptag(p)
        q = p.conjugate()
        for k in range(cfg.trials):
            h1, h2 = _pair(cfg, tag, k)
            reports.append(
                holder_check(h1, h2, p, q, suite="holder", case_id=f"conjugate[p={tag}][{k:04d}]")
            )
            if not p.is_inf:
                reports.append(
                    holder_check(
                        h1, h2, inf, p, suite="holder", case_id=f"inf_left[r={tag}][{k:04d}]"
                    )
                )
            reports.append(
                holder_check(
                    h1, h2, inf, inf, suite="holder", case_id=f"inf_both[{k:04d}][p={tag}]"
                )
            )
    return reports


def _suite_adjoint(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        tag = _ptag(p)
        for family in cfg.families:
            for k in range(cfg.trials):
                h, _ = _pair(cfg, tag, family, k)
                reports.append(
                    adjoint_norm_check(
                        h, p, family, suite="adjoint", case_id=f"{family}[p={tag}][{k:04d}]"
                    )
                )
    return reports


def _suite_duality(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        if p.is_inf:
            continue
        tag = _ptag(p)
        q = p.conjugate()
        for k in range(cfg.trials):
            h, other = _pair(cfg, tag, k)
            norm = lp_sch_norm(h, p)
            f = dual_extremizer(h, p)
            digest = digest_inputs(encode_field(h), p.value)
            reports.append(
                equality_report(
                    "duality",
                    f"extremizer_unit[p={tag}][{k:04d}]",
                    float(p),
                    lp_sch_norm(f, q),
                    1.0,
                    1e-9,
                    digest,
                    "extremizer",
                )
            )
            reports.append(
                equality_report(
                    "duality",
                    f"extremizer_pairing[p={tag}][{k:04d}]",
                    float(p),
                    abs(pairing(h, f)),
                    norm,
                    1e-9 * max(1.0, norm),
                    digest,
                    "extremizer",
                )
            )
            probe = dual_norm_via_search(
                h, p, trials=5, seed=mix_seed(cfg.seed, "duality", tag, k, "probe"),
                include_extremizer=False,
            )
            reports.append(
                inequality_report(
                    "duality",
                    f"search_bound[p={tag}][{k:04d}]",
                    float(p),
                    probe,
                    norm,
                    TOL_REL * max(1.0, norm),
                    digest,
                    "dual_supremum",
                )
            )
            if _finite_interior(p):
                f2 = dual_extremizer(other, p)
                reports.append(
                    direct_sum_dual_pair_check(
                        h, other, f, f2, p, DirectSumSpec(ExponentP(1.5), 3.0),
                        suite="duality", case_id=f"direct_sum[p={tag}][{k:04d}]",
                    )
                )
    return reports


def _interp_spec_for(p: ExponentP) -> InterpSpec:
    if p.value < 2.0:
        return InterpSpec.for_target(1.0, 2.0, p)
    if p.value == 2.0:
        return InterpSpec(ExponentP(2.0), ExponentP(2.0), 0.5)
    return InterpSpec.for_target(2.0, 2.0 * p.value, p)


def _suite_interpolation(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        spec = _interp_spec_for(p)
        for k in range(cfg.trials):
            h, f = _pair(cfg, tag, k)
            norms0, norms1 = boundary_witness_norms(h, spec)
            worst = max(norms0 + norms1, key=lambda v: abs(v - 1.0))
            digest = digest_inputs(encode_field(h), spec.p0.value, spec.p1.value, spec.theta)
            reports.append(
                equality_report(
                    "interpolation",
                    f"boundary_norms[p={tag}][{k:04d}]",
                    float(p),
                    worst,
                    1.0,
                    1e-9,
                    digest,
                    "boundary_witness",
                )
            )
            reports.append(
                three_lines_check(
                    h, f, spec, suite="interpolation", case_id=f"three_lines[p={tag}][{k:04d}]"
                )
            )
            reports.append(
                interp_norm_consistency(
                    h, spec, suite="interpolation", case_id=f"consistency[p={tag}][{k:04d}]"
                )
            )
    return reports


def _suite_clarkson(cfg: SuiteConfig):
    reports = []
    checkers = {"sch": ineq.clarkson_sch_check, "hs": ineq.clarkson_hs_check}
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        for k in range(cfg.trials):
            h1, h2 = _pair(cfg, tag, k)
            for family in cfg.families:
                reports.append(
                    checkers[family](
                        h1, h2, p, suite="clarkson", case_id=f"{family}[p={tag}][{k:04d}]"
                    )
                )
    return reports


def _suite_two_point(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        for family in cfg.families:
            crits = []
            for k in range(cfg.trials):
                h1, h2 = _pair(cfg, tag, family, k)
                reports.append(
                    ineq.two_point_check(
                        h1, h2, p, family,
                        suite="two_point", case_id=f"{family}[p={tag}][{k:04d}]",
                    )
                )
                crit = ineq.two_point_critical_constant(h1, h2, p, family)
                if not math.isnan(crit):
                    crits.append(crit)
                if p.value == 2.0:
                    reports.append(
                        ineq.two_point_equality_check(
                            h1, h2, family,
                            suite="two_point",
                            case_id=f"parallelogram.{family}[{k:04d}]",
                        )
                    )
            if crits:
                digest = digest_inputs(p.value, family, cfg.seed, cfg.trials)
                if p.value >= 2.0:
                    lhs, rhs = max(crits), ineq.two_point_upper_constant(p)
                else:
                    lhs, rhs = ineq.two_point_lower_constant(p), min(crits)
                reports.append(
                    inequality_report(
                        "two_point",
                        f"critical_aggregate.{family}[p={tag}]",
                        float(p),
                        lhs,
                        rhs,
                        TOL_REL * max(1.0, abs(rhs)),
                        digest,
                        "critical_constant",
                    )
                )
    return reports


def _suite_moduli(cfg: SuiteConfig):
    reports = []
    samples = cfg.trials
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        for family in cfg.families:
            seed = mix_seed(cfg.seed, "moduli", tag, family)
            convexity = ineq.modulus_convexity_sample(
                cfg.dual, p, family, samples=samples, seed=seed
            )
            occupied = 0
            for est in convexity:
                if est.skipped:
                    continue
                occupied += 1
                digest = digest_inputs(p.value, family, est.epsilon_or_t, cfg.seed, samples)
                reports.append(
                    inequality_report(
                        "moduli",
                        f"convexity.{family}[p={tag}][eps={est.epsilon_or_t:.1f}]",
                        float(p),
                        est.bound,
                        est.estimate,
                        TOL_REL * max(1.0, est.bound),
                        digest,
                        "convexity_lower",
                    )
                )
            digest = digest_inputs(p.value, family, cfg.seed, samples)
            reports.append(
                inequality_report(
                    "moduli",
                    f"convexity_bins.{family}[p={tag}]",
                    float(p),
                    float(occupied),
                    float(len(convexity)),
                    0.0,
                    digest,
                    "bin_occupancy",
                )
            )
            smoothness = ineq.modulus_smoothness_sample(
                cfg.dual, p, family, samples=samples, seed=seed
            )
            for est in smoothness:
                digest = digest_inputs(p.value, family, est.epsilon_or_t, cfg.seed, samples)
                reports.append(
                    inequality_report(
                        "moduli",
                        f"smoothness.{family}[p={tag}][t={est.epsilon_or_t:.2f}]",
                        float(p),
                        est.estimate,
                        est.bound,
                        TOL_REL * max(1.0, est.bound),
                        digest,
                        "smoothness_upper",
                    )
                )
    return reports


def _suite_type_cotype(cfg: SuiteConfig, n_terms: int = 5):
    reports = []
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        for family in cfg.families:
            for k in range(cfg.trials):
                fields = [
                    random_field(cfg.dual, mix_seed(cfg.seed, "type_cotype", tag, family, k, j))
                    for j in range(n_terms)
                ]
                reports.append(
                    ineq.type_cotype_check(
                        fields, p, family,
                        suite="type_cotype", case_id=f"{family}[p={tag}][{k:04d}]",
                    )
                )
                if p.value == 2.0:
                    avg2 = ineq.rademacher_average(fields, 2.0, family, r=2.0)
                    l2 = math.sqrt(
                        sum(field_norm(f, 2.0, family) ** 2 for f in fields)
                    )
                    digest = digest_inputs([encode_field(f) for f in fields], family)
                    reports.append(
                        equality_report(
                            "type_cotype",
                            f"hilbert_equality.{family}[{k:04d}]",
                            2.0,
                            avg2,
                            l2,
                            1e-10 * max(1.0, l2),
                            digest,
                            "sign_average_identity",
                        )
                    )
    return reports


def _suite_kadec_klee(cfg: SuiteConfig):
    reports = []
    for p in cfg.p_list:
        if not _finite_interior(p):
            continue
        tag = _ptag(p)
        h, d = _pair(cfg, tag)
        for n in range(1, cfg.trials + 1):
            hn = h + (1.0 / n) * d
            reports.append(
                ineq.kadec_klee_gap(
                    hn, h, p, suite="kadec_klee", case_id=f"gap[p={tag}][n={n:04d}]"
                )
            )
        scaled = []
        base = random_field(cfg.dual, mix_seed(cfg.seed, "kadec_klee", tag, "sum"))
        base_norm = lp_sch_norm(base, p)
        for j in range(5):
            scaled.append((2.0**-j / base_norm) * base)
        reports.append(
            ineq.unconditional_sum_bound(
                scaled, p, suite="kadec_klee", case_id=f"sum_bound[p={tag}]"
            )
        )
    return reports


SUITES = {
    "norms": _suite_norms,
    "holder": _suite_holder,
    "adjoint": _suite_adjoint,
    "duality": _suite_duality,
    "interpolation": _suite_interpolation,
    "clarkson": _suite_clarkson,
    "two_point": _suite_two_point,
    "moduli": _suite_moduli,
    "type_cotype": _suite_type_cotype,
    "kadec_klee": _suite_kadec_klee,
}


def run_suite(config: SuiteConfig) -> list[CheckReport]:
    """Run one named suite (or "all") and return reports sorted by case."""
    if config.suite == "all":
        names = sorted(SUITES)
    elif config.suite in SUITES:
        names = [config.suite]
    else:
        raise ConfigError(f"unknown suite {config.suite!r}")
    reports: list[CheckReport] = []
    for name in names:
        sub = replace(config, suite=name)
        reports.extend(SUITES[name](sub))
    if config.tol_override is not None:
        reports = [_retolerate(r, config.tol_override) for r in reports]
    reports.sort(key=lambda r: (r.suite, r.case_id))
    return reports


def _retolerate(r: CheckReport, tol_rel: float) -> CheckReport:
    tol = tol_rel * max(1.0, abs(r.rhs))
    return CheckReport(
        suite=r.suite, case_id=r.case_id, p=r.p, lhs=r.lhs, rhs=r.rhs,
        slack=r.slack, tol=tol, passed=bool(r.slack >= -tol),
        inputs_digest=r.inputs_digest, anchor=r.anchor,
    )


def emit_report(reports, format: str, path: str) -> None:
    """Write reports as a JSON array or RFC-4180 CSV."""
    if format == "json":
        text = reports_to_json(reports)
    elif format == "csv":
        text = reports_to_csv(reports)
    else:
        raise ConfigError(f"unknown report format {format!r}")
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write report to {path}: {exc}") from exc


def _load_dual(text: str) -> DualModel:
    if text.endswith(".json") or os.path.sep in text:
        try:
            with open(text) as fh:
                return decode_model(json.load(fh))
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load dual model from {text}: {exc}") from exc
    try:
        return parse_dual_arg(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_p_list(text: str) -> tuple[ExponentP, ...]:
    try:
        return tuple(ExponentP.parse(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad exponent list {text!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualnorm",
        description="Verify norm identities and inequalities over truncated unitary duals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    verify.add_argument("--dual", default="s3", help="preset like s3, torus(4), su2_trunc(3), custom(1,2,2), or a .json file")
    verify.add_argument("--p", default="1.5,2,3", help="comma-separated exponents; inf and fractions like 3/2 allowed")
    verify.add_argument("--family", choices=["sch", "hs", "both"], default="both")
    verify.add_argument("--trials", type=int, default=10)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--tol", type=float, default=None, help="override the relative tolerance")
    verify.add_argument("--out", default=None, help="report file path")
    verify.add_argument("--format", choices=["json", "csv"], default="json")

    field = sub.add_parser("field", help="field utilities")
    field_sub = field.add_subparsers(dest="field_command", required=True)
    rand = field_sub.add_parser("random", help="draw a seeded random field as JSON")
    rand.add_argument("--dual", default="s3")
    rand.add_argument("--seed", type=int, default=None)
    rand.add_argument("--dist", choices=["ginibre", "hermitian", "psd"], default="ginibre")
    rand.add_argument("--out", default=None)
    show = field_sub.add_parser("show", help="summarize a field JSON file")
    show.add_argument("path")
    show.add_argument("--dual", default=None, help="dual model (defaults to presets by name)")
    return parser


def _default_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("DUALNORM_SEED")
    return int(env) if env else 0


def _cmd_verify(args) -> int:
    config = SuiteConfig(
        suite=args.suite,
        dual=_load_dual(args.dual),
        p_list=_parse_p_list(args.p),
        family=args.family,
        trials=args.trials,
        seed=_default_seed(args.seed),
        tol_override=args.tol,
    )
    reports = run_suite(config)
    if args.out:
        emit_report(reports, args.format, args.out)
    failures = [r for r in reports if not r.passed]
    for r in failures:
        print(
            f"FAIL {r.suite}/{r.case_id}: lhs={r.lhs:.12g} rhs={r.rhs:.12g} "
            f"slack={r.slack:.3e} tol={r.tol:.3e}"
        )
    print(f"{len(reports) - len(failures)}/{len(reports)} checks passed")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def _cmd_field(args) -> int:
    if args.field_command == "random":
        model = _load_dual(args.dual)
        field = random_field(model, _default_seed(args.seed), args.dist)
        doc = {"dual": encode_model(model), "field": encode_field(field)}
        text = json.dumps(doc, indent=2) + "\n"
        if args.out:
            try:
                with open(args.out, "w") as fh:
                    fh.write(text)
            except OSError as exc:
                raise ConfigError(f"cannot write {args.out}: {exc}") from exc
        else:
            print(text, end="")
        return EXIT_OK
    if args.field_command == "show":
        try:
            with open(args.path) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read field file {args.path}: {exc}") from exc
        if "dual" in doc:
            model = decode_model(doc["dual"])
            payload = doc.get("field", doc)
        elif args.dual:
            model = _load_dual(args.dual)
            payload = doc
        else:
            raise ConfigError("field file has no embedded dual; pass --dual")
        field = decode_field(payload, model)
        print(f"model {model.name}: {len(model)} entries, dims {list(model.dims)}")
        for (lab, dim), block in zip(model.entries, field.blocks):
            print(f"  {lab}: dim {dim}, hs-norm {matcore.hs_norm(block):.6g}")
        print(f"sch-2 norm: {lp_sch_norm(field, 2.0):.12g}")
        return EXIT_OK
    raise ConfigError(f"unknown field command {args.field_command!r}")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "field":
            return _cmd_field(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
