"""Two-point norm inequalities, convexity/smoothness moduli, sign averages.

Everything here quantifies how far the p-norm families are from the
parallelogram identity:

* Clarkson inequalities (midpoint vs endpoints, conjugate exponents),
* two-point inequalities with explicit constants 2p - 1 and (p-1)/(p+1),
* sampled lower bounds on the modulus of convexity and upper bounds on the
  modulus of smoothness,
* exhaustive Rademacher sign averages and the type/cotype comparisons,
* the rearranged-Clarkson gap behind the Kadec-Klee property, and the
  finite comparison behind unconditional-convergence summability.

All sampling is seeded and deterministic; sampled infima over-estimate the
true modulus of convexity and sampled suprema under-estimate the modulus of
smoothness, so every assertion against the proved bounds is sound
regardless of how the samples land.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dualmodel import DualModel, Field, encode_field, mix_seed, random_field
from .norms import ExponentP, field_norm
from .report import TOL_REL, CheckReport, digest_inputs, equality_report, inequality_report

__all__ = [
    "TwoPointConstants",
    "ModulusEstimate",
    "two_point_upper_constant",
    "two_point_lower_constant",
    "clarkson_sch_check",
    "clarkson_hs_check",
    "two_point_check",
    "two_point_critical_constant",
    "convexity_lower_bound",
    "smoothness_upper_bound",
    "hilbert_convexity_modulus",
    "hilbert_smoothness_modulus",
    "default_eps_bins",
    "modulus_convexity_sample",
    "modulus_smoothness_sample",
    "rademacher_average",
    "type_cotype_check",
    "kadec_klee_gap",
    "unconditional_sum_bound",
]

RADEMACHER_MAX_TERMS = 20
DEFAULT_BIN_WIDTH = 0.1


def two_point_upper_constant(p) -> float:
    """2p - 1: valid coefficient of ||H2||^2 in the upper two-point bound, p >= 2."""
    return 2.0 * float(ExponentP.parse(p)) - 1.0


def two_point_lower_constant(p) -> float:
    """(p-1)/(p+1): valid coefficient in the lower two-point bound, 1 < p <= 2."""
    pv = float(ExponentP.parse(p))
    return (pv - 1.0) / (pv + 1.0)


@dataclass(frozen=True)
class TwoPointConstants:
    p: float
    C_p_bound: float
    c_p_bound: float

    @classmethod
    def for_p(cls, p) -> "TwoPointConstants":
        pv = float(ExponentP.parse(p))
        return cls(p=pv, C_p_bound=2.0 * pv - 1.0, c_p_bound=(pv - 1.0) / (pv + 1.0))


def _finite_interior(p) -> float:
    pv = float(ExponentP.parse(p))
    if not (1.0 < pv < math.inf):
        raise ValueError(f"exponent must lie strictly inside (1, inf), got {pv}")
    return pv


# -- Clarkson inequalities ---------------------------------------------------


def _clarkson_sides(h1: Field, h2: Field, p: float, family: str) -> tuple[float, float]:
    q = p / (p - 1.0)
    mid_plus = field_norm(0.5 * (h1 + h2), p, family)
    mid_minus = field_norm(0.5 * (h1 - h2), p, family)
    n1 = field_norm(h1, p, family)
    n2 = field_norm(h2, p, family)
    if p <= 2.0:
        lhs = (mid_plus**q + mid_minus**q) ** (1.0 / q)
        rhs = (0.5 * (n1**p + n2**p)) ** (1.0 / p)
    else:
        lhs = (mid_plus**p + mid_minus**p) ** (1.0 / p)
        rhs = (0.5 * (n1**q + n2**q)) ** (1.0 / q)
    return lhs, rhs


def _clarkson_check(h1, h2, p, family, suite, case_id) -> CheckReport:
    pv = _finite_interior(p)
    lhs, rhs = _clarkson_sides(h1, h2, pv, family)
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs(encode_field(h1), encode_field(h2), pv, family)
    case = "i" if pv <= 2.0 else "ii"
    return inequality_report(
        suite, case_id, pv, lhs, rhs, tol, digest, f"clarkson.{family}.case_{case}"
    )


def clarkson_sch_check(h1: Field, h2: Field, p, *, suite="clarkson", case_id="sch") -> CheckReport:
    """Clarkson inequality in the Schatten family (case picked by p vs 2)."""
    return _clarkson_check(h1, h2, p, "sch", suite, case_id)


def clarkson_hs_check(h1: Field, h2: Field, p, *, suite="clarkson", case_id="hs") -> CheckReport:
    """Clarkson inequality in the Hilbert-Schmidt family."""
    return _clarkson_check(h1, h2, p, "hs", suite, case_id)


# -- Two-point inequalities with explicit constants --------------------------


def _two_point_sides(h1: Field, h2: Field, p: float, family: str) -> tuple[float, float]:
    n1 = field_norm(h1, p, family)
    n2 = field_norm(h2, p, family)
    mean_p = (
        0.5 * (field_norm(h1 + h2, p, family) ** p + field_norm(h1 - h2, p, family) ** p)
    ) ** (1.0 / p)
    if p >= 2.0:
        lhs = mean_p
        rhs = math.sqrt(n1**2 + two_point_upper_constant(p) * n2**2)
    else:
        lhs = math.sqrt(n1**2 + two_point_lower_constant(p) * n2**2)
        rhs = mean_p
    return lhs, rhs


def two_point_check(
    h1: Field, h2: Field, p, family: str = "sch", *, suite="two_point", case_id="two_point"
) -> CheckReport:
    """Two-point inequality with the proved constant substituted.

    p >= 2: (avg of ||H1 +- H2||^p)^(1/p) <= (||H1||^2 + (2p-1) ||H2||^2)^(1/2);
    p <= 2: reversed form with (p-1)/(p+1) on the left.  At p = 2 both reduce
    to the parallelogram identity with constant 1.
    """
    pv = _finite_interior(p)
    lhs, rhs = _two_point_sides(h1, h2, pv, family)
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs(encode_field(h1), encode_field(h2), pv, family)
    side = "upper" if pv >= 2.0 else "lower"
    return inequality_report(
        suite, case_id, pv, lhs, rhs, tol, digest, f"two_point.{side}"
    )


def two_point_equality_check(
    h1: Field, h2: Field, family: str = "sch", *, suite="two_point", case_id="parallelogram"
) -> CheckReport:
    """p = 2: both two-point sides agree with constant exactly 1."""
    n1 = field_norm(h1, 2.0, family)
    n2 = field_norm(h2, 2.0, family)
    mean2 = math.sqrt(
        0.5 * (field_norm(h1 + h2, 2.0, family) ** 2 + field_norm(h1 - h2, 2.0, family) ** 2)
    )
    rhs = math.sqrt(n1**2 + n2**2)
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs(encode_field(h1), encode_field(h2), family)
    return equality_report(suite, case_id, 2.0, mean2, rhs, tol, digest, "parallelogram")


def two_point_critical_constant(h1: Field, h2: Field, p, family: str = "sch") -> float:
    """The constant that makes the two-point inequality tight for this pair.

    nan when ||H2|| = 0 (any constant works there).
    """
    pv = _finite_interior(p)
    n1 = field_norm(h1, pv, family)
    n2 = field_norm(h2, pv, family)
    if n2 == 0.0:
        return math.nan
    mean_p = (
        0.5 * (field_norm(h1 + h2, pv, family) ** pv + field_norm(h1 - h2, pv, family) ** pv)
    ) ** (1.0 / pv)
    return (mean_p**2 - n1**2) / n2**2


# -- Moduli of convexity and smoothness --------------------------------------


def hilbert_convexity_modulus(eps: float) -> float:
    """Closed form 1 - (1 - eps^2/4)^(1/2) of the Hilbert modulus of convexity."""
    return 1.0 - math.sqrt(max(0.0, 1.0 - eps * eps / 4.0))


def hilbert_smoothness_modulus(t: float) -> float:
    """Closed form (1 + t^2)^(1/2) - 1 of the Hilbert modulus of smoothness."""
    return math.sqrt(1.0 + t * t) - 1.0


def convexity_lower_bound(p, eps: float) -> float:
    """Proved lower bound for the modulus of convexity at eps.

    1 < p <= 2: max(eps^q/(q 2^q), c_p eps^2 / 8) with q conjugate to p;
    p > 2:      eps^p/(p 2^p).
    """
    pv = _finite_interior(p)
    if eps <= 0.0:
        return 0.0
    if pv <= 2.0:
        q = pv / (pv - 1.0)
        return max(eps**q / (q * 2.0**q), two_point_lower_constant(pv) * eps**2 / 8.0)
    return eps**pv / (pv * 2.0**pv)


def smoothness_upper_bound(p, t: float) -> float:
    """Proved upper bound for the modulus of smoothness at t.

    1 < p <= 2: t^p / p;  p > 2: min(t^q / q, C_p t^2 / 2), q conjugate to p.
    """
    pv = _finite_interior(p)
    if t <= 0.0:
        return 0.0
    if pv <= 2.0:
        return t**pv / pv
    q = pv / (pv - 1.0)
    return min(t**q / q, two_point_upper_constant(pv) * t * t / 2.0)


@dataclass(frozen=True)
class ModulusEstimate:
    """Sampled per-bin (or per-t) modulus value vs the proved bound.

    kind "convexity_lower": estimate is a sampled infimum, sound when
    >= bound.  kind "smoothness_upper": estimate is a sampled supremum,
    sound when <= bound.  samples == 0 flags a skipped (empty) bin.
    """

    epsilon_or_t: float
    estimate: float
    bound: float
    kind: str
    samples: int

    @property
    def skipped(self) -> bool:
        return self.samples == 0

    def passed(self, tol: float = TOL_REL) -> bool:
        if self.skipped:
            return True
        margin = tol * max(1.0, abs(self.bound))
        if self.kind == "convexity_lower":
            return self.estimate >= self.bound - margin
        if self.kind == "smoothness_upper":
            return self.estimate <= self.bound + margin
        raise ValueError(f"unknown modulus kind {self.kind!r}")


def default_eps_bins() -> tuple[float, ...]:
    """Bin lower edges 0.1 .. 1.9 (width 0.1) covering separations in (0, 2)."""
    return tuple(round(0.1 * k, 10) for k in range(1, 20))


def _unit_pair(model: DualModel, p: float, family: str, seed: int, draw: int):
    """A pair of unit-norm fields whose separation sweeps the whole of (0, 2).

    The first field is a normalized ginibre draw; the second mixes it with an
    independent draw at a uniformly random angle, so near-equal and
    near-antipodal pairs both occur.  Only unit-norm membership matters for
    soundness of the modulus estimates.
    """
    h1 = random_field(model, mix_seed(seed, draw, "a"), "ginibre")
    g = random_field(model, mix_seed(seed, draw, "b"), "ginibre")
    h1 = (1.0 / field_norm(h1, p, family)) * h1
    g = (1.0 / field_norm(g, p, family)) * g
    t = np.random.default_rng(mix_seed(seed, draw, "t")).uniform(0.0, math.pi)
    mixed = math.cos(t) * h1 + math.sin(t) * g
    norm = field_norm(mixed, p, family)
    if norm == 0.0:  # measure-zero degenerate mix; fall back to the raw draw
        mixed, norm = g, 1.0
    return h1, (1.0 / norm) * mixed


def modulus_convexity_sample(
    model: DualModel,
    p,
    family: str,
    eps_bins=None,
    samples: int = 1000,
    seed: int = 0,
    bin_width: float = DEFAULT_BIN_WIDTH,
) -> list[ModulusEstimate]:
    """Per-bin sampled infimum of 1 - ||(H1+H2)/2|| over unit pairs.

    Pairs are binned by ||H1 - H2||; each bin's estimate is compared against
    the proved lower bound at the bin's lower edge (the bound is increasing,
    so that comparison is sound for every pair landing in the bin).
    """
    pv = _finite_interior(p)
    edges = tuple(float(e) for e in (default_eps_bins() if eps_bins is None else eps_bins))
    if any(not (0.0 <= e <= 2.0) for e in edges):
        raise ValueError("bin edges must lie in [0, 2]")
    best = {e: math.inf for e in edges}
    counts = {e: 0 for e in edges}
    for k in range(samples):
        h1, h2 = _unit_pair(model, pv, family, seed, k)
        eps = field_norm(h1 - h2, pv, family)
        midgap = 1.0 - field_norm(0.5 * (h1 + h2), pv, family)
        for e in edges:
            if e <= eps < e + bin_width:
                counts[e] += 1
                if midgap < best[e]:
                    best[e] = midgap
                break
    out = []
    for e in edges:
        n = counts[e]
        est = best[e] if n else math.nan
        out.append(
            ModulusEstimate(
                epsilon_or_t=e,
                estimate=est,
                bound=convexity_lower_bound(pv, e),
                kind="convexity_lower",
                samples=n,
            )
        )
    return out


def modulus_smoothness_sample(
    model: DualModel,
    p,
    family: str,
    t_grid=(0.1, 0.5, 1.0),
    samples: int = 1000,
    seed: int = 0,
) -> list[ModulusEstimate]:
    """Per-t sampled supremum of (||H1 + t H2|| + ||H1 - t H2||)/2 - 1."""
    pv = _finite_interior(p)
    ts = [float(t) for t in t_grid]
    if any(t < 0.0 for t in ts):
        raise ValueError("smoothness grid points must be non-negative")
    best = [-math.inf] * len(ts)
    for k in range(samples):
        h1, h2 = _unit_pair(model, pv, family, seed, k)
        for i, t in enumerate(ts):
            val = (
                field_norm(h1 + t * h2, pv, family)
                + field_norm(h1 - t * h2, pv, family)
            ) / 2.0 - 1.0
            if val > best[i]:
                best[i] = val
    return [
        ModulusEstimate(
            epsilon_or_t=t,
            estimate=(best[i] if samples else math.nan),
            bound=smoothness_upper_bound(pv, t),
            kind="smoothness_upper",
            samples=samples,
        )
        for i, t in enumerate(ts)
    ]


# -- Rademacher averages, type and cotype ------------------------------------


def rademacher_average(fields, p, family: str = "sch", r: float = 2.0) -> float:
    """(mean over all sign patterns of ||sum theta_j H_j||^r)^(1/r), exact.

    Walks the 2^n patterns in Gray-code order so each step updates the
    running sum by a single +-2 H_j flip.
    """
    fields = list(fields)
    n = len(fields)
    if n == 0:
        return 0.0
    if n > RADEMACHER_MAX_TERMS:
        raise ValueError(f"at most {RADEMACHER_MAX_TERMS} summands (got {n})")
    if r <= 0:
        raise ValueError("average order r must be positive")
    current = fields[0]
    for f in fields[1:]:
        current = current + f
    signs = [1] * n
    total = field_norm(current, p, family) ** r
    for k in range(1, 2**n):
        j = (k & -k).bit_length() - 1  # Gray code: flip the lowest set bit
        flip = -2.0 * signs[j]
        current = current + flip * fields[j]
        signs[j] = -signs[j]
        total += field_norm(current, p, family) ** r
    return (total / 2**n) ** (1.0 / r)


def type_cotype_check(
    fields, p, family: str = "sch", *, suite="type_cotype", case_id="type_cotype"
) -> CheckReport:
    """Two-sided comparison of the L2 sign average with power sums of norms.

    1 < p <= 2: sqrt(c_p) (sum ||H_j||^2)^(1/2) <= avg <= (sum ||H_j||^p)^(1/p);
    2 <= p:     (sum ||H_j||^p)^(1/p) <= avg <= sqrt(C_p) (sum ||H_j||^2)^(1/2).
    The reported slack is the smaller of the two one-sided slacks.
    """
    fields = list(fields)
    pv = _finite_interior(p)
    avg2 = rademacher_average(fields, pv, family, r=2.0)
    norms = [field_norm(f, pv, family) for f in fields]
    l2_sum = math.sqrt(sum(v * v for v in norms))
    lp_sum = sum(v**pv for v in norms) ** (1.0 / pv) if norms else 0.0
    if pv <= 2.0:
        lower = math.sqrt(two_point_lower_constant(pv)) * l2_sum
        upper = lp_sum
    else:
        lower = lp_sum
        upper = math.sqrt(two_point_upper_constant(pv)) * l2_sum
    slack = min(avg2 - lower, upper - avg2)
    tol = TOL_REL * max(1.0, upper)
    digest = digest_inputs([encode_field(f) for f in fields], pv, family)
    return CheckReport(
        suite=suite,
        case_id=case_id,
        p=pv,
        lhs=float(lower),
        rhs=float(upper),
        slack=float(slack),
        tol=float(tol),
        passed=bool(slack >= -tol),
        inputs_digest=digest,
        anchor="type_cotype",
    )


# -- Kadec-Klee gap and unconditional-sum comparison --------------------------


def kadec_klee_gap(
    hn: Field, h: Field, p, family: str = "sch", *, suite="kadec_klee", case_id="gap"
) -> CheckReport:
    """Rearranged Clarkson bound forcing norm convergence.

    With e = q for p <= 2 and e = p for p >= 2 (q conjugate), the midpoint
    difference obeys

        ||(Hn - H)/2||^e <= (avg of ||Hn||, ||H|| powers)^(e/f) - ||(Hn + H)/2||^e,

    and the right side (the reported rhs) tends to 0 whenever ||Hn|| -> ||H||
    and ||(Hn + H)/2|| -> ||H||.
    """
    pv = _finite_interior(p)
    q = pv / (pv - 1.0)
    e, f = (q, pv) if pv <= 2.0 else (pv, q)
    diff = field_norm(0.5 * (hn - h), pv, family)
    mid = field_norm(0.5 * (hn + h), pv, family)
    n1 = field_norm(hn, pv, family)
    n2 = field_norm(h, pv, family)
    lhs = diff**e
    rhs = (0.5 * (n1**f + n2**f)) ** (e / f) - mid**e
    tol = TOL_REL * max(1.0, (0.5 * (n1**f + n2**f)) ** (e / f))
    digest = digest_inputs(encode_field(hn), encode_field(h), pv, family)
    return inequality_report(
        suite, case_id, pv, lhs, rhs, tol, digest, "kadec_klee_gap"
    )


def unconditional_sum_bound(
    fields, p, family: str = "sch", *, suite="kadec_klee", case_id="sum_bound"
) -> CheckReport:
    """Finite comparison behind summability of unconditionally convergent series.

    sum ||H_j||^max(2,p) <= K * sum (convexity lower bound at ||H_j||), with
    K = 8/c_p for p <= 2 and K = p 2^p for p > 2.  This is an arithmetic
    consistency check on the bound functions; norms above 2 are rejected
    because the modulus is only defined up to separation 2.
    """
    pv = _finite_interior(p)
    norms = [field_norm(f, pv, family) for f in fields]
    over = [v for v in norms if v > 2.0]
    if over:
        raise ValueError(f"{len(over)} summand norm(s) exceed 2; rescale the inputs")
    if pv <= 2.0:
        constant = 8.0 / two_point_lower_constant(pv)
        power = 2.0
    else:
        constant = pv * 2.0**pv
        power = pv
    lhs = sum(v**power for v in norms)
    rhs = constant * sum(convexity_lower_bound(pv, v) for v in norms if v > 0.0)
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs([encode_field(f) for f in fields], pv, family)
    return inequality_report(
        suite, case_id, pv, lhs, rhs, tol, digest, "unconditional_sum"
    )
