"""The two p-norm families over a dual model, and their basic inequalities.

For a field H over entries of dimensions d(xi):

* Schatten family:        ||H||_sch,p = (sum d(xi) ||H(xi)||_Sp^p)^(1/p),
  with the sup of operator norms at p = inf.
* Hilbert-Schmidt family: ||H||_hs,p  = (sum d(xi)^(2-p/2) ||H(xi)||_HS^p)^(1/p),
  with sup of d(xi)^(-1/2) ||H(xi)||_HS at p = inf.

The two coincide at p = 2.  For p <= 2 the Schatten norm is dominated by the
Hilbert-Schmidt one, for p >= 2 the domination reverses; products obey the
Holder inequality in the Schatten family.  The check functions here verify
those facts numerically and return CheckReports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import matcore
from .dualmodel import (
    DualModel,
    Field,
    encode_field,
    field_abs,
    field_adjoint,
    field_product,
    random_field,
)
from .report import TOL_REL, CheckReport, digest_inputs, equality_report, inequality_report

__all__ = [
    "ExponentP",
    "DirectSumSpec",
    "FAMILIES",
    "lp_sch_norm",
    "lp_hs_norm",
    "field_norm",
    "random_unit_field",
    "embedding_check",
    "holder_check",
    "adjoint_norm_check",
    "direct_sum_norm",
]

FAMILIES = ("sch", "hs")


@dataclass(frozen=True)
class ExponentP:
    """An exponent in [1, inf], with conjugate-exponent arithmetic (1/inf = 0)."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v < 1:
            raise ValueError(f"exponent must lie in [1, inf], got {self.value}")
        object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text) -> "ExponentP":
        """Accept "inf", decimals like "2.5", and fractions like "3/2"."""
        if isinstance(text, ExponentP):
            return text
        if isinstance(text, (int, float)):
            return cls(float(text))
        s = str(text).strip().lower()
        if s in ("inf", "infinity", "oo"):
            return cls(math.inf)
        if "/" in s:
            return cls(float(Fraction(s)))
        return cls(float(s))

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.value)

    def conjugate(self) -> "ExponentP":
        if self.is_inf:
            return ExponentP(1.0)
        if self.value == 1.0:
            return ExponentP(math.inf)
        return ExponentP(self.value / (self.value - 1.0))

    def inv(self) -> float:
        return 0.0 if self.is_inf else 1.0 / self.value

    def __float__(self) -> float:
        return self.value

    def __str__(self) -> str:
        return "inf" if self.is_inf else repr(self.value)


def _pval(p) -> float:
    return float(ExponentP.parse(p).value)


@dataclass(frozen=True)
class DirectSumSpec:
    """Exponent and weight of a weighted two-slot direct sum."""

    r: ExponentP
    w: float

    def __post_init__(self):
        object.__setattr__(self, "r", ExponentP.parse(self.r))
        if not (self.w > 0):
            raise ValueError(f"direct-sum weight must be positive, got {self.w}")


def lp_sch_norm(h: Field, p) -> float:
    """Schatten-family norm (sum d ||block||_Sp^p)^(1/p); sup of op norms at inf."""
    p = _pval(p)
    if math.isinf(p):
        return max(matcore.schatten_norm(b, math.inf) for b in h.blocks)
    total = 0.0
    for (_, dim), block in zip(h.model.entries, h.blocks):
        total += dim * matcore.schatten_norm(block, p) ** p
    return total ** (1.0 / p)


def lp_hs_norm(h: Field, p) -> float:
    """Hilbert-Schmidt-family norm with dim^(2 - p/2) weights; see module doc."""
    p = _pval(p)
    if math.isinf(p):
        return max(
            matcore.hs_norm(b) / math.sqrt(dim)
            for (_, dim), b in zip(h.model.entries, h.blocks)
        )
    total = 0.0
    for (_, dim), block in zip(h.model.entries, h.blocks):
        # dim^(2 - p/2) in log space; the exponent may be negative for p > 4
        weight = math.exp((2.0 - p / 2.0) * math.log(dim)) if dim > 1 else 1.0
        total += weight * matcore.hs_norm(block) ** p
    return total ** (1.0 / p)


def field_norm(h: Field, p, family: str) -> float:
    if family == "sch":
        return lp_sch_norm(h, p)
    if family == "hs":
        return lp_hs_norm(h, p)
    raise ValueError(f"unknown norm family {family!r}")


def random_unit_field(model: DualModel, p, seed: int, family: str = "sch") -> Field:
    """Ginibre draw normalized to unit family-p norm."""
    h = random_field(model, seed, "ginibre")
    return (1.0 / field_norm(h, p, family)) * h


def embedding_check(h: Field, p, *, suite="norms", case_id="embedding") -> CheckReport:
    """One-sided domination between the two families, direction set by p vs 2."""
    pv = _pval(p)
    sch = lp_sch_norm(h, pv)
    hs = lp_hs_norm(h, pv)
    lhs, rhs = (sch, hs) if pv <= 2 else (hs, sch)
    tol = TOL_REL * max(1.0, rhs)
    return inequality_report(
        suite, case_id, pv, lhs, rhs, tol, digest_inputs(encode_field(h), pv), "embedding"
    )


def holder_check(
    h1: Field, h2: Field, p, q, *, suite="holder", case_id="holder"
) -> CheckReport:
    """||H1 H2||_r <= ||H1||_p ||H2||_q in the Schatten family, 1/r = 1/p + 1/q."""
    p = ExponentP.parse(p)
    q = ExponentP.parse(q)
    inv_r = p.inv() + q.inv()
    if inv_r > 1.0 + 1e-15:
        raise ValueError(f"incompatible exponents: 1/{p} + 1/{q} exceeds 1")
    r = math.inf if inv_r == 0.0 else 1.0 / inv_r
    lhs = lp_sch_norm(field_product(h1, h2), r)
    rhs = lp_sch_norm(h1, p) * lp_sch_norm(h2, q)
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs(encode_field(h1), encode_field(h2), p.value, q.value)
    return inequality_report(suite, case_id, float(p), lhs, rhs, tol, digest, "holder")


def adjoint_norm_check(
    h: Field, p, family: str = "sch", *, suite="adjoint", case_id="adjoint"
) -> CheckReport:
    """||H|| = ||H*|| = || |H| || in the chosen family."""
    pv = _pval(p)
    values = (
        field_norm(h, pv, family),
        field_norm(field_adjoint(h), pv, family),
        field_norm(field_abs(h), pv, family),
    )
    lo, hi = min(values), max(values)
    tol = TOL_REL * max(1.0, hi)
    digest = digest_inputs(encode_field(h), pv, family)
    return equality_report(
        suite, case_id, pv, hi, lo, tol, digest, f"adjoint_invariance.{family}"
    )


def direct_sum_norm(x: Field, y: Field, p, spec: DirectSumSpec, family: str = "sch") -> float:
    """(||x||^r + w ||y||^r)^(1/r) on the family-p norms; max(||x||, w ||y||) at r = inf."""
    nx = field_norm(x, p, family)
    ny = field_norm(y, p, family)
    if spec.r.is_inf:
        return max(nx, spec.w * ny)
    r = spec.r.value
    return (nx**r + spec.w * ny**r) ** (1.0 / r)
