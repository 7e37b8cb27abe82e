"""Trace pairing and the explicit dual-norm extremizer.

The bilinear pairing <H, F> = sum d(xi) Tr(H(xi) F(xi)) realizes the dual of
the Schatten-family p-norm: ||H||_p equals the supremum of |<H, F>| over
unit-q-norm F (1/p + 1/q = 1), and the supremum is attained by the explicit
field built from the polar decomposition of each block,

    F(xi) = |H(xi)|^(p-1) U*(xi) / ||H||_p^(p-1),   H(xi) = U(xi) |H(xi)|.

At p = 1 the same formula degenerates to F = U* (so ||F||_inf = 1 and the
pairing still returns ||H||_1); that endpoint is supported here.
"""

from __future__ import annotations

import math

import numpy as np

from . import matcore
from .dualmodel import Field, encode_field, mix_seed
from .norms import DirectSumSpec, ExponentP, direct_sum_norm, lp_sch_norm, random_unit_field
from .report import TOL_REL, CheckReport, digest_inputs, inequality_report

__all__ = [
    "pairing",
    "dual_extremizer",
    "dual_norm_via_search",
    "direct_sum_dual_pair_check",
]


def pairing(h: Field, f: Field) -> complex:
    """Bilinear trace pairing sum d(xi) Tr(H(xi) F(xi)) (no conjugation)."""
    if h.model != f.model:
        raise ValueError("fields live over different dual models")
    total = 0.0 + 0.0j
    for (_, dim), a, b in zip(h.model.entries, h.blocks, f.blocks):
        total += dim * np.trace(a @ b)
    return complex(total)


def dual_extremizer(h: Field, p) -> Field:
    """Unit-q-norm field F with <H, F> = ||H||_sch,p.

    Blockwise, with H(xi) = W S V* a singular value decomposition,
    |H|^(p-1) U* = V S^(p-1) W*; the zero singular values contribute 0 for
    p > 1 and 1 for p = 1 (unitary completion of the partial isometry).
    """
    p = ExponentP.parse(p)
    if p.is_inf:
        raise ValueError("the extremizer needs a finite exponent")
    norm = lp_sch_norm(h, p)
    if norm == 0.0:
        raise ValueError("the zero field has no norming functional")
    scale = norm ** (p.value - 1.0)
    blocks = []
    for block in h.blocks:
        f = matcore.svd(block)
        v = f.vstar.conj().T
        powered = f.sigma ** (p.value - 1.0)  # 0**0 = 1 covers the p = 1 endpoint
        blocks.append((v * powered) @ f.u.conj().T / scale)
    return Field(h.model, tuple(blocks))


def dual_norm_via_search(
    h: Field, p, trials: int, seed: int, include_extremizer: bool = True
) -> float:
    """Max of |<H, F>| over random unit-q-norm fields F.

    With the extremizer included as trial 0 this returns ||H||_sch,p (up to
    rounding); random trials alone give a lower bound that never exceeds it.
    """
    p = ExponentP.parse(p)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    q = p.conjugate()
    norm = lp_sch_norm(h, p)
    best = 0.0
    if include_extremizer and norm > 0.0 and not p.is_inf:
        best = abs(pairing(h, dual_extremizer(h, p)))
    for k in range(trials):
        f = random_unit_field(h.model, q, mix_seed(seed, "dual_search", k))
        best = max(best, abs(pairing(h, f)))
    return best


def direct_sum_dual_pair_check(
    h1: Field,
    h2: Field,
    f1: Field,
    f2: Field,
    p,
    spec: DirectSumSpec,
    *,
    suite="duality",
    case_id="direct_sum_pair",
) -> CheckReport:
    """Boundedness of the weighted dual pairing on a two-slot direct sum.

    |<h1,f1> + w^(1/r - 1/s) <h2,f2>| is at most the product of the
    (q, s, 1/w)-norm of (f1, f2) and the (p, r, w)-norm of (h1, h2),
    where q, s are the conjugates of p, r.
    """
    p = ExponentP.parse(p)
    r = spec.r
    if p.is_inf or p.value == 1.0 or r.is_inf or r.value == 1.0:
        raise ValueError("direct-sum duality needs all exponents strictly inside (1, inf)")
    q = p.conjugate()
    s = r.conjugate()
    w = spec.w
    lhs = abs(
        pairing(h1, f1) + w ** (r.inv() - s.inv()) * pairing(h2, f2)
    )
    rhs = direct_sum_norm(f1, f2, q, DirectSumSpec(s, 1.0 / w)) * direct_sum_norm(
        h1, h2, p, spec
    )
    tol = TOL_REL * max(1.0, rhs)
    digest = digest_inputs(
        encode_field(h1), encode_field(h2), encode_field(f1), encode_field(f2),
        p.value, r.value, w,
    )
    return inequality_report(
        suite, case_id, float(p), lhs, rhs, tol, digest, "direct_sum_duality"
    )
