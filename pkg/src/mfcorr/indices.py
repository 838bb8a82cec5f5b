"""Similarity functionals over aligned signals and discrete multisets.

All integrals are Riemann sums on the shared grid: integral(h) ~ dx * sum(h(x_i)).
Every functional is symmetric in its two arguments and pure.
"""

from __future__ import annotations

import numpy as np

from .signal import (
    DEFAULT_CONFIG,
    DomainError,
    Multiset,
    Signal,
    SimilarityConfig,
    require_aligned,
    require_same_size,
)


def set_jaccard(a: Multiset, b: Multiset) -> float:
    """Overlap/union ratio for crisp sets encoded as 0/1 multiplicities.

    Returns 0 when both sets are empty.
    """
    require_same_size(a, b)
    am, bm = a.multiplicities, b.multiplicities
    for name, m in (("a", am), ("b", bm)):
        if not np.all((m == 0.0) | (m == 1.0)):
            raise DomainError(f"{name} must have binary multiplicities for set_jaccard")
    union = float(np.sum(np.maximum(am, bm)))
    if union == 0.0:
        return 0.0
    return float(np.sum(np.minimum(am, bm))) / union


def multiset_jaccard(a: Multiset, b: Multiset) -> float:
    """Sum-of-min over sum-of-max for non-negative multiplicities.

    Returns 0 when both multisets are all-zero.  Restricted to {0, 1}
    multiplicities this equals set_jaccard exactly.
    """
    require_same_size(a, b)
    union = float(np.sum(np.maximum(a.multiplicities, b.multiplicities)))
    if union == 0.0:
        return 0.0
    return float(np.sum(np.minimum(a.multiplicities, b.multiplicities))) / union


def _signed_min_terms(fs: np.ndarray, gs: np.ndarray) -> np.ndarray:
    # sign(f)*sign(g)*min(|f|, |g|); samples where either value is 0 contribute 0
    return np.sign(fs) * np.sign(gs) * np.minimum(np.abs(fs), np.abs(gs))


def signed_min_intersection(f: Signal, g: Signal) -> float:
    """Sign-aware pointwise-minimum overlap integral of two signals."""
    require_aligned(f, g)
    return f.dx * float(np.sum(_signed_min_terms(f.samples, g.samples)))


def abs_union_max(f: Signal, g: Signal) -> float:
    """Integral of the pointwise maximum of the two magnitudes."""
    require_aligned(f, g)
    return f.dx * float(np.sum(np.maximum(np.abs(f.samples), np.abs(g.samples))))


def s_plus(f: Signal, g: Signal) -> float:
    """Overlap integral restricted to samples where the two signals agree in sign."""
    require_aligned(f, g)
    sf, sg = np.sign(f.samples), np.sign(g.samples)
    terms = np.abs(sf + sg) / 2.0 * np.minimum(np.abs(f.samples), np.abs(g.samples))
    return f.dx * float(np.sum(terms))


def s_minus(f: Signal, g: Signal) -> float:
    """Overlap integral restricted to samples where the two signals oppose in sign."""
    require_aligned(f, g)
    sf, sg = np.sign(f.samples), np.sign(g.samples)
    terms = np.abs(sf - sg) / 2.0 * np.minimum(np.abs(f.samples), np.abs(g.samples))
    return f.dx * float(np.sum(terms))


def s_pm(f: Signal, g: Signal, alpha: float = 0.5, normalized: bool = False) -> float:
    """Weighted mix alpha*s_plus - (1-alpha)*s_minus of the sign-split overlaps.

    With normalized=True the mix is scaled by 2 so that alpha=0.5 reproduces
    signed_min_intersection exactly (the raw value at alpha=0.5 is half of it).
    """
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"alpha must be in [0, 1], got {alpha}")
    raw = alpha * s_plus(f, g) - (1.0 - alpha) * s_minus(f, g)
    return 2.0 * raw if normalized else raw


def jaccard_real(f: Signal, g: Signal, cfg: SimilarityConfig | None = None) -> float:
    """Real-valued Jaccard index: signed min-overlap over magnitude union, in [-1, 1]."""
    cfg = cfg or DEFAULT_CONFIG
    num = signed_min_intersection(f, g)
    den = abs_union_max(f, g)
    if den < cfg.eps_denom:
        return 0.0
    return num / den


def interiority_real(f: Signal, g: Signal, cfg: SimilarityConfig | None = None) -> float:
    """Overlap normalized by the smaller signal's total magnitude, clamped to [0, 1].

    The numerator integrates the unsigned magnitude overlap min(|f|, |g|); with
    cfg.interiority_signed_numerator it carries the sign product instead (then
    the clamp widens to [-1, 1]).
    """
    cfg = cfg or DEFAULT_CONFIG
    require_aligned(f, g)
    fa, ga = np.abs(f.samples), np.abs(g.samples)
    den = min(f.dx * float(np.sum(fa)), f.dx * float(np.sum(ga)))
    if den < cfg.eps_denom:
        return 0.0
    if cfg.interiority_signed_numerator:
        num = f.dx * float(np.sum(_signed_min_terms(f.samples, g.samples)))
        return float(np.clip(num / den, -1.0, 1.0))
    num = f.dx * float(np.sum(np.minimum(fa, ga)))
    return float(np.clip(num / den, 0.0, 1.0))


def coincidence_real(f: Signal, g: Signal, cfg: SimilarityConfig | None = None) -> float:
    """Product of the real-valued Jaccard and interiority indices; sign comes from Jaccard."""
    return jaccard_real(f, g, cfg) * interiority_real(f, g, cfg)


def jaccard_addition(f: Signal, g: Signal, cfg: SimilarityConfig | None = None) -> float:
    """Jaccard variant normalized by the plain sum of the two signals.

    The literal signed-sum denominator can vanish for signed data; it is
    guarded by cfg.eps_denom, and cfg.addition_abs_denominator substitutes
    the magnitude sum.
    """
    cfg = cfg or DEFAULT_CONFIG
    num = 2.0 * signed_min_intersection(f, g)
    if cfg.addition_abs_denominator:
        den = f.dx * float(np.sum(np.abs(f.samples) + np.abs(g.samples)))
    else:
        den = f.dx * float(np.sum(f.samples + g.samples))
    if abs(den) < cfg.eps_denom:
        return 0.0
    return num / den


def coincidence_addition(f: Signal, g: Signal, cfg: SimilarityConfig | None = None) -> float:
    """Product of the addition-based Jaccard and the interiority index."""
    return jaccard_addition(f, g, cfg) * interiority_real(f, g, cfg)


def inner_product(f: Signal, g: Signal) -> float:
    """Plain discretized inner product; per-lag kernel of the classic cross-correlation."""
    require_aligned(f, g)
    return f.dx * float(np.sum(f.samples * g.samples))
