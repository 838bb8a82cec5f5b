"""Sliding-lag correlation engine for every similarity method.

Sliding structure: the template g is displaced by integer multiples of the
shared grid spacing and the selected similarity index is evaluated between the
object and the displaced, zero-padded template at each displacement.  The
evaluation support is the object grid: template samples falling off the grid
are ignored, object samples outside the template window still feed the
denominators (union, totals, sums) exactly as if the template were a full-grid
signal padded with zeros.

Lag convention: the reported abscissa of each lag is the position of the
template's support midpoint on the object axis, so a symmetric template peaks
at the matched feature's position.  The template's own x0 plays no role.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .signal import (
    DEFAULT_CONFIG,
    AlignmentError,
    DomainError,
    Signal,
    SimilarityConfig,
    grids_compatible,
)

METHOD_TAGS = (
    "classic",
    "jaccard_real",
    "interiority",
    "coincidence",
    "jaccard_addition",
    "coincidence_addition",
)

MULTISET_TAGS = tuple(t for t in METHOD_TAGS if t != "classic")

BOUNDARIES = ("pad", "valid")


@dataclass(frozen=True)
class Method:
    """A similarity method selection: closed tag plus its configuration."""

    tag: str
    cfg: SimilarityConfig = field(default_factory=SimilarityConfig)

    def __post_init__(self):
        if self.tag not in METHOD_TAGS:
            raise DomainError(f"unknown method tag {self.tag!r}; expected one of {METHOD_TAGS}")


@dataclass(frozen=True)
class CorrelationResult:
    """Matching profile: one similarity value per lag abscissa."""

    lags: np.ndarray
    values: np.ndarray
    method: Method
    boundary: str

    def __post_init__(self):
        object.__setattr__(self, "lags", np.asarray(self.lags, dtype=np.float64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.lags.shape != self.values.shape or self.lags.ndim != 1:
            raise DomainError("lags and values must be 1-D arrays of equal length")

    @property
    def dx(self) -> float:
        if self.lags.size < 2:
            return 0.0
        return float(self.lags[1] - self.lags[0])

    def normalized(self, eps: float = 1e-12) -> "CorrelationResult":
        """Profile divided by its maximum absolute value (all-zero profiles pass through)."""
        peak = float(np.max(np.abs(self.values))) if self.values.size else 0.0
        if peak < eps:
            return self
        return CorrelationResult(self.lags, self.values / peak, self.method, self.boundary)


def _lag_geometry(n: int, m: int, boundary: str) -> tuple[int, int, float]:
    """Integer shift range and template-midpoint offset for a boundary policy."""
    center = (m - 1) / 2.0
    if boundary == "pad":
        k0 = -math.floor(center)
        return k0, n, center
    if boundary == "valid":
        if m > n:
            raise DomainError(f"template ({m}) longer than object ({n}) under valid boundary")
        return 0, n - m + 1, center
    raise DomainError(f"unknown boundary policy {boundary!r}; expected one of {BOUNDARIES}")


def _guarded_ratio(num: np.ndarray, den: np.ndarray, eps: float, signed_den: bool = False) -> np.ndarray:
    ok = (np.abs(den) if signed_den else den) >= eps
    return np.where(ok, num / np.where(ok, den, 1.0), 0.0)


def _profile_values(tag: str, cfg: SimilarityConfig, sums: np.ndarray,
                    abs_total: float, sum_total: float, dx: float) -> np.ndarray:
    if tag == "classic":
        return dx * sums[:, kernels.DOT]

    eps = cfg.eps_denom
    sm = dx * sums[:, kernels.SM]

    if tag in ("jaccard_real", "coincidence"):
        union = dx * (sums[:, kernels.MX] + (abs_total - sums[:, kernels.AFW]))
        jac = _guarded_ratio(sm, union, eps)
        if tag == "jaccard_real":
            return jac
        return jac * _interiority_values(cfg, sums, abs_total, dx)

    if tag == "interiority":
        return _interiority_values(cfg, sums, abs_total, dx)

    if tag in ("jaccard_addition", "coincidence_addition"):
        if cfg.addition_abs_denominator:
            den = dx * (abs_total + sums[:, kernels.AGW])
        else:
            den = dx * (sum_total + sums[:, kernels.SGW])
        jac = _guarded_ratio(2.0 * sm, den, eps, signed_den=True)
        if tag == "jaccard_addition":
            return jac
        return jac * _interiority_values(cfg, sums, abs_total, dx)

    raise DomainError(f"unknown method tag {tag!r}")


def _interiority_values(cfg: SimilarityConfig, sums: np.ndarray,
                        abs_total: float, dx: float) -> np.ndarray:
    den = dx * np.minimum(abs_total, sums[:, kernels.AGW])
    if cfg.interiority_signed_numerator:
        num = dx * sums[:, kernels.SM]
        return np.clip(_guarded_ratio(num, den, cfg.eps_denom), -1.0, 1.0)
    num = dx * sums[:, kernels.UM]
    return np.clip(_guarded_ratio(num, den, cfg.eps_denom), 0.0, 1.0)


def correlate(obj: Signal, template: Signal, method: Method,
              boundary: str = "pad") -> CorrelationResult:
    """Evaluate one similarity method at every relative displacement.

    With boundary="pad" the profile has one lag per object sample; with
    boundary="valid" only full-overlap displacements are evaluated (template
    must then fit inside the object).
    """
    if not grids_compatible(obj, template):
        raise AlignmentError(f"dx mismatch: object {obj.dx} vs template {template.dx}")
    n, m = len(obj), len(template)
    k0, n_lags, center = _lag_geometry(n, m, boundary)
    sums, abs_total, sum_total = kernels.sliding_sums(obj.samples, template.samples, k0, n_lags)
    values = _profile_values(method.tag, method.cfg, sums, abs_total, sum_total, obj.dx)
    lags = obj.x0 + (k0 + np.arange(n_lags) + center) * obj.dx
    return CorrelationResult(lags, values, method, boundary)


def correlate_classic(obj: Signal, template: Signal, boundary: str = "pad") -> CorrelationResult:
    """Raw sliding inner product (no normalization)."""
    return correlate(obj, template, Method("classic"), boundary)


def correlate_combined(obj: Signal, template: Signal, inner_method: Method,
                       boundary: str = "pad") -> CorrelationResult:
    """Two-stage pipeline: classic cross-correlation first, multiset method second.

    The stage-1 profile is max-normalized (multiset indices are magnitude
    sensitive) and becomes the object for stage 2; the same template is used in
    both stages.  Because lag abscissae are template-midpoint positions, the
    final profile stays indexed in the original object coordinates.
    """
    if inner_method.tag == "classic":
        raise DomainError("combined method requires a multiset inner method, not classic")
    stage1 = correlate_classic(obj, template, boundary).normalized(inner_method.cfg.eps_denom)
    stage2_obj = Signal(stage1.values, x0=float(stage1.lags[0]), dx=obj.dx)
    return correlate(stage2_obj, template, inner_method, boundary)
