"""Monte-Carlo noise sweep: run methods over noise levels, aggregate merit figures.

Within one (level, realization) cell every method sees the identical noisy
object, so cross-method comparisons are paired.  The whole sweep is a pure
function of its configuration; cells are independent work units and execution
order never changes the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correlate import (
    BOUNDARIES,
    METHOD_TAGS,
    MULTISET_TAGS,
    CorrelationResult,
    Method,
    correlate,
    correlate_combined,
)
from .generators import (
    N_NOISE_LEVELS,
    NoiseSpec,
    ObjectSpec,
    TemplateSpec,
    add_noise,
    gen_object,
    gen_template,
)
from .metrics import INDEX_NAMES, PerformanceIndices, compute_indices
from .peaks import detect_peaks
from .signal import DEFAULT_CONFIG, DomainError, Signal, SimilarityConfig

DEFAULT_METHODS = ("classic", "jaccard_real", "coincidence", "combined_coincidence")

COMBINED_PREFIX = "combined_"

_ALIASES = {
    "jaccard": "jaccard_real",
    "correlation": "classic",
    "cross_correlation": "classic",
}

RECORD_COLUMNS = ("method", "level", "realization") + INDEX_NAMES + (
    "primary_found", "secondary_found")


def canonical_method(name: str) -> str:
    """Normalize a user-facing method name; raises on unknown methods."""
    base = name.strip().lower().replace("-", "_")
    combined = base.startswith(COMBINED_PREFIX)
    if combined:
        base = base[len(COMBINED_PREFIX):]
    base = _ALIASES.get(base, base)
    if base not in METHOD_TAGS:
        raise DomainError(f"unknown method {name!r}")
    if combined and base not in MULTISET_TAGS:
        raise DomainError("combined methods need a multiset inner method, not classic")
    return COMBINED_PREFIX + base if combined else base


def method_profile(name: str, obj: Signal, template: Signal,
                   cfg: SimilarityConfig = DEFAULT_CONFIG,
                   boundary: str = "pad") -> CorrelationResult:
    """Profile for a canonical method name, handling the combined two-stage form."""
    if name.startswith(COMBINED_PREFIX):
        inner = Method(name[len(COMBINED_PREFIX):], cfg)
        return correlate_combined(obj, template, inner, boundary)
    return correlate(obj, template, Method(name, cfg), boundary)


@dataclass(frozen=True)
class SweepConfig:
    methods: tuple[str, ...] = DEFAULT_METHODS
    object_spec: ObjectSpec = field(default_factory=ObjectSpec)
    template_spec: TemplateSpec = field(default_factory=TemplateSpec)
    levels: tuple[int, ...] = tuple(range(N_NOISE_LEVELS))
    realizations: int = 300
    base_seed: int = 0
    noise_multiplier: float = 1.0
    boundary: str = "pad"
    sim_cfg: SimilarityConfig = field(default_factory=SimilarityConfig)
    clamp_negative_overlap: bool = False

    def __post_init__(self):
        object.__setattr__(self, "methods",
                           tuple(canonical_method(m) for m in self.methods))
        object.__setattr__(self, "levels", tuple(int(v) for v in self.levels))
        if not self.methods:
            raise DomainError("at least one method required")
        for v in self.levels:
            if not (0 <= v < N_NOISE_LEVELS):
                raise DomainError(f"noise level {v} out of range 0..{N_NOISE_LEVELS - 1}")
        if self.realizations < 1:
            raise DomainError("realizations must be >= 1")
        if self.boundary not in BOUNDARIES:
            raise DomainError(f"unknown boundary policy {self.boundary!r}")


@dataclass(frozen=True)
class SweepRecord:
    method: str
    level: int
    realization: int
    indices: PerformanceIndices | None  # None when even the primary peak failed

    @property
    def primary_found(self) -> bool:
        return self.indices is not None

    @property
    def secondary_found(self) -> bool:
        return self.indices is not None and self.indices.r_h is not None

    def index_value(self, name: str) -> float | None:
        if self.indices is None:
            return None
        return getattr(self.indices, name)


@dataclass(frozen=True)
class Aggregate:
    """Per-(method, level) mean/std/count of one merit figure (failed cells excluded)."""

    mean: float
    std: float
    n: int


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[SweepRecord]
    aggregates: dict[tuple[str, int], dict[str, Aggregate]]

    def aggregate(self, method: str, level: int, index: str) -> Aggregate:
        return self.aggregates[(canonical_method(method), level)][index]


def _aggregate_cell(records: list[SweepRecord]) -> dict[str, Aggregate]:
    out: dict[str, Aggregate] = {}
    for name in INDEX_NAMES:
        values = [r.index_value(name) for r in records]
        values = [v for v in values if v is not None]
        if not values:
            out[name] = Aggregate(math.nan, math.nan, 0)
            continue
        arr = np.asarray(values)
        # a single retained value has no sample spread; report 0 rather than NaN
        std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
        out[name] = Aggregate(float(np.mean(arr)), std, arr.size)
    return out


def aggregate_records(records: list[SweepRecord]) -> dict[tuple[str, int], dict[str, Aggregate]]:
    cells: dict[tuple[str, int], list[SweepRecord]] = {}
    for rec in records:
        cells.setdefault((rec.method, rec.level), []).append(rec)
    return {key: _aggregate_cell(cell) for key, cell in cells.items()}


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Execute the full noise sweep described by cfg."""
    clean = gen_object(cfg.object_spec)
    template = gen_template(cfg.template_spec, cfg.object_spec.dx)
    records: list[SweepRecord] = []
    for level in cfg.levels:
        for realization in range(cfg.realizations):
            noise = NoiseSpec(level=level, seed=cfg.base_seed, realization=realization,
                              multiplier=cfg.noise_multiplier)
            noisy = add_noise(clean, noise)
            for name in cfg.methods:
                records.append(_run_cell(name, noisy, template, cfg, level, realization))
    return SweepResult(cfg, records, aggregate_records(records))


def _run_cell(name: str, noisy: Signal, template: Signal, cfg: SweepConfig,
              level: int, realization: int) -> SweepRecord:
    profile = method_profile(name, noisy, template, cfg.sim_cfg, cfg.boundary).normalized()
    try:
        pm = detect_peaks(profile, cfg.object_spec)
        indices = compute_indices(pm, cfg.object_spec, profile,
                                  cfg.clamp_negative_overlap)
    except DomainError:
        indices = None
    return SweepRecord(name, level, realization, indices)


# ---------------------------------------------------------------------------
# CSV serialization (column order fixed; floats at 9 significant digits)

def _fmt(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "nan"
    return format(value, ".9g")


def config_comment(cfg: SweepConfig) -> str:
    o, t = cfg.object_spec, cfg.template_spec
    grid = ":".join(_fmt(g) for g in o.grid[:2]) + f":{o.grid[2]}"
    parts = [
        "methods=" + "|".join(cfg.methods),
        "levels=" + ",".join(str(v) for v in cfg.levels),
        f"realizations={cfg.realizations}",
        f"seed={cfg.base_seed}",
        f"noise_multiplier={_fmt(cfg.noise_multiplier)}",
        f"boundary={cfg.boundary}",
        f"hp={_fmt(o.h_p)}", f"hs={_fmt(o.h_s)}",
        f"sigma_p={_fmt(o.sigma_p)}", f"sigma_s={_fmt(o.sigma_s)}",
        f"xp={_fmt(o.x_p)}", f"xs={_fmt(o.x_s)}", f"grid={grid}",
        f"template_width={_fmt(t.width)}", f"template_amplitude={_fmt(t.amplitude)}",
        f"alpha={_fmt(cfg.sim_cfg.alpha)}", f"eps_denom={_fmt(cfg.sim_cfg.eps_denom)}",
    ]
    return "# " + " ".join(parts)


def write_records_csv(result: SweepResult, path) -> None:
    lines = [config_comment(result.config), ",".join(RECORD_COLUMNS)]
    for rec in result.records:
        row = [rec.method, str(rec.level), str(rec.realization)]
        row += [_fmt(rec.index_value(name)) for name in INDEX_NAMES]
        row += [str(int(rec.primary_found)), str(int(rec.secondary_found))]
        lines.append(",".join(row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def aggregate_columns() -> list[str]:
    cols = ["method", "level", "n_total"]
    for name in INDEX_NAMES:
        cols += [f"{name}_mean", f"{name}_std", f"{name}_n"]
    return cols


def write_aggregates_csv(result: SweepResult, path) -> None:
    lines = [config_comment(result.config), ",".join(aggregate_columns())]
    cell_sizes: dict[tuple[str, int], int] = {}
    for rec in result.records:
        key = (rec.method, rec.level)
        cell_sizes[key] = cell_sizes.get(key, 0) + 1
    for level in result.config.levels:
        for method in result.config.methods:
            key = (method, level)
            aggs = result.aggregates[key]
            row = [method, str(level), str(cell_sizes[key])]
            for name in INDEX_NAMES:
                agg = aggs[name]
                row += [_fmt(agg.mean), _fmt(agg.std), str(agg.n)]
            lines.append(",".join(row))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
