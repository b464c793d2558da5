"""Simulation, timing, and bootstrap harnesses over the selectors.

Per-repetition behavior is fully determined by ``base_seed +
repetition_index``, so runs are reproducible record for record, whether
repetitions execute serially or on a process pool. The pool size is
capped by the SUBDATA_THREADS environment variable (default 1).
"""

from __future__ import annotations

import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .datagen import ScenarioConfig, gen_covariates, gen_response
from .errors import ConfigError, SubdataError
from .linalg import DataMatrix, logdet_info
from .regression import adjusted_intercept, expand_interactions, fit_ols, with_intercept
from .selectors import (
    LevssConfig,
    SelectionResult,
    select_iboss,
    select_levss,
    select_oss,
    select_uniform,
)

SELECTOR_NAMES = ("levss", "iboss", "oss", "uniform")

THREADS_ENV_VAR = "SUBDATA_THREADS"

RNG_LABEL = "numpy default_rng (PCG64)"


@dataclass(frozen=True)
class SelectorSpec:
    """A selector plus the per-method options the harness understands.

    ``threshold`` applies to the leverage selector only; ``design``
    ("main" or "expanded") applies to the extreme-value selector only
    and controls whether it sees the raw covariates or the
    interaction-expanded design.
    """

    name: str
    threshold: float | None = None
    design: str = "main"

    def __post_init__(self):
        if self.name not in SELECTOR_NAMES:
            raise ConfigError(
                f"unknown selector {self.name!r}, expected one of {SELECTOR_NAMES}"
            )
        if self.threshold is not None and self.name != "levss":
            raise ConfigError("threshold only applies to the levss selector")
        if self.design not in ("main", "expanded"):
            raise ConfigError(f"design must be 'main' or 'expanded', got {self.design!r}")
        if self.design == "expanded" and self.name != "iboss":
            raise ConfigError("design='expanded' only applies to the iboss selector")

    @property
    def label(self) -> str:
        """Stable string used in records, CSV rows, and summaries."""
        if self.name == "levss" and self.threshold is not None:
            t = self.threshold
            tag = "inf" if math.isinf(t) else f"{t:g}"
            return f"levss:T={tag}"
        if self.name == "iboss" and self.design == "expanded":
            return "iboss:design=expanded"
        return self.name


def _coerce_specs(selectors) -> tuple[SelectorSpec, ...]:
    specs = []
    for s in selectors:
        specs.append(SelectorSpec(s) if isinstance(s, str) else s)
    if not specs:
        raise ConfigError("need at least one selector")
    return tuple(specs)


def _run_selector(spec: SelectorSpec, main: DataMatrix,
                  expanded: DataMatrix | None, k: int, seed: int) -> SelectionResult:
    if spec.name == "levss":
        return select_levss(main, LevssConfig(k=k, threshold=spec.threshold, seed=seed))
    if spec.name == "iboss":
        target = expanded if spec.design == "expanded" else main
        return select_iboss(target, k)
    if spec.name == "oss":
        return select_oss(main, k, seed)
    return select_uniform(main, k, seed)


@dataclass(frozen=True)
class MetricsRecord:
    """One selector run on one repetition.

    Squared-error fields compare the adjusted-intercept subdata fit to
    the scenario truth (or, for the bootstrap, to the full-data fit).
    ``mse_main`` and ``mse_interaction`` split the slope error between
    first-order and interaction coefficients and are None outside
    interaction scenarios. ``failed`` records flagged repetitions that
    aggregation must exclude.
    """

    repetition: int
    selector: str
    k: int
    k_star: int
    mse_intercept: float
    mse_slopes: float
    mse_main: float | None
    mse_interaction: float | None
    logdet: float
    elapsed_select: float
    elapsed_fit: float
    failed: bool = False
    error: str = ""


def resolve_workers(n_jobs: int | None = None) -> int:
    """Worker count: explicit argument, else SUBDATA_THREADS, else 1."""
    if n_jobs is not None:
        if n_jobs < 1:
            raise ConfigError(f"n_jobs must be >= 1, got {n_jobs}")
        return int(n_jobs)
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        val = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from exc
    return max(1, val)


def _failure_record(rep: int, spec: SelectorSpec, k: int, exc: Exception) -> MetricsRecord:
    return MetricsRecord(
        repetition=rep, selector=spec.label, k=k, k_star=0,
        mse_intercept=math.nan, mse_slopes=math.nan,
        mse_main=None, mse_interaction=None, logdet=math.nan,
        elapsed_select=math.nan, elapsed_fit=math.nan,
        failed=True, error=f"{type(exc).__name__}: {exc}",
    )


def _simulate_rep(config: ScenarioConfig, specs: tuple[SelectorSpec, ...],
                  rep: int) -> list[MetricsRecord]:
    cfg = replace(config, seed=config.seed + rep, beta_slopes=config.beta_slopes)
    X = gen_covariates(cfg)
    y = gen_response(X, cfg)
    design = expand_interactions(X.values) if cfg.interaction else X.values
    needs_expanded = any(s.design == "expanded" for s in specs)
    expanded_dm = None
    if needs_expanded:
        expanded_vals = design if cfg.interaction else expand_interactions(X.values)
        expanded_dm = DataMatrix(expanded_vals)
    design_means = design.mean(axis=0)
    y_mean = float(y.mean())
    p = cfg.p

    records = []
    for spec in specs:
        try:
            sel = _run_selector(spec, X, expanded_dm, cfg.k, seed=cfg.seed)
            t0 = time.perf_counter()
            fit = fit_ols(design[sel.indices], y[sel.indices])
            fit = adjusted_intercept(fit, design_means, y_mean)
            t_fit = time.perf_counter() - t0
            ld = logdet_info(with_intercept(design[sel.indices]), cfg.sigma2)
            err = fit.slopes - cfg.beta_slopes
            mse_main = mse_inter = None
            if cfg.interaction:
                mse_main = float(err[:p] @ err[:p])
                mse_inter = float(err[p:] @ err[p:])
            records.append(MetricsRecord(
                repetition=rep, selector=spec.label, k=cfg.k, k_star=sel.k_star,
                mse_intercept=float((fit.intercept - cfg.beta0) ** 2),
                mse_slopes=float(err @ err),
                mse_main=mse_main, mse_interaction=mse_inter,
                logdet=ld, elapsed_select=sel.elapsed, elapsed_fit=t_fit,
            ))
        except (SubdataError, np.linalg.LinAlgError) as exc:
            records.append(_failure_record(rep, spec, cfg.k, exc))
    return records


def run_simulation(config: ScenarioConfig, selectors, reps: int,
                   n_jobs: int | None = None) -> list[MetricsRecord]:
    """Generate, select, fit, and score ``reps`` independent repetitions.

    Repetition r draws its dataset from seed ``config.seed + r``, runs
    every selector on it, fits OLS with the adjusted intercept on each
    subdata, and records squared estimation errors, the subdata
    information log-determinant, and wall-clock timings. A selector
    failure yields a flagged record (and a warning), never a silent
    drop, so record counts are always reps x selectors.

    Parallel execution over repetitions (``n_jobs`` workers, default
    from SUBDATA_THREADS) produces byte-identical records to the serial
    run because each repetition is a pure function of its own seed.
    """
    if reps < 1:
        raise ConfigError(f"reps must be >= 1, got {reps}")
    specs = _coerce_specs(selectors)
    workers = resolve_workers(n_jobs)
    if workers == 1 or reps == 1:
        per_rep = [_simulate_rep(config, specs, r) for r in range(reps)]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, reps)) as pool:
            per_rep = list(pool.map(_simulate_rep, [config] * reps,
                                    [specs] * reps, range(reps)))
    records = [rec for chunk in per_rep for rec in chunk]
    failures = [r for r in records if r.failed]
    for r in failures:
        warnings.warn(
            f"repetition {r.repetition}, selector {r.selector} failed and is "
            f"excluded from aggregates: {r.error}",
            stacklevel=2,
        )
    return records


@dataclass(frozen=True)
class TimingRecord:
    """Selection-time summary for one selector at one data size."""

    n: int
    selector: str
    reps: int
    mean_seconds: float
    median_seconds: float


def run_timing(n_values, p: int, k: int, selectors, reps: int = 5,
               case: str = "uniform01", base_seed: int = 0) -> list[TimingRecord]:
    """Wall-clock selection time per selector across data sizes.

    For each n, one warm-up repetition is run and discarded, then
    ``reps`` timed repetitions follow, each on a freshly seeded dataset
    shared by all selectors. Only the selection call is timed (the
    selector measures itself); generation and fitting stay outside.
    Runs are strictly serial so timings are not polluted by sibling
    workers. Reported statistics are the mean and the median over
    repetitions.
    """
    if reps < 1:
        raise ConfigError(f"reps must be >= 1, got {reps}")
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise ConfigError("n_values must not be empty")
    specs = _coerce_specs(selectors)
    out = []
    for n in n_values:
        times: dict[str, list[float]] = {s.label: [] for s in specs}
        for rep in range(reps + 1):  # rep 0 is the discarded warm-up
            cfg = ScenarioConfig(case=case, n=int(n), p=p, k=k,
                                 seed=base_seed + rep)
            X = gen_covariates(cfg)
            for spec in specs:
                res = _run_selector(spec, X, None, k, seed=cfg.seed)
                if rep > 0:
                    times[spec.label].append(res.elapsed)
        for spec in specs:
            vals = np.asarray(times[spec.label])
            out.append(TimingRecord(
                n=int(n), selector=spec.label, reps=reps,
                mean_seconds=float(vals.mean()),
                median_seconds=float(np.median(vals)),
            ))
    return out


def default_bootstrap_selectors() -> tuple[SelectorSpec, ...]:
    """Threshold ladder for the leverage selector, plus the two rivals."""
    return (
        SelectorSpec("levss", threshold=25.0),
        SelectorSpec("levss", threshold=20.0),
        SelectorSpec("levss", threshold=15.0),
        SelectorSpec("levss"),
        SelectorSpec("iboss"),
        SelectorSpec("oss"),
    )


@dataclass(frozen=True)
class BootstrapPlan:
    """Bootstrap study layout: replicate count, k grid, selector set.

    ``resample=False`` replaces every replicate with the original data
    in original order, which is the degenerate mode used to validate
    the pipeline (a full-size uniform selection then reproduces the
    full-data fit exactly).
    """

    k_values: tuple[int, ...]
    n_boot: int = 100
    selectors: tuple[SelectorSpec, ...] = field(
        default_factory=default_bootstrap_selectors
    )
    seed: int = 0
    resample: bool = True

    def __post_init__(self):
        if self.n_boot < 1:
            raise ConfigError(f"n_boot must be >= 1, got {self.n_boot}")
        ks = tuple(int(k) for k in self.k_values)
        if not ks:
            raise ConfigError("k_values must not be empty")
        object.__setattr__(self, "k_values", ks)
        object.__setattr__(self, "selectors", _coerce_specs(self.selectors))

    @classmethod
    def from_multiples(cls, p: int, multiples=(5, 10, 20, 30), **kwargs) -> "BootstrapPlan":
        """k grid as multiples of the covariate count, default 5p..30p."""
        return cls(k_values=tuple(int(m) * int(p) for m in multiples), **kwargs)


def run_bootstrap(data: DataMatrix, plan: BootstrapPlan) -> list[MetricsRecord]:
    """Selector accuracy under resampling, scored against the full fit.

    The full-data OLS estimate on ``data`` serves as the reference
    truth. Each replicate resamples n rows with replacement (seeded by
    ``plan.seed + b``), then every (k, selector) cell selects, fits,
    and records squared deviations of its adjusted-intercept estimate
    from the reference. Log-determinants use sigma2 = 1 since the error
    variance is unknown here.
    """
    if data.response is None:
        raise ConfigError("bootstrap needs a dataset with a response column")
    n, p = data.n, data.p
    for k in plan.k_values:
        if not (p < k <= n):
            raise ConfigError(f"bootstrap k values must satisfy p < k <= n, got k={k}")
    reference = fit_ols(data.values, data.response)

    records = []
    for b in range(plan.n_boot):
        if plan.resample:
            rng = np.random.default_rng(plan.seed + b)
            rows = rng.integers(0, n, size=n)
            rep_data = data.take(rows)
        else:
            rep_data = data
        x_means = rep_data.values.mean(axis=0)
        y_mean = float(rep_data.response.mean())
        for k in plan.k_values:
            for spec in plan.selectors:
                try:
                    sel = _run_selector(spec, rep_data, None, k,
                                        seed=plan.seed + b)
                    t0 = time.perf_counter()
                    fit = fit_ols(rep_data.values[sel.indices],
                                  rep_data.response[sel.indices])
                    fit = adjusted_intercept(fit, x_means, y_mean)
                    t_fit = time.perf_counter() - t0
                    ld = logdet_info(
                        with_intercept(rep_data.values[sel.indices]), 1.0
                    )
                    err = fit.slopes - reference.slopes
                    records.append(MetricsRecord(
                        repetition=b, selector=spec.label, k=k, k_star=sel.k_star,
                        mse_intercept=float(
                            (fit.intercept - reference.intercept) ** 2),
                        mse_slopes=float(err @ err),
                        mse_main=None, mse_interaction=None,
                        logdet=ld, elapsed_select=sel.elapsed, elapsed_fit=t_fit,
                    ))
                except (SubdataError, np.linalg.LinAlgError) as exc:
                    records.append(_failure_record(b, spec, k, exc))
    failures = [r for r in records if r.failed]
    for r in failures:
        warnings.warn(
            f"bootstrap replicate {r.repetition}, selector {r.selector} "
            f"failed and is excluded from aggregates: {r.error}",
            stacklevel=2,
        )
    return records


def _dist_stats(values: np.ndarray) -> dict:
    return {
        "mean": float(values.mean()),
        "q25": float(np.percentile(values, 25)),
        "median": float(np.percentile(values, 50)),
        "q75": float(np.percentile(values, 75)),
    }


def summarize(records, config_echo: dict | None = None) -> dict:
    """Aggregate records into the JSON-ready summary document.

    Groups by (selector, k); flagged records are excluded from every
    statistic but counted per group. Slope MSEs additionally get log10
    statistics when all values in the group are positive. The summary
    carries the RNG identifier and an echo of the run configuration so
    an output file is self-describing.
    """
    recs = list(records)
    failures = sum(1 for r in recs if r.failed)
    keys = []
    for r in recs:
        key = (r.selector, r.k)
        if key not in keys:
            keys.append(key)
    groups = []
    for selector, k in keys:
        ok = [r for r in recs if r.selector == selector and r.k == k and not r.failed]
        cell: dict = {
            "selector": selector,
            "k": k,
            "count": len(ok),
            "failures": sum(1 for r in recs
                            if r.selector == selector and r.k == k and r.failed),
        }
        if ok:
            slopes = np.asarray([r.mse_slopes for r in ok])
            cell["mse_slopes"] = _dist_stats(slopes)
            if np.all(slopes > 0):
                cell["log10_mse_slopes"] = _dist_stats(np.log10(slopes))
            cell["mse_intercept_mean"] = float(np.mean([r.mse_intercept for r in ok]))
            if ok[0].mse_main is not None:
                cell["mse_main_mean"] = float(np.mean([r.mse_main for r in ok]))
                cell["mse_interaction_mean"] = float(
                    np.mean([r.mse_interaction for r in ok]))
            cell["logdet_mean"] = float(np.mean([r.logdet for r in ok]))
            cell["k_star_mean"] = float(np.mean([r.k_star for r in ok]))
            cell["elapsed_select_mean"] = float(
                np.mean([r.elapsed_select for r in ok]))
            cell["elapsed_fit_mean"] = float(np.mean([r.elapsed_fit for r in ok]))
        groups.append(cell)

    summary = {
        "rng": RNG_LABEL,
        "config": dict(config_echo or {}),
        "records": len(recs),
        "failures": failures,
        "groups": groups,
    }
    # intercept-accuracy spread across selectors, reported not asserted
    by_k: dict[int, list[float]] = {}
    for cell in groups:
        if "mse_intercept_mean" in cell and cell["mse_intercept_mean"] > 0:
            by_k.setdefault(cell["k"], []).append(cell["mse_intercept_mean"])
    ratios = {
        str(k): max(v) / min(v) for k, v in by_k.items() if len(v) >= 2 and min(v) > 0
    }
    if ratios:
        summary["diagnostics"] = {"mse_intercept_mean_max_over_min": ratios}
    return summary
