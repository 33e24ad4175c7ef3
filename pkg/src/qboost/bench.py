"""Benchmark protocol: repeated random splits, every realization, AUC summary."""

from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import boost
from .data import Dataset, load_csv, split
from .learners import SOFT, build_matrices, generate_stumps
from .metrics import auc
from .qsim import quantum_scores
from .rng import SplitMix64

QUANTUM = "quantum_expectation"
REALIZATIONS = (boost.ADABOOST, QUANTUM, boost.SAMPLING, boost.MATRIX, boost.EIGEN)
ITERATIVE = (boost.SAMPLING, boost.MATRIX)
MODES = ("last", "max")


@dataclass
class BenchConfig:
    data: str
    label: str | int = -1
    valid_fraction: float = 0.1
    runs: int = 10
    iters: int = 10
    k: int = 11
    seed: int = 0
    realizations: tuple[str, ...] = REALIZATIONS
    modes: tuple[str, ...] = MODES
    matrix_mode: str = SOFT
    zero_p: bool = True
    matrix_thinning: str = "error"
    resampling: str = "systematic"
    adaboost_rounds: int = 50
    eigen_tol: float = 1e-9
    eigen_max_iter: int = 10_000

    def __post_init__(self):
        self.realizations = tuple(self.realizations)
        self.modes = tuple(self.modes)
        if self.runs < 1 or self.iters < 1:
            raise ValueError("runs and iters must be >= 1")
        unknown = set(self.realizations) - set(REALIZATIONS)
        if unknown:
            raise ValueError(f"unknown realizations {sorted(unknown)}; "
                             f"choose from {list(REALIZATIONS)}")
        if not self.realizations:
            raise ValueError("no realizations requested")
        bad_modes = set(self.modes) - set(MODES)
        if bad_modes or not self.modes:
            raise ValueError(f"modes must be a non-empty subset of {list(MODES)}")

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["realizations"] = list(self.realizations)
        d["modes"] = list(self.modes)
        return d

    @classmethod
    def from_dict(cls, d):
        fields = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - fields
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        return cls(**d)


def summarize(values) -> dict:
    v = np.asarray(values, dtype=np.float64)
    return {"min": float(v.min()), "max": float(v.max()), "avg": float(v.mean())}


@dataclass
class BenchReport:
    config: BenchConfig
    results: dict  # realization -> {"runs": [...], "last": {...}, "max": {...}}
    timings: dict = field(default_factory=dict)  # realization -> mean seconds per run
    roc_scores: dict = field(default_factory=dict, repr=False)

    def summary(self, realization: str, mode: str = "last") -> dict:
        return self.results[realization][mode]

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {"config": self.config.to_dict(), "results": self.results}
        if include_timing:
            d["mean_seconds_per_run"] = self.timings
        return d

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2)

    @classmethod
    def from_dict(cls, d) -> BenchReport:
        return cls(BenchConfig.from_dict(d["config"]), d["results"],
                   d.get("mean_seconds_per_run", {}))

    def table(self) -> str:
        """Plain-text Min/Max/Avg table, one row per realization and mode."""
        lines = [f"{'algorithm':<30}{'Min':>7}{'Max':>7}{'Avg':>7}{'sec/run':>10}"]
        for name in self.config.realizations:
            modes = self.config.modes if name in ITERATIVE else ("last",)
            for mode in modes:
                s = self.results[name][mode]
                label = f"{name} ({mode})" if name in ITERATIVE else name
                t = self.timings.get(name)
                ts = f"{t:10.3f}" if t is not None else ""
                lines.append(f"{label:<30}{s['min']:7.3f}{s['max']:7.3f}{s['avg']:7.3f}{ts}")
        return "\n".join(lines)


def run_one(cfg: BenchConfig, ds: Dataset, run: int) -> dict:
    """One split of the protocol; returns per-realization AUCs, times and scores."""
    seed = cfg.seed + run
    try:
        sp = split(ds, cfg.valid_fraction, seed)
    except ValueError as exc:
        raise RuntimeError(f"run {run} (seed {seed}): {exc}") from exc
    ls = generate_stumps(sp.train, cfg.k)
    base = SplitMix64(seed)
    out = {}
    for name in cfg.realizations:
        rng = base.spawn(REALIZATIONS.index(name))
        t0 = time.perf_counter()
        if name == QUANTUM:
            a = build_matrices(ls, sp.train).accuracies
            s = quantum_scores(sp.valid.features, ls, a)
            trace = [auc(s, sp.valid.labels)]
        else:
            if name == boost.SAMPLING:
                res = boost.train_sampling(sp.train, ls, cfg.iters, rng, sp.valid,
                                           cfg.resampling)
            elif name == boost.MATRIX:
                res = boost.train_matrix(sp.train, ls, cfg.iters, cfg.matrix_mode,
                                         cfg.zero_p, rng, sp.valid,
                                         thinning=cfg.matrix_thinning)
            elif name == boost.EIGEN:
                res = boost.train_eigenvector(sp.train, ls, cfg.eigen_tol,
                                              cfg.eigen_max_iter, sp.valid)
            else:
                res = boost.train_adaboost(sp.train, ls, cfg.adaboost_rounds, sp.valid)
            s = boost.scores(sp.valid.features, ls, res.final_weights)
            trace = res.auc_trace
        elapsed = time.perf_counter() - t0
        out[name] = {
            "run": run, "seed": seed,
            "last": float(trace[-1]), "max": float(max(trace)),
            "iterations": len(trace),
            "seconds": elapsed,
            "scores": s, "labels": sp.valid.labels,
        }
    return out


def _run_one_star(args):
    return run_one(*args)


def run_bench(cfg: BenchConfig, ds: Dataset | None = None, jobs: int = 1) -> BenchReport:
    """Run ``cfg.runs`` independent splits; ``jobs > 1`` uses a process pool."""
    if ds is None:
        ds = load_csv(cfg.data, cfg.label)
    tasks = [(cfg, ds, r) for r in range(cfg.runs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_run = list(pool.map(_run_one_star, tasks))
    else:
        per_run = [run_one(*t) for t in tasks]

    results, timings, roc = {}, {}, {}
    for name in cfg.realizations:
        rows = [r[name] for r in per_run]
        entry = {"runs": [{k: row[k] for k in ("run", "seed", "last", "max", "iterations")}
                          for row in rows]}
        modes = cfg.modes if name in ITERATIVE else ("last",)
        for mode in modes:
            entry[mode] = summarize([row[mode] for row in rows])
        results[name] = entry
        timings[name] = float(np.mean([row["seconds"] for row in rows]))
        roc[name] = (rows[0]["scores"], rows[0]["labels"])
    return BenchReport(cfg, results, timings, roc)
