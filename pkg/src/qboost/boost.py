"""Adaptive Stochastic Boosting and the AdaBoost baseline.

Three realizations of the same reweighting loop are provided:

``train_sampling``
    Learner weights are the accuracies on the current sample multiset; the
    next multiset is N draws from the current one, weighted by each
    sample's weighted error.
``train_matrix``
    The same loop written with the error matrix M and accuracy matrix M',
    ``w <- normalize(M' M w)``, optionally with soft entries and with the
    sample weights randomly thinned each iteration.
``train_eigenvector``
    The limit of the matrix iteration, found by power iteration.

All weight vectors are L1-normalised. The trained model is a weight vector
over the learner set; ``classify`` scores an input by the weighted vote.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .data import Dataset
from .learners import HARD, LearnerSet, build_matrices
from .metrics import auc
from .rng import SplitMix64

SAMPLING = "sampling"
MATRIX = "matrix"
EIGEN = "eigen"
ADABOOST = "adaboost"

ADABOOST_EPS_FLOOR = 1e-10


@dataclass
class IterationRecord:
    w: np.ndarray
    w_aggr: np.ndarray
    validation_auc: float | None = None


@dataclass
class TrainResult:
    final_weights: np.ndarray
    per_iteration: list[IterationRecord]
    realization: str
    converged: bool | None = None
    degenerate_exit: bool = False
    iterations: int = 0
    wall_time: float = field(default=0.0, compare=False)

    @property
    def auc_trace(self) -> list[float | None]:
        return [rec.validation_auc for rec in self.per_iteration]

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "realization": self.realization,
            "final_weights": self.final_weights.tolist(),
            "converged": self.converged,
            "degenerate_exit": self.degenerate_exit,
            "iterations": self.iterations,
            "auc_trace": self.auc_trace,
            "per_iteration": [
                {"w": r.w.tolist(), "w_aggr": r.w_aggr.tolist(),
                 "validation_auc": r.validation_auc}
                for r in self.per_iteration
            ],
        }
        if include_timing:
            d["wall_time"] = self.wall_time
        return d

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> TrainResult:
        try:
            recs = [IterationRecord(np.array(r["w"], dtype=np.float64),
                                    np.array(r["w_aggr"], dtype=np.float64),
                                    r.get("validation_auc"))
                    for r in d.get("per_iteration", [])]
            return cls(np.array(d["final_weights"], dtype=np.float64), recs,
                       d["realization"], d.get("converged"),
                       bool(d.get("degenerate_exit", False)),
                       int(d.get("iterations", len(recs))),
                       float(d.get("wall_time", 0.0)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed TrainResult JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> TrainResult:
        return cls.from_dict(json.loads(text))


def _normalize(v):
    s = v.sum()
    if not s > 0:
        return None
    return v / s


def scores(X, ls: LearnerSet, w) -> np.ndarray:
    """Weighted vote sum_theta w_theta h_theta(x) for each row of X."""
    return ls.predict(X) @ np.asarray(w, dtype=np.float64)


def classify(x, ls: LearnerSet, w) -> tuple[float, int]:
    s = float(scores(np.asarray(x, dtype=np.float64)[None, :], ls, w)[0])
    return s, int(s > 0.5)


class _Validator:
    def __init__(self, ls, valid):
        self.valid = valid
        self.pred = None if valid is None else ls.predict(valid.features).astype(np.float64)

    def __call__(self, w):
        if self.valid is None:
            return None
        return auc(self.pred @ w, self.valid.labels)


def resample_indices(p, n: int, rng: SplitMix64, method: str = "systematic") -> np.ndarray:
    """Draw ``n`` indices according to ``p``.

    ``systematic`` uses one uniform u and the points (u + k) / n;
    ``multinomial`` uses n independent uniforms.
    """
    cum = np.cumsum(p)
    if method == "systematic":
        u, rng.state = kernels.fill_uniform(1, rng.state)
        points = (u[0] + np.arange(n)) / n
    elif method == "multinomial":
        points, rng.state = kernels.fill_uniform(n, rng.state)
    else:
        raise ValueError(f"unknown resampling method {method!r}")
    idx = np.searchsorted(cum, points * cum[-1], side="right")
    return np.minimum(idx, len(p) - 1)


def train_sampling(train: Dataset, ls: LearnerSet, T: int, rng: SplitMix64,
                   valid: Dataset | None = None,
                   resampling: str = "systematic") -> TrainResult:
    """Sampling realization; returns the aggregated weights after T rounds."""
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    start = time.perf_counter()
    em = build_matrices(ls, train, HARD)
    err = em.M
    correct = em.Mp.T
    evaluate = _Validator(ls, valid)

    multiset = np.arange(train.N)
    w_aggr = np.zeros(ls.W)
    records = []
    degenerate = False
    for _ in range(T):
        w = _normalize(correct[multiset].sum(axis=0))
        if w is None:
            degenerate = True
            break
        w_aggr = _normalize(w_aggr + w)
        records.append(IterationRecord(w, w_aggr, evaluate(w_aggr)))
        p = _normalize(err[multiset] @ w)
        if p is None:
            degenerate = True
            break
        multiset = multiset[resample_indices(p, train.N, rng, resampling)]

    final = w_aggr if records else np.full(ls.W, 1.0 / ls.W)
    return TrainResult(final, records, SAMPLING, degenerate_exit=degenerate,
                       iterations=len(records),
                       wall_time=time.perf_counter() - start)


THINNING = ("probability", "error")


def _thin(p, keep_prob, rng: SplitMix64):
    """Keep p_i with probability keep_prob_i, zero it otherwise, renormalise.

    If every coordinate is zeroed the draw is retried once; if that also
    empties p, the unthinned p is returned.
    """
    for _ in range(2):
        u, rng.state = kernels.fill_uniform(p.size, rng.state)
        kept = _normalize(np.where(u < keep_prob, p, 0.0))
        if kept is not None:
            return kept
    return p


def train_matrix(train: Dataset, ls: LearnerSet, T: int, mode: str = HARD,
                 zero_p: bool = False, rng: SplitMix64 | None = None,
                 valid: Dataset | None = None, scale=None,
                 thinning: str = "probability") -> TrainResult:
    """Matrix realization: w^(t+1) = normalize(M' M w^(t)), aggregated as in sampling.

    With ``zero_p`` the sample weights are thinned between iterations: each
    p_i survives with probability p_i (``thinning="probability"``) or with
    probability q_i, the unnormalised weighted error of sample i
    (``thinning="error"``), and the survivors are renormalised.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    if zero_p and rng is None:
        raise ValueError("zero_p needs an rng")
    if thinning not in THINNING:
        raise ValueError(f"thinning must be one of {THINNING}, got {thinning!r}")
    start = time.perf_counter()
    em = build_matrices(ls, train, mode, scale)
    evaluate = _Validator(ls, valid)

    p = np.full(train.N, 1.0 / train.N)
    w_aggr = np.zeros(ls.W)
    records = []
    degenerate = False
    for t in range(T):
        w = _normalize(em.Mp @ p)
        if w is None:
            degenerate = True
            break
        w_aggr = _normalize(w_aggr + w)
        records.append(IterationRecord(w, w_aggr, evaluate(w_aggr)))
        q = em.M @ w
        p = _normalize(q)
        if p is None:
            degenerate = True
            break
        if zero_p and t < T - 1:
            p = _thin(p, p if thinning == "probability" else q, rng)

    final = w_aggr if records else np.full(ls.W, 1.0 / ls.W)
    return TrainResult(final, records, MATRIX, degenerate_exit=degenerate,
                       iterations=len(records),
                       wall_time=time.perf_counter() - start)


def power_iterate(M, Mp, w0, tol=1e-9, max_iter=10_000):
    """L1-normalised power iteration of M' M from ``w0``.

    Returns ``(w, iterations, converged, degenerate)``; stops once
    consecutive iterates differ by less than ``tol`` in L1.
    """
    w = w0
    for it in range(1, max_iter + 1):
        q = M @ w
        if not q.sum() > 0:
            return w, it, False, True
        w_next = _normalize(Mp @ q)
        if w_next is None:
            return w, it, False, True
        delta = np.abs(w_next - w).sum()
        w = w_next
        if delta < tol:
            return w, it, True, False
    return w, max_iter, False, False


def train_eigenvector(train: Dataset, ls: LearnerSet, tol: float = 1e-9,
                      max_iter: int = 10_000,
                      valid: Dataset | None = None) -> TrainResult:
    """Eigenvector realization: the limit of the hard matrix iteration."""
    if not ls.negation_closed:
        raise ValueError("eigenvector realization needs a negation-closed learner set")
    start = time.perf_counter()
    em = build_matrices(ls, train, HARD)
    evaluate = _Validator(ls, valid)
    w1 = _normalize(em.Mp @ np.full(train.N, 1.0 / train.N))
    w, n_iter, converged, degenerate = power_iterate(em.M, em.Mp, w1, tol, max_iter)
    rec = IterationRecord(w, w, evaluate(w))
    return TrainResult(w, [rec], EIGEN, converged=converged,
                       degenerate_exit=degenerate, iterations=n_iter,
                       wall_time=time.perf_counter() - start)


def train_adaboost(train: Dataset, ls: LearnerSet, T: int,
                   valid: Dataset | None = None) -> TrainResult:
    """Discrete AdaBoost over the fixed stump set.

    Each round takes the stump with the smallest weighted error (lowest
    index on ties) and gives it weight 0.5 ln((1 - eps) / eps). The stored
    weights are the per-stump sums of those coefficients, L1-normalised, so
    the weighted vote lies in [0, 1]. A zero-error stump ends training (eps
    is floored at 1e-10); so does a best error of 0.5 or more.
    """
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    start = time.perf_counter()
    err = build_matrices(ls, train, HARD).M
    sign = 2.0 * err - 1.0  # +1 where the stump errs
    evaluate = _Validator(ls, valid)

    D = np.full(train.N, 1.0 / train.N)
    alpha = np.zeros(ls.W)
    records = []
    for _ in range(T):
        weighted = D @ err
        best = int(np.argmin(weighted))
        eps = float(weighted[best])
        if eps >= 0.5:
            break
        perfect = eps == 0.0
        eps = max(eps, ADABOOST_EPS_FLOOR)
        a = 0.5 * math.log((1.0 - eps) / eps)
        alpha[best] += a
        w = alpha / alpha.sum()
        records.append(IterationRecord(w, w, evaluate(w)))
        if perfect:
            break
        D = D * np.exp(a * sign[:, best])
        D /= D.sum()

    final = records[-1].w if records else np.full(ls.W, 1.0 / ls.W)
    return TrainResult(final, records, ADABOOST, iterations=len(records),
                       wall_time=time.perf_counter() - start)
