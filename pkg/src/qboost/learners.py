"""Decision stumps, negation-closed learner sets and the error matrices.

Learner ``theta`` is column ``theta`` of the error matrix ``M`` (N x W) and
row ``theta`` of the accuracy matrix ``Mp`` (W x N). Indices are 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import expit

from .data import Dataset

HARD = "hard"
SOFT = "soft"


@dataclass(frozen=True)
class Stump:
    """One-feature threshold classifier.

    Polarity +1 predicts 1 on ``x[feature] >= threshold``, polarity -1
    predicts 1 on ``x[feature] < threshold``.
    """

    feature: int
    threshold: float
    polarity: int = 1

    def __post_init__(self):
        if self.polarity not in (1, -1):
            raise ValueError(f"polarity must be +1 or -1, got {self.polarity}")
        if self.feature < 0:
            raise ValueError(f"feature index must be >= 0, got {self.feature}")

    def negate(self) -> Stump:
        return Stump(self.feature, self.threshold, -self.polarity)

    def predict(self, x) -> int:
        above = x[self.feature] >= self.threshold
        return int(above) if self.polarity == 1 else int(not above)

    def to_dict(self):
        return {"feature": self.feature, "threshold": self.threshold,
                "polarity": self.polarity}


def predict(s: Stump, x) -> int:
    return s.predict(x)


@dataclass(frozen=True, eq=False)
class LearnerSet:
    """Ordered weak learners; ``scales`` holds the per-feature soft-margin scale."""

    stumps: tuple[Stump, ...]
    negation_closed: bool = False
    n_features: int | None = None
    scales: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        stumps = tuple(self.stumps)
        object.__setattr__(self, "stumps", stumps)
        if len(stumps) < 2:
            raise ValueError(f"a learner set needs at least 2 stumps, got {len(stumps)}")
        if self.negation_closed:
            if len(stumps) % 2:
                raise ValueError("negation-closed learner set must have even size")
            for k in range(0, len(stumps), 2):
                if stumps[k + 1] != stumps[k].negate():
                    raise ValueError(f"stumps {k} and {k + 1} are not a negation pair")
        if self.n_features is None:
            object.__setattr__(self, "n_features", max(s.feature for s in stumps) + 1)
        elif max(s.feature for s in stumps) >= self.n_features:
            raise ValueError("stump feature index exceeds n_features")
        if self.scales is not None:
            sc = np.asarray(self.scales, dtype=np.float64)
            if sc.shape != (self.n_features,):
                raise ValueError(f"scales must have shape ({self.n_features},)")
            object.__setattr__(self, "scales", sc)

    @property
    def W(self) -> int:
        return len(self.stumps)

    def __len__(self):
        return len(self.stumps)

    def __iter__(self):
        return iter(self.stumps)

    def __getitem__(self, i):
        return self.stumps[i]

    @property
    def features(self) -> np.ndarray:
        return np.array([s.feature for s in self.stumps], dtype=np.int64)

    @property
    def thresholds(self) -> np.ndarray:
        return np.array([s.threshold for s in self.stumps], dtype=np.float64)

    @property
    def polarities(self) -> np.ndarray:
        return np.array([s.polarity for s in self.stumps], dtype=np.int64)

    def negation_of(self, theta: int) -> int:
        if not self.negation_closed:
            raise ValueError("learner set is not negation-closed")
        return theta ^ 1

    def predict(self, X) -> np.ndarray:
        """Hard predictions, shape (n, W), dtype uint8."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        self._check_width(X)
        above = X[:, self.features] >= self.thresholds
        return np.where(self.polarities == 1, above, ~above).astype(np.uint8)

    def margins(self, X, scale=None) -> np.ndarray:
        """Signed, scaled distance from each threshold, shape (n, W)."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        self._check_width(X)
        f = self.features
        if scale is None:
            scale = self.scales[f] if self.scales is not None else 1.0
        return self.polarities * (X[:, f] - self.thresholds) / scale

    def _check_width(self, X):
        if X.shape[1] < self.n_features:
            raise ValueError(
                f"feature dimension mismatch: learners expect d={self.n_features}, "
                f"input has d={X.shape[1]}")

    def to_json(self) -> str:
        return json.dumps({
            "n_features": self.n_features,
            "negation_closed": self.negation_closed,
            "scales": None if self.scales is None else [float(v) for v in self.scales],
            "stumps": [s.to_dict() for s in self.stumps],
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> LearnerSet:
        obj = json.loads(text)
        if isinstance(obj, list):
            obj = {"stumps": obj}
        try:
            stumps = [Stump(int(s["feature"]), float(s["threshold"]), int(s["polarity"]))
                      for s in obj["stumps"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed learner set JSON: {exc}") from None
        return cls(stumps, bool(obj.get("negation_closed", False)),
                   obj.get("n_features"), obj.get("scales"))

    def save(self, path):
        Path(path).write_text(self.to_json())

    @classmethod
    def load(cls, path) -> LearnerSet:
        return cls.from_json(Path(path).read_text())


def generate_stumps(train: Dataset, k: int = 11) -> LearnerSet:
    """``k`` quantile thresholds per feature, each with both polarities.

    Thresholds sit at quantile levels j/(k+1), j = 1..k, of the training
    values; W = 2 k d. Constant features still get their stumps.
    """
    if k < 1:
        raise ValueError(f"thresholds per feature must be >= 1, got {k}")
    if train.N < 1:
        raise ValueError("empty training set")
    levels = np.arange(1, k + 1) / (k + 1)
    q = np.quantile(train.features, levels, axis=0)  # (k, d)
    stumps = []
    for f in range(train.d):
        for j in range(k):
            s = Stump(f, float(q[j, f]), 1)
            stumps += [s, s.negate()]
    span = train.features.max(axis=0) - train.features.min(axis=0)
    scales = np.where(span > 0, span / (k + 1), 1.0)
    return LearnerSet(stumps, True, train.d, scales)


def soft_correctness(s: Stump, x, y: int, scale: float) -> float:
    """Graded correctness in [0, 1]: 1 - |sigmoid(margin / scale) - y|."""
    if scale <= 0:
        raise ValueError(f"scale must be positive, got {scale}")
    sigma = float(expit(s.polarity * (x[s.feature] - s.threshold) / scale))
    return 1.0 - abs(sigma - y)


@dataclass(frozen=True, eq=False)
class ErrorMatrices:
    """``M`` (N x W) holds errors, ``Mp`` (W x N) holds accuracies, ``Mp = 1 - M.T``."""

    M: np.ndarray
    Mp: np.ndarray
    mode: str

    @property
    def accuracies(self) -> np.ndarray:
        """Per-learner accuracy a_theta (mean of the rows of Mp)."""
        return self.Mp.mean(axis=1)


def build_matrices(ls: LearnerSet, ds: Dataset, mode: str = HARD,
                   scale=None) -> ErrorMatrices:
    """Error and accuracy matrices of ``ls`` on ``ds``.

    In soft mode ``scale`` is a positive float applied to every feature, or
    ``None`` to use the learner set's per-feature scales.
    """
    y = ds.labels.astype(np.float64)[:, None]
    if mode == HARD:
        M = np.abs(ls.predict(ds.features).astype(np.float64) - y)
    elif mode == SOFT:
        if scale is not None and scale <= 0:
            raise ValueError(f"scale must be positive, got {scale}")
        sigma = expit(ls.margins(ds.features, scale))
        M = np.abs(sigma - y)
    else:
        raise ValueError(f"mode must be 'hard' or 'soft', got {mode!r}")
    Mp = 1.0 - M.T
    M = 1.0 - Mp.T
    M.setflags(write=False)
    Mp = np.ascontiguousarray(Mp)
    Mp.setflags(write=False)
    return ErrorMatrices(M, Mp, mode)
