"""Classical samplers with the same output law as the quantum classifier.

``sample_learner_rejection`` picks a learner uniformly and keeps it with
probability g(a_theta); ``sample_learner_constant`` picks a (sample, learner)
pair uniformly and keeps the learner iff it is correct on that sample. The
hot loops live in the kernel backend.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._backend import kernels
from .rng import SplitMix64

MAX_ROUNDS = 10**6


class SamplingError(RuntimeError):
    """A draw hit the round cap (all acceptance probabilities are zero)."""


@dataclass(frozen=True)
class AccuracyTransform:
    """Monotone map g: [0, 1] -> [0, 1] applied to learner accuracies."""

    kind: str
    evaluator: Callable[[np.ndarray], np.ndarray]

    def __call__(self, a):
        return self.evaluator(np.asarray(a, dtype=np.float64))


SIN2 = AccuracyTransform("sin2", lambda a: np.sin(np.pi * a / 2) ** 2)
IDENTITY = AccuracyTransform("identity", lambda a: a.copy())
TRANSFORMS = {t.kind: t for t in (SIN2, IDENTITY)}


def get_transform(g) -> AccuracyTransform:
    if isinstance(g, AccuracyTransform):
        return g
    try:
        return TRANSFORMS[g]
    except KeyError:
        raise ValueError(f"unknown accuracy transform {g!r}; "
                         f"choose from {sorted(TRANSFORMS)}") from None


@dataclass(frozen=True, eq=False)
class DrawLog:
    indices: np.ndarray
    rounds: np.ndarray

    def frequencies(self, W: int) -> np.ndarray:
        return np.bincount(self.indices, minlength=W) / len(self.indices)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["rounds", "theta"])
            w.writerows(zip(self.rounds.tolist(), self.indices.tolist()))


def draw_rejection(a, g, rng: SplitMix64, size: int,
                   max_rounds: int = MAX_ROUNDS) -> DrawLog:
    """``size`` independent draws of the uniform-proposal rejection sampler."""
    gvals = get_transform(g)(a)
    if np.any(gvals < 0) or np.any(gvals > 1):
        raise ValueError("g(a) must lie in [0, 1]")
    if not gvals.sum() > 0:
        raise SamplingError("sum of g(a) is zero; no learner can be accepted")
    idx, rounds, rng.state, done = kernels.rejection_draws(
        gvals, size, rng.state, max_rounds)
    if done < size:
        raise SamplingError(f"draw {done} exceeded {max_rounds} rounds")
    return DrawLog(idx, rounds)


def sample_learner_rejection(a, g, rng: SplitMix64) -> int:
    return int(draw_rejection(a, g, rng, 1).indices[0])


def draw_constant(Mp, rng: SplitMix64, size: int,
                  max_rounds: int = MAX_ROUNDS) -> DrawLog:
    """``size`` draws of the (sample, learner) pair sampler on a hard W x N matrix."""
    Mp = np.asarray(Mp)
    if Mp.ndim != 2 or not np.all((Mp == 0) | (Mp == 1)):
        raise ValueError("constant-time sampler needs a hard W x N accuracy matrix")
    acc = np.ascontiguousarray(Mp, dtype=np.uint8)
    if not acc.any():
        raise SamplingError("accuracy matrix is all zero; no learner can be accepted")
    idx, rounds, rng.state, done = kernels.constant_draws(
        acc, size, rng.state, max_rounds)
    if done < size:
        raise SamplingError(f"draw {done} exceeded {max_rounds} rounds")
    return DrawLog(idx, rounds)


def sample_learner_constant(Mp, rng: SplitMix64) -> int:
    return int(draw_constant(Mp, rng, 1).indices[0])


def law_rejection(a, g) -> np.ndarray:
    """Exact output law of the rejection sampler: g(a) / sum g(a)."""
    gvals = get_transform(g)(a)
    return gvals / gvals.sum()


def law_constant(Mp) -> np.ndarray:
    """Exact output law of the pair sampler: a / sum a."""
    a = np.asarray(Mp, dtype=np.float64).sum(axis=1)
    return a / a.sum()


def tv_distance(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
