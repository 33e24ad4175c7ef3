"""Shared instance builders for the test suite."""

from pathlib import Path

import numpy as np
import pytest

from qboost.data import Dataset
from qboost.learners import LearnerSet, Stump

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def pair_instance():
    """Two samples, learners {always-1, always-0}: M = [[0,1],[1,0]]."""
    ds = Dataset([[0.0], [1.0]], [1, 0])
    s = Stump(0, -1.0, 1)
    return ds, LearnerSet([s, s.negate()], True, 1)


def perfect_pair_instance():
    """Two samples, learners {h, not h} with h perfect: a = [1, 0]."""
    ds = Dataset([[0.0], [1.0]], [1, 0])
    s = Stump(0, 0.5, -1)
    return ds, LearnerSet([s, s.negate()], True, 1)


def random_closed_mp(rng, W, N):
    """Random hard W x N accuracy matrix with rows paired as (theta, theta^1)."""
    half = rng.integers(0, 2, size=(W // 2, N))
    Mp = np.empty((W, N))
    Mp[0::2] = half
    Mp[1::2] = 1 - half
    return Mp


def random_dataset(rng, N, d, levels=6):
    """Small-integer features so stumps tie often; both classes guaranteed."""
    X = rng.integers(0, levels, size=(N, d)).astype(float)
    y = rng.integers(0, 2, size=N)
    y[0], y[1] = 0, 1
    return Dataset(X, y)


def synthetic_csv(path, N=80, d=3, seed=0):
    """Write a noisy linearly separable problem; returns the path."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(N, d))
    y = (X @ np.arange(1, d + 1) + 0.5 * rng.normal(size=N) > 0).astype(int)
    lines = [",".join([f"x{j}" for j in range(d)] + ["y"])]
    lines += [",".join([repr(float(v)) for v in row] + [str(lab)]) for row, lab in zip(X, y)]
    Path(path).write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def synthetic_path(tmp_path):
    return synthetic_csv(tmp_path / "synthetic.csv")
