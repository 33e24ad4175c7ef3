"""Classical equivalents of the quantum ensemble classifier and
Adaptive Stochastic Boosting."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .boost import (TrainResult, classify, scores, train_adaboost,
                    train_eigenvector, train_matrix, train_sampling)
from .data import Dataset, DatasetError, SplitPair, load_csv, split, write_csv
from .learners import (ErrorMatrices, LearnerSet, Stump, build_matrices,
                       generate_stumps, predict, soft_correctness)
from .metrics import RocReport, auc, roc_points
from .qsim import (Distribution, closed_form_distribution, quantum_score,
                   simulate_circuit)
from .rng import SplitMix64
from .samplers import (IDENTITY, SIN2, AccuracyTransform,
                       sample_learner_constant, sample_learner_rejection)

__all__ = [
    "BACKEND", "AccuracyTransform", "Dataset", "DatasetError", "Distribution",
    "ErrorMatrices", "IDENTITY", "LearnerSet", "RocReport", "SIN2",
    "SplitMix64", "SplitPair", "Stump", "TrainResult", "auc",
    "build_matrices", "classify", "closed_form_distribution",
    "generate_stumps", "load_csv", "predict", "quantum_score", "roc_points",
    "sample_learner_constant", "sample_learner_rejection", "scores",
    "simulate_circuit", "soft_correctness", "split", "train_adaboost",
    "train_eigenvector", "train_matrix", "train_sampling", "write_csv",
]
