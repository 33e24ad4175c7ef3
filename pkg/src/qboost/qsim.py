"""Exact simulation of the quantum ensemble classifier circuit.

Registers X (sample index) and Y (sample label) only ever hold classical
values, so they are iterated over rather than stored. The amplitudes live on
H (learner index, W values) x G (learner-correct flag) x Q (phase qubit),
an array of shape (W, 2, 2).

For each training sample the circuit flips G where learner theta is correct,
applies ``|0><0| + exp(i pi / N) |1><1|`` to Q controlled on G, and flips G
back. After all N samples Q is measured in the {|+>, |->} basis and the run
is kept only on |->. The surviving amplitude on H is
``(1 - exp(i pi a_theta)) / (2 sqrt(W))`` whose squared modulus is
``sin^2(pi a_theta / 2) / W``; renormalising gives the learner distribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .learners import LearnerSet

MAX_LEARNERS = 64
MAX_SAMPLES = 4096
NORM_TOL = 1e-12


class SimulationCapError(ValueError):
    """Instance too large for the exact statevector simulation."""


@dataclass(frozen=True, eq=False)
class Distribution:
    probs: np.ndarray
    chi: float

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def __len__(self):
        return len(self.probs)


def sin2_weights(a) -> np.ndarray:
    return np.sin(np.pi * np.asarray(a, dtype=np.float64) / 2) ** 2


def closed_form_distribution(a) -> Distribution:
    """P(theta) = sin^2(pi a_theta / 2) / chi."""
    g = sin2_weights(a)
    chi = float(g.sum())
    if not chi > 0:
        raise ValueError("all learner accuracies are 0; the distribution is undefined")
    return Distribution(g / chi, chi)


def quantum_scores(X, ls: LearnerSet, a) -> np.ndarray:
    """Probability that the quantum classifier outputs 1, for each row of X."""
    g = sin2_weights(a)
    chi = g.sum()
    if not chi > 0:
        raise ValueError("all learner accuracies are 0; the distribution is undefined")
    return ls.predict(X) @ g / chi


def quantum_score(x, ls: LearnerSet, a) -> float:
    return float(quantum_scores(np.asarray(x, dtype=np.float64)[None, :], ls, a)[0])


def _check_caps(W, N, max_learners, max_samples):
    if W > max_learners or N > max_samples:
        raise SimulationCapError(
            f"instance W={W}, N={N} exceeds the simulation cap "
            f"(W<={max_learners}, N<={max_samples}); use closed_form_distribution")


def _check_norm(amp):
    norm = float(np.sum(np.abs(amp) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise AssertionError(f"statevector norm drifted to {norm!r}")


def _hard_matrix(Mp) -> np.ndarray:
    Mp = np.asarray(Mp)
    if Mp.ndim != 2:
        raise ValueError("accuracy matrix must be 2-D (W x N)")
    if not np.all((Mp == 0) | (Mp == 1)):
        raise ValueError("circuit simulation needs a hard (0/1) accuracy matrix")
    return Mp.astype(bool)


def run_training_circuit(Mp, max_learners=MAX_LEARNERS, max_samples=MAX_SAMPLES):
    """Statevector over H x G x Q after the N-sample phase loop."""
    acc = _hard_matrix(Mp)
    W, N = acc.shape
    _check_caps(W, N, max_learners, max_samples)
    amp = np.zeros((W, 2, 2), dtype=np.complex128)
    # Hadamards on H and Q
    amp[:, 0, :] = 1.0 / np.sqrt(2 * W)
    phase = np.exp(1j * np.pi / N)
    for i in range(N):
        flip = acc[:, i]
        amp[flip] = amp[flip][:, ::-1, :]
        _check_norm(amp)
        amp[:, 1, 1] *= phase
        _check_norm(amp)
        amp[flip] = amp[flip][:, ::-1, :]
        _check_norm(amp)
    if np.any(np.abs(amp[:, 1, :]) > 0):
        raise AssertionError("register G was not uncomputed")
    return amp


def _postselect_minus(amp):
    """Amplitudes on H given Q measured as |->, and the |-> probability."""
    minus = (amp[:, 0, 0] - amp[:, 0, 1]) / np.sqrt(2)
    accept = float(np.sum(np.abs(minus) ** 2))
    return minus / np.sqrt(accept), accept


def simulate_circuit(Mp, max_learners=MAX_LEARNERS, max_samples=MAX_SAMPLES):
    """Exact learner distribution and post-selection acceptance probability.

    Returns ``(Distribution, acceptance)`` for a hard W x N accuracy matrix.
    """
    amp = run_training_circuit(Mp, max_learners, max_samples)
    state, accept = _postselect_minus(amp)
    probs = np.abs(state) ** 2
    return Distribution(probs / probs.sum(), accept * amp.shape[0]), accept


def simulate_classification(Mp, votes, measure_learner_first: bool,
                            max_learners=MAX_LEARNERS, max_samples=MAX_SAMPLES):
    """Output-qubit distribution [P(0), P(1)] for one input.

    ``votes[theta]`` is h_theta(x). After post-selection an output qubit O
    is flipped controlled on H holding a learner that votes 1. With
    ``measure_learner_first`` H is measured before that step and the
    outcomes are mixed; otherwise H stays coherent and is traced out of the
    final density matrix.
    """
    amp = run_training_circuit(Mp, max_learners, max_samples)
    psi_h, _ = _postselect_minus(amp)
    votes = np.asarray(votes).astype(bool)
    W = psi_h.shape[0]
    if votes.shape != (W,):
        raise ValueError(f"votes must have length {W}")

    def classify(state_h):
        # |theta>|0>_O  ->  |theta>|h_theta(x)>_O
        out = np.zeros((W, 2), dtype=np.complex128)
        out[~votes, 0] = state_h[~votes]
        out[votes, 1] = state_h[votes]
        return out

    if measure_learner_first:
        rho_o = np.zeros((2, 2), dtype=np.complex128)
        for theta in range(W):
            p = abs(psi_h[theta]) ** 2
            if p == 0:
                continue
            collapsed = np.zeros(W, dtype=np.complex128)
            collapsed[theta] = psi_h[theta] / np.sqrt(p)
            joint = classify(collapsed)
            rho_o += p * np.einsum("ha,hb->ab", joint, joint.conj())
    else:
        joint = classify(psi_h)
        rho_o = np.einsum("ha,hb->ab", joint, joint.conj())
    return np.real(np.diag(rho_o)).copy()


def sample_circuit(Mp, shots: int, rng, max_learners=MAX_LEARNERS,
                   max_samples=MAX_SAMPLES):
    """Shot-mode run: repeat the circuit until |-> is seen, then measure H.

    Returns ``(indices, repetitions)``; ``repetitions[k]`` counts the circuit
    runs (including the accepted one) that shot ``k`` needed.
    """
    dist, accept = simulate_circuit(Mp, max_learners, max_samples)
    cum = np.cumsum(dist.probs)
    indices = np.empty(shots, dtype=np.int64)
    reps = np.empty(shots, dtype=np.int64)
    for k in range(shots):
        n = 1
        while rng.random() >= accept:
            n += 1
        theta = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        indices[k] = min(theta, len(cum) - 1)
        reps[k] = n
    return indices, reps
