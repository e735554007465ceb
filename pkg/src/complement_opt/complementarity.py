"""Complementarity quantities of a pure two-qubit state.

For amplitudes (c00, c01, c10, c11) on |00>, |01>, |10>, |11> (first slot is
qubit A, second qubit B):

    concurrence     C = 2 |c00 c11 - c01 c10|
    visibility      V = 2 |c00 c10* + c01 c11*|      (coherence of qubit A)
    predictability  P = | |c10|^2 + |c11|^2 - |c00|^2 - |c01|^2 |
    distinguishability  D = sqrt(C^2 + P^2)

Every normalized pure state satisfies the closure identity
V^2 + P^2 + C^2 = 1, which doubles as a cheap self-test of any pipeline that
produces such states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError

#: inputs whose norm deviates from 1 by more than this raise NormalizationError;
#: smaller deviations are absorbed by silent renormalization.
NORM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class TwoQubitPure:
    """Amplitudes of a pure two-qubit state, |00>, |01>, |10>, |11> order."""

    c00: complex
    c01: complex
    c10: complex
    c11: complex = 0.0

    def amplitudes(self) -> np.ndarray:
        return np.array([self.c00, self.c01, self.c10, self.c11], dtype=complex)


@dataclass(frozen=True)
class ComplementarityTriple:
    """Visibility, predictability and concurrence, plus the closure residual
    V^2 + P^2 + C^2 - 1."""

    V: float
    P: float
    C: float
    closure_residual: float


def _unit_amplitudes(state: TwoQubitPure) -> np.ndarray:
    amps = state.amplitudes()
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > NORM_TOLERANCE:
        raise NormalizationError(
            f"state norm {norm:.9g} deviates from 1 beyond {NORM_TOLERANCE:g}"
        )
    return amps / norm


def concurrence(state: TwoQubitPure) -> float:
    c00, c01, c10, c11 = _unit_amplitudes(state)
    return 2.0 * abs(c00 * c11 - c01 * c10)


def visibility(state: TwoQubitPure) -> float:
    c00, c01, c10, c11 = _unit_amplitudes(state)
    return 2.0 * abs(c00 * np.conj(c10) + c01 * np.conj(c11))


def predictability(state: TwoQubitPure) -> float:
    c00, c01, c10, c11 = _unit_amplitudes(state)
    upper = abs(c10) ** 2 + abs(c11) ** 2
    lower = abs(c00) ** 2 + abs(c01) ** 2
    return abs(upper - lower)


def distinguishability(state: TwoQubitPure) -> float:
    """Total which-path information, sqrt(C^2 + P^2) = sqrt(1 - V^2)."""
    return math.hypot(concurrence(state), predictability(state))


def triple(state: TwoQubitPure) -> ComplementarityTriple:
    v = visibility(state)
    p = predictability(state)
    c = concurrence(state)
    return ComplementarityTriple(
        V=v, P=p, C=c, closure_residual=v * v + p * p + c * c - 1.0
    )
