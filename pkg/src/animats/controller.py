"""Single-layer logistic network and max-output action choice."""

from __future__ import annotations

import numpy as np
from scipy.special import expit

from .model import N_ACTIONS, N_INPUTS, Action


def scores(genome, x) -> np.ndarray:
    """Pre-activation of each action neuron.

    Works on one genome/input pair or on stacked batches of shape
    ``(n, 63)`` and ``(n, 9)``.
    """
    w = np.asarray(genome, dtype=float)
    x = np.asarray(x, dtype=float)
    w = w.reshape(w.shape[:-1] + (N_ACTIONS, N_INPUTS))
    return np.einsum("...ai,...i->...a", w, x)


def forward(genome, x) -> np.ndarray:
    """Neuron outputs in (0, 1), one per action, in :class:`Action` order."""
    return expit(scores(genome, x))


def select_action(outputs) -> Action:
    """Action of the most active neuron; ties go to the lowest index."""
    return Action(int(np.argmax(outputs)))


def select_actions(outputs: np.ndarray) -> np.ndarray:
    return np.argmax(outputs, axis=-1)


def decide(genome, x) -> Action:
    return select_action(forward(genome, x))
