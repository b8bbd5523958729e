"""Genetic operators and the initial instinct genome."""

from __future__ import annotations

import numpy as np

from .model import GENOME_LENGTH, N_INPUTS, Action, EvolutionParams, Input

# (action, input, weight); everything else is zero, including every
# motivation-fed column
INSTINCT_WEIGHTS = (
    (Action.MOVE_LEFT, Input.FOOD_LEFT, 4.0),
    (Action.MOVE_LEFT, Input.FOOD_HERE, -8.0),
    (Action.MOVE_RIGHT, Input.FOOD_RIGHT, 4.0),
    (Action.MOVE_RIGHT, Input.FOOD_HERE, -8.0),
    (Action.EAT, Input.FOOD_HERE, 8.0),
    (Action.JUMP, Input.AGENT_LEFT, 1.5),
    (Action.JUMP, Input.AGENT_RIGHT, 1.5),
    (Action.MATE_LEFT, Input.AGENT_LEFT, 2.0),
    (Action.MATE_LEFT, Input.AGENT_RIGHT, -2.0),
    (Action.MATE_RIGHT, Input.AGENT_RIGHT, 2.0),
    (Action.MATE_RIGHT, Input.AGENT_LEFT, -2.0),
)


def gene_index(action: Action | int, inp: Input | int) -> int:
    return int(action) * N_INPUTS + int(inp)


def instinct_genome() -> np.ndarray:
    """Genome shared by the whole initial population.

    Eats grass in its own cell, steps towards grass next door, jumps away
    when boxed in on both sides, tries to mate with a single neighbour and
    rests otherwise.
    """
    g = np.zeros(GENOME_LENGTH)
    for action, inp, w in INSTINCT_WEIGHTS:
        g[gene_index(action, inp)] = w
    return g


def recombine(parent_a, parent_b, rng: np.random.Generator) -> np.ndarray:
    """Uniform recombination: each gene from either parent with probability 1/2."""
    a = np.asarray(parent_a, dtype=float)
    b = np.asarray(parent_b, dtype=float)
    take_a = rng.random(a.shape[-1]) < 0.5
    return np.where(take_a, a, b)


def mutate(genome, p_m: float, rng: np.random.Generator) -> np.ndarray:
    """Add independent U[-p_m, p_m] noise to every gene."""
    if p_m < 0:
        raise ValueError(f"mutation intensity must be >= 0, got {p_m}")
    g = np.asarray(genome, dtype=float)
    return g + rng.uniform(-p_m, p_m, size=g.shape[-1])


def offspring_genome(parent_a, parent_b, params: EvolutionParams, rng: np.random.Generator) -> np.ndarray:
    # recombination draws come first, then mutation draws
    return mutate(recombine(parent_a, parent_b, rng), params.mutation_intensity, rng)


def offspring_genomes(parents_a, parents_b, params: EvolutionParams, rng: np.random.Generator) -> np.ndarray:
    """Children of ``k`` parent pairs at once, shape ``(k, 63)``.

    All ``k * 63`` recombination draws precede all mutation draws, so for
    ``k == 1`` this consumes the stream exactly like :func:`offspring_genome`.
    """
    a = np.asarray(parents_a, dtype=float)
    b = np.asarray(parents_b, dtype=float)
    if params.mutation_intensity < 0:
        raise ValueError(f"mutation intensity must be >= 0, got {params.mutation_intensity}")
    take_a = rng.random(a.shape) < 0.5
    p_m = params.mutation_intensity
    return np.where(take_a, a, b) + rng.uniform(-p_m, p_m, size=a.shape)
