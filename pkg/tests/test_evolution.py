import itertools

import numpy as np
import pytest
from scipy import stats

from animats.controller import select_action, forward
from animats.evolution import (
    instinct_genome,
    mutate,
    offspring_genome,
    offspring_genomes,
    recombine,
)
from animats.model import MOTIVATION_INPUTS, Action, EvolutionParams


def priority_rule(food_left, food_here, food_right, agent_left, agent_right):
    """Reference interpreter of the initial instincts."""
    if food_here:
        return Action.EAT
    if food_left:
        return Action.MOVE_LEFT
    if food_right:
        return Action.MOVE_RIGHT
    if agent_left and agent_right:
        return Action.JUMP
    if agent_left:
        return Action.MATE_LEFT
    if agent_right:
        return Action.MATE_RIGHT
    return Action.REST


def instinct_mismatches():
    g = instinct_genome()
    bad = []
    for bits in itertools.product((0, 1), repeat=5):
        x = np.array(bits + (0, 0, 0, 0), dtype=float)
        if select_action(forward(g, x)) != priority_rule(*bits):
            bad.append(bits)
    return bad


def test_instinct_truth_table():
    assert instinct_mismatches() == []


def test_instinct_has_margin_in_untied_rows():
    g = instinct_genome().reshape(7, 9)
    for bits in itertools.product((0, 1), repeat=5):
        s = np.sort(g[:, :5] @ np.array(bits, dtype=float))
        if s[-1] != s[-2]:
            assert s[-1] - s[-2] >= 0.5


def test_instinct_motivation_columns_zero():
    g = instinct_genome().reshape(7, 9)
    assert np.all(g[:, list(MOTIVATION_INPUTS)] == 0)
    assert np.all(g[Action.REST] == 0)


@pytest.mark.parametrize(
    "bits, expected",
    [((0, 0, 0, 0, 0), Action.REST), ((1, 1, 1, 1, 1), Action.EAT), ((0, 0, 0, 1, 1), Action.JUMP)],
)
def test_instinct_examples(bits, expected):
    assert select_action(forward(instinct_genome(), np.array(bits + (0,) * 4, dtype=float))) is expected


def test_recombine_identical_parents(rng):
    a = rng.normal(size=63)
    assert np.array_equal(recombine(a, a.copy(), rng), a)


def test_recombine_pinned_pattern():
    child = recombine(np.zeros(63), np.ones(63), np.random.default_rng(12345))
    pattern = "".join(str(int(v)) for v in child)
    assert pattern == "001100101101100110100000010001111111110001010000010010000000000"


def test_mutate_zero_intensity_is_identity(rng):
    g = rng.normal(size=63)
    assert np.array_equal(mutate(g, 0.0, rng), g)


def test_mutate_rejects_negative_intensity(rng):
    with pytest.raises(ValueError):
        mutate(np.zeros(63), -0.1, rng)


def test_mutation_noise_mean_and_uniformity():
    rng = np.random.default_rng(4)
    z = np.concatenate([mutate(np.zeros(63), 0.05, rng) for _ in range(1600)])[:100_000]
    assert np.all(np.abs(z) <= 0.05)
    assert abs(z.mean()) <= 0.002
    counts, _ = np.histogram(z, bins=10, range=(-0.05, 0.05))
    assert stats.chisquare(counts).pvalue > 0.001


def test_offspring_identity_with_no_mutation(rng):
    a = rng.normal(size=63)
    child = offspring_genome(a, a.copy(), EvolutionParams(mutation_intensity=0.0), rng)
    assert np.array_equal(child, a)


def test_offspring_pinned_and_replayable():
    a = np.arange(63) / 10
    b = -np.arange(63) / 10
    first = offspring_genome(a, b, EvolutionParams(), np.random.default_rng(7))
    again = offspring_genome(a, b, EvolutionParams(), np.random.default_rng(7))
    assert first.tobytes() == again.tobytes()
    assert first[:4].tolist() == [
        -0.03492119808316313, -0.10596865328118125, -0.2260436038170477, 0.29024982981039815
    ]


def test_offspring_stays_near_a_parent_gene(rng):
    a, b = rng.normal(size=63), rng.normal(size=63)
    child = offspring_genome(a, b, EvolutionParams(mutation_intensity=0.05), rng)
    assert np.all(np.minimum(np.abs(child - a), np.abs(child - b)) <= 0.05)


def test_batched_offspring_matches_single_for_one_pair():
    a, b = np.arange(63.0), -np.arange(63.0)
    single = offspring_genome(a, b, EvolutionParams(), np.random.default_rng(11))
    batch = offspring_genomes(a[None], b[None], EvolutionParams(), np.random.default_rng(11))
    assert batch.shape == (1, 63)
    assert single.tobytes() == batch[0].tobytes()
