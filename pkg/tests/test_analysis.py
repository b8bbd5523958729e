import math

import numpy as np
import pytest

from animats.analysis import (
    HUNGRY,
    MOTIVATION_GATED,
    OTHER,
    REFLEX_ONLY,
    SATED,
    BehaviorTable,
    classify_scheme,
    population_classification,
    probe_agent,
    probe_population,
    weight_stats,
)
from animats.evolution import gene_index, instinct_genome
from animats.model import MOTIVATION_INPUTS, Action, Input

LEFT_ONLY = 0b01000  # agent_left only


def gated_genome():
    """Instinct genome whose mating needs a mate-motivated neighbour.

    The neighbour's M_R sensor tracks the agent's own M_R in probes, so a
    hungry agent (M_R = 0) no longer mates.
    """
    g = instinct_genome()
    for mate, own, other, sensor in (
        (Action.MATE_LEFT, Input.AGENT_LEFT, Input.AGENT_RIGHT, Input.MATE_LEFT),
        (Action.MATE_RIGHT, Input.AGENT_RIGHT, Input.AGENT_LEFT, Input.MATE_RIGHT),
    ):
        g[gene_index(mate, own)] = -1.0
        g[gene_index(mate, other)] = -2.0
        g[gene_index(mate, sensor)] = 10.0
    # a single neighbour alone should not trigger a jump either
    g[gene_index(Action.JUMP, Input.AGENT_LEFT)] = -0.5
    g[gene_index(Action.JUMP, Input.AGENT_RIGHT)] = -0.5
    return g


def mean_std_oracle(column):
    n = len(column)
    mean = math.fsum(column) / n
    var = math.fsum((v - mean) ** 2 for v in column) / n
    return mean, math.sqrt(var)


def test_weight_stats_uniform_population():
    s = weight_stats(np.tile(instinct_genome(), (5, 1)), t=7)
    assert s.t == 7
    assert np.array_equal(s.mean, instinct_genome())
    assert np.all(s.std == 0)


def test_weight_stats_two_point():
    g = np.zeros((2, 63))
    g[1, 0] = 1.0
    s = weight_stats(g)
    assert s.mean[0] == 0.5 and s.std[0] == 0.5


def test_weight_stats_matches_oracle():
    g = np.random.default_rng(0).normal(3, 2, size=(100, 63))
    s = weight_stats(g)
    for i in range(63):
        mean, std = mean_std_oracle(g[:, i].tolist())
        assert abs(s.mean[i] - mean) <= 1e-10 and abs(s.std[i] - std) <= 1e-10


def test_weight_stats_empty():
    assert weight_stats(np.zeros((0, 63))) is None


def test_instinct_probe_is_motivation_blind():
    table = probe_agent(instinct_genome())
    assert table.actions.shape == (32, 2, 2)
    assert table.corners_agree()
    assert len(list(table.rows())) == 128
    for m_e in (0, 1):
        for m_r in (0, 1):
            assert table.action(LEFT_ONLY, (m_e, m_r)) is Action.MATE_LEFT


def test_probe_detects_gating():
    g = instinct_genome()
    g[gene_index(Action.MATE_LEFT, Input.M_R)] += 10.0
    g[gene_index(Action.MATE_LEFT, Input.AGENT_LEFT)] = -1.0
    table = probe_agent(g)
    assert table.action(LEFT_ONLY, (0, 0)) != table.action(LEFT_ONLY, (0, 1))
    table = probe_agent(gated_genome())
    assert table.action(LEFT_ONLY, (0, 0)) != table.action(LEFT_ONLY, (0, 1))
    assert table.action(LEFT_ONLY, SATED) is Action.MATE_LEFT


def test_probe_in_suppressed_mode_ignores_motivation_weights():
    table = probe_agent(gated_genome(), motivated=False)
    assert table.corners_agree()


def test_instinct_is_reflex_only():
    c = classify_scheme(probe_agent(instinct_genome()))
    assert c.label == REFLEX_ONLY
    assert not c.mating_suppressed_when_hungry
    assert c.rule1 and c.rule2 and c.rule3


def test_gated_genome_is_motivation_gated():
    c = classify_scheme(probe_agent(gated_genome()))
    assert c.label == MOTIVATION_GATED and c.mating_suppressed_when_hungry


def test_jump_on_empty_vision_is_other():
    table = probe_agent(instinct_genome())
    actions = table.actions.copy()
    actions[0] = Action.JUMP
    c = classify_scheme(BehaviorTable(actions))
    assert c.label == OTHER and not c.rule3


def test_zeroed_motivation_columns_make_gating_impossible():
    rng = np.random.default_rng(1)
    g = rng.normal(0, 2, size=(100, 63)).reshape(100, 7, 9)
    g[:, :, list(MOTIVATION_INPUTS)] = 0
    tables = probe_population(g.reshape(100, 63))
    flat = tables.reshape(100, 32, 4)
    assert np.all(flat == flat[:, :, :1])


def test_probe_population_matches_single_probe():
    rng = np.random.default_rng(2)
    g = rng.normal(size=(6, 63))
    tables = probe_population(g)
    for k in range(6):
        assert np.array_equal(tables[k], probe_agent(g[k]).actions)


def test_population_classification():
    assert population_classification(np.zeros((0, 63))) is None
    s = population_classification(np.tile(instinct_genome(), (4, 1)))
    assert s.fractions[REFLEX_ONLY] == 1.0 and s.majority_label == REFLEX_ONLY
    mixed = population_classification(np.vstack([instinct_genome(), gated_genome()]))
    assert mixed.fractions[REFLEX_ONLY] == 0.5 and mixed.fractions[MOTIVATION_GATED] == 0.5
    assert mixed.mating_suppressed_fraction == 0.5


def test_hungry_corner_is_the_physical_one():
    assert HUNGRY == (1, 0) and SATED == (0, 1)
