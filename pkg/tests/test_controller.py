import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from animats.controller import forward, scores, select_action
from animats.evolution import gene_index
from animats.model import Action, Input

finite = st.floats(-20, 20, allow_nan=False)
genomes = arrays(float, 63, elements=finite)
inputs = arrays(float, 9, elements=st.floats(0, 1))


def test_zero_genome_gives_one_half_everywhere():
    out = forward(np.zeros(63), np.random.default_rng(1).random(9))
    assert np.all(out == 0.5)


def test_single_weight_eat_on_food_here():
    g = np.zeros(63)
    g[gene_index(Action.EAT, Input.FOOD_HERE)] = 8.0
    x = np.zeros(9)
    x[Input.FOOD_HERE] = 1
    out = forward(g, x)
    assert out[Action.EAT] == pytest.approx(1 / (1 + math.exp(-8)))
    assert out[Action.EAT] == pytest.approx(0.99966, abs=1e-5)
    assert np.all(np.delete(out, Action.EAT) == 0.5)


@given(genomes, inputs)
def test_negated_weights_mirror_outputs(g, x):
    assert np.allclose(forward(-g, x), 1 - forward(g, x), atol=1e-12)


def test_batch_forward_matches_single():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(10, 63))
    x = rng.random((10, 9))
    batch = forward(g, x)
    for k in range(10):
        assert np.array_equal(batch[k], forward(g[k], x[k]))


def test_layout_is_neuron_major():
    g = np.arange(63, dtype=float)
    x = np.zeros(9)
    x[Input.M_R] = 1
    assert scores(g, x).tolist() == [a * 9 + 8 for a in range(7)]


@pytest.mark.parametrize(
    "outputs, expected",
    [
        ([0.5] * 7, Action.REST),
        ([0.1, 0.2, 0.3, 0.4, 0.9, 0.2, 0.1], Action.EAT),
        ([0.1, 0.8, 0.8, 0.4, 0.5, 0.2, 0.1], Action.MOVE_LEFT),
    ],
)
def test_select_action(outputs, expected):
    assert select_action(outputs) is expected


@settings(max_examples=300)
@given(genomes, inputs)
def test_output_argmax_agrees_with_score_argmax(g, x):
    s = scores(g, x)
    # sigma can merge scores closer than float64 resolution, or saturated ones
    top = np.sort(s)
    if np.max(np.abs(s)) < 30 and top[-1] - top[-2] > 1e-9:
        assert select_action(forward(g, x)) == int(np.argmax(s))


@given(genomes, inputs, st.floats(0.01, 5))
def test_positive_scaling_keeps_the_choice(g, x, c):
    s = scores(g, x)
    if np.max(np.abs(s)) * max(c, 1) < 30 and np.sort(s)[-1] - np.sort(s)[-2] > 1e-9:
        assert select_action(forward(c * g, x)) == select_action(forward(g, x))


def test_forward_is_deterministic():
    rng = np.random.default_rng(9)
    g, x = rng.normal(size=63), rng.random(9)
    assert forward(g, x).tobytes() == forward(g.copy(), x.copy()).tobytes()
