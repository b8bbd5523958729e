"""Population statistics and behavioural probing of evolved controllers.

A genome is probed by feeding its network every combination of the five
binary sensors (food left/here/right, agent left/right) at the four
motivation corners ``(M_E, M_R) in {0, 1}^2``.  The resulting action table
is then read against the three reflex rules: seek visible food, mate with a
single neighbour, rest when nothing is in view.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .controller import forward, select_actions
from .model import GENOME_LENGTH, N_INPUTS, Action, Input

REFLEX_ONLY = "reflex_only"
MOTIVATION_GATED = "motivation_gated"
OTHER = "other"
LABELS = (MOTIVATION_GATED, REFLEX_ONLY, OTHER)

HUNGRY = (1, 0)  # (M_E, M_R) when the resource is exhausted
SATED = (0, 1)  # (M_E, M_R) at or above R0
CORNERS = ((0, 0), (0, 1), (1, 0), (1, 1))
N_PATTERNS = 32

_MATE = (Action.MATE_LEFT, Action.MATE_RIGHT)


@dataclass
class WeightStats:
    t: int
    mean: np.ndarray
    std: np.ndarray


def weight_stats(genomes, t: int = 0) -> WeightStats | None:
    """Per-gene mean and population std; ``None`` for an empty population."""
    g = np.asarray(genomes, dtype=float).reshape(-1, GENOME_LENGTH)
    if len(g) == 0:
        return None
    return WeightStats(t=t, mean=g.mean(axis=0), std=g.std(axis=0))


def pattern_bits(pattern: int) -> tuple[int, int, int, int, int]:
    """(food_left, food_here, food_right, agent_left, agent_right) of a pattern number."""
    return tuple((pattern >> k) & 1 for k in range(5))


def probe_inputs(motivated: bool = True) -> np.ndarray:
    """All probe sensory vectors, shape ``(32, 2, 2, 9)`` indexed ``[pattern, M_E, M_R]``.

    Neighbour mate-motivation sensors copy the probed M_R wherever a
    neighbour is present.  With ``motivated=False`` every motivation-fed
    input stays 0, which is what a suppressed-mode agent actually sees.
    """
    x = np.zeros((N_PATTERNS, 2, 2, N_INPUTS))
    for p in range(N_PATTERNS):
        bits = pattern_bits(p)
        x[p, :, :, :5] = bits
        if not motivated:
            continue
        for m_e in (0, 1):
            for m_r in (0, 1):
                x[p, m_e, m_r, Input.MATE_LEFT] = m_r * bits[Input.AGENT_LEFT]
                x[p, m_e, m_r, Input.MATE_RIGHT] = m_r * bits[Input.AGENT_RIGHT]
                x[p, m_e, m_r, Input.M_E] = m_e
                x[p, m_e, m_r, Input.M_R] = m_r
    return x


@dataclass
class BehaviorTable:
    """Chosen action per probe situation; ``actions[pattern, m_e, m_r]``."""

    actions: np.ndarray

    def action(self, pattern: int, corner: tuple[int, int]) -> Action:
        return Action(int(self.actions[pattern, corner[0], corner[1]]))

    def rows(self):
        """Yield ``(bits, m_e, m_r, action)`` for all 128 rows."""
        for p in range(N_PATTERNS):
            for m_e, m_r in CORNERS:
                yield pattern_bits(p), m_e, m_r, self.action(p, (m_e, m_r))

    def corners_agree(self) -> bool:
        a = self.actions.reshape(N_PATTERNS, 4)
        return bool(np.all(a == a[:, :1]))


def probe_agent(genome, motivated: bool = True) -> BehaviorTable:
    return BehaviorTable(select_actions(forward(np.asarray(genome, dtype=float), probe_inputs(motivated))))


def probe_population(genomes, motivated: bool = True) -> np.ndarray:
    """Probe tables of many genomes at once, shape ``(n, 32, 2, 2)``."""
    g = np.asarray(genomes, dtype=float).reshape(-1, 1, 1, 1, GENOME_LENGTH)
    return select_actions(forward(g, probe_inputs(motivated)))


def _food_row_ok(bits, action) -> bool:
    food_left, food_here, food_right = bits[:3]
    if food_here:
        return action == Action.EAT
    return (food_left and action == Action.MOVE_LEFT) or (food_right and action == Action.MOVE_RIGHT)


def rule_food(table: BehaviorTable, corner) -> bool:
    for p in range(N_PATTERNS):
        bits = pattern_bits(p)
        if bits[0] or bits[1] or bits[2]:
            if not _food_row_ok(bits, table.action(p, corner)):
                return False
    return True


# no food, exactly one neighbour -> expected mate direction
_SINGLE_NEIGHBOUR = ((0b01000, Action.MATE_LEFT), (0b10000, Action.MATE_RIGHT))


def rule_mate(table: BehaviorTable, corner) -> bool:
    return all(table.action(p, corner) == a for p, a in _SINGLE_NEIGHBOUR)


def rule_rest(table: BehaviorTable, corner) -> bool:
    return table.action(0, corner) == Action.REST


@dataclass
class SchemeClassification:
    label: str
    mating_suppressed_when_hungry: bool
    rule1: bool
    rule2: bool
    rule3: bool


def classify_scheme(table: BehaviorTable) -> SchemeClassification:
    rule1 = rule_food(table, HUNGRY)
    rule2 = rule_mate(table, SATED)
    rule3 = rule_rest(table, HUNGRY) and rule_rest(table, SATED)
    hungry_mates = any(table.action(p, HUNGRY) in _MATE for p, _ in _SINGLE_NEIGHBOUR)
    suppressed = rule2 and not hungry_mates
    if rule1 and rule2 and rule3 and suppressed:
        label = MOTIVATION_GATED
    elif (
        rule1 and rule2 and rule3
        and rule_food(table, SATED) and rule_mate(table, HUNGRY)
    ):
        label = REFLEX_ONLY
    else:
        label = OTHER
    return SchemeClassification(label, suppressed, rule1, rule2, rule3)


@dataclass
class PopulationSummary:
    n_agents: int
    labels: list[str]
    classifications: list[SchemeClassification]
    fractions: dict[str, float]
    majority_label: str
    mating_suppressed_fraction: float


def population_classification(genomes, motivated: bool = True) -> PopulationSummary | None:
    """Classify every genome; ``None`` when the population is empty."""
    g = np.asarray(genomes, dtype=float).reshape(-1, GENOME_LENGTH)
    if len(g) == 0:
        return None
    tables = probe_population(g, motivated)
    cls = [classify_scheme(BehaviorTable(t)) for t in tables]
    labels = [c.label for c in cls]
    counts = Counter(labels)
    n = len(labels)
    fractions = {lab: counts.get(lab, 0) / n for lab in LABELS}
    # ties go to the earlier entry of LABELS
    majority = max(LABELS, key=lambda lab: (counts.get(lab, 0), -LABELS.index(lab)))
    suppressed = sum(c.mating_suppressed_when_hungry for c in cls) / n
    return PopulationSummary(n, labels, cls, fractions, majority, suppressed)
