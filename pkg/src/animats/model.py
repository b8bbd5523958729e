"""World, agent and parameter types, motivations, and sensing.

Energies are stored in units of the base energy ``r`` (``r = 1``).  The
cell array is a ring: neighbour indices wrap modulo ``n_cells``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import NamedTuple

import numpy as np

N_INPUTS = 9
N_ACTIONS = 7
GENOME_LENGTH = N_INPUTS * N_ACTIONS


class Action(IntEnum):
    REST = 0
    MOVE_LEFT = 1
    MOVE_RIGHT = 2
    JUMP = 3
    EAT = 4
    MATE_LEFT = 5
    MATE_RIGHT = 6


class Input(IntEnum):
    FOOD_LEFT = 0
    FOOD_HERE = 1
    FOOD_RIGHT = 2
    AGENT_LEFT = 3
    AGENT_RIGHT = 4
    MATE_LEFT = 5  # M_R of the left neighbour
    MATE_RIGHT = 6  # M_R of the right neighbour
    M_E = 7
    M_R = 8


# columns fed from motivations (own or a neighbour's)
MOTIVATION_INPUTS = (Input.MATE_LEFT, Input.MATE_RIGHT, Input.M_E, Input.M_R)

ACTION_NAMES = (
    "rest",
    "move_left",
    "move_right",
    "jump",
    "eat",
    "mate_left",
    "mate_right",
)

ENABLED = "enabled"
SUPPRESSED = "suppressed"
MOTIVATION_MODES = (ENABLED, SUPPRESSED)


@dataclass(frozen=True)
class PhysiologyParams:
    """Energy economy of an agent.  Defaults are the paper's physiology with r = 1."""

    cost_rest: float = 1.0
    cost_eat: float = 2.0
    cost_move: float = 4.0
    cost_jump: float = 20.0
    cost_mate: float = 20.0
    child_transfer_total: float = 1000.0
    r0: float = 10_000.0
    r1: float = 5_000.0
    eat_gain: float = 200.0
    grass_lifetime: int = 20
    jump_distance: int = 5

    @classmethod
    def from_unit(cls, r: float = 1.0) -> "PhysiologyParams":
        r0 = 10_000.0 * r
        return cls(
            cost_rest=r,
            cost_eat=2 * r,
            cost_move=4 * r,
            cost_jump=20 * r,
            cost_mate=20 * r,
            child_transfer_total=1000 * r,
            r0=r0,
            r1=0.5 * r0,
            eat_gain=0.02 * r0,
        )

    def validate(self) -> list[str]:
        errors = []
        for name in ("cost_rest", "cost_eat", "cost_move", "cost_jump", "cost_mate"):
            if not getattr(self, name) > 0:
                errors.append(f"{name}: must be > 0, got {getattr(self, name)!r}")
        if self.child_transfer_total < 0:
            errors.append(f"child_transfer_total: must be >= 0, got {self.child_transfer_total!r}")
        if not self.r0 > 0:
            errors.append(f"r0: must be > 0, got {self.r0!r}")
        if not self.r1 > 0:
            errors.append(f"r1: must be > 0, got {self.r1!r}")
        elif self.r1 > self.r0:
            errors.append(f"r1: must be <= r0 ({self.r0!r}), got {self.r1!r}")
        if not self.eat_gain > 0:
            errors.append(f"eat_gain: must be > 0, got {self.eat_gain!r}")
        if self.grass_lifetime < 1:
            errors.append(f"grass_lifetime: must be >= 1, got {self.grass_lifetime!r}")
        if self.jump_distance < 1:
            errors.append(f"jump_distance: must be >= 1, got {self.jump_distance!r}")
        return errors

    def cost_table(self) -> np.ndarray:
        """Per-action costs indexed by :class:`Action`."""
        return np.array(
            [
                self.cost_rest,
                self.cost_move,
                self.cost_move,
                self.cost_jump,
                self.cost_eat,
                self.cost_mate,
                self.cost_mate,
            ]
        )


@dataclass(frozen=True)
class WorldParams:
    n_cells: int = 900
    grass_probability: float = 1 / 200
    motivation_mode: str = ENABLED

    @property
    def motivated(self) -> bool:
        return self.motivation_mode == ENABLED

    def validate(self) -> list[str]:
        errors = []
        if self.n_cells < 3:
            errors.append(f"n_cells: must be >= 3, got {self.n_cells!r}")
        if not 0.0 <= self.grass_probability <= 1.0:
            errors.append(f"grass_probability: must lie in [0, 1], got {self.grass_probability!r}")
        if self.motivation_mode not in MOTIVATION_MODES:
            errors.append(
                f"motivation_mode: must be one of {MOTIVATION_MODES}, got {self.motivation_mode!r}"
            )
        return errors


@dataclass(frozen=True)
class EvolutionParams:
    mutation_intensity: float = 0.05
    initial_population: int = 200

    def validate(self) -> list[str]:
        errors = []
        if not self.mutation_intensity >= 0:
            errors.append(f"mutation_intensity: must be >= 0, got {self.mutation_intensity!r}")
        if self.initial_population < 2:
            errors.append(f"initial_population: must be >= 2, got {self.initial_population!r}")
        return errors


class Motivations(NamedTuple):
    m_e: float
    m_r: float


def compute_motivations(energy: float, phys: PhysiologyParams) -> Motivations:
    """Food-search and mating motivations for an energy resource ``energy``."""
    m_r = min(energy / phys.r1, 1.0)
    m_e = max((phys.r0 - energy) / phys.r0, 0.0)
    return Motivations(m_e, m_r)


def motivations_array(energy: np.ndarray, phys: PhysiologyParams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`compute_motivations`; returns ``(m_e, m_r)``."""
    m_r = np.minimum(energy / phys.r1, 1.0)
    m_e = np.maximum((phys.r0 - energy) / phys.r0, 0.0)
    return m_e, m_r


def action_cost(action: Action | int, phys: PhysiologyParams) -> float:
    return float(phys.cost_table()[int(action)])


def validate_genome(genome) -> np.ndarray:
    g = np.asarray(genome, dtype=float)
    if g.shape != (GENOME_LENGTH,):
        raise ValueError(f"genome must have {GENOME_LENGTH} weights, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("genome weights must be finite")
    return g


@dataclass
class World:
    """Cell ring plus the live population.

    Agents are stored column-wise: row ``k`` of ``positions``, ``energy``,
    ``genomes`` and ``ids`` describes one agent.  Row order is birth order and
    is part of the simulation state (it fixes the order of random draws).
    ``grass[c]`` is the remaining lifetime of the patch in cell ``c``, 0 if none.
    """

    params: WorldParams
    phys: PhysiologyParams
    grass: np.ndarray
    positions: np.ndarray
    energy: np.ndarray
    genomes: np.ndarray
    ids: np.ndarray
    next_id: int = 0

    @classmethod
    def empty(cls, params: WorldParams, phys: PhysiologyParams | None = None) -> "World":
        return cls(
            params=params,
            phys=phys or PhysiologyParams(),
            grass=np.zeros(params.n_cells, dtype=np.int64),
            positions=np.zeros(0, dtype=np.int64),
            energy=np.zeros(0, dtype=float),
            genomes=np.zeros((0, GENOME_LENGTH), dtype=float),
            ids=np.zeros(0, dtype=np.int64),
        )

    @property
    def n_cells(self) -> int:
        return self.params.n_cells

    @property
    def n_agents(self) -> int:
        return len(self.positions)

    def add_agent(self, position: int, energy: float, genome) -> int:
        """Append one agent; returns its id.  Raises if the cell is taken."""
        position = int(position)
        if not 0 <= position < self.n_cells:
            raise ValueError(f"position {position} outside [0, {self.n_cells})")
        if np.any(self.positions == position):
            raise ValueError(f"cell {position} is already occupied")
        genome = validate_genome(genome)
        agent_id = self.next_id
        self.positions = np.append(self.positions, position)
        self.energy = np.append(self.energy, float(energy))
        self.genomes = np.vstack([self.genomes, genome[None, :]])
        self.ids = np.append(self.ids, agent_id)
        self.next_id += 1
        return agent_id

    def index_of(self, agent_id: int) -> int:
        hits = np.flatnonzero(self.ids == agent_id)
        if hits.size != 1:
            raise KeyError(f"no live agent with id {agent_id}")
        return int(hits[0])

    def occupancy(self) -> np.ndarray:
        """Cell -> agent row index, -1 where empty."""
        occ = np.full(self.n_cells, -1, dtype=np.int64)
        occ[self.positions] = np.arange(self.n_agents)
        return occ

    def total_energy(self) -> float:
        return float(self.energy.sum())

    def check(self) -> list[str]:
        """List every broken invariant (empty when consistent)."""
        problems = []
        n = self.n_agents
        if not (len(self.energy) == len(self.ids) == len(self.genomes) == n):
            problems.append("agent arrays have mismatched lengths")
            return problems
        if self.grass.shape != (self.n_cells,):
            problems.append("grass array does not match n_cells")
        elif np.any((self.grass < 0) | (self.grass > self.phys.grass_lifetime)):
            problems.append("grass counter outside [0, grass_lifetime]")
        if n:
            if np.any((self.positions < 0) | (self.positions >= self.n_cells)):
                problems.append("agent position outside the ring")
            elif np.unique(self.positions).size != n:
                problems.append("two agents share a cell")
            if np.any(self.energy <= 0):
                problems.append("live agent with non-positive energy")
            if not np.all(np.isfinite(self.genomes)):
                problems.append("non-finite genome weight")
            if np.unique(self.ids).size != n or np.any(self.ids >= self.next_id):
                problems.append("agent ids are not unique or exceed next_id")
        return problems

    def copy(self) -> "World":
        return World(
            params=self.params,
            phys=self.phys,
            grass=self.grass.copy(),
            positions=self.positions.copy(),
            energy=self.energy.copy(),
            genomes=self.genomes.copy(),
            ids=self.ids.copy(),
            next_id=self.next_id,
        )


def sense_all(world: World) -> np.ndarray:
    """Sensory vectors of every live agent, shape ``(n_agents, 9)``."""
    n = world.n_cells
    pos = world.positions
    left = (pos - 1) % n
    right = (pos + 1) % n
    food = world.grass > 0
    occ = world.occupancy()
    occ_left = occ[left]
    occ_right = occ[right]

    x = np.zeros((world.n_agents, N_INPUTS))
    x[:, Input.FOOD_LEFT] = food[left]
    x[:, Input.FOOD_HERE] = food[pos]
    x[:, Input.FOOD_RIGHT] = food[right]
    x[:, Input.AGENT_LEFT] = occ_left >= 0
    x[:, Input.AGENT_RIGHT] = occ_right >= 0
    if world.params.motivated and world.n_agents:
        m_e, m_r = motivations_array(world.energy, world.phys)
        x[:, Input.MATE_LEFT] = np.where(occ_left >= 0, m_r[occ_left], 0.0)
        x[:, Input.MATE_RIGHT] = np.where(occ_right >= 0, m_r[occ_right], 0.0)
        x[:, Input.M_E] = m_e
        x[:, Input.M_R] = m_r
    return x


def sense(world: World, agent_id: int) -> np.ndarray:
    """Sensory vector of one agent, looked up by id."""
    return sense_all(world)[world.index_of(agent_id)]
