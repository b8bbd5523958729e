"""One-iteration world update and whole-run driver.

An iteration is: grass update, simultaneous action choice from one world
snapshot, then resolution in fixed phases (costs, eating, movement, mating,
deaths).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numba import njit

from .config import RunConfig
from .controller import forward, select_actions
from .evolution import instinct_genome, offspring_genomes
from .model import N_ACTIONS, Action, EvolutionParams, World, sense_all


_MOVE_LEFT = int(Action.MOVE_LEFT)
_MOVE_RIGHT = int(Action.MOVE_RIGHT)
_JUMP = int(Action.JUMP)
_EAT = int(Action.EAT)
_MATE_LEFT = int(Action.MATE_LEFT)
_MATE_RIGHT = int(Action.MATE_RIGHT)


@njit(cache=True)
def _move_sequentially(order, directions, actions, positions, occ, n_cells, jump):
    # a mover whose target is occupied at its turn stays put
    for k in range(order.size):
        i = order[k]
        a = actions[i]
        if a == _MOVE_LEFT:
            step = -1
        elif a == _MOVE_RIGHT:
            step = 1
        else:
            step = directions[k] * jump
        src = positions[i]
        dst = (src + step) % n_cells
        if occ[dst] < 0:
            occ[src] = -1
            occ[dst] = i
            positions[i] = dst


@njit(cache=True)
def _place_children(order, coins, pairs, positions, occ, n_cells, first_row):
    """Cell of each pair's child in processing order, -1 when both flanks are taken."""
    cells = np.full(order.size, -1, dtype=np.int64)
    placed = 0
    for k in range(order.size):
        p = order[k]
        c = positions[pairs[p, 0]]
        left = (c - 1) % n_cells
        right = (c + 2) % n_cells
        free_left = occ[left] < 0
        free_right = occ[right] < 0 and right != left
        if free_left and free_right:
            cell = right if coins[p] else left
        elif free_left:
            cell = left
        elif free_right:
            cell = right
        else:
            continue
        occ[cell] = first_row + placed
        placed += 1
        cells[k] = cell
    return cells


@lru_cache(maxsize=16)
def _cost_table(phys) -> np.ndarray:
    return phys.cost_table()


class ActionMapError(ValueError):
    """Action array does not cover exactly the live agents."""


@dataclass
class StepRecord:
    """Metrics for one iteration.

    ``n_agents`` and ``total_energy`` describe the population at the start
    of the iteration; the flow fields describe what happened during it, so
    ``total_energy_end == total_energy + eaten - costs - lost_to_deaths``.
    """

    t: int
    n_agents: int = 0
    births: int = 0
    deaths: int = 0
    grass_cells: int = 0
    action_counts: np.ndarray = field(default_factory=lambda: np.zeros(N_ACTIONS, dtype=np.int64))
    total_energy: float = 0.0
    total_energy_end: float = 0.0
    n_agents_end: int = 0
    eaten: float = 0.0
    costs: float = 0.0
    lost_to_deaths: float = 0.0
    to_newborns: float = 0.0

    @property
    def mean_energy(self) -> float:
        return self.total_energy / self.n_agents if self.n_agents else 0.0

    @property
    def ledger_imbalance(self) -> float:
        return self.total_energy_end - (self.total_energy + self.eaten - self.costs - self.lost_to_deaths)


def grass_update(world: World, rng: np.random.Generator) -> None:
    """Age existing patches, then seed grass-free cells with probability P_g."""
    g = world.grass
    np.subtract(g, 1, out=g, where=g > 0)
    appear = rng.random(world.n_cells) < world.params.grass_probability
    g[appear & (g == 0)] = world.phys.grass_lifetime


def choose_actions(world: World) -> np.ndarray:
    """Action index of every live agent (row order), all sensed from one snapshot."""
    if world.n_agents == 0:
        return np.zeros(0, dtype=np.int64)
    return select_actions(forward(world.genomes, sense_all(world)))


def resolve_actions(
    world: World,
    actions,
    evo: EvolutionParams,
    rng: np.random.Generator,
    t: int = 0,
) -> StepRecord:
    """Execute ``actions`` (one per agent row) and update ``world`` in place."""
    n = world.n_agents
    actions = np.asarray(actions)
    if actions.shape != (n,):
        raise ActionMapError(f"expected {n} actions, got shape {actions.shape}")
    if n and (actions.min() < 0 or actions.max() >= N_ACTIONS):
        raise ActionMapError("action index outside 0..6")
    actions = actions.astype(np.int64)
    phys = world.phys
    n_cells = world.n_cells
    rec = StepRecord(t=t, n_agents=n, total_energy=world.total_energy())
    rec.grass_cells = int(np.count_nonzero(world.grass))
    rec.action_counts = np.bincount(actions, minlength=N_ACTIONS)

    # 1. every action is paid for, successful or not
    cost = _cost_table(phys)[actions]
    world.energy -= cost
    rec.costs = float(cost.sum())

    # 2. eating
    eaters = np.flatnonzero(actions == _EAT)
    if eaters.size:
        cells = world.positions[eaters]
        fed = world.grass[cells] > 0
        world.energy[eaters[fed]] += phys.eat_gain
        world.grass[cells[fed]] = 0
        rec.eaten = float(phys.eat_gain * np.count_nonzero(fed))

    # 3. moves and jumps, one at a time in random order
    movers = np.flatnonzero((actions >= _MOVE_LEFT) & (actions <= _JUMP))
    occ = world.occupancy()
    if movers.size:
        order = rng.permutation(movers)
        directions = rng.integers(0, 2, size=order.size) * 2 - 1
        _move_sequentially(order, directions, actions, world.positions, occ, n_cells, phys.jump_distance)

    # 4. coordinated mating: left partner chose MATE_RIGHT, right partner MATE_LEFT
    births = 0
    left_partners = np.flatnonzero(actions == _MATE_RIGHT)
    if left_partners.size:
        right_partners = occ[(world.positions[left_partners] + 1) % n_cells]
        ok = right_partners >= 0
        ok[ok] = actions[right_partners[ok]] == _MATE_LEFT
        pairs = np.column_stack([left_partners[ok], right_partners[ok]])
        if len(pairs):
            order = rng.permutation(len(pairs))
            coins = rng.integers(0, 2, size=len(pairs))
            cells = _place_children(order, coins, pairs, world.positions, occ, n_cells, n)
            keep = cells >= 0
            parents = pairs[order[keep]]
            cells = cells[keep]
            births = len(cells)
            if births:
                children = offspring_genomes(
                    world.genomes[parents[:, 0]], world.genomes[parents[:, 1]], evo, rng
                )
                # a parent gives half the child allowance, or whatever it has left
                half = phys.child_transfer_total / 2
                given = np.clip(world.energy[parents], 0.0, half)
                world.energy[parents] -= given
                child_energy = given.sum(axis=1)
                rec.to_newborns = float(child_energy.sum())
                world.positions = np.concatenate([world.positions, cells])
                world.energy = np.concatenate([world.energy, child_energy])
                world.genomes = np.vstack([world.genomes, children])
                world.ids = np.concatenate(
                    [world.ids, np.arange(world.next_id, world.next_id + births, dtype=np.int64)]
                )
                world.next_id += births
    rec.births = births

    # 5. deaths
    dead = world.energy <= 0
    rec.deaths = int(np.count_nonzero(dead))
    if rec.deaths:
        rec.lost_to_deaths = float(world.energy[dead].sum())
        alive = ~dead
        world.positions = world.positions[alive]
        world.energy = world.energy[alive]
        world.genomes = world.genomes[alive]
        world.ids = world.ids[alive]

    rec.n_agents_end = world.n_agents
    rec.total_energy_end = world.total_energy()
    return rec


def step(world: World, evo: EvolutionParams, rng: np.random.Generator, t: int = 0) -> StepRecord:
    grass_update(world, rng)
    return resolve_actions(world, choose_actions(world), evo, rng, t)


def initial_world(config: RunConfig, rng: np.random.Generator) -> World:
    """Initial population: identical instinct genomes, energy R0, distinct random cells."""
    world = World.empty(config.world, config.phys)
    n = config.evo.initial_population
    world.positions = rng.choice(config.world.n_cells, size=n, replace=False).astype(np.int64)
    world.energy = np.full(n, config.phys.r0)
    world.genomes = np.tile(instinct_genome(), (n, 1))
    world.ids = np.arange(n, dtype=np.int64)
    world.next_id = n
    return world


class Simulation:
    """A world, its evolution parameters, its RNG and the iteration counter."""

    def __init__(self, world: World, evo: EvolutionParams, rng: np.random.Generator, t: int = 0):
        self.world = world
        self.evo = evo
        self.rng = rng
        self.t = t

    @classmethod
    def from_config(cls, config: RunConfig, seed: int | None = None) -> "Simulation":
        errors = config.validate()
        if errors:
            from .config import ConfigError

            raise ConfigError(errors)
        rng = np.random.default_rng(config.seed if seed is None else seed)
        return cls(initial_world(config, rng), config.evo, rng)

    @property
    def extinct(self) -> bool:
        return self.world.n_agents == 0

    def step(self) -> StepRecord:
        rec = step(self.world, self.evo, self.rng, self.t)
        self.t += 1
        return rec

    def run(self, until: int) -> list[StepRecord]:
        """Step until iteration ``until`` or extinction."""
        records = []
        while self.t < until and not self.extinct:
            records.append(self.step())
        return records


def run(config: RunConfig, seed: int | None = None) -> tuple[list[StepRecord], World]:
    """Full run from the initial population; returns the records and final world."""
    sim = Simulation.from_config(config, seed)
    return sim.run(config.max_iterations), sim.world
