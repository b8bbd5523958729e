"""Evolving populations of neural-network animats with energy and mating motivations."""

from .analysis import (
    BehaviorTable,
    SchemeClassification,
    WeightStats,
    classify_scheme,
    population_classification,
    probe_agent,
    weight_stats,
)
from .config import ConfigError, RunConfig, parse_config
from .controller import forward, select_action
from .engine import Simulation, StepRecord, choose_actions, grass_update, resolve_actions, run, step
from .evolution import instinct_genome, mutate, offspring_genome, recombine
from .model import (
    Action,
    EvolutionParams,
    Input,
    Motivations,
    PhysiologyParams,
    World,
    WorldParams,
    action_cost,
    compute_motivations,
    sense,
)
from .harness import derive_seed, probe_command, run_scenario, sweep
from .snapshot import Snapshot, SnapshotError, load_snapshot, save_snapshot

__version__ = "0.1.0"
