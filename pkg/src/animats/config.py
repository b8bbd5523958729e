"""Run configuration: flat ``key = value`` files with flag overrides."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path

from .model import ENABLED, SUPPRESSED, EvolutionParams, PhysiologyParams, WorldParams


class ConfigError(ValueError):
    """Invalid configuration; ``errors`` lists every violation found."""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n  " + "\n  ".join(self.errors))


@dataclass(frozen=True)
class RunConfig:
    world: WorldParams = field(default_factory=WorldParams)
    phys: PhysiologyParams = field(default_factory=PhysiologyParams)
    evo: EvolutionParams = field(default_factory=EvolutionParams)
    max_iterations: int = 50_000
    timeseries_interval: int = 1
    weights_interval: int = 100
    snapshot_every: int = 0  # 0 disables periodic snapshots
    seed: int = 0
    output_directory: str = "output"

    def validate(self) -> list[str]:
        errors = self.world.validate() + self.phys.validate() + self.evo.validate()
        if self.evo.initial_population > self.world.n_cells:
            errors.append(
                f"initial_population: cannot exceed n_cells ({self.world.n_cells}), "
                f"got {self.evo.initial_population}"
            )
        if self.max_iterations < 0:
            errors.append(f"max_iterations: must be >= 0, got {self.max_iterations}")
        for name in ("timeseries_interval", "weights_interval"):
            if getattr(self, name) < 1:
                errors.append(f"{name}: must be >= 1, got {getattr(self, name)}")
        if self.snapshot_every < 0:
            errors.append(f"snapshot_every: must be >= 0, got {self.snapshot_every}")
        if self.seed < 0:
            errors.append(f"seed: must be >= 0, got {self.seed}")
        return errors

    def with_values(self, **values) -> "RunConfig":
        """Copy with flat-key overrides, e.g. ``cfg.with_values(grass_probability=0.05)``."""
        return build_config(values, base=self)


def _parse_float(text: str) -> float:
    # accepts fractions such as "1/200"
    return float(Fraction(text.strip()))


def _parse_int(text: str) -> int:
    return int(text.strip())


def _parse_mode(text: str) -> str:
    t = text.strip().lower()
    if t in ("on", "enabled", "true", "yes", "1"):
        return ENABLED
    if t in ("off", "suppressed", "false", "no", "0"):
        return SUPPRESSED
    raise ValueError(f"expected on/off, got {text!r}")


# flat key -> (section, attribute, parser); section None means RunConfig itself
KEYS = {
    "n_cells": ("world", "n_cells", _parse_int),
    "grass_probability": ("world", "grass_probability", _parse_float),
    "motivation": ("world", "motivation_mode", _parse_mode),
    "mutation_intensity": ("evo", "mutation_intensity", _parse_float),
    "initial_population": ("evo", "initial_population", _parse_int),
    "cost_rest": ("phys", "cost_rest", _parse_float),
    "cost_eat": ("phys", "cost_eat", _parse_float),
    "cost_move": ("phys", "cost_move", _parse_float),
    "cost_jump": ("phys", "cost_jump", _parse_float),
    "cost_mate": ("phys", "cost_mate", _parse_float),
    "child_transfer_total": ("phys", "child_transfer_total", _parse_float),
    "r0": ("phys", "r0", _parse_float),
    "r1": ("phys", "r1", _parse_float),
    "eat_gain": ("phys", "eat_gain", _parse_float),
    "grass_lifetime": ("phys", "grass_lifetime", _parse_int),
    "jump_distance": ("phys", "jump_distance", _parse_int),
    "max_iterations": (None, "max_iterations", _parse_int),
    "timeseries_interval": (None, "timeseries_interval", _parse_int),
    "weights_interval": (None, "weights_interval", _parse_int),
    "snapshot_every": (None, "snapshot_every", _parse_int),
    "seed": (None, "seed", _parse_int),
    "output_directory": (None, "output_directory", str.strip),
}

ALIASES = {"p_m": "mutation_intensity", "pg": "grass_probability", "p_g": "grass_probability",
           "motivation_mode": "motivation", "iterations": "max_iterations", "out": "output_directory"}


def read_config_file(path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    errors = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            errors.append(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    if errors:
        raise ConfigError(errors)
    return values


def build_config(values: dict, base: RunConfig | None = None) -> RunConfig:
    """Apply flat overrides to ``base`` and validate the result."""
    base = base or RunConfig()
    errors = []
    sections = {"world": {}, "phys": {}, "evo": {}, None: {}}
    for key, raw in values.items():
        name = ALIASES.get(key, key)
        if name not in KEYS:
            errors.append(f"{key}: unknown key")
            continue
        section, attr, parse = KEYS[name]
        try:
            value = parse(raw) if isinstance(raw, str) else raw
            if parse is _parse_int and not isinstance(value, int):
                if float(value) != int(value):
                    raise ValueError(f"expected an integer, got {raw!r}")
                value = int(value)
            elif parse is _parse_float:
                value = float(value)
        except (ValueError, ZeroDivisionError) as exc:
            errors.append(f"{name}: cannot parse {raw!r} ({exc})")
            continue
        sections[section][attr] = value
    if errors:
        raise ConfigError(errors)
    cfg = replace(
        base,
        world=replace(base.world, **sections["world"]),
        phys=replace(base.phys, **sections["phys"]),
        evo=replace(base.evo, **sections["evo"]),
        **sections[None],
    )
    errors = cfg.validate()
    if errors:
        raise ConfigError(errors)
    return cfg


def parse_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Defaults, then the config file (if any), then flag overrides."""
    values = read_config_file(path) if path else {}
    values = {ALIASES.get(k, k): v for k, v in values.items()}
    for key, value in (overrides or {}).items():
        if value is not None:
            values[ALIASES.get(key, key)] = value
    return build_config(values)


def config_items(cfg: RunConfig) -> list[tuple[str, str]]:
    """Flat ``(key, value)`` pairs that :func:`build_config` reads back exactly."""
    items = []
    for name, (section, attr, _) in KEYS.items():
        obj = cfg if section is None else getattr(cfg, section)
        value = getattr(obj, attr)
        if name == "motivation":
            value = "on" if value == ENABLED else "off"
        elif isinstance(value, float):
            value = repr(value)
        items.append((name, str(value)))
    return items
