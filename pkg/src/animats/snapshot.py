"""Versioned line-oriented text snapshots of a running simulation.

Layout::

    animats-snapshot 1
    iteration <t>
    config <key> <value>          one line per configuration key
    rng <json bit-generator state>
    next_id <k>
    agents <n>
    agent <id> <cell> <energy> <w0> ... <w62>
    grass <m>
    patch <cell> <remaining lifetime>
    end

Floats are written with ``repr`` so they read back bit-for-bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, build_config, config_items
from .model import GENOME_LENGTH, World

MAGIC = "animats-snapshot"
VERSION = 1


class SnapshotError(ValueError):
    pass


@dataclass
class Snapshot:
    config: RunConfig
    iteration: int
    world: World
    rng_state: dict

    def make_rng(self) -> np.random.Generator:
        rng = np.random.default_rng()
        rng.bit_generator.state = self.rng_state
        return rng


def dumps(config: RunConfig, iteration: int, world: World, rng_state: dict) -> str:
    lines = [f"{MAGIC} {VERSION}", f"iteration {iteration}"]
    lines += [f"config {k} {v}" for k, v in config_items(config)]
    lines.append("rng " + json.dumps(rng_state, sort_keys=True))
    lines.append(f"next_id {world.next_id}")
    lines.append(f"agents {world.n_agents}")
    for k in range(world.n_agents):
        weights = " ".join(repr(float(w)) for w in world.genomes[k])
        lines.append(
            f"agent {int(world.ids[k])} {int(world.positions[k])} {float(world.energy[k])!r} {weights}"
        )
    cells = np.flatnonzero(world.grass)
    lines.append(f"grass {cells.size}")
    lines += [f"patch {int(c)} {int(world.grass[c])}" for c in cells]
    lines.append("end")
    return "\n".join(lines) + "\n"


def save_snapshot(path, config: RunConfig, iteration: int, world: World, rng_state: dict) -> Path:
    path = Path(path)
    path.write_text(dumps(config, iteration, world, rng_state), encoding="utf-8")
    return path


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, keyword: str) -> list[str]:
        if self.pos >= len(self.lines):
            raise SnapshotError(f"truncated snapshot: expected '{keyword}' after line {self.pos}")
        parts = self.lines[self.pos].split()
        self.pos += 1
        if not parts or parts[0] != keyword:
            raise SnapshotError(f"line {self.pos}: expected '{keyword}', got {self.lines[self.pos - 1]!r}")
        return parts[1:]

    def peek(self) -> str:
        return self.lines[self.pos].split(" ", 1)[0] if self.pos < len(self.lines) else ""


def _count(parts: list[str], what: str) -> int:
    try:
        (value,) = parts
        n = int(value)
    except ValueError:
        raise SnapshotError(f"malformed {what} line: {' '.join(parts)!r}") from None
    if n < 0:
        raise SnapshotError(f"negative {what} count")
    return n


def loads(text: str) -> Snapshot:
    src = _Lines(text)
    header = src.next(MAGIC)
    if header != [str(VERSION)]:
        raise SnapshotError(f"unsupported snapshot version {' '.join(header)!r}, expected {VERSION}")
    iteration = _count(src.next("iteration"), "iteration")

    values = {}
    while src.peek() == "config":
        parts = src.next("config")
        if len(parts) != 2:
            raise SnapshotError(f"line {src.pos}: malformed config line")
        values[parts[0]] = parts[1]
    try:
        config = build_config(values)
    except ConfigError as exc:
        raise SnapshotError(f"invalid config in snapshot: {exc}") from None

    rng_line = src.lines[src.pos] if src.pos < len(src.lines) else ""
    src.next("rng")
    try:
        rng_state = json.loads(rng_line[4:])
        np.random.default_rng().bit_generator.state = rng_state
    except (ValueError, TypeError, KeyError) as exc:
        raise SnapshotError(f"line {src.pos}: bad rng state ({exc})") from None

    next_id = _count(src.next("next_id"), "next_id")
    n = _count(src.next("agents"), "agents")
    ids = np.zeros(n, dtype=np.int64)
    positions = np.zeros(n, dtype=np.int64)
    energy = np.zeros(n)
    genomes = np.zeros((n, GENOME_LENGTH))
    seen = set()
    for k in range(n):
        try:
            parts = src.next("agent")
        except SnapshotError as exc:
            raise SnapshotError(f"agent record {k}: {exc}") from None
        if len(parts) != 3 + GENOME_LENGTH:
            raise SnapshotError(
                f"agent record {k} (line {src.pos}): expected {3 + GENOME_LENGTH} fields, got {len(parts)}"
            )
        try:
            ids[k] = int(parts[0])
            positions[k] = int(parts[1])
            energy[k] = float(parts[2])
            genomes[k] = [float(w) for w in parts[3:]]
        except ValueError as exc:
            raise SnapshotError(f"agent record {k} (line {src.pos}): {exc}") from None
        if not 0 <= positions[k] < config.world.n_cells:
            raise SnapshotError(f"agent record {k}: cell {positions[k]} outside the world")
        if positions[k] in seen:
            raise SnapshotError(f"agent record {k}: cell {positions[k]} already occupied")
        seen.add(int(positions[k]))
        if not energy[k] > 0:
            raise SnapshotError(f"agent record {k}: non-positive energy {energy[k]!r}")
        if not np.all(np.isfinite(genomes[k])):
            raise SnapshotError(f"agent record {k}: non-finite weight")

    m = _count(src.next("grass"), "grass")
    grass = np.zeros(config.world.n_cells, dtype=np.int64)
    for k in range(m):
        try:
            cell, life = (int(v) for v in src.next("patch"))
        except ValueError:
            raise SnapshotError(f"grass record {k} (line {src.pos}): malformed") from None
        if not 0 <= cell < config.world.n_cells:
            raise SnapshotError(f"grass record {k}: cell {cell} outside the world")
        if grass[cell]:
            raise SnapshotError(f"grass record {k}: duplicate patch in cell {cell}")
        if not 1 <= life <= config.phys.grass_lifetime:
            raise SnapshotError(f"grass record {k}: lifetime {life} out of range")
        grass[cell] = life
    src.next("end")

    world = World(config.world, config.phys, grass, positions, energy, genomes, ids, next_id)
    problems = world.check()
    if problems:
        raise SnapshotError("inconsistent world: " + "; ".join(problems))
    return Snapshot(config, iteration, world, rng_state)


def load_snapshot(path) -> Snapshot:
    return loads(Path(path).read_text(encoding="utf-8"))
