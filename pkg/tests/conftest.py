import numpy as np
import pytest

from animats.evolution import instinct_genome
from animats.model import PhysiologyParams, World, WorldParams


def make_world(agents=(), grass=(), n_cells=20, motivation="enabled", p_g=0.0, phys=None):
    """World with ``agents`` given as (cell, energy[, genome]) tuples and grass in ``grass`` cells."""
    phys = phys or PhysiologyParams()
    world = World.empty(WorldParams(n_cells=n_cells, grass_probability=p_g, motivation_mode=motivation), phys)
    for spec in agents:
        cell, energy = spec[:2]
        genome = spec[2] if len(spec) > 2 else instinct_genome()
        world.add_agent(cell, energy, genome)
    for cell in grass:
        world.grass[cell] = phys.grass_lifetime
    return world


@pytest.fixture
def rng():
    return np.random.default_rng(20011)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(REPORT, key=lambda r: int(r[0].split()[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
