"""
Reading a controller
====================

A genome is probed with every combination of the five binary sensors at
the four motivation corners, and the resulting 128-row table is checked
against three reflexes: go for visible food, mate with a lone neighbour,
rest when nothing is in view.
"""

from animats import Action, classify_scheme, instinct_genome, probe_agent
from animats.analysis import HUNGRY, SATED
from animats.evolution import gene_index
from animats.model import Input

table = probe_agent(instinct_genome())
print("instinct genome:", classify_scheme(table))

# %%
# A hand-made hierarchical controller: mating is driven by the neighbour's
# mate-motivation signal, which in a probe follows the agent's own M_R.

g = instinct_genome()
for mate, own, other, sensor in (
    (Action.MATE_LEFT, Input.AGENT_LEFT, Input.AGENT_RIGHT, Input.MATE_LEFT),
    (Action.MATE_RIGHT, Input.AGENT_RIGHT, Input.AGENT_LEFT, Input.MATE_RIGHT),
):
    g[gene_index(mate, own)] = -1.0
    g[gene_index(mate, other)] = -2.0
    g[gene_index(mate, sensor)] = 10.0
g[gene_index(Action.JUMP, Input.AGENT_LEFT)] = -0.5
g[gene_index(Action.JUMP, Input.AGENT_RIGHT)] = -0.5

table = probe_agent(g)
print("gated genome:   ", classify_scheme(table))
lone_left = 0b01000
print("lone neighbour on the left, hungry ->", table.action(lone_left, HUNGRY).name.lower())
print("lone neighbour on the left, sated  ->", table.action(lone_left, SATED).name.lower())
