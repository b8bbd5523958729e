"""
Motivations and the initial instincts
=====================================

Every agent carries an energy resource R.  Two motivations are read off it:
the urge to find food, M_E, fades as R approaches R0, and the urge to mate,
M_R, grows until R reaches R1.
"""

import numpy as np

from animats import PhysiologyParams, compute_motivations

phys = PhysiologyParams()
for r in (0, 1_000, 2_500, 5_000, 7_500, 10_000, 20_000):
    m = compute_motivations(r, phys)
    print(f"R = {r:>6}   M_E = {m.m_e:.2f}   M_R = {m.m_r:.2f}")

# %%
# The whole initial population shares one hand-made genome.  Its weights
# from the motivation inputs are all zero, so these agents act on what they
# see and nothing else.

import itertools

from animats import Action, forward, instinct_genome, select_action

g = instinct_genome()
print("\nfood L/here/R  agent L/R  ->  action")
for bits in itertools.product((0, 1), repeat=5):
    x = np.array(bits + (0, 0, 0, 0), dtype=float)
    print(f"   {bits[0]} {bits[1]} {bits[2]}         {bits[3]} {bits[4]}     ->  "
          f"{select_action(forward(g, x)).name.lower()}")

# %%
# The weight matrix itself: one row per action neuron, one column per input.

names = ["foodL", "foodH", "foodR", "agL", "agR", "mrL", "mrR", "M_E", "M_R"]
print("\n" + " " * 11 + "".join(f"{n:>7}" for n in names))
for a in Action:
    print(f"{a.name.lower():>11}" + "".join(f"{w:7.1f}" for w in g.reshape(7, 9)[a]))
