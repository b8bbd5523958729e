"""
One population over time
========================

A motivated population at an intermediate grass probability.  The run is
short so the script finishes in seconds; raise ``ITERATIONS`` towards the
default 50,000 for the long-term picture.
"""

import numpy as np

from animats import RunConfig, Simulation

ITERATIONS = 5_000

config = RunConfig().with_values(grass_probability="1/200", motivation="on")
sim = Simulation.from_config(config, seed=1)
records = sim.run(ITERATIONS)

n = np.array([r.n_agents for r in records])
print(f"ran {len(records)} iterations; N from {n[0]} to {sim.world.n_agents}")
print(f"peak N {n.max()} at t = {n.argmax()}, births {sum(r.births for r in records)}, "
      f"deaths {sum(r.deaths for r in records)}")

# %%
# What the agents spend their time on, over the last 1,000 iterations.

counts = np.sum([r.action_counts for r in records[-1000:]], axis=0)
for name, c in zip(["rest", "move_left", "move_right", "jump", "eat", "mate_left", "mate_right"], counts):
    print(f"{name:>11}: {c / counts.sum():6.1%}")

# %%
# The energy books balance each iteration: what is eaten minus what is spent
# and what dies with the agents.

worst = max(abs(r.ledger_imbalance) for r in records)
print(f"largest per-step ledger imbalance: {worst:.3g}")

# %%
# N(t), if matplotlib is around.

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    plt.plot(n)
    plt.xlabel("iteration")
    plt.ylabel("N")
    plt.savefig("population.png", dpi=100)
    print("wrote population.png")
