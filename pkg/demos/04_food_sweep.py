"""
Motivated versus suppressed populations
=======================================

A small sweep over the three grass probabilities, both motivation modes
and a couple of seeds.  Runs are shortened to keep the demo quick; the
acceptance suite runs the full 50,000 iterations with 10 seeds.
"""

import tempfile

from animats import RunConfig, derive_seed, sweep
from animats.model import ENABLED, SUPPRESSED

ITERATIONS = 3_000
SEEDS = [derive_seed(7, i) for i in range(2)]

base = RunConfig().with_values(max_iterations=ITERATIONS, weights_interval=1000)
with tempfile.TemporaryDirectory() as out:
    rows = sweep(base, [1 / 2000, 1 / 200, 1 / 20], [ENABLED, SUPPRESSED], SEEDS, out_dir=out)

print(f"{'P_g':>8} {'mode':>11} {'survived':>9} {'final N':>8}  majority label")
for r in rows:
    print(f"{r['grass_probability']:8.4f} {r['motivation']:>11} {str(r['survived']):>9} "
          f"{r['final_n']:>8}  {r['majority_label']}")
