"""
A small density sweep
=====================

Runtime of the three miners as the share of baskets carrying a planted
itemset grows.  This is a laptop-sized version of the sweep; use
``fim bench --experiment density`` for the full desk-scale run.
"""

import logging
import sys
from pathlib import Path

from fimkit.bench import ExperimentSpec, emit_report, run_experiment
from fimkit.core import SupportThreshold
from fimkit.datagen import DESK_DEFAULTS

logging.basicConfig(level=logging.INFO, format="%(message)s")

out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "density-sweep")
spec = ExperimentSpec(
    kind="density",
    base_config=DESK_DEFAULTS.replace(basket_count=20_000),
    points=[0.1, 0.3, 0.5, 0.7],
    trials=3,
    min_support=SupportThreshold.fraction(0.01),
)
report = run_experiment(spec)
paths = emit_report(report, out_dir)

print("\nmedian seconds")
print("density  " + "".join(f"{alg:>10}" for alg in spec.algorithms))
for point in spec.points:
    row = "".join(f"{report.medians[alg, point]:10.3f}" for alg in spec.algorithms)
    print(f"{point:<9}{row}   ({report.itemsets_found('eclat', point)} itemsets)")
print("\nwrote", ", ".join(str(p) for p in paths.values()))
