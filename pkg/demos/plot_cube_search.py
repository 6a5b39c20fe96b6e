"""
Searching for a regular cube
============================

Given a labeling, look for p-element sets E such that on E^k each order type
is either high everywhere or constant below min(E).  A search that comes up
empty only says something about the budget, not about the question.
"""

import itertools

from lattice_multiverse import validate_universe
from lattice_multiverse.search import (
    SearchBudget,
    edgeless_family,
    maximal_theta_family,
    search_cube_witness,
    significant_bound,
)
from lattice_multiverse.selection import builtin_rule_library

# with no edges every label is min(z), so the first candidate already works
w = search_cube_witness(edgeless_family, "terminal", SearchBudget(max_axis_value=5, p=3))
print("edgeless:", w.cube.axis, "significant labels:", w.significant_count)

# with every downward edge and min-report rules, labels collapse toward 0
rules = builtin_rule_library()["min-report"]
w = search_cube_witness(maximal_theta_family, "selection", SearchBudget(6, 3), rules)
for t, cls in w.verdict.per_type.items():
    print(f"  {t}: {cls.value}")
print("significant", w.significant_count, "<= bound", significant_bound(2))

# two different low labels on the diagonal defeat every 3-subset of {0..3}
box = list(itertools.product(range(4), repeat=2))
hard = validate_universe(box, [((1, 1), (0, 0)), ((3, 3), (2, 2))], k=2)
report = search_cube_witness(hard, "terminal", SearchBudget(3, 3))
for failure in report.failures:
    print(failure.axis, failure.reason, failure.order_type, failure.pair)
print(report.note)
