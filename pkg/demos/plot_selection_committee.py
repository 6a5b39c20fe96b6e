"""
Selection rules on a maximal universe
=====================================

A selection rule looks at the labels already assigned to lower neighbors and
returns one of them.  Here a committee of three distinct reports picks the
median, and we compare it with simpler rule sets.
"""

import itertools

from lattice_multiverse import builtin_rule_library, induced_universe, label_all_selection, maximal_theta
from lattice_multiverse.formats import dump_rules

library = builtin_rule_library()
print(dump_rules(library["committee"]))

# every downward pair is an edge
universe = induced_universe(list(itertools.product(range(4), repeat=2)), maximal_theta, 2)

for name in ["first", "min-report", "max-report", "committee", "never"]:
    lab = label_all_selection(universe, library[name])
    row = [lab[(a, a)] for a in range(4)]
    print(f"{name:>10}  diagonal labels {row}  defined at {sum(lab.defined.values())} vertices")

# where no rule fires the relaxed label falls back to max(x), otherwise it matches the plain label
plain = label_all_selection(universe, library["committee"])
relaxed = label_all_selection(universe, library["committee"], "relaxed")
for x in [(0, 0), (1, 1), (2, 3), (3, 3)]:
    print(x, "plain", plain[x], "relaxed", relaxed[x], "defined", plain.defined[x])
