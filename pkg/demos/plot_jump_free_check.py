"""
Sampling the jump-free condition
================================

Draw pairs of universes A, B that share a vertex x, with the part of A below x
sitting inside B and agreeing on labels there, and check that A never labels
x lower than B.  The relaxed terminal family passes, the plain one does not.
"""

from lattice_multiverse import builtin_rule_library
from lattice_multiverse.regularity import (
    PlainTerminalFamily,
    RelaxedTerminalFamily,
    SelectionFamily,
    check_family_conditions,
)

library = builtin_rule_library()
families = [
    RelaxedTerminalFamily(),
    SelectionFamily(library["min-report"]),
    SelectionFamily(library["first"], "plain"),
    PlainTerminalFamily(),
]

for family in families:
    report = check_family_conditions(family, trials=300, seed=1)
    print(f"{family.name:32} scenarios={report.scenarios} counterexamples={len(report.counterexamples)}")

# the first failure of the plain family, small enough to check by hand
report = check_family_conditions(PlainTerminalFamily(), trials=300, seed=1)
if report.counterexamples:
    ce = report.counterexamples[0]
    print("x =", ce["x"], "f_A(x) =", ce["f_A(x)"], "f_B(x) =", ce["f_B(x)"])
    print("A edges:", ce["A"]["edges"])
    print("B edges:", ce["B"]["edges"])
