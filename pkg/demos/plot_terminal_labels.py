"""
Terminal labels on a small lattice universe
===========================================

Build the five-edge universe on the box {0..14}^2, follow each vertex down
to the sinks it can reach, and read off the labels.
"""

import itertools

from lattice_multiverse import label_all_terminal, terminal_set, validate_universe
from lattice_multiverse.render import render_dot

edges = [
    ((5, 9), (3, 8)),
    ((3, 8), (2, 6)),
    ((2, 6), (3, 4)),
    ((3, 8), (5, 3)),
    ((10, 3), (6, 5)),
]
box = list(itertools.product(range(15), repeat=2))
universe = validate_universe(box, edges, k=2)
print(len(universe), "vertices,", len(universe.edges), "edges")

# (5,9) reaches two sinks, (3,4) and (5,3); the smaller minimum wins
for z in [(5, 9), (3, 8), (2, 6), (4, 2), (10, 3)]:
    print(z, "sinks", sorted(terminal_set(universe, z)))

# the plain labeling gives sinks min(z); the relaxed one gives them max(z)
plain = label_all_terminal(universe)
relaxed = label_all_terminal(universe, "relaxed")
for z in [(5, 9), (4, 2), (10, 3), (3, 4)]:
    print(z, "plain", plain[z], "relaxed", relaxed[z])

# a label below min(z) is significant; only the top of the long path qualifies
significant = {z: lab for z, lab in plain.labels.items() if lab < min(z)}
print("significant:", significant)

# DOT text for graphviz, isolated vertices stay unlabeled
print(render_dot(universe, plain.labels).splitlines()[0], "...")
