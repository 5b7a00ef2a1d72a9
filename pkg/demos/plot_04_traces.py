"""
Group elements acting on homology
=================================

Invertible matrices permute subspaces, and the homology inherits the
action.  Its trace mod p equals an alternating count of fixed subspaces.
"""

import numpy as np

from qhomology.homology import space
from qhomology.lattice import count_fixed_subspaces, random_invertible
from qhomology.qfield import gf

###############################################################################
# Fixed subspaces of a diagonal matrix over GF(3): the two axes.

F = gf(3)
g = np.diag([1, 2])
print([count_fixed_subspaces(F, g, k) for k in range(3)])

S = space(2, 3, 2)
print("trace", S.trace(g, 1, 1), "fixed-point sum", S.lefschetz(g, 1, 1))

###############################################################################
# Random elements
# ---------------
#
# Seeded rejection sampling gives reproducible invertible matrices.

rng = np.random.default_rng(0)
S = space(4, 2, 7)
for _ in range(5):
    g = random_invertible(gf(2), 4, rng)
    print(S.trace(g, 2, 1), S.lefschetz(g, 2, 1))

###############################################################################
# The trace does not depend on the chosen representatives: shifting them by
# image vectors gives the same value.

Q = S.quotient(2, 1)
shift = (Q.reps + rng.integers(0, 7, (Q.dim, len(Q.image))) @ Q.image) % 7
print(S.trace(g, 2, 1), S.trace(g, 2, 1, reps=shift))
