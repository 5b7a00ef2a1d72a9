"""
The subspace lattice and its boundary operator
==============================================

Subspaces of GF(q)^n are stored as reduced row-echelon matrices, one numpy
array per dimension.  The boundary sends a subspace to the sum of its
hyperplanes.
"""

import numpy as np

from qhomology.lattice import boundary_matrix, boundary_power, enumerate_subspaces, incidence_matrix, level
from qhomology.qcomb import gauss_binomial, q_factorial
from qhomology.qfield import gf

###############################################################################
# Enumerating a level
# -------------------
#
# The four lines of GF(3)^2, in canonical order: pivot columns first, then
# the free entries read as a base-3 number.

F3 = gf(3)
for x in enumerate_subspaces(2, 1, F3):
    print(x.rows)

###############################################################################
# Sizes are Gaussian binomials.  The whole level is one ``(N, k, n)`` array,
# and index lookup is vectorized.

lev = level(4, 2, gf(2))
print(len(lev), gauss_binomial(4, 2, 2), lev.mats.shape)
print(lev.index_of(lev.mats[[3, 17, 30]]))

###############################################################################
# Boundary matrices
# -----------------
#
# Each column of the boundary has ``[k]_q`` ones and each row has
# ``[n-k+1]_q``.  Entries live in GF(p); here p = 7.

B = boundary_matrix(4, 2, gf(2), 7).toarray()
print(B.shape, np.unique(B.sum(axis=0)), np.unique(B.sum(axis=1)))

###############################################################################
# Powers of the boundary collapse to a multiple of the containment matrix,
# with the q-factorial as the multiplier.  Once the q-factorial vanishes
# mod p the power is zero.

A = boundary_power(4, 3, 2, gf(2), 7)
C = incidence_matrix(4, 1, 3, gf(2), 7, coefficient=q_factorial(2, 2))
print("d^2 equals 3 * containment:", A == C)
print("d^3 over GF(7) is zero:", boundary_power(4, 3, 3, gf(2), 7).is_zero())
