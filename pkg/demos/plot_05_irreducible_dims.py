"""
Dimensions of the irreducible pieces
====================================

At a maximal middle index ``(t, 2t-n+1)`` the homology is irreducible.
Reading off those dimensions and summing them over an interval of t
reproduces every other Betti number.
"""

from qhomology.qcomb import IndexPair, middle_indices, t_interval
from qhomology.verifier import derive_irreducible_dims, verify_composition

###############################################################################
# The table for n = 5, q = 2, p = 7.

table = derive_irreducible_dims(5, 7, 2)
for t, d in table.dims.items():
    print(t, d, table.provenance[t])
print("gaps:", table.gaps)

###############################################################################
# Each middle index and its interval.

for k, i in middle_indices(5, 3):
    T = t_interval(IndexPair(5, k, i, 7, 2))
    print((k, i), list(T), sum(table.get(t) for t in T))

###############################################################################
# The check as a report.

rep = verify_composition(5, 7, 2)
print(rep.summary)
