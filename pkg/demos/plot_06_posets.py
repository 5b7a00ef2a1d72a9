"""
Homology of other ranked posets
===============================

The same construction works for any ranked poset, given an exponent m with
``d^m = 0``.  Boolean lattices play the role of q = 1.
"""

from qhomology.poset import PosetHomology, boolean_lattice, chain, loads_poset
from qhomology.qcomb import betti_value

###############################################################################
# Boolean lattices
# ----------------
#
# Over GF(p) the boundary of the Boolean lattice satisfies ``d^p = 0``.

for p in (2, 3, 5):
    H = PosetHomology(boolean_lattice(6), p)
    grid = H.grid(p)
    nonzero = {key: v for key, v in grid.items() if v}
    print(p, H.nilpotency_exponent(), nonzero)
    assert all(v == betti_value(6, k, i, p, 1) for (k, i), v in grid.items())

###############################################################################
# Over GF(2) the Boolean complex is exact for n >= 1: every entry is zero,
# even at middle indices.

###############################################################################
# A chain with a larger exponent than needed.

H = PosetHomology(chain(4), 3)
print(H.grid(6))

###############################################################################
# A poset from text
# -----------------

text = """
poset bowtie
elements 4
rank 0 0
rank 1 0
rank 2 1
rank 3 1
cover 2 0
cover 2 1
cover 3 0
cover 3 1
"""
P = loads_poset(text)
H = PosetHomology(P, 3)
print(P.level_sizes(), H.nilpotency_exponent(), H.grid(3))
