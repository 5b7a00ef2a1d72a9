"""
Dualities and induced maps
==========================

Betti numbers are constant on orbits ``{(k,i), (n-k,m-i), (k,j), (n-k,m-j)}``
with ``j = 2k-n+m-i``.  The maps induced by the boundary and by the identity
are injective in a balanced region of the table.
"""

from qhomology.homology import space
from qhomology.linalg import span_rank
from qhomology.qcomb import IndexPair, betti_value, dual_indices

###############################################################################
# A duality orbit far beyond matrix range: n = 10 with m = 5 (q = 2, p = 31).

pair = IndexPair(10, 4, 2, 31, 2)
orbit = [(4, 2), *[(d.k, d.i) for d in dual_indices(pair)], (6, 4)]
print(orbit, [betti_value(10, k, i, 5, 2) for k, i in orbit])

###############################################################################
# Induced maps on P(3, 2) over GF(7)
# ----------------------------------
#
# The boundary from ``H_{2,2}`` to ``H_{1,1}`` is an isomorphism of
# 5-dimensional spaces.

S = space(3, 2, 7)
M = S.induced_map("boundary", 2, 2, 1)
print(M.shape, "rank", span_rank(M, 7))

###############################################################################
# Inclusion ``H_{k,i} -> H_{k,j}`` is injective when ``2k+m-i-j >= n``.

S = space(4, 2, 5)
for k, i, j in [(2, 1, 2), (2, 1, 3), (3, 1, 2)]:
    M = S.induced_map("inclusion", k, i, j - i)
    print((k, i, j), M.shape, span_rank(M, 5) if M.size else 0)
