"""
Betti tables
============

The homology ``H^n_{k,i}`` is ``ker d^i`` modulo ``im d^(m-i)`` on level k.
Here we compute it from matrices and compare with the closed form.
"""

from qhomology.homology import space
from qhomology.qcomb import betti_special, betti_value, middle_indices, quantum_char

###############################################################################
# The exponent m
# --------------
#
# ``d^m = 0`` for the least m with ``[m]_q = 0`` in GF(p).  It is the order
# of q modulo p, or p itself when q = 1 mod p.

for q, p in [(2, 3), (2, 7), (2, 5), (3, 2), (4, 3), (2, 31)]:
    print(f"q={q} p={p} m={quantum_char(p, q)}")

###############################################################################
# A table for P(4, 2) over GF(7)
# ------------------------------
#
# Rows are i = 1..m-1 and columns are k = 0..n.  Only the middle indices
# carry homology.

n, q, p = 4, 2, 7
S = space(n, q, p)
for i in range(1, S.m):
    print(i, [S.homology_dim(k, i).betti for k in range(n + 1)])
print("middle indices:", middle_indices(n, S.m))

###############################################################################
# The closed form agrees everywhere, and for m = 3 it follows a two-term
# recurrence in n.

assert all(S.homology_dim(k, i).betti == betti_value(n, k, i, S.m, q)
           for k in range(n + 1) for i in range(1, S.m))
print([betti_special(3, n, 7, 2) for n in range(8)])

###############################################################################
# A larger level
# --------------
#
# Over GF(2) the packed elimination handles P(6, 3), whose middle level has
# 33880 planes.

big = space(6, 3, 2)
res = big.homology_dim(3, 1)
print(res.betti, res.kernel_dim, res.image_dim)
