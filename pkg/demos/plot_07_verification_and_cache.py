"""
Verification reports and the matrix cache
=========================================

Reports are plain data.  Boundary matrices can be written to a checksummed
text cache and reused.
"""

import tempfile
from pathlib import Path

from qhomology.cache import MatrixCache, loads_matrix
from qhomology.homology import ProjectiveSpace
from qhomology.verifier import THEOREMS, run

###############################################################################
# Every named check on a small grid.

for name in sorted(THEOREMS):
    rep = run(name, q=2, p=5, n_max=3)
    print(f"{name:13s} {rep.summary['status']} ({rep.summary['checked']} instances)")

###############################################################################
# The cache
# ---------
#
# Files carry a header, one line per nonzero entry and a SHA-256 trailer.

root = Path(tempfile.mkdtemp())
S = ProjectiveSpace(3, 2, 7, cache=MatrixCache(root))
print(S.homology_dim(1, 1).betti)
f = sorted(root.glob("*.qhm"))[0]
print(f.read_text().splitlines()[:4])

text = f.read_text().replace("\n0 0 1\n", "\n0 0 2\n", 1)
try:
    loads_matrix(text)
except ValueError as err:
    print("rejected:", err)
