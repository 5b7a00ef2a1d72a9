"""Incidence homology of finite projective spaces over GF(p), p not dividing q.

The package builds the subspace lattice of GF(q)^n, the boundary operator
summing over codimension-one subspaces, and the homology of its powers
``d^i`` modulo images of ``d^(m-i)``, where ``m`` is the order of ``q`` in
GF(p) (or ``p`` when ``q = 1 mod p``).  Closed forms for the Betti numbers
live in :mod:`qhomology.qcomb`; :mod:`qhomology.verifier` compares them
against matrix computations.
"""

from .homology import HomologyResult, ProjectiveSpace, homology_basis, homology_dim, homology_trace, induced_map, sequence_profile, space
from .lattice import Subspace, boundary_matrix, boundary_power, count_fixed_subspaces, enumerate_subspaces, incidence_matrix, incidence_rank
from .poset import PosetHomology, RankedPoset, boolean_lattice, chain, load_poset, loads_poset, projective_poset
from .qcomb import (
    IndexPair,
    TInterval,
    betti_closed_form,
    betti_recurrence,
    betti_special,
    dual_indices,
    gauss_binomial,
    is_maximal_middle_index,
    is_middle_index,
    leading_term_check,
    q_factorial,
    q_int,
    quantum_char,
    sequence_key,
    t_interval,
)
from .qfield import FieldTable, field_new, gf
from .verifier import IrreducibleDimTable, VerificationReport, derive_irreducible_dims

__version__ = "0.1.0"

__all__ = [
    "betti_closed_form",
    "betti_recurrence",
    "betti_special",
    "boolean_lattice",
    "boundary_matrix",
    "boundary_power",
    "chain",
    "count_fixed_subspaces",
    "derive_irreducible_dims",
    "dual_indices",
    "enumerate_subspaces",
    "field_new",
    "FieldTable",
    "gauss_binomial",
    "gf",
    "homology_basis",
    "homology_dim",
    "homology_trace",
    "HomologyResult",
    "incidence_matrix",
    "incidence_rank",
    "IndexPair",
    "induced_map",
    "IrreducibleDimTable",
    "is_maximal_middle_index",
    "is_middle_index",
    "leading_term_check",
    "load_poset",
    "loads_poset",
    "PosetHomology",
    "projective_poset",
    "ProjectiveSpace",
    "q_factorial",
    "q_int",
    "quantum_char",
    "RankedPoset",
    "sequence_key",
    "sequence_profile",
    "space",
    "Subspace",
    "t_interval",
    "TInterval",
    "VerificationReport",
]
