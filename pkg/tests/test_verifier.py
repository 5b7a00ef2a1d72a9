from __future__ import annotations

import json

import pytest

from qhomology.homology import space
from qhomology.verifier import (
    THEOREMS,
    VerificationReport,
    default_grid,
    derive_irreducible_dims,
    run,
    verify_branching,
    verify_composition,
    verify_duality,
    verify_middle_index,
    verify_q1_limit,
    verify_trace_formula,
)


def test_report_invariants():
    rep = VerificationReport("demo", {"q": 2})
    rep.add({"x": 1}, 3, 3)
    assert rep.passed and rep.summary["status"] == "pass"
    rep.add({"x": 2}, 3, 4)
    assert not rep.passed and rep.summary == {"theorem": "demo", "checked": 2, "failed": 1,
                                              "skipped": 0, "status": "fail"}
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["failures"][0]["computed"] == 4


def test_default_grid_shape():
    g = default_grid()
    assert (2, 3, 6, 6) in g and (2, 7, 6, 6) in g
    assert (3, 3, 0, 5) not in g and (3, 13, 0, 5) in g
    assert len(g) == 5 + 5 + 2


@pytest.mark.parametrize("name", sorted(THEOREMS))
def test_every_check_passes_small(name):
    rep = run(name, 2, 7, 3)
    assert rep.passed, rep.failures[:3]
    assert rep.summary["checked"] > 0


def test_middle_index_examples():
    assert verify_middle_index(4, 3, 2).passed
    assert verify_middle_index(5, 7, 2).passed


def test_branching_example_instance():
    S3, S2 = space(3, 2, 7), space(2, 2, 7)
    assert 19 == S3.homology_dim(2, 3).betti + S3.homology_dim(1, 1).betti + S2.homology_dim(1, 2).betti * 7
    assert verify_branching(5, 5, 2).passed


def test_duality_example():
    S = space(3, 2, 7)
    assert S.homology_dim(1, 1).betti == S.homology_dim(2, 2).betti == 5
    assert verify_duality(4, 2, 3).passed


def test_irreducible_dims():
    t = derive_irreducible_dims(3, 7, 2)
    assert t.dims[0] == 1 and t.dims[2] == 5 and t.provenance[2] == "H^3_{2,2}"
    t = derive_irreducible_dims(2, 2, 3)
    assert t.dims[1] == 2
    assert all(v >= 0 for v in t.dims.values())


@pytest.mark.parametrize("p", [3, 7])
def test_composition_q2(p):
    for n in range(6):
        rep = verify_composition(n, p, 2)
        assert rep.passed and not rep.skipped


def test_composition_example():
    rep = verify_composition(3, 7, 2)
    inst = [x for x in rep.instances if x.params.get("k") == 1 and x.params.get("i") == 1 and "T" in x.params]
    assert inst[0].params["T"] == (2, 2) and inst[0].computed == 5


def test_trace_small():
    rep = verify_trace_formula(3, 7, 2, sample_elements=5, seed=11)
    assert rep.passed
    assert any("perturbation" in x.params for x in rep.instances)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_q1_limit(p):
    rep = verify_q1_limit(6, p)
    assert rep.passed


def test_q1_two_is_exact():
    # over GF(2) with m = 2 the Boolean lattices B_n, n >= 1, are exact
    rep = verify_q1_limit(6, 2)
    cf = [x for x in rep.instances if x.params.get("check") == "closed form"]
    assert [x.computed for x in cf if x.params["n"] == 0] == [1]
    assert all(x.computed == 0 for x in cf if x.params["n"] >= 1)


def test_unknown_theorem():
    with pytest.raises(KeyError):
        run("nope", 2, 3, 2)


def test_cap_skips():
    rep = verify_middle_index(4, 7, 2, cap=20)
    assert rep.skipped and rep.passed
