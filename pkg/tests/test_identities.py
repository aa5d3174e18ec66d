import pytest

import catalog_algebroids as ca
import mutants
from homalg.identities import SampleConfig, identity_ids, verify_catalog, verify_identities

NAMED = ["d0", "d2", "L11", "L20", "LieD1", "LieD2", "LieD3", "LieD4", "Lied0", "Lied1",
         "Lied2", "Lied3", "Lied4", "Lied5", "Lied6", "Lied7", "Lied8", "HomPFormu"]


def test_catalog_lists_every_named_identity():
    assert set(NAMED) <= set(identity_ids())


@pytest.mark.parametrize("make", [ca.tangent_t, ca.action_t, ca.cotangent_xy, ca.shear_tangent,
                                  ca.classical_tangent])
def test_catalog_passes_at_degree_3(make):
    rep = verify_catalog(make(), SampleConfig(max_degree=3))
    assert rep.passed, str(rep)
    assert rep.sample_degree == 3


def test_single_identity_d0():
    c = verify_identities(ca.tangent_t(), "d0")
    assert c.passed and c.cases > 0


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify_identities(ca.tangent_t(), "no-such-identity")


def test_injected_sign_flip_in_cartan_formula_fails_Lied6():
    label, old, new = next(m for m in mutants.MUTATIONS if m[0] == "lie_form_cartan_sign")
    mod = mutants.load(old, new, label)
    bad = mutants.rebuild(mod, ca.action_t())
    c = verify_identities(bad, "Lied6", SampleConfig(max_degree=2))
    assert not c.passed
    assert set(c.witness) == {"assignment", "lhs", "rhs"}
    assert c.witness["lhs"] != c.witness["rhs"]
