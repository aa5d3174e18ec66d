"""Each single-sign mutation of the algebroid calculus is caught by some check."""
import pytest

import catalog_algebroids as ca
import mutants
from homalg.algebroid import verify_algebroid
from homalg.identities import SampleConfig, identity_ids, verify_identities


def test_enough_mutations():
    assert len(mutants.MUTATIONS) >= 10
    assert len({m[0] for m in mutants.MUTATIONS}) == len(mutants.MUTATIONS)


def caught(mod):
    """First failing (structure, check) under the mutant, or None."""
    cfg = SampleConfig(max_degree=2)
    for good in ca.three() + [ca.shear_tangent()]:
        alg = mutants.rebuild(mod, good)
        for key in identity_ids():
            if not verify_identities(alg, key, cfg).passed:
                return good.name, key
        rep = verify_algebroid(alg, 2)
        if not rep.passed:
            return good.name, rep.failures()[0].axiom
    return None


@pytest.mark.parametrize("label,old,new", mutants.MUTATIONS, ids=[m[0] for m in mutants.MUTATIONS])
def test_mutation_caught(label, old, new):
    mod = mutants.load(old, new, label)
    assert caught(mod) is not None, label
