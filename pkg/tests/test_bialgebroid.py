import itertools
from fractions import Fraction

import pytest

import catalog_algebroids as ca
from homalg.algebroid import HomLieAlgebroid, verify_algebroid
from homalg.bialgebroid import (BialgebroidError, HomLieBialgebroid, dual_bialgebroid,
                                from_bialgebra, from_poisson, induced_poisson,
                                induced_poisson_opposite, verify_bialgebroid)
from homalg.homlie import HomLieAlgebra, PurelyHomLieBialgebra
from homalg.poisson import HomPoissonStructure
from homalg.ring import Poly, RingAuto, monomials

XY = ["x", "y"]
x, y = Poly.gens(XY)


def poissons():
    yield ca.xy_poisson(2)
    yield ca.xy_poisson(1)
    yield HomPoissonStructure.from_coefficients(RingAuto(XY, [2 * x, 2 * y]), {}, "zero")
    # xy is fixed by x -> 2x, y -> y/2 and the twist scales D_x ^ D_y by 1/2 * 2
    yield HomPoissonStructure.from_coefficients(RingAuto(XY, [2 * x, y / 2]), {(0, 1): x * y},
                                                "hyperbolic")


@pytest.mark.parametrize("p", list(poissons()), ids=lambda p: p.name)
def test_from_poisson_is_bialgebroid(p):
    b = from_poisson(p)
    rep = verify_bialgebroid(b)
    assert rep.passed, str(rep)
    assert {c.axiom for c in rep.checks} == {"compatibility", "lie_derivative_df", "d_star_bracket"}


@pytest.mark.parametrize("p", list(poissons()), ids=lambda p: p.name)
def test_induced_poisson_round_trip(p):
    b = from_poisson(p)
    assert induced_poisson(b).pi == p.pi
    assert induced_poisson_opposite(b).pi == -p.pi


def test_induced_bracket_is_pairing_with_d_star():
    b = from_poisson(ca.xy_poisson(2))
    ms = monomials(XY, 2)
    p = ca.xy_poisson(2)
    for f, g in itertools.product(ms, repeat=2):
        assert b.poisson_bracket(f, g) == p.bracket(f, g)


def test_dual_bialgebroid():
    b = from_poisson(ca.xy_poisson(2))
    d = dual_bialgebroid(b)
    assert d.A is b.Astar and d.Astar is b.A
    assert verify_bialgebroid(d).passed
    dd = dual_bialgebroid(d)
    assert dd.A.same_structure(b.A) and dd.Astar.same_structure(b.Astar)


def _scaled_dual(b, k):
    S = b.Astar
    return HomLieAlgebroid(S.phi, {key: v.scale(k) for key, v in S.brackets.items()}, S.anchors)


def test_mutated_dual_fails_compatibility():
    b = from_poisson(ca.xy_poisson(2))
    bad = HomLieBialgebroid(b.A, _scaled_dual(b, 2), "scaled")
    rep = verify_bialgebroid(bad, check_constituents=False)
    assert "compatibility" in [c.axiom for c in rep.failures()]
    w = rep.get("compatibility").witness
    assert w["lhs"] != w["rhs"]
    with pytest.raises(BialgebroidError):
        verify_bialgebroid(bad)


def test_lemma_and_corollary_on_samples():
    b = from_poisson(ca.xy_poisson(2))
    rep = verify_bialgebroid(b, 3)
    assert rep.get("lie_derivative_df").passed and rep.get("lie_derivative_df").cases > 0
    assert rep.get("d_star_bracket").passed
    # {f,g} = <df, d_* g>, so the anchor of d_* g differentiates f into {f, g}
    A = b.A
    for f in monomials(XY, 2):
        assert A.anchor(b.d_star(x))(f) == b.poisson_bracket(f, x)


def test_point_bialgebroid_from_bialgebra():
    g = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 3]])
    gs = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, Fraction(1, 3)]])
    b = from_bialgebra(PurelyHomLieBialgebra(g, gs))
    assert b.variables == ()
    assert verify_algebroid(b.A).passed and verify_algebroid(b.Astar).passed
    assert verify_bialgebroid(b).passed


def test_classical_limit():
    sigma = RingAuto.identity(XY)
    p = HomPoissonStructure.from_coefficients(sigma, {(0, 1): x * y + 1}, "classical")
    b = from_poisson(p)
    assert verify_bialgebroid(b).passed
    assert induced_poisson(b).pi == p.pi
    assert verify_bialgebroid(dual_bialgebroid(b)).passed
