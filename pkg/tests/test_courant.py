import itertools
from fractions import Fraction

import pytest

import catalog_algebroids as ca
from homalg.bialgebroid import BialgebroidError, from_bialgebra, from_poisson
from homalg.courant import (CourantError, HomCourantAlgebroid, HomLieBialgebroid, build_double,
                            double_product, standard_courant, to_hom_lie_2, trivial_dual,
                            verify_courant, verify_hom_lie_2)
from homalg.homlie import HomLieAlgebra, PurelyHomLieBialgebra, build_double as algebra_double
from homalg.poisson import HomPoissonStructure
from homalg.ring import Poly, RingAuto, monomials

XY = ["x", "y"]
x, y = Poly.gens(XY)
AXIOMS = {"i_hom_leibniz", "i_morphism", "ii_anchor_twist", "iii_anchor_bracket", "iv_square",
          "v_form_twist", "vi_invariance"}
LEMMAS = {"rho_D", "phi_D", "D_leibniz", "e_D", "D_e"}


@pytest.fixture(scope="module")
def xy_double():
    return build_double(from_poisson(ca.xy_poisson(2)))


@pytest.fixture(scope="module")
def standard():
    return standard_courant(RingAuto(XY, [2 * x, 3 * y]))


def test_double_of_xy_bialgebroid(xy_double):
    rep = verify_courant(xy_double)
    assert rep.passed, str(rep)
    names = {c.axiom for c in rep.checks}
    assert AXIOMS | LEMMAS | {"xfy", "xgy"} <= names


def test_standard_courant(standard):
    rep = verify_courant(standard)
    assert rep.passed, str(rep)
    # pairing xi(y) + eta(x) on the basis e1, e2, eps1, eps2
    assert standard.pairing(standard.basis(0), standard.basis(2)) == 1
    assert standard.pairing(standard.basis(0), standard.basis(1)) == 0


def test_table_matches_direct_formula(xy_double):
    b = from_poisson(ca.xy_poisson(2))
    ms = monomials(XY, 1)
    for a, c in itertools.product(range(4), repeat=2):
        for f, g in itertools.product(ms, repeat=2):
            e1, e2 = xy_double.basis(a, f), xy_double.basis(c, g)
            assert xy_double.product(e1, e2) == double_product(b, e1, e2)


def test_point_case_matches_bialgebra_double():
    g = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 3]])
    gs = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, Fraction(1, 3)]])
    bb = PurelyHomLieBialgebra(g, gs)
    q = algebra_double(bb)
    c = build_double(from_bialgebra(bb))
    for i, j in itertools.product(range(4), repeat=2):
        got = c.product(c.basis(i), c.basis(j)).vector()
        assert list(got) == [Poly.constant(v, ()) for v in q.bracket(q.basis(i), q.basis(j))]
    assert c.phi.matrix == tuple(tuple(Poly.constant(v, ()) for v in row) for row in q.phi)
    assert verify_courant(c).passed


def test_flipped_product_sign_fails(xy_double):
    c = xy_double
    key = next(k for k in sorted(c.table) if k[0] != k[1])
    table = dict(c.table)
    table[key] = -table[key]
    bad = HomCourantAlgebroid(c.phi, c.form, table, c.anchors, "flipped")
    rep = verify_courant(bad, 2)
    assert not rep.passed
    assert rep.failures()[0].witness["lhs"] != rep.failures()[0].witness["rhs"]


def test_double_rejects_non_bialgebroid():
    b = from_poisson(ca.xy_poisson(2))
    S = b.Astar
    from homalg.algebroid import HomLieAlgebroid
    scaled = HomLieAlgebroid(S.phi, {k: v.scale(2) for k, v in S.brackets.items()}, S.anchors)
    with pytest.raises((CourantError, BialgebroidError)):
        build_double(HomLieBialgebroid(b.A, scaled))


def test_trivial_dual_double_is_standard(standard):
    from homalg.algebroid import tangent_algebroid
    T = tangent_algebroid(standard.sigma)
    d = build_double(HomLieBialgebroid(T, trivial_dual(T)))
    assert d.table == standard.table


@pytest.fixture(scope="module")
def two_algebra(standard):
    return to_hom_lie_2(standard, 2)


def test_hom_lie_2_algebra(two_algebra):
    rep = verify_hom_lie_2(two_algebra, 2)
    assert rep.passed, str(rep)
    assert {"a_skew", "b_l1", "c1", "c2", "d"} <= {c.axiom for c in rep.checks}


def test_scaled_l3_breaks_coherence(two_algebra):
    l3 = two_algebra.l3
    bad = two_algebra.with_l3(lambda a, b, c: l3(a, b, c) * 2)
    failed = {c.axiom for c in verify_hom_lie_2(bad, 2).failures()}
    assert failed & {"c1", "d"}


def test_classical_limits():
    ident = RingAuto.identity(XY)
    s = standard_courant(ident, "classical standard")
    assert verify_courant(s, 2).passed
    p = HomPoissonStructure.from_coefficients(ident, {(0, 1): x * y + 1}, "classical")
    assert verify_courant(build_double(from_poisson(p)), 2).passed
    assert verify_hom_lie_2(to_hom_lie_2(s, 1), 1).passed
