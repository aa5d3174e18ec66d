import itertools

import pytest

import catalog_algebroids as ca
from homalg.algebroid import verify_algebroid
from homalg.homlie import HomLieAlgebra
from homalg.poisson import (HomPoissonStructure, PoissonError, cotangent_algebroid,
                            koszul_bracket, linear_poisson_on_dual, verify_poisson,
                            verify_purely_hom_poisson)
from homalg.exterior import MultiForm
from homalg.ring import Poly, RingAuto, monomials

XY = ["x", "y"]
XYZ = ["x", "y", "z"]
x, y = Poly.gens(XY)
X3, Y3, Z3 = Poly.gens(XYZ)


def both(p, degree=2):
    return (verify_poisson(p, degree).passed,
            verify_purely_hom_poisson(p.variables, p, p.sigma, degree, p.name).passed)


def instances():
    """(name, structure, expected verdict) covering passing and failing cases."""
    s2 = RingAuto(XY, [2 * x, 2 * y])
    yield "zero", HomPoissonStructure.from_coefficients(s2, {}, "zero"), True
    for lam in (1, 2, 3):
        yield f"xy lam={lam}", ca.xy_poisson(lam), True
    yield "x+y non-invariant", HomPoissonStructure.from_coefficients(s2, {(0, 1): x + y}), False
    yield "3-var failing", HomPoissonStructure.from_coefficients(
        RingAuto.identity(XYZ), {(0, 1): X3 ** 2, (1, 2): Y3 ** 2}, "3-var"), False
    g = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 3]])
    yield "linear dim 2", linear_poisson_on_dual(g), True
    h = HomLieAlgebra(3, {(0, 1): [0, 0, 1]}, [[2, 0, 0], [0, 5, 0], [0, 0, 10]])
    yield "linear heisenberg", linear_poisson_on_dual(h), True


CASES = list(instances())


@pytest.mark.parametrize("name,p,expected", CASES, ids=[c[0] for c in CASES])
def test_equivalence_of_the_two_checkers(name, p, expected):
    assert both(p) == (expected, expected)


def test_failing_3var_witnesses():
    _, p, _ = next(c for c in CASES if c[0] == "3-var failing")
    assert [c.axiom for c in verify_poisson(p).failures()] == ["schouten_square"]
    rep = verify_purely_hom_poisson(p.variables, p, p.sigma)
    assert "hom_jacobi" in [c.axiom for c in rep.failures()]
    assert rep.get("hom_jacobi").witness["lhs"] != "0"


def test_non_invariant_fails_ad_invariance_and_morphism():
    _, p, _ = next(c for c in CASES if c[0] == "x+y non-invariant")
    assert [c.axiom for c in verify_poisson(p).failures()] == ["ad_invariance"]
    assert [c.axiom for c in verify_purely_hom_poisson(XY, p, p.sigma).failures()] == ["morphism"]


def test_bracket_values():
    p = ca.xy_poisson(2)
    # {x, y} = pi^{12} = xy; sigma-derivations in each slot give the twisted Leibniz rule
    assert p.bracket(x, y) == x * y
    assert p.bracket(y, x) == -x * y
    assert p.bracket(x, x) == 0
    assert p.coefficient(0, 1) == x * y and p.coefficient(1, 0) == -x * y


def test_broken_leibniz_bracket_fails_only_leibniz():
    V = ["x"]
    t = Poly.var("x", V)

    def br(f, g):
        # Witt bracket: a Lie bracket that is not a biderivation
        return f * g.diff(0) - g * f.diff(0)

    rep = verify_purely_hom_poisson(V, br, RingAuto.identity(V), 2, "witt")
    assert [c.axiom for c in rep.failures()] == ["leibniz"]
    assert br(t, t ** 2) == t ** 2


def test_linear_poisson_on_dual():
    ab = linear_poisson_on_dual(HomLieAlgebra(2, {}, [[2, 0], [0, 3]]))
    assert not ab.pi
    g = HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 3]])
    L = linear_poisson_on_dual(g)
    x1, x2 = Poly.gens(L.variables)
    assert L.bracket(x1, x2) == x2
    # the twist acts on coordinates through Phi
    assert L.sigma(x2) == 3 * x2


@pytest.mark.parametrize("name,p,expected", [c for c in CASES if c[2]], ids=[c[0] for c in CASES if c[2]])
def test_cotangent_of_passing_instances(name, p, expected):
    rep = verify_algebroid(cotangent_algebroid(p), 3)
    assert rep.passed, str(rep)


def test_cotangent_rejects_failing():
    _, p, _ = next(c for c in CASES if c[0] == "3-var failing")
    with pytest.raises(PoissonError) as exc:
        cotangent_algebroid(p)
    assert not exc.value.report.passed


def test_cotangent_bracket_is_koszul_bracket():
    p = ca.xy_poisson(2)
    C = cotangent_algebroid(p)
    ms = monomials(XY, 2)
    for (i, f), (j, g) in itertools.product(itertools.product(range(2), ms), repeat=2):
        xi, eta = MultiForm.basis(2, i, XY, f), MultiForm.basis(2, j, XY, g)
        assert C.bracket(xi.dual(), eta.dual()) == koszul_bracket(p, xi, eta).dual()


def test_cotangent_anchor_is_pi_sharp():
    p = ca.xy_poisson(2)
    C = cotangent_algebroid(p)
    # a(dx) = pi#(dx) = xy D_y
    assert C.anchor(C.basis(0))(y) == x * y
    assert C.anchor(C.basis(0))(x) == 0
