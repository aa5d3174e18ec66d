"""Hom-Poisson tensors on the tangent Hom-Lie algebroid and the cotangent algebroid."""
from __future__ import annotations

import itertools
from typing import Callable

from .algebroid import HomLieAlgebroid, mv_interior, tangent_algebroid
from .exterior import MultiForm, MultiVector, SemilinearMap, pair
from .homlie import HomLieAlgebra
from .identities import hom_poisson_jacobiator
from .report import Check, Report, check_cases
from .ring import Poly, RingAuto, monomials

__all__ = [
    "PoissonError", "HomPoissonStructure", "verify_poisson", "poisson_bracket", "pi_sharp",
    "cotangent_algebroid", "linear_poisson_on_dual", "verify_purely_hom_poisson",
]

DEF = "Def. Hom-Poisson tensor"
PURE = "Def. purely Hom-Poisson algebra"


class PoissonError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class HomPoissonStructure:
    """A bivector ``pi`` on the tangent Hom-Lie algebroid of ``sigma``."""

    def __init__(self, base: HomLieAlgebroid, pi: MultiVector, name="poisson"):
        if pi.grade != 2 or pi.rank != base.rank:
            raise ValueError("pi must be a bivector on the base algebroid")
        self.base = base
        self.pi = pi
        self.name = name

    @classmethod
    def from_coefficients(cls, sigma: RingAuto, coeffs: dict, name="poisson"):
        """``coeffs`` maps ``(mu, nu)`` (0-based) to the coefficient of ``D_mu ^ D_nu``."""
        base = tangent_algebroid(sigma)
        pi = MultiVector.zero(base.rank, 2, base.variables)
        for (mu, nu), c in coeffs.items():
            pi = pi + MultiVector.basis(base.rank, (mu, nu), base.variables, c)
        return cls(base, pi, name)

    @property
    def sigma(self):
        return self.base.sigma

    @property
    def variables(self):
        return self.base.variables

    def coefficient(self, mu, nu) -> Poly:
        """``pi^{mu nu} = pi(e^mu, e^nu)``."""
        if mu == nu:
            return Poly.zero(self.variables)
        c = self.pi.coeff((min(mu, nu), max(mu, nu)))
        return c if mu < nu else -c

    def evaluate(self, xi: MultiForm, eta: MultiForm) -> Poly:
        return pair(xi.wedge(eta), self.pi)

    def bracket(self, f, g) -> Poly:
        d = self.base.differential
        return self.evaluate(d(f), d(g))

    def sharp(self, xi: MultiForm) -> MultiVector:
        return mv_interior(xi, self.pi)

    def __repr__(self):
        return f"HomPoissonStructure({self.name!r}, pi={self.pi})"


def poisson_bracket(p: HomPoissonStructure, f: Poly, g: Poly) -> Poly:
    return p.bracket(f, g)


def pi_sharp(p: HomPoissonStructure, xi: MultiForm) -> MultiVector:
    return p.sharp(xi)


def verify_poisson(p: HomPoissonStructure, max_degree=2) -> Report:
    """Schouten square, Ad-invariance, and the Jacobiator formula cross-check."""
    alg, pi = p.base, p.pi
    rep = Report(f"{p.name} Hom-Poisson tensor", sample_degree=max_degree)
    ms = monomials(p.variables, max_degree)
    pp = alg.schouten(pi, pi)
    triples = list(itertools.combinations(ms, 3))
    d = alg.differential

    def contraction(f, g, h):
        if pp.grade > alg.rank:
            return Poly.zero(p.variables)
        return alg.interior(pp, d(f).wedge(d(g)).wedge(d(h))).scalar_value()

    c = check_cases("schouten_square", DEF + ", [[pi,pi]] = 0", ("f", "g", "h"), triples,
                    lambda f, g, h: (contraction(f, g, h), Poly.zero(p.variables)))
    if c.passed and pp.grade <= alg.rank and pp:
        c = Check(c.axiom, c.anchor, False, {"assignment": "coefficients",
                                             "lhs": str(pp), "rhs": "0"}, c.cases)
    rep.add(c)
    rep.add(Check("ad_invariance", DEF + ", Ad(pi) = pi", alg.phi(pi) == pi,
                  None if alg.phi(pi) == pi else {"assignment": "pi", "lhs": str(alg.phi(pi)),
                                                  "rhs": str(pi)}, 1))
    rep.add(check_cases("jacobiator_formula", "Cor. i_{[[pi,pi]]}(df^dg^dh) formula",
                        ("f", "g", "h"), triples,
                        lambda f, g, h: (contraction(f, g, h),
                                         hom_poisson_jacobiator(alg, pi, f, g, h))))
    return rep


def verify_purely_hom_poisson(variables, bracket, sigma: RingAuto, max_degree=2,
                              name="bracket") -> Report:
    """Hom-Lie axioms of ``bracket`` with twist ``sigma`` plus the Leibniz rule (iii).

    ``bracket`` is a callable on Poly pairs or a :class:`HomPoissonStructure`.
    """
    if isinstance(bracket, HomPoissonStructure):
        br: Callable = bracket.bracket
    else:
        br = bracket
    ms = monomials(variables, max_degree)
    rep = Report(f"{name} purely Hom-Poisson", sample_degree=max_degree)
    pairs = list(itertools.product(ms, repeat=2))
    triples = list(itertools.combinations_with_replacement(ms, 3))
    rep.add(check_cases("skew", PURE + " (ii), skew-symmetry", ("f", "g"), pairs,
                        lambda f, g: (br(f, g), -br(g, f))))
    rep.add(check_cases("morphism", PURE + " (ii), phi*{f,g} = {phi* f, phi* g}", ("f", "g"),
                        pairs, lambda f, g: (sigma(br(f, g)), br(sigma(f), sigma(g)))))

    def jac(f, g, h):
        lhs = br(br(f, g), sigma(h)) + br(br(g, h), sigma(f)) + br(br(h, f), sigma(g))
        return lhs, Poly.zero(variables)

    rep.add(check_cases("hom_jacobi", PURE + " (ii), Hom-Jacobi", ("f", "g", "h"),
                        triples, jac))

    def leibniz(x, y, z):
        return br(x, y * z), sigma(y) * br(x, z) + br(x, y) * sigma(z)

    rep.add(check_cases("leibniz", PURE + " (iii), {x,yz} = phi(y){x,z} + {x,y}phi(z)",
                        ("x", "y", "z"), itertools.product(ms, repeat=3), leibniz))
    return rep


def cotangent_algebroid(p: HomPoissonStructure, check=True, name="cotangent") -> HomLieAlgebroid:
    """``[xi, eta] = L_{pi# xi} eta - L_{pi# eta} xi - d pi(xi, eta)`` with anchor ``pi#``."""
    if check:
        rep = verify_poisson(p)
        if not rep.passed:
            raise PoissonError(f"{p.name} is not a Hom-Poisson tensor", rep)
    T = p.base
    n, v = T.rank, T.variables
    dag = T.dagger
    e = [MultiForm.basis(n, mu, v) for mu in range(n)]
    anchors = [[p.coefficient(mu, nu) for nu in range(n)] for mu in range(n)]
    brackets = {}
    for mu, nu in itertools.combinations(range(n), 2):
        val = (T.lie_derivative_form(p.sharp(e[mu]), e[nu])
               - T.lie_derivative_form(p.sharp(e[nu]), e[mu])
               - T.differential(p.coefficient(mu, nu)))
        if val:
            brackets[(mu, nu)] = val.dual()
    return HomLieAlgebroid(SemilinearMap(dag.matrix, dag.twist), brackets, anchors, name)


def koszul_bracket(p: HomPoissonStructure, xi: MultiForm, eta: MultiForm) -> MultiForm:
    """The cotangent bracket evaluated directly on arbitrary 1-forms."""
    T = p.base
    return (T.lie_derivative_form(p.sharp(xi), eta) - T.lie_derivative_form(p.sharp(eta), xi)
            - T.differential(p.evaluate(xi, eta)))


def linear_poisson_on_dual(g: HomLieAlgebra, variables=None, name="linear") -> HomPoissonStructure:
    """``{f,g}(xi) = <xi, [df(xi), dg(xi)]>`` on polynomials over ``g*``.

    Coordinates ``x_k`` are the basis of ``g`` read as linear functions, so the
    twist acts by ``sigma(x_k) = Phi(e_k)`` and ``pi^{ij} = sum_k c_ij^k x_k``.
    """
    n = g.dim
    if not g.is_regular():
        raise ValueError("the twist must be invertible")
    v = list(variables) if variables else [f"x{k + 1}" for k in range(n)]
    xs = Poly.gens(v)
    images = []
    for k in range(n):
        col = g.twist(g.basis(k))
        images.append(sum((xs[j] * col[j] for j in range(n)), Poly.zero(v)))
    sigma = RingAuto(v, images)
    coeffs = {}
    for i, j in itertools.combinations(range(n), 2):
        c = g.c(i, j)
        val = sum((xs[k] * c[k] for k in range(n)), Poly.zero(v))
        if val:
            coeffs[(i, j)] = val
    return HomPoissonStructure.from_coefficients(sigma, coeffs, name)
