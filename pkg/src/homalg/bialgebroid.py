"""Hom-Lie bialgebroids: compatibility, mixed identities, induced Poisson tensor, duality."""
from __future__ import annotations

import itertools

from .algebroid import HomLieAlgebroid, tangent_algebroid, verify_algebroid
from .exterior import MultiForm, MultiVector, SemilinearMap, pair
from .homlie import PurelyHomLieBialgebra
from .poisson import HomPoissonStructure, cotangent_algebroid
from .report import Report, check_cases
from .ring import Poly, RingAuto, SigmaDerivation, monomials

__all__ = [
    "BialgebroidError", "HomLieBialgebroid", "verify_bialgebroid", "from_poisson",
    "from_bialgebra", "induced_poisson", "induced_poisson_opposite", "dual_bialgebroid",
]

DEF = "Def. Hom-Lie bialgebroid"


class BialgebroidError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class HomLieBialgebroid:
    """A pair ``(A, A*)``; sections of ``A*`` are stored as multivectors of ``Astar``."""

    def __init__(self, A: HomLieAlgebroid, Astar: HomLieAlgebroid, name="bialgebroid"):
        if A.rank != Astar.rank or A.variables != Astar.variables:
            raise BialgebroidError("A and A* must share rank and base ring")
        if A.sigma != Astar.sigma:
            raise BialgebroidError("A and A* must share the base automorphism")
        if [list(r) for r in Astar.phi.matrix] != [list(r) for r in A.dagger.matrix]:
            raise BialgebroidError("the twist of A* must be the dagger of the twist of A")
        self.A = A
        self.Astar = Astar
        self.name = name

    @property
    def rank(self):
        return self.A.rank

    @property
    def variables(self):
        return self.A.variables

    @property
    def sigma(self):
        return self.A.sigma

    def d_star(self, X) -> MultiVector:
        """Differential of ``A*`` acting on multivectors of ``A`` (forms of ``A*``)."""
        if isinstance(X, (Poly, int)):
            return self.Astar.differential(X).dual()
        return self.Astar.differential(X.dual()).dual()

    def lie_star(self, xi: MultiForm, x: MultiVector) -> MultiVector:
        """Lie derivative of ``A*`` along the 1-form ``xi`` acting on the section ``x``."""
        return self.Astar.lie_derivative_form(xi.dual(), x.dual()).dual()

    def poisson_coefficients(self):
        """``pi^{mu nu} = sum_i a_i^mu b_i^nu``, so that ``pi(df, dg) = <df, d_* g>``."""
        a = self.A.anchor_matrix()
        b = self.Astar.anchor_matrix()
        m = len(self.variables)
        zero = Poly.zero(self.variables)
        return [[sum((a[i][mu] * b[i][nu] for i in range(self.rank)), zero)
                 for nu in range(m)] for mu in range(m)]

    def poisson_bracket(self, f, g) -> Poly:
        """``{f, g} = <df, d_* g>``, the bracket of :func:`induced_poisson`."""
        return pair(self.A.differential(f), self.d_star(g))

    def __repr__(self):
        return f"HomLieBialgebroid({self.name!r}, rank={self.rank})"


def verify_bialgebroid(b: HomLieBialgebroid, max_degree=3, check_constituents=True) -> Report:
    A, S = b.A, b.Astar
    if check_constituents:
        for alg, label in ((A, "A"), (S, "A*")):
            r = verify_algebroid(alg, max_degree)
            if not r.passed:
                raise BialgebroidError(f"constituent {label} is not a Hom-Lie algebroid", r)
    rep = Report(f"{b.name} Hom-Lie bialgebroid", sample_degree=max_degree)
    ms = monomials(b.variables, max_degree)
    e = [A.basis(i) for i in range(b.rank)]

    def pairs():
        for i, j in itertools.combinations(range(b.rank), 2):
            for f in ms:
                yield e[i].scale(f), e[j]
                if f != ms[0]:
                    yield e[i], e[j].scale(f)
        for i in range(b.rank):
            for f in ms[1:]:
                yield e[i], e[i].scale(f)

    def liebi(x, y):
        lhs = b.d_star(A.bracket(x, y))
        rhs = A.schouten(b.d_star(x), A.phi(y)) + A.schouten(A.phi(x), b.d_star(y))
        return lhs, rhs

    rep.add(check_cases("compatibility", DEF + ", d_*[x,y] = [[d_*x, phi y]] + [[phi x, d_*y]]",
                        ("x", "y"), pairs(), liebi))

    def l24_cases():
        for f in ms:
            for x in e:
                yield f, x
                for g in ms[1:len(b.variables) + 1]:
                    yield f, x.scale(g)

    rep.add(check_cases("lie_derivative_df", "Lemma, L_{df} x = [x, d_* f]_A", ("f", "x"),
                        l24_cases(),
                        lambda f, x: (b.lie_star(A.differential(f), x),
                                      A.bracket(x, b.d_star(f)))))
    small = monomials(b.variables, min(max_degree, 2))
    # pi# = a_A o a_{A*}^* sends df to a_A(d_* f), so pi#(delta f)(g) = <dg, d_* f>
    rep.add(check_cases("d_star_bracket", "Cor., [d_*f, d_*g]_A = d_*(pi#(delta f) g)",
                        ("f", "g"), itertools.product(small, repeat=2),
                        lambda f, g: (A.bracket(b.d_star(f), b.d_star(g)),
                                      b.d_star(A.anchor(b.d_star(f))(g)))))
    return rep


def from_poisson(p: HomPoissonStructure, name=None) -> HomLieBialgebroid:
    """``(tangent, cotangent)`` pair of a Hom-Poisson manifold."""
    return HomLieBialgebroid(p.base, cotangent_algebroid(p), name or f"{p.name} bialgebroid")


def from_bialgebra(b: PurelyHomLieBialgebra, name="point") -> HomLieBialgebroid:
    """A purely Hom-Lie bialgebra viewed as a bialgebroid over a point (no variables)."""
    sigma = RingAuto([], [])

    def algebroid(g, label):
        brackets = {(i, j): list(g.c(i, j)) for i, j in itertools.combinations(range(g.dim), 2)}
        anchors = [SigmaDerivation.zero(sigma)] * g.dim
        return HomLieAlgebroid(SemilinearMap(g.phi, sigma), brackets, anchors, label)

    return HomLieBialgebroid(algebroid(b.g, "g"), algebroid(b.gstar, "g*"), name)


def _pi_from_matrix(b, coeffs, name):
    T = tangent_algebroid(b.sigma)
    m = len(b.variables)
    for mu in range(m):
        for nu in range(m):
            if coeffs[mu][nu] != -coeffs[nu][mu]:
                raise BialgebroidError(
                    f"induced bivector is not skew at ({mu + 1}, {nu + 1})")
    pi = MultiVector.zero(m, 2, b.variables)
    for mu, nu in itertools.combinations(range(m), 2):
        pi = pi + MultiVector.basis(m, (mu, nu), b.variables, coeffs[mu][nu])
    return HomPoissonStructure(T, pi, name)


def induced_poisson(b: HomLieBialgebroid, name=None) -> HomPoissonStructure:
    """Bivector with ``{f,g} = <df, d_* g>``; recovers ``pi`` from :func:`from_poisson`.

    Read literally, the composite ``a_A o a_{A*}^*`` gives ``<dg, d_* f>``, the
    opposite sign; that one is :func:`induced_poisson_opposite`.
    """
    return _pi_from_matrix(b, b.poisson_coefficients(), name or f"{b.name} induced")


def induced_poisson_opposite(b: HomLieBialgebroid, name=None) -> HomPoissonStructure:
    """The negative of :func:`induced_poisson`."""
    return _pi_from_matrix(dual_bialgebroid(b), dual_bialgebroid(b).poisson_coefficients(),
                           name or f"{b.name} opposite")


def dual_bialgebroid(b: HomLieBialgebroid, name=None) -> HomLieBialgebroid:
    return HomLieBialgebroid(b.Astar, b.A, name or f"{b.name} dual")
