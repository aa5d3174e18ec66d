"""Hom-Courant algebroids, the double of a Hom-Lie bialgebroid, and Hom-Lie 2-algebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

from .algebroid import HomLieAlgebroid
from .bialgebroid import HomLieBialgebroid, verify_bialgebroid
from .exterior import MultiForm, MultiVector, SemilinearMap, _adjugate_over_det, poly_det
from .report import Report, check_cases
from .ring import NonInvertibleError, Poly, RingAuto, SigmaDerivation, monomials, sder_bracket

__all__ = [
    "CourantError", "HomCourantAlgebroid", "build_double", "standard_courant", "double_product",
    "verify_courant", "HomLie2Algebra", "to_hom_lie_2", "verify_hom_lie_2",
]

DEF = "Def. Hom-Courant"
LEM = "Lemma (Hom-Courant)"
HALF = Fraction(1, 2)


class CourantError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class HomCourantAlgebroid:
    """Rank-N bundle with twist ``phi``, form ``B``, products ``table[(a, b)] = e_a . e_b``
    and anchors ``rho(e_a)``.  Products of general sections follow from the
    twisted Leibniz rules in each slot."""

    def __init__(self, phi: SemilinearMap, form, table: dict, anchors, name="courant"):
        self.phi = phi
        self.sigma: RingAuto = phi.twist
        self.variables = v = phi.variables
        self.rank = N = phi.rank
        self.name = name
        if not phi.is_invertible():
            raise NonInvertibleError("the bundle twist must be invertible")
        self.form = [[c if isinstance(c, Poly) else Poly.constant(c, v) for c in row]
                     for row in form]
        if len(self.form) != N or any(len(r) != N for r in self.form):
            raise ValueError("pairing matrix must be N x N")
        for a in range(N):
            for b in range(a + 1, N):
                if self.form[a][b] != self.form[b][a]:
                    raise ValueError(f"pairing is not symmetric at ({a + 1}, {b + 1})")
        det = poly_det(self.form, v)
        if not det.is_constant() or not det:
            raise NonInvertibleError("pairing must have a nonzero constant determinant")
        self._form_inv = _adjugate_over_det(self.form, det.constant_value(), v)
        self.table = {}
        for (a, b), val in table.items():
            if not isinstance(val, MultiVector):
                val = MultiVector.from_vector(val, v)
            if val:
                self.table[(a, b)] = val
        self.anchors = [a if isinstance(a, SigmaDerivation) else SigmaDerivation(self.sigma, a)
                        for a in anchors]
        if len(self.anchors) != N:
            raise ValueError(f"expected {N} anchors")
        self._zero = MultiVector.zero(N, 1, v)
        self._phi_e = [phi.on_basis(a) for a in range(N)]
        self._rho_phi_e = [self.anchor(x) for x in self._phi_e]

    def basis(self, a, coeff=1) -> MultiVector:
        return MultiVector.basis(self.rank, a, self.variables, coeff)

    def section(self, coeffs) -> MultiVector:
        return MultiVector.from_vector(coeffs, self.variables)

    def anchor(self, e: MultiVector) -> SigmaDerivation:
        out = SigmaDerivation.zero(self.sigma)
        for (a,), f in e.components.items():
            out = out + self.anchors[a].scale(f)
        return out

    def pairing(self, e: MultiVector, h: MultiVector) -> Poly:
        out = Poly.zero(self.variables)
        for (a,), f in e.components.items():
            for (b,), g in h.components.items():
                if self.form[a][b]:
                    out = out + f * g * self.form[a][b]
        return out

    def D(self, f) -> MultiVector:
        """``B(D f, e) = rho(e) f``."""
        if not isinstance(f, Poly):
            f = Poly.constant(f, self.variables)
        r = [a(f) for a in self.anchors]
        N = self.rank
        comps = [sum((self._form_inv[a][b] * r[b] for b in range(N)), Poly.zero(self.variables))
                 for a in range(N)]
        return self.section(comps)

    def product(self, e1: MultiVector, e2: MultiVector) -> MultiVector:
        """``(f e_a) . (g e_b) = s(f)s(g) T_ab + s(f) rho(phi e_a)(g) phi e_b
        - s(g) rho(phi e_b)(f) phi e_a + D(f) s(g B_ab)``."""
        s = self.sigma
        out = self._zero
        for (a,), f in e1.components.items():
            sf = s(f)
            Df = None
            for (b,), g in e2.components.items():
                sg = s(g)
                t = self.table.get((a, b))
                if t is not None:
                    out = out + t.scale(sf * sg)
                u = self._rho_phi_e[a](g)
                if u:
                    out = out + self._phi_e[b].scale(sf * u)
                w = self._rho_phi_e[b](f)
                if w:
                    out = out - self._phi_e[a].scale(sg * w)
                if self.form[a][b]:
                    if Df is None:
                        Df = self.D(f)
                    out = out + Df.scale(s(g * self.form[a][b]))
        return out

    def skew(self, e1, e2) -> MultiVector:
        return (self.product(e1, e2) - self.product(e2, e1)).scale(HALF)

    def __repr__(self):
        return f"HomCourantAlgebroid({self.name!r}, rank={self.rank})"


# --- the double ---------------------------------------------------------------

def _split(b: HomLieBialgebroid, e: MultiVector):
    n = b.rank
    vec = e.vector()
    x = MultiVector.from_vector(vec[:n], b.variables)
    xi = MultiForm.from_vector(vec[n:], b.variables)
    return x, xi


def _join(b: HomLieBialgebroid, x: MultiVector, xi: MultiForm) -> MultiVector:
    return MultiVector.from_vector(list(x.vector()) + list(xi.vector()), b.variables)


def double_product(b: HomLieBialgebroid, e1: MultiVector, e2: MultiVector) -> MultiVector:
    """Evaluate ``(x + xi) . (y + eta)`` directly from the defining formula.

    ``([x,y]_A + L*_xi y - i_eta d_* phi^-1 x) + ([xi,eta]_{A*} + L_x eta - i_y d (phi^dagger)^-1 xi)``
    """
    A, S = b.A, b.Astar
    x, xi = _split(b, e1)
    y, eta = _split(b, e2)
    lower = A.bracket(x, y)
    lower = lower + S.lie_derivative_form(xi.dual(), y.dual()).dual()
    lower = lower - S.interior(eta.dual(), S.differential(S.dagger_inv(x.dual()))).dual()
    upper = S.bracket(xi.dual(), eta.dual()).dual()
    upper = upper + A.lie_derivative_form(x, eta)
    upper = upper - A.interior(y, A.differential(A.dagger_inv(xi)))
    return _join(b, lower, upper)


def build_double(b: HomLieBialgebroid, check=True, max_degree=2, name=None) -> HomCourantAlgebroid:
    """``E = A + A*`` with pairing ``xi(y) + eta(x)``, twist ``phi_A + phi_A^dagger``
    and anchor ``a_A + a_{A*}``."""
    if check:
        rep = verify_bialgebroid(b, max_degree)
        if not rep.passed:
            raise CourantError(f"{b.name} is not a Hom-Lie bialgebroid", rep)
    n, v = b.rank, b.variables
    N = 2 * n
    zero = Poly.zero(v)
    P = [[zero] * N for _ in range(N)]
    for r in range(n):
        for c in range(n):
            P[r][c] = b.A.phi.matrix[r][c]
            P[n + r][n + c] = b.Astar.phi.matrix[r][c]
    form = [[int(abs(r - c) == n) for c in range(N)] for r in range(N)]
    basis = [MultiVector.basis(N, a, v) for a in range(N)]
    table = {}
    for a, c in itertools.product(range(N), repeat=2):
        val = double_product(b, basis[a], basis[c])
        if val:
            table[(a, c)] = val
    anchors = list(b.A.anchors) + list(b.Astar.anchors)
    return HomCourantAlgebroid(SemilinearMap(P, b.sigma), form, table, anchors,
                               name or f"double of {b.name}")


def trivial_dual(A: HomLieAlgebroid, name="zero dual") -> HomLieAlgebroid:
    """``A*`` with zero bracket and zero anchor, twisted by ``phi_A^dagger``."""
    dag = A.dagger
    return HomLieAlgebroid(SemilinearMap(dag.matrix, dag.twist), {},
                           [SigmaDerivation.zero(A.sigma)] * A.rank, name)


def standard_courant(sigma: RingAuto, name="standard") -> HomCourantAlgebroid:
    """``phi!TM + phi!T*M`` with ``(x + xi) . (y + eta) = [x,y] + L_x eta - i_y d (phi^dagger)^-1 xi``."""
    from .algebroid import tangent_algebroid
    T = tangent_algebroid(sigma)
    b = HomLieBialgebroid(T, trivial_dual(T))
    return build_double(b, check=False, name=name)


# --- verification --------------------------------------------------------------

def _samples(c: HomCourantAlgebroid, max_degree):
    ms = monomials(c.variables, max_degree)
    return ms, [c.basis(a) for a in range(c.rank)]


def _grid(ms, *pools):
    for base in itertools.product(*pools):
        yield base
        for s in range(len(base)):
            for f in ms[1:]:
                args = list(base)
                args[s] = args[s].scale(f)
                yield tuple(args)


def verify_courant(c: HomCourantAlgebroid, max_degree=3) -> Report:
    rep = Report(f"{c.name} Hom-Courant algebroid", sample_degree=max_degree)
    ms, e = _samples(c, max_degree)
    short = monomials(c.variables, min(max_degree, 1))
    P, B, s = c.phi, c.pairing, c.sigma
    prod = c.product

    def leibniz(e1, e2, e3):
        lhs = prod(P(e1), prod(e2, e3))
        rhs = prod(prod(e1, e2), P(e3)) + prod(P(e2), prod(e1, e3))
        return lhs, rhs

    rep.add(check_cases("i_hom_leibniz", DEF + " (i), phi(e1).(e2.e3) = (e1.e2).phi(e3) + phi(e2).(e1.e3)",
                        ("e1", "e2", "e3"), _grid(short, e, e, e), leibniz))
    rep.add(check_cases("i_morphism", DEF + " (i), phi(e1.e2) = phi(e1).phi(e2)", ("e1", "e2"),
                        _grid(ms, e, e), lambda a, b: (P(prod(a, b)), prod(P(a), P(b)))))

    def twist_cases():
        for a in e:
            for f in ms:
                for g in short:
                    yield a.scale(g), f

    rep.add(check_cases("ii_anchor_twist", DEF + " (ii), rho(phi e) o phi* = phi* o rho(e)",
                        ("e", "f"), twist_cases(),
                        lambda a, f: (c.anchor(P(a))(s(f)), s(c.anchor(a)(f)))))
    rep.add(check_cases("iii_anchor_bracket", DEF + " (iii), rho(e1.e2) = [rho e1, rho e2]",
                        ("e1", "e2"), _grid(ms, e, e),
                        lambda a, b: (c.anchor(prod(a, b)), sder_bracket(c.anchor(a), c.anchor(b)))))

    def square_cases():
        for a in e:
            for f in ms:
                yield (a.scale(f),)
        for a, b in itertools.permutations(e, 2):
            for f in ms:
                yield (a.scale(f) + b,)

    rep.add(check_cases("iv_square", DEF + " (iv), e.e = 1/2 D B(e,e)", ("e",), square_cases(),
                        lambda a: (prod(a, a), c.D(B(a, a)).scale(HALF))))
    rep.add(check_cases("v_form_twist", DEF + " (v), B(phi e1, phi e2) = phi* B(e1,e2)",
                        ("e1", "e2"), _grid(ms, e, e),
                        lambda a, b: (B(P(a), P(b)), s(B(a, b)))))

    def invariance(a, h1, h2):
        lhs = c.anchor(P(a))(B(h1, h2))
        rhs = B(prod(a, h1), P(h2)) + B(P(h1), prod(a, h2))
        return lhs, rhs

    rep.add(check_cases("vi_invariance", DEF + " (vi), rho(phi e)B(h1,h2) = B(e.h1, phi h2) + B(phi h1, e.h2)",
                        ("e", "h1", "h2"), _grid(short, e, e, e), invariance))

    rep.add(check_cases("rho_D", LEM + ", rho o D = 0", ("f",), ((f,) for f in ms),
                        lambda f: (c.anchor(c.D(f)), SigmaDerivation.zero(s))))
    rep.add(check_cases("phi_D", LEM + ", phi_E o D = D o phi*", ("f",), ((f,) for f in ms),
                        lambda f: (P(c.D(f)), c.D(s(f)))))
    rep.add(check_cases("D_leibniz", LEM + ", D(fg) = D(f)phi*(g) + phi*(f)D(g)", ("f", "g"),
                        itertools.product(ms, repeat=2),
                        lambda f, g: (c.D(f * g), c.D(f).scale(s(g)) + c.D(g).scale(s(f)))))

    def fe_cases():
        for f in ms:
            for a in e:
                yield f, a
                for g in short[1:]:
                    yield f, a.scale(g)

    rep.add(check_cases("e_D", LEM + ", e.Df = D B(Df, e)", ("f", "e"), fe_cases(),
                        lambda f, a: (prod(a, c.D(f)), c.D(B(c.D(f), a)))))
    rep.add(check_cases("D_e", LEM + ", Df.e = 0", ("f", "e"), fe_cases(),
                        lambda f, a: (prod(c.D(f), a), c._zero)))

    def feh_cases():
        for f in ms:
            for a, h in itertools.product(e, repeat=2):
                yield f, a, h
                for g in short[1:]:
                    yield f, a.scale(g), h
                    yield f, a, h.scale(g)

    rep.add(check_cases("xfy", LEM + ", e.(fh) = phi*(f) e.h + rho(phi e)(f) phi h",
                        ("f", "e", "h"), feh_cases(),
                        lambda f, a, h: (prod(a, h.scale(f)),
                                         prod(a, h).scale(s(f)) + P(h).scale(c.anchor(P(a))(f)))))
    rep.add(check_cases("xgy", LEM + ", (fe).h = phi*(f) e.h - rho(phi h)(f) phi e + D(f) phi*B(e,h)",
                        ("f", "e", "h"), feh_cases(),
                        lambda f, a, h: (prod(a.scale(f), h),
                                         prod(a, h).scale(s(f)) - P(a).scale(c.anchor(P(h))(f))
                                         + c.D(f).scale(s(B(a, h))))))
    return rep


# --- Hom-Lie 2-algebras -----------------------------------------------------------

@dataclass
class HomLie2Algebra:
    """Two-term complex ``V1 -> V0`` with brackets and twists given as callables.

    ``l2`` takes ``(V0, V0) -> V0``; ``l2_mixed`` takes ``(V0, V1) -> V1``, and
    ``(V1, V0)`` is its negative.  ``samples0``/``samples1`` drive verification.
    """
    l1: Callable
    l2: Callable
    l2_mixed: Callable
    l3: Callable
    phi0: Callable
    phi1: Callable
    samples0: list
    samples1: list
    zero0: object
    zero1: object
    name: str = "hom-lie 2-algebra"

    def bracket(self, a, b):
        """``l2`` on any pair of homogeneous elements."""
        a0, b0 = isinstance(a, MultiVector), isinstance(b, MultiVector)
        if a0 and b0:
            return self.l2(a, b)
        if a0:
            return self.l2_mixed(a, b)
        if b0:
            return -self.l2_mixed(b, a)
        return self.zero1  # V1 x V1 lands in V2 = 0

    def with_l3(self, l3: Callable) -> "HomLie2Algebra":
        return replace(self, l3=l3)


def to_hom_lie_2(c: HomCourantAlgebroid, max_degree=2, check=False) -> HomLie2Algebra:
    """``l1 = D``, ``l2 = [[.,.]]``, ``l2(e, f) = 1/2 B(e, Df)``, ``l3 = -T``."""
    if check:
        rep = verify_courant(c, max_degree)
        if not rep.passed:
            raise CourantError(f"{c.name} is not a Hom-Courant algebroid", rep)
    sixth = Fraction(1, 6)

    def T(e1, e2, e3):
        B, P, sk = c.pairing, c.phi, c.skew
        return (B(sk(e1, e2), P(e3)) + B(sk(e2, e3), P(e1)) + B(sk(e3, e1), P(e2))) * sixth

    ms = monomials(c.variables, max_degree)
    e = [c.basis(a) for a in range(c.rank)]
    samples0 = list(e) + [a.scale(f) for a in e for f in ms[1:]]
    return HomLie2Algebra(
        l1=c.D,
        l2=c.skew,
        l2_mixed=lambda a, f: c.pairing(a, c.D(f)) * HALF,
        l3=lambda a, b, d: -T(a, b, d),
        phi0=c.phi,
        phi1=c.sigma,
        samples0=samples0,
        samples1=ms,
        zero0=c._zero,
        zero1=Poly.zero(c.variables),
        name=f"{c.name} Hom-Lie 2-algebra",
    )


def verify_hom_lie_2(t: HomLie2Algebra, max_degree=None) -> Report:
    """Compatibility squares and conditions (a)-(d) on the sample elements.

    Multi-slot conditions use basis-like samples in all slots except one,
    which runs over every sample (one slot at a time).  Condition (d) is
    homogeneous in ``l3`` and the costliest, so its varying slot only takes
    samples with linear coefficients."""
    rep = Report(t.name, sample_degree=max_degree)
    D2 = "Def. Hom-Lie 2-algebra"
    V0, V1 = t.samples0, t.samples1
    l1, l2, l3, p0, p1 = t.l1, t.bracket, t.l3, t.phi0, t.phi1
    base = [x for x in V0 if max((c.degree() for _, c in x.items()), default=0) == 0]
    extra = [x for x in V0 if x not in base]

    linear = [x for x in extra if max(c.degree() for _, c in x.items()) <= 1]

    def grid(k, pool=extra):
        for tup in itertools.product(base, repeat=k):
            yield tup
        for tup in itertools.product(base, repeat=k - 1):
            for pos in range(k):
                for x in pool:
                    yield tup[:pos] + (x,) + tup[pos:]

    rep.add(check_cases("phi0_l1", D2 + ", phi0 o l1 = l1 o phi1", ("m",), ((m,) for m in V1),
                        lambda m: (p0(l1(m)), l1(p1(m)))))
    rep.add(check_cases("phi0_l2", D2 + ", phi0 o l2 = l2 o (phi0 x phi0)", ("x", "y"), grid(2),
                        lambda x, y: (p0(l2(x, y)), l2(p0(x), p0(y)))))
    rep.add(check_cases("phi1_l2", D2 + ", phi1 o l2 = l2 o (phi0 x phi1)", ("x", "m"),
                        ((x, m) for x in V0 for m in V1),
                        lambda x, m: (p1(l2(x, m)), l2(p0(x), p1(m)))))
    rep.add(check_cases("l3_phi0", D2 + ", l3 o phi0 = phi1 o l3", ("x", "y", "z"), grid(3),
                        lambda x, y, z: (l3(p0(x), p0(y), p0(z)), p1(l3(x, y, z)))))
    rep.add(check_cases("l3_skew", D2 + ", l3 is skew-symmetric", ("x", "y", "z"), grid(3),
                        lambda x, y, z: ((l3(x, y, z), l3(x, y, z)),
                                         (-l3(y, x, z), -l3(x, z, y)))))
    rep.add(check_cases("a_skew", D2 + " (a), l2(x,y) = -l2(y,x), l2(x,m) = -l2(m,x)",
                        ("x", "y", "m"),
                        ((x, y, m) for x, y in grid(2) for m in V1[:2]),
                        lambda x, y, m: ((l2(x, y), l2(x, m)), (-l2(y, x), -l2(m, x)))))
    rep.add(check_cases("b_l1", D2 + " (b), l1 l2(x,m) = l2(x, l1 m), l2(l1 m, n) = l2(m, l1 n)",
                        ("x", "m", "n"),
                        ((x, m, n) for x in V0 for m in V1 for n in V1[:4]),
                        lambda x, m, n: ((l1(l2(x, m)), l2(l1(m), n)),
                                         (l2(x, l1(m)), l2(m, l1(n))))))

    def c1(x, y, z):
        lhs = l1(l3(x, y, z))
        rhs = l2(p0(x), l2(y, z)) + l2(p0(y), l2(z, x)) + l2(p0(z), l2(x, y))
        return lhs, rhs

    rep.add(check_cases("c1", D2 + " (c1), l1 l3(x,y,z) = l2(phi0 x, l2(y,z)) + c.p.",
                        ("x", "y", "z"), grid(3), c1))

    def c2(x, y, m):
        lhs = l3(x, y, l1(m))
        rhs = l2(p0(x), l2(y, m)) + l2(p0(y), l2(m, x)) + l2(p1(m), l2(x, y))
        return lhs, rhs

    rep.add(check_cases("c2", D2 + " (c2), l3(x,y,l1 m) = l2(phi0 x, l2(y,m)) + ...",
                        ("x", "y", "m"), ((x, y, m) for x, y in grid(2) for m in V1), c2))

    def d(w, x, y, z):
        P2 = lambda u: p0(p0(u))
        lhs = (l3(l2(w, x), p0(y), p0(z)) + l2(l3(w, x, z), P2(y))
               + l3(p0(w), l2(x, z), p0(y)) + l3(l2(w, z), p0(x), p0(y)))
        rhs = (l2(l3(w, x, y), P2(z)) + l3(l2(w, y), p0(x), p0(z)) + l3(p0(w), l2(x, y), p0(z))
               + l2(P2(w), l3(x, y, z)) + l2(l3(w, y, z), P2(x)) + l3(p0(w), l2(y, z), p0(x)))
        return lhs, rhs

    rep.add(check_cases("d", D2 + " (d), the l3 coherence identity", ("w", "x", "y", "z"),
                        grid(4, linear), d))
    return rep
