"""Hom-Lie algebroids over a polynomial base.

A ``HomLieAlgebroid`` is stored through its structure functions on a frame
``e_1..e_n``:

* ``phi`` -- invertible sigma-semilinear bundle map,
* ``brackets[(i, j)]`` -- the section ``[e_i, e_j]`` for ``i < j``,
* ``anchors[i]`` -- the (sigma, sigma)-derivation ``a(e_i)``.

Everything else (bracket of arbitrary sections, the differential on forms,
the Hom-Schouten bracket, interior products and Lie derivatives) is derived
from that data.
"""
from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .exterior import (GradeError, MultiForm, MultiVector, SemilinearMap, contract,
                       interior as _interior, pair)
from .homlie import HomLieAlgebra
from .report import Check, Report, check_cases
from .ring import (NonInvertibleError, Poly, RingAuto, SigmaDerivation, monomials,
                   sder_ad, sder_bracket)

__all__ = [
    "HomLieAlgebroid",
    "ActionError",
    "PreconditionError",
    "DGCAError",
    "tangent_algebroid",
    "action_algebroid",
    "twist_lie_algebroid",
    "reconstruct_from_differential",
    "verify_algebroid",
    "wedge_all",
    "mv_interior",
]


class ActionError(ValueError):
    """A Hom-Lie algebra action fails one of its defining identities."""


class PreconditionError(ValueError):
    """Input data does not satisfy the hypotheses of a construction."""


class DGCAError(ValueError):
    """Supplied operator is not a twisted differential graded commutative algebra."""


def wedge_all(factors, rank, variables, kind=MultiVector):
    out = kind.scalar(Poly.one(variables), rank)
    for f in factors:
        out = out.wedge(f)
    return out


def mv_interior(xi: MultiForm, X: MultiVector) -> MultiVector:
    """Untwisted contraction of a form into a multivector, ``<eta, c> = <xi ^ eta, X>``."""
    return contract(xi.dual(), X.dual()).dual()


class HomLieAlgebroid:

    def __init__(self, phi: SemilinearMap, brackets: dict | None = None,
                 anchors: Sequence | None = None, name: str = "algebroid"):
        if not phi.is_invertible():
            raise NonInvertibleError("the bundle twist must be invertible with constant determinant")
        self.phi = phi
        self.sigma: RingAuto = phi.twist
        self.variables = phi.variables
        self.rank = n = phi.rank
        self.name = name
        v = self.variables

        self.brackets: dict = {}
        for (i, j), val in (brackets or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index ({i + 1}, {j + 1}) out of range for rank {n}")
            if not isinstance(val, MultiVector):
                val = MultiVector.from_vector(val, v)
            if val.rank != n or val.grade != 1:
                raise GradeError("bracket values must be sections of rank-n bundle")
            if i == j:
                if val:
                    raise ValueError(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            if i > j:
                i, j, val = j, i, -val
            if (i, j) in self.brackets:
                raise ValueError(f"bracket ({i + 1}, {j + 1}) given twice")
            if val:
                self.brackets[(i, j)] = val

        if anchors is None:
            anchors = [SigmaDerivation.zero(self.sigma)] * n
        if len(anchors) != n:
            raise ValueError(f"expected {n} anchors, got {len(anchors)}")
        self.anchors = [a if isinstance(a, SigmaDerivation) else SigmaDerivation(self.sigma, a)
                        for a in anchors]
        for a in self.anchors:
            if a.sigma != self.sigma:
                raise ValueError("anchor twisted by a different automorphism")

        self.phi_inv = phi.inverse()
        self.dagger = phi.dagger()
        self.dagger_inv = self.dagger.inverse()
        self._zero1 = MultiVector.zero(n, 1, v)
        self._phi_e = [phi.on_basis(i) for i in range(n)]
        self._anchor_phi_e = [self.anchor(x) for x in self._phi_e]
        self._inv_e = [self.phi_inv.on_basis(i) for i in range(n)]
        self._inv_brackets: dict = {}
        self._inv_images: dict = {}

    # --- frame ------------------------------------------------------------

    def basis(self, i, coeff=1) -> MultiVector:
        return MultiVector.basis(self.rank, i, self.variables, coeff)

    def form_basis(self, i, coeff=1) -> MultiForm:
        return MultiForm.basis(self.rank, i, self.variables, coeff)

    def section(self, coeffs) -> MultiVector:
        return MultiVector.from_vector(coeffs, self.variables)

    def function(self, f) -> Poly:
        return f if isinstance(f, Poly) else Poly.constant(f, self.variables)

    def structure(self, i, j) -> MultiVector:
        if i == j:
            return self._zero1
        if i < j:
            return self.brackets.get((i, j), self._zero1)
        return -self.brackets.get((j, i), self._zero1)

    def samples(self, max_degree=3) -> list:
        return monomials(self.variables, max_degree)

    # --- anchor and bracket -------------------------------------------------

    def anchor(self, x: MultiVector) -> SigmaDerivation:
        coeffs = [Poly.zero(self.variables)] * len(self.variables)
        for (i,), f in x.components.items():
            a = self.anchors[i].coeffs
            coeffs = [c + f * h for c, h in zip(coeffs, a)]
        return SigmaDerivation(self.sigma, coeffs)

    def anchor_apply(self, x: MultiVector, f: Poly) -> Poly:
        return self.anchor(x)(f)

    def bracket(self, x: MultiVector, y: MultiVector) -> MultiVector:
        """``[f e_i, g e_j] = s(f)s(g)c_ij + s(f) a(phi e_i)(g) phi e_j - s(g) a(phi e_j)(f) phi e_i``."""
        if x.grade != 1 or y.grade != 1:
            raise GradeError("bracket of sections needs grade-1 arguments")
        sigma = self.sigma
        out = self._zero1
        for (i,), f in x.components.items():
            sf = sigma(f)
            for (j,), g in y.components.items():
                sg = sigma(g)
                c = self.structure(i, j)
                if c:
                    out = out + c.scale(sf * sg)
                t = self._anchor_phi_e[i](g)
                if t:
                    out = out + self._phi_e[j].scale(sf * t)
                t = self._anchor_phi_e[j](f)
                if t:
                    out = out - self._phi_e[i].scale(sg * t)
        return out

    # --- differential -------------------------------------------------------

    def _as_form(self, xi) -> MultiForm:
        if isinstance(xi, MultiForm):
            return xi
        if isinstance(xi, (Poly, int)):
            return MultiForm.scalar(self.function(xi), self.rank)
        raise TypeError(f"expected a form or a function, got {type(xi).__name__}")

    def _inv_image(self, J) -> MultiVector:
        got = self._inv_images.get(J)
        if got is None:
            got = self.phi_inv(MultiVector.basis(self.rank, J, self.variables)) if J else \
                MultiVector.scalar(Poly.one(self.variables), self.rank)
            self._inv_images[J] = got
        return got

    def _inv_bracket(self, a, b) -> MultiVector:
        key = (a, b)
        got = self._inv_brackets.get(key)
        if got is None:
            got = self.bracket(self._inv_e[a], self._inv_e[b])
            self._inv_brackets[key] = got
        return got

    def differential(self, xi) -> MultiForm:
        xi = self._as_form(xi)
        n, k, v = self.rank, xi.grade, self.variables
        if k >= n:
            return MultiForm._new(n, k + 1, v, {})
        dag_xi = self.dagger(xi) if k else None
        comps = {}
        for I in itertools.combinations(range(n), k + 1):
            val = Poly.zero(v)
            for r, ir in enumerate(I):
                rest = I[:r] + I[r + 1:]
                inner = pair(xi, self._inv_image(rest))
                if inner:
                    t = self.anchors[ir](inner)
                    val = val - t if r & 1 else val + t
            if k:
                for r, s in itertools.combinations(range(k + 1), 2):
                    br = self._inv_bracket(I[r], I[s])
                    if not br:
                        continue
                    rest = tuple(I[t] for t in range(k + 1) if t != r and t != s)
                    Y = br.wedge(MultiVector.basis(n, rest, v)) if rest else br
                    t = pair(dag_xi, Y)
                    val = val - t if (r + s) & 1 else val + t
            if val:
                comps[I] = val
        return MultiForm._new(n, k + 1, v, comps)

    # --- Hom-Schouten bracket ----------------------------------------------

    def _as_mv(self, X) -> MultiVector:
        if isinstance(X, MultiVector):
            return X
        if isinstance(X, (Poly, int)):
            return MultiVector.scalar(self.function(X), self.rank)
        raise TypeError(f"expected a multivector or a function, got {type(X).__name__}")

    def _factors(self, X: MultiVector):
        """Split ``X`` into terms ``[f e_i1, e_i2, ...]`` (coefficient on the first factor)."""
        out = []
        for I, f in X.components.items():
            facs = [self.basis(I[0], f)] + [self.basis(i) for i in I[1:]]
            out.append(facs)
        return out

    def _zero_mv(self, grade):
        return MultiVector._new(self.rank, grade, self.variables, {})

    def _schouten_fn(self, f: Poly, Y: MultiVector) -> MultiVector:
        """``[[f, y_1 ^ ... ^ y_q]] = sum_j (-1)^j a(phi y_j)(f) phi(y_1 ^ .. ^y_j^ .. ^ y_q)``."""
        q = Y.grade
        out = self._zero_mv(q - 1)
        for facs in self._factors(Y):
            imgs = [self.phi(y) for y in facs]
            for j, y in enumerate(facs):
                t = self.anchor(imgs[j])(f)
                if not t:
                    continue
                rest = wedge_all(imgs[:j] + imgs[j + 1:], self.rank, self.variables)
                term = rest.scale(t)
                out = out - term if j % 2 == 0 else out + term
        return out

    def schouten(self, X, Y) -> MultiVector:
        X, Y = self._as_mv(X), self._as_mv(Y)
        p, q = X.grade, Y.grade
        if p == 0 and q == 0:
            raise GradeError("Hom-Schouten bracket of two functions is undefined")
        if q == 0:
            out = self._schouten_fn(Y.scalar_value(), X)
            return -out if p & 1 else out
        if p == 0:
            return self._schouten_fn(X.scalar_value(), Y)
        grade = p + q - 1
        if grade > self.rank:
            return self._zero_mv(grade)
        out = self._zero_mv(grade)
        yfac = self._factors(Y)
        for xs in self._factors(X):
            xim = [self.phi(x) for x in xs]
            for ys in yfac:
                yim = [self.phi(y) for y in ys]
                for i, x in enumerate(xs):
                    for j, y in enumerate(ys):
                        br = self.bracket(x, y)
                        if not br:
                            continue
                        term = wedge_all([br] + xim[:i] + xim[i + 1:] + yim[:j] + yim[j + 1:],
                                         self.rank, self.variables)
                        out = out - term if (i + j) & 1 else out + term
        return out

    # --- interior and Lie derivatives --------------------------------------

    def interior(self, X, xi, strict=True) -> MultiForm:
        return _interior(self._as_mv(X), self._as_form(xi), self.phi, strict)

    def lie_derivative_mv(self, x: MultiVector, X) -> MultiVector:
        return self.schouten(x, X)

    def lie_derivative_form(self, X, xi) -> MultiForm:
        """``L_X xi = i_X d theta - (-1)^k d i_{phi^-1 X} theta`` with ``theta = (phi^dagger)^-1 xi``."""
        X, xi = self._as_mv(X), self._as_form(xi)
        k, m = X.grade, xi.grade
        if m + 1 < k:
            raise GradeError(f"Lie derivative of grade {k} on a form of grade {m}")
        theta = self.dagger_inv(xi)
        out = self.interior(X, self.differential(theta))
        if m >= k:
            second = self.differential(self.interior(self.phi_inv(X), theta))
            out = out - second if k % 2 == 0 else out + second
        return out

    # --- misc ------------------------------------------------------------------

    def anchor_matrix(self):
        """Rows ``a_i^mu``: coefficient of ``sigma o d/dx_mu`` in ``a(e_i)``."""
        return [list(a.coeffs) for a in self.anchors]

    def same_structure(self, other: "HomLieAlgebroid") -> bool:
        return (self.phi == other.phi and self.brackets == other.brackets
                and self.anchors == other.anchors)

    def __repr__(self):
        return f"HomLieAlgebroid({self.name!r}, rank={self.rank}, variables={self.variables})"


# --- constructions -------------------------------------------------------------

def tangent_algebroid(sigma: RingAuto, name="tangent") -> HomLieAlgebroid:
    """Pullback tangent bundle: frame ``D_mu = sigma o d/dx_mu``, twist ``Ad_sigma``."""
    n = len(sigma.variables)
    D = [SigmaDerivation.basis(sigma, mu) for mu in range(n)]
    ad = [sder_ad(d).coeffs for d in D]
    matrix = [[ad[mu][nu] for mu in range(n)] for nu in range(n)]
    brackets = {}
    for mu, nu in itertools.combinations(range(n), 2):
        br = sder_bracket(D[mu], D[nu])
        if not br.is_zero():
            brackets[(mu, nu)] = list(br.coeffs)
    return HomLieAlgebroid(SemilinearMap(matrix, sigma), brackets, D, name)


def _combine(action, x, sigma):
    out = SigmaDerivation.zero(sigma)
    for i, c in enumerate(x):
        if c:
            out = out + action[i].scale(Poly.constant(c, sigma.variables))
    return out


def action_algebroid(g: HomLieAlgebra, action: Sequence[SigmaDerivation], sigma: RingAuto,
                     name="action") -> HomLieAlgebroid:
    """Trivial bundle ``M x g`` with anchor given by the action and constant twist ``Phi``."""
    if len(action) != g.dim:
        raise ValueError(f"action needs {g.dim} derivations")
    for i in range(g.dim):
        lhs = _combine(action, g.twist(g.basis(i)), sigma)
        rhs = sder_ad(action[i])
        if lhs != rhs:
            raise ActionError(f"rho(phi e{i + 1}) = {lhs} but Ad(rho e{i + 1}) = {rhs}")
    for i, j in itertools.combinations(range(g.dim), 2):
        lhs = _combine(action, g.bracket(g.basis(i), g.basis(j)), sigma)
        rhs = sder_bracket(action[i], action[j])
        if lhs != rhs:
            raise ActionError(f"rho([e{i + 1}, e{j + 1}]) = {lhs} but [rho e{i + 1}, rho e{j + 1}] = {rhs}")
    brackets = {(i, j): list(g.c(i, j)) for i, j in itertools.combinations(range(g.dim), 2)}
    return HomLieAlgebroid(SemilinearMap(g.phi, sigma), brackets, list(action), name)


def twist_lie_algebroid(classical: HomLieAlgebroid, alpha: SemilinearMap,
                        max_degree=2, name="twisted") -> HomLieAlgebroid:
    """Pull a Lie algebroid back along ``sigma = alpha.twist`` using ``[x!, y!] = [alpha x, alpha y]!``."""
    if not classical.sigma.is_identity() or classical.phi != SemilinearMap.identity(
            classical.rank, classical.sigma):
        raise PreconditionError("input must be an untwisted Lie algebroid")
    sigma = alpha.twist
    n = classical.rank
    ms = monomials(classical.variables, max_degree)
    alg_e = [alpha.on_basis(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            for f in ms:
                x, y = classical.basis(i, f), classical.basis(j)
                lhs = alpha(classical.bracket(x, y))
                rhs = classical.bracket(alpha(x), alpha(y))
                if lhs != rhs:
                    raise PreconditionError(
                        f"alpha is not a bracket morphism at x={x}, y={y}: {lhs} != {rhs}")
    for i in range(n):
        a_alpha = classical.anchor(alg_e[i])
        for f in ms:
            lhs, rhs = a_alpha(sigma(f)), sigma(classical.anchors[i](f))
            if lhs != rhs:
                raise PreconditionError(
                    f"a(alpha e{i + 1}) o sigma != sigma o a(e{i + 1}) at f={f}: {lhs} != {rhs}")
    matrix = [[sigma(c) for c in row] for row in alpha.matrix]
    brackets = {}
    for i, j in itertools.combinations(range(n), 2):
        br = classical.bracket(alg_e[i], alg_e[j])
        if br:
            brackets[(i, j)] = [sigma(c) for c in br.vector()]
    anchors = [SigmaDerivation(sigma, [sigma(c) for c in a.coeffs]) for a in classical.anchors]
    return HomLieAlgebroid(SemilinearMap(matrix, sigma), brackets, anchors, name)


def _dgca_failure(label, lhs, rhs):
    return DGCAError(f"{label}: {lhs} != {rhs}")


def reconstruct_from_differential(phi: SemilinearMap, d: Callable, max_degree=2,
                                  validate=True, name="reconstructed") -> HomLieAlgebroid:
    """Recover anchor and bracket from a twisted differential ``d`` on forms."""
    n, v = phi.rank, phi.variables
    dag = phi.dagger()
    dag_inv = dag.inverse()
    ms = monomials(v, max_degree)

    def d_(xi):
        if isinstance(xi, Poly):
            xi = MultiForm.scalar(xi, n)
        return d(xi)

    if validate:
        forms = []
        for k in range(n + 1):
            for I in itertools.combinations(range(n), k):
                for f in ms:
                    forms.append(MultiForm.basis(n, I, v, f) if I else MultiForm.scalar(f, n))
        for xi in forms:
            if xi.grade < n:
                lhs, rhs = d_(dag(xi)), dag(d_(xi))
                if lhs != rhs:
                    raise _dgca_failure(f"d o dagger at {xi}", lhs, rhs)
            if xi.grade + 2 <= n:
                dd = d_(d_(xi))
                if dd:
                    raise _dgca_failure(f"d^2 at {xi}", dd, 0)
        for f in ms:
            for k in range(n):
                for J in itertools.combinations(range(n), k):
                    th = MultiForm.basis(n, J, v) if J else MultiForm.scalar(Poly.one(v), n)
                    fx = MultiForm.scalar(f, n)
                    lhs = d_(fx.wedge(th))
                    rhs = d_(fx).wedge(dag(th)) + dag(fx).wedge(d_(th))
                    if lhs != rhs:
                        raise _dgca_failure(f"Leibniz at f={f}, theta={th}", lhs, rhs)
        for I, J in itertools.product(range(n), repeat=2):
            a, b = MultiForm.basis(n, I, v), MultiForm.basis(n, J, v)
            if n >= 2:
                lhs = d_(a.wedge(b))
                rhs = d_(a).wedge(dag(b)) - dag(a).wedge(d_(b))
                if lhs != rhs:
                    raise _dgca_failure(f"Leibniz at {a}, {b}", lhs, rhs)

    sigma = phi.twist
    gens = Poly.gens(v)
    dx = [d_(x) for x in gens]
    anchors = [SigmaDerivation(sigma, [dx[mu].coeff((i,)) for mu in range(len(v))])
               for i in range(n)]

    def anchor(x):
        out = SigmaDerivation.zero(sigma)
        for (i,), f in x.components.items():
            out = out + anchors[i].scale(f)
        return out

    phi_e = [phi.on_basis(i) for i in range(n)]
    e = [MultiVector.basis(n, i, v) for i in range(n)]
    brackets = {}
    for i, j in itertools.combinations(range(n), 2):
        coeffs = []
        for k in range(n):
            th = dag_inv(MultiForm.basis(n, k, v))
            val = -pair(d_(th), phi_e[i].wedge(phi_e[j]))
            val = val + anchor(phi_e[i])(pair(th, e[j])) - anchor(phi_e[j])(pair(th, e[i]))
            coeffs.append(val)
        if any(c for c in coeffs):
            brackets[(i, j)] = coeffs
    return HomLieAlgebroid(phi, brackets, anchors, name)


# --- verification ------------------------------------------------------------------

DEF = "Def. Hom-Lie algebroid"


def verify_algebroid(alg: HomLieAlgebroid, max_degree=3) -> Report:
    """Skew-symmetry, twist morphism, Hom-Jacobi, Leibniz rule and anchor representation."""
    n = alg.rank
    ms = alg.samples(max_degree)
    sigma = alg.sigma
    rep = Report(alg.name, sample_degree=max_degree)
    e = [alg.basis(i) for i in range(n)]

    def pairs():
        for i in range(n):
            for j in range(n):
                for f in ms:
                    yield alg.basis(i, f), e[j]
                    if f != 1:
                        yield e[i], alg.basis(j, f)

    rep.add(Check("invertible", "invertible Hom-bundle: twist has unit determinant",
                  alg.phi.is_invertible(), None, 1))
    rep.add(check_cases("skew", f"{DEF}: [x,y] = -[y,x]", ("x", "y"), pairs(),
                        lambda x, y: (alg.bracket(x, y), -alg.bracket(y, x))))
    rep.add(check_cases("morphism", f"{DEF}: phi_A[x,y] = [phi_A x, phi_A y]", ("x", "y"),
                        pairs(),
                        lambda x, y: (alg.phi(alg.bracket(x, y)),
                                      alg.bracket(alg.phi(x), alg.phi(y)))))

    def triples():
        for a in range(n):
            for b, c in itertools.combinations(range(n), 2):
                for f in ms:
                    yield alg.basis(a, f), e[b], e[c]

    def jacobi(x, y, z):
        p = alg.phi
        val = (alg.bracket(p(x), alg.bracket(y, z)) + alg.bracket(p(y), alg.bracket(z, x))
               + alg.bracket(p(z), alg.bracket(x, y)))
        return val, alg._zero1

    rep.add(check_cases("hom_jacobi", f"{DEF}: [phi x,[y,z]] + c.p. = 0", ("x", "y", "z"),
                        triples(), jacobi))

    def leibniz_cases():
        for i in range(n):
            for j in range(n):
                for f in ms:
                    for g in ms[:1] + ms[1:len(ms) // 2 + 1]:
                        yield alg.basis(i, g), e[j], f

    def leibniz(x, y, f):
        lhs = alg.bracket(x, y.scale(f))
        rhs = alg.bracket(x, y).scale(sigma(f)) + alg.phi(y).scale(alg.anchor(alg.phi(x))(f))
        return lhs, rhs

    rep.add(check_cases("leibniz", f"{DEF} (i): [x,fy] = phi*(f)[x,y] + a(phi_A x)(f) phi_A y",
                        ("x", "y", "f"), leibniz_cases(), leibniz))

    def rep_twist_cases():
        for i in range(n):
            for f in ms:
                yield e[i], f

    rep.add(check_cases("anchor_twist", f"{DEF} (ii): a(phi_A x) o phi* = phi* o a(x)",
                        ("x", "f"), rep_twist_cases(),
                        lambda x, f: (alg.anchor(alg.phi(x))(sigma(f)), sigma(alg.anchor(x)(f)))))

    def rep_bracket_cases():
        # (e_i, g e_j) with g of degree <= 1, so rank 1 is exercised too
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            for g in ms[:len(alg.variables) + 1]:
                if i == j and g.is_constant():
                    continue
                for f in ms:
                    yield e[i], e[j].scale(g), f

    def rep_bracket(x, y, f):
        lhs = alg.anchor(alg.bracket(x, y))(sigma(f))
        ax, ay = alg.anchor(x), alg.anchor(y)
        apx, apy = alg.anchor(alg.phi(x)), alg.anchor(alg.phi(y))
        return lhs, apx(ay(f)) - apy(ax(f))

    rep.add(check_cases("anchor_bracket",
                        f"{DEF} (ii): a([x,y]) o phi* = a(phi_A x)a(y) - a(phi_A y)a(x)",
                        ("x", "y", "f"), rep_bracket_cases(), rep_bracket))
    return rep
