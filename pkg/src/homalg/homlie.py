"""Finite-dimensional Hom-Lie algebras over Q.

Vectors are tuples of ``Fraction``; matrices are row tuples acting on column
vectors, so ``Phi @ e_j`` is column ``j``.  Multivectors over ``g`` are dicts
from strictly increasing index tuples to ``Fraction``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .report import Check, Report
from .ring import NonInvertibleError, rational_det, rational_inverse

__all__ = [
    "HomLieAlgebra",
    "QuadraticHomLieAlgebra",
    "Representation",
    "PurelyHomLieBialgebra",
    "verify_homlie",
    "verify_representation",
    "extended_bracket",
    "dual_representation",
    "adjoint",
    "coadjoint",
    "verify_bialgebra",
    "build_double",
    "verify_quadratic",
]


def _vec(v):
    return tuple(Fraction(x) for x in v)


def _mat(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def mat_vec(m, v):
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def mat_mul(a, b):
    n, k = len(a), len(b[0]) if b else 0
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(len(b))), Fraction(0))
                       for j in range(k)) for i in range(n))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


def _fmt(v):
    return "(" + ", ".join(str(x) for x in v) + ")"


class HomLieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k`` and twist ``Phi``."""

    def __init__(self, dim: int, brackets: dict | None = None, phi=None):
        self.dim = dim
        zero = (Fraction(0),) * dim
        self._c = {}
        for (i, j), val in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            val = _vec(val)
            if len(val) != dim:
                raise ValueError(f"bracket value {val} has wrong length")
            if i == j:
                if any(val):
                    raise ValueError(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            if i > j:
                i, j, val = j, i, _scale(-1, val)
            if (i, j) in self._c:
                raise ValueError(f"bracket ({i + 1}, {j + 1}) given twice")
            self._c[(i, j)] = val
        self.zero = zero
        self.phi = _mat(phi) if phi is not None else identity(dim)
        if len(self.phi) != dim or any(len(r) != dim for r in self.phi):
            raise ValueError("twist matrix has the wrong shape")

    @property
    def brackets(self):
        return {k: v for k, v in sorted(self._c.items()) if any(v)}

    def basis(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def c(self, i, j):
        if i == j:
            return self.zero
        if i < j:
            return self._c.get((i, j), self.zero)
        return _scale(-1, self._c.get((j, i), self.zero))

    def bracket(self, x, y):
        out = self.zero
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b and i != j:
                    out = _add(out, _scale(a * b, self.c(i, j)))
        return out

    def twist(self, x):
        return mat_vec(self.phi, x)

    def twist_inverse_matrix(self):
        return rational_inverse(self.phi)

    def is_regular(self):
        return rational_det(self.phi) != 0

    def ad_matrix(self, x):
        """Matrix of ``y -> [x, y]``."""
        cols = [self.bracket(x, self.basis(j)) for j in range(self.dim)]
        return transpose(cols)

    def __repr__(self):
        return f"HomLieAlgebra(dim={self.dim}, brackets={self.brackets}, phi={self.phi})"


class QuadraticHomLieAlgebra(HomLieAlgebra):
    """Hom-Lie algebra carrying a symmetric bilinear form (Gram matrix)."""

    def __init__(self, dim, brackets=None, phi=None, form=None):
        super().__init__(dim, brackets, phi)
        self.form = _mat(form) if form is not None else identity(dim)

    def pairing(self, u, v):
        return sum((u[i] * self.form[i][j] * v[j] for i in range(self.dim)
                    for j in range(self.dim)), Fraction(0))


@dataclass
class Representation:
    """``rho(e_i)`` matrices on ``V`` with structure map ``beta``."""
    dim: int
    beta: tuple
    rho: list = field(default_factory=list)

    def __post_init__(self):
        self.beta = _mat(self.beta)
        self.rho = [_mat(m) for m in self.rho]

    def act(self, x, v):
        out = (Fraction(0),) * self.dim
        for i, a in enumerate(x):
            if a:
                out = _add(out, _scale(a, mat_vec(self.rho[i], v)))
        return out

    def matrix(self, x):
        n = self.dim
        out = [[Fraction(0)] * n for _ in range(n)]
        for i, a in enumerate(x):
            if a:
                for r in range(n):
                    for s in range(n):
                        out[r][s] += a * self.rho[i][r][s]
        return tuple(tuple(r) for r in out)


# --- checks ------------------------------------------------------------------

def _first_failure(cases, lhs, rhs):
    count = 0
    for case in cases:
        count += 1
        a, b = lhs(*case), rhs(*case)
        if a != b:
            return count, case, a, b
    return count, None, None, None


def verify_homlie(g: HomLieAlgebra, name="hom-lie algebra") -> Report:
    n = g.dim
    rep = Report(name)
    pairs = [(g.basis(i), g.basis(j), (i, j)) for i in range(n) for j in range(n)]

    def check(axiom, anchor, cases, lhs, rhs, label):
        count, bad, a, b = _first_failure(cases, lhs, rhs)
        witness = None
        if bad is not None:
            witness = {"assignment": label(bad), "lhs": _fmt(a), "rhs": _fmt(b)}
        rep.add(Check(axiom, anchor, bad is None, witness, count))

    check("skew", "Hom-Lie algebra: skew-symmetry", pairs,
          lambda x, y, _: g.bracket(x, y), lambda x, y, _: _scale(-1, g.bracket(y, x)),
          lambda c: {"x": f"e{c[2][0] + 1}", "y": f"e{c[2][1] + 1}"})
    check("morphism", "Hom-Lie algebra: twist is a bracket morphism", pairs,
          lambda x, y, _: g.twist(g.bracket(x, y)),
          lambda x, y, _: g.bracket(g.twist(x), g.twist(y)),
          lambda c: {"x": f"e{c[2][0] + 1}", "y": f"e{c[2][1] + 1}"})
    triples = [(g.basis(i), g.basis(j), g.basis(k), (i, j, k))
               for i, j, k in itertools.combinations(range(n), 3)]

    def jac(x, y, z, _):
        t = g.twist
        return _add(_add(g.bracket(t(x), g.bracket(y, z)), g.bracket(t(y), g.bracket(z, x))),
                    g.bracket(t(z), g.bracket(x, y)))

    check("hom_jacobi", "Hom-Lie algebra: Hom-Jacobi identity", triples,
          jac, lambda *a: g.zero,
          lambda c: {k: f"e{c[3][p] + 1}" for p, k in enumerate("xyz")})
    rep.add(Check("regular", "regular Hom-Lie algebra: invertible twist", g.is_regular(),
                  None if g.is_regular() else {"det": "0"}, 1))
    return rep


def verify_representation(r: Representation, g: HomLieAlgebra, name="representation") -> Report:
    rep = Report(name)
    n = g.dim
    fails1 = fails2 = None
    c1 = c2 = 0
    for i in range(n):
        x = g.basis(i)
        c1 += 1
        lhs = mat_mul(r.matrix(g.twist(x)), r.beta)
        rhs = mat_mul(r.beta, r.matrix(x))
        if lhs != rhs and fails1 is None:
            fails1 = {"x": f"e{i + 1}", "lhs": str(lhs), "rhs": str(rhs)}
        for j in range(n):
            y = g.basis(j)
            c2 += 1
            lhs = mat_mul(r.matrix(g.bracket(x, y)), r.beta)
            a = mat_mul(r.matrix(g.twist(x)), r.matrix(y))
            b = mat_mul(r.matrix(g.twist(y)), r.matrix(x))
            rhs = tuple(tuple(p - q for p, q in zip(ra, rb)) for ra, rb in zip(a, b))
            if lhs != rhs and fails2 is None:
                fails2 = {"x": f"e{i + 1}", "y": f"e{j + 1}", "lhs": str(lhs), "rhs": str(rhs)}
    rep.add(Check("rep_twist", "representation: rho(phi x) beta = beta rho(x)",
                  fails1 is None, fails1, c1))
    rep.add(Check("rep_bracket", "representation: rho([x,y]) beta = rho(phi x)rho(y) - rho(phi y)rho(x)",
                  fails2 is None, fails2, c2))
    return rep


# --- extended bracket --------------------------------------------------------

def _mv_add(acc, key, c):
    if not c:
        return
    s = acc.get(key, Fraction(0)) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _mv_wedge_vectors(vectors):
    """Expand ``v_1 ^ ... ^ v_k`` (vectors as tuples) into the sorted basis."""
    acc = {(): Fraction(1)}
    for v in vectors:
        new = {}
        for key, c in acc.items():
            for i, a in enumerate(v):
                if not a or i in key:
                    continue
                pos = sum(1 for k in key if k > i)
                sign = -1 if pos & 1 else 1
                nk = tuple(sorted(key + (i,)))
                _mv_add(new, nk, sign * c * a)
        acc = new
    return acc


def extended_bracket(g: HomLieAlgebra, X: dict, Y: dict) -> dict:
    """Extension of the bracket to multivectors with the twist on omitted factors.

    ``X`` and ``Y`` are dicts ``{sorted index tuple: Fraction}``; both must be
    homogeneous of grade >= 1.
    """
    out: dict = {}
    for I, a in X.items():
        xs = [g.basis(i) for i in I]
        for J, b in Y.items():
            ys = [g.basis(j) for j in J]
            for p, x in enumerate(xs):
                for q, y in enumerate(ys):
                    br = g.bracket(x, y)
                    if not any(br):
                        continue
                    rest = [g.twist(v) for k, v in enumerate(xs) if k != p]
                    rest += [g.twist(v) for k, v in enumerate(ys) if k != q]
                    sign = -1 if (p + q) & 1 else 1
                    for key, c in _mv_wedge_vectors([br] + rest).items():
                        _mv_add(out, key, sign * a * b * c)
    return out


# --- dual / coadjoint --------------------------------------------------------

def dual_representation(r: Representation, g: HomLieAlgebra) -> Representation:
    """``<rho*(x) xi, u> = -<xi, rho(Phi^-1 x) beta^-2 u>`` on ``V*``."""
    try:
        binv = rational_inverse(r.beta)
    except NonInvertibleError:
        raise NonInvertibleError("dual representation needs an invertible beta")
    binv2 = mat_mul(binv, binv)
    phinv = g.twist_inverse_matrix()
    mats = []
    for i in range(g.dim):
        x = mat_vec(phinv, g.basis(i))
        m = mat_mul(r.matrix(x), binv2)
        mats.append(tuple(tuple(-c for c in row) for row in transpose(m)))
    return Representation(r.dim, transpose(binv), mats)


def adjoint(g: HomLieAlgebra) -> Representation:
    return Representation(g.dim, g.phi, [g.ad_matrix(g.basis(i)) for i in range(g.dim)])


def coadjoint(g: HomLieAlgebra) -> Representation:
    """Coadjoint representation on ``g*`` with respect to ``(Phi^-1)^T``."""
    return dual_representation(adjoint(g), g)


# --- bialgebras --------------------------------------------------------------

@dataclass
class PurelyHomLieBialgebra:
    """Pair ``(g, g*)``; the twist of ``g*`` must be ``(Phi^-1)^T``."""
    g: HomLieAlgebra
    gstar: HomLieAlgebra

    def cobracket(self, k: int) -> dict:
        """``Delta(e_k) = sum_{i<j} [eps_i, eps_j]_*^k e_i ^ e_j``."""
        out = {}
        for i, j in itertools.combinations(range(self.g.dim), 2):
            _mv_add(out, (i, j), self.gstar.c(i, j)[k])
        return out

    def delta(self, x) -> dict:
        out: dict = {}
        for k, a in enumerate(x):
            if a:
                for key, c in self.cobracket(k).items():
                    _mv_add(out, key, a * c)
        return out


def verify_bialgebra(b: PurelyHomLieBialgebra, name="purely Hom-Lie bialgebra") -> Report:
    g, h = b.g, b.gstar
    rep = Report(name)
    for sub, tag in ((verify_homlie(g), "g"), (verify_homlie(h), "g*")):
        for chk in sub.checks:
            rep.add(Check(f"{tag}.{chk.axiom}", f"{tag}: {chk.anchor}", chk.passed,
                          chk.witness, chk.cases))
    want = transpose(rational_inverse(g.phi)) if g.is_regular() else None
    ok = want is not None and h.phi == want
    rep.add(Check("dual_twist", "purely Hom-Lie bialgebra: g* twisted by (phi^-1)^T", ok,
                  None if ok else {"phi*": str(h.phi), "expected": str(want)}, 1))
    if want is None:
        return rep
    phinv = rational_inverse(g.phi)
    bad = None
    cases = 0
    for i in range(g.dim):
        for j in range(g.dim):
            cases += 1
            x, y = g.basis(i), g.basis(j)
            lhs = b.delta(g.bracket(x, y))
            px = {(k,): c for k, c in enumerate(mat_vec(phinv, x)) if c}
            py = {(k,): c for k, c in enumerate(mat_vec(phinv, y)) if c}
            rhs = dict(extended_bracket(g, px, b.delta(y)))
            for key, c in extended_bracket(g, py, b.delta(x)).items():
                _mv_add(rhs, key, -c)
            if lhs != rhs and bad is None:
                bad = {"x": f"e{i + 1}", "y": f"e{j + 1}", "lhs": str(lhs), "rhs": str(rhs)}
    rep.add(Check("compatibility", "purely Hom-Lie bialgebra compatibility condition",
                  bad is None, bad, cases))
    return rep


def build_double(b: PurelyHomLieBialgebra) -> QuadraticHomLieAlgebra:
    """Double ``g + g*`` with the bracket built from both coadjoint actions.

    Basis ``0..n-1`` is ``g``, ``n..2n-1`` is ``g*``; the form is
    ``(x + xi, y + eta) = xi(y) + eta(x)``.
    """
    g, h = b.g, b.gstar
    n = g.dim
    co_g = coadjoint(g)         # g acting on g*
    co_h = coadjoint(h)         # g* acting on g** = g

    def split(v):
        return v[:n], v[n:]

    def br(u, v):
        x, xi = split(u)
        y, eta = split(v)
        lower = _add(_add(g.bracket(x, y), co_h.act(xi, y)), _scale(-1, co_h.act(eta, x)))
        upper = _add(_add(h.bracket(xi, eta), co_g.act(x, eta)), _scale(-1, co_g.act(y, xi)))
        return lower + upper

    brackets = {}
    basis = [tuple(Fraction(int(k == i)) for k in range(2 * n)) for i in range(2 * n)]
    for i, j in itertools.combinations(range(2 * n), 2):
        v = br(basis[i], basis[j])
        if any(v):
            brackets[(i, j)] = v
    phi = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    pstar = h.phi
    for r in range(n):
        for s in range(n):
            phi[r][s] = g.phi[r][s]
            phi[n + r][n + s] = pstar[r][s]
    form = [[Fraction(int(abs(r - s) == n)) for s in range(2 * n)] for r in range(2 * n)]
    return QuadraticHomLieAlgebra(2 * n, brackets, phi, form)


def verify_quadratic(q: QuadraticHomLieAlgebra, name="quadratic Hom-Lie algebra") -> Report:
    """Hom-Lie axioms plus invariance of the form in the point-case Courant shape."""
    rep = verify_homlie(q, name)
    n = q.dim
    bad_inv = bad_twist = None
    c_inv = c_tw = 0
    for a in range(n):
        e = q.basis(a)
        for i in range(n):
            for j in range(n):
                h1, h2 = q.basis(i), q.basis(j)
                c_inv += 1
                val = q.pairing(q.bracket(e, h1), q.twist(h2)) + q.pairing(q.twist(h1), q.bracket(e, h2))
                if val and bad_inv is None:
                    bad_inv = {"e": f"e{a + 1}", "h1": f"e{i + 1}", "h2": f"e{j + 1}",
                               "lhs": str(val), "rhs": "0"}
    for i in range(n):
        for j in range(n):
            c_tw += 1
            h1, h2 = q.basis(i), q.basis(j)
            if q.pairing(q.twist(h1), q.twist(h2)) != q.pairing(h1, h2) and bad_twist is None:
                bad_twist = {"h1": f"e{i + 1}", "h2": f"e{j + 1}"}
    rep.add(Check("form_invariance", "quadratic: B(e.h1, phi h2) + B(phi h1, e.h2) = 0",
                  bad_inv is None, bad_inv, c_inv))
    rep.add(Check("form_twist", "quadratic: B(phi h1, phi h2) = B(h1, h2)",
                  bad_twist is None, bad_twist, c_tw))
    return rep
