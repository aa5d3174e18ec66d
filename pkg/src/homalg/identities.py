"""Catalog of calculus identities for a Hom-Lie algebroid.

Every entry evaluates both sides of one identity on basis multivectors and
forms, with monomial multipliers placed in one argument slot at a time.
Twisted identities are not function-linear, so the multipliers matter.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebroid import HomLieAlgebroid, mv_interior, wedge_all
from .exterior import MultiForm, MultiVector
from .report import Check, Report, check_cases
from .ring import Poly, monomials, sder_ad, sder_bracket

__all__ = ["SampleConfig", "CATALOG", "identity_ids", "verify_identities", "verify_catalog"]


@dataclass(frozen=True)
class SampleConfig:
    max_degree: int = 3       # monomial multipliers
    short_degree: int = 1     # multipliers when another slot already carries a function
    max_grade: int = 2        # highest grade of sampled multivector / form arguments

    def monomials(self, alg):
        return monomials(alg.variables, self.max_degree)

    def short(self, alg):
        return monomials(alg.variables, min(self.short_degree, self.max_degree))


def _mvs(alg, k):
    if k == 0:
        return [MultiVector.scalar(Poly.one(alg.variables), alg.rank)]
    return [MultiVector.basis(alg.rank, I, alg.variables)
            for I in itertools.combinations(range(alg.rank), k)]


def _forms(alg, m):
    if m == 0:
        return [MultiForm.scalar(Poly.one(alg.variables), alg.rank)]
    return [MultiForm.basis(alg.rank, I, alg.variables)
            for I in itertools.combinations(range(alg.rank), m)]


def _grid(ms, *pools):
    """Basis tuples, then each tuple again with a multiplier in one slot at a time."""
    for base in itertools.product(*pools):
        yield base
        for s in range(len(base)):
            for f in ms[1:]:
                args = list(base)
                args[s] = args[s].scale(f)
                yield tuple(args)


def _sign(e):
    return -1 if e % 2 else 1


def _top(alg, cfg):
    return min(alg.rank, cfg.max_grade)


def _ip(alg, X, xi):
    """Interior product, or ``None`` when the grade would go negative."""
    if X.grade > xi.grade:
        return None
    return alg.interior(X, xi)


def _zero_form(alg, grade):
    return MultiForm._new(alg.rank, grade, alg.variables, {})


def _zero_mv(alg, grade):
    return MultiVector._new(alg.rank, grade, alg.variables, {})


def _d(alg, xi):
    return alg.differential(xi)


def _cases_functions(alg, cfg, *pools):
    for f in cfg.monomials(alg):
        for args in _grid(cfg.short(alg), *pools):
            yield (f,) + args


# --- identities ----------------------------------------------------------------

def id_d0(alg, cfg):
    forms = [xi for m in range(alg.rank) for xi in _forms(alg, m)]
    return check_cases("d0", "d o phi_A^dagger = phi_A^dagger o d", ("Xi",),
                       _grid(cfg.monomials(alg), forms),
                       lambda xi: (_d(alg, alg.dagger(xi)), alg.dagger(_d(alg, xi))))


def id_d2(alg, cfg):
    n = alg.rank

    def cases():
        for k in range(n):
            for l in range(n - k):
                yield from _grid(cfg.monomials(alg), _forms(alg, k), _forms(alg, l))

    def ev(xi, th):
        lhs = _d(alg, xi.wedge(th))
        rhs = _d(alg, xi).wedge(alg.dagger(th)) + alg.dagger(xi).wedge(_d(alg, th)).scale(
            _sign(xi.grade))
        return lhs, rhs

    return check_cases("d2", "d(Xi ^ Theta) = dXi ^ phi^dagger Theta + (-1)^k phi^dagger Xi ^ dTheta",
                       ("Xi", "Theta"), cases(), ev)


def id_d_squared(alg, cfg):
    forms = [xi for m in range(alg.rank - 1) for xi in _forms(alg, m)]
    return check_cases("d_squared", "d^2 = 0", ("Xi",), _grid(cfg.monomials(alg), forms),
                       lambda xi: (_d(alg, _d(alg, xi)), _zero_form(alg, xi.grade + 2)))


def id_L11(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                for m in range(k + l, alg.rank + 1):
                    yield from _grid(cfg.short(alg), _mvs(alg, k), _mvs(alg, l), _forms(alg, m))

    def ev(X, Y, xi):
        p = alg.phi
        a = alg.interior(p(X), alg.interior(Y, xi))
        b = alg.interior(p(Y), alg.interior(X, xi)).scale(_sign(X.grade * Y.grade))
        c = alg.interior(p(Y.wedge(X)), alg.dagger(xi))
        return (a, a), (b, c)

    return check_cases("L11", "i_{phi X} o i_Y = i_{phi(Y^X)} o phi^dagger = (-1)^{kl} i_{phi Y} o i_X",
                       ("X", "Y", "Xi"), cases(), ev)


def id_L20(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for m in range(k, alg.rank + 1):
                yield from _grid(cfg.monomials(alg), _mvs(alg, k), _forms(alg, m))

    def ev(X, xi):
        a = alg.dagger(alg.interior(X, xi))
        b = alg.interior(alg.phi(X), alg.dagger(xi))
        c = alg.dagger_inv(alg.interior(X, xi))
        d = alg.interior(alg.phi_inv(X), alg.dagger_inv(xi))
        return (a, c), (b, d)

    return check_cases("L20", "phi^dagger(i_X Xi) = i_{phi X} phi^dagger Xi (and the inverse form)",
                       ("X", "Xi"), cases(), ev)


def id_LieD1(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(0, top + 1):
            for l in range(1, top + 1):
                if k + l <= alg.rank:
                    yield from _grid(cfg.short(alg), _mvs(alg, 1), _mvs(alg, k), _mvs(alg, l))

    def ev(x, X, Y):
        lhs = alg.schouten(x, X.wedge(Y))
        rhs = alg.schouten(x, X).wedge(alg.phi(Y)) + alg.phi(X).wedge(alg.schouten(x, Y))
        return lhs, rhs

    return check_cases("LieD1", "L_x(X ^ Y) = L_x X ^ phi Y + phi X ^ L_x Y",
                       ("x", "X", "Y"), cases(), ev)


def id_LieD2(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(0, top + 1):
            yield from _grid(cfg.short(alg), _mvs(alg, 1), _mvs(alg, 1), _mvs(alg, k))

    def ev(x, y, X):
        p, L = alg.phi, alg.schouten
        lhs = L(alg.bracket(x, y), p(X))
        rhs = L(p(x), L(y, X)) - L(p(y), L(x, X))
        return lhs, rhs

    return check_cases("LieD2", "L_{[x,y]} o phi = L_{phi x} L_y - L_{phi y} L_x",
                       ("x", "y", "X"), cases(), ev)


def id_LieD3(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(0, top + 1):
            yield from _cases_functions(alg, cfg, _mvs(alg, 1), _mvs(alg, k))

    def ev(f, x, X):
        lhs = alg.schouten(x, X.scale(f))
        rhs = alg.schouten(x, X).scale(alg.sigma(f)) + alg.phi(X).scale(
            alg.anchor(alg.phi(x))(f))
        return lhs, rhs

    return check_cases("LieD3", "L_x(fX) = phi*(f) L_x X + a(phi x)(f) phi X",
                       ("f", "x", "X"), cases(), ev)


def id_LieD4(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            yield from _cases_functions(alg, cfg, _mvs(alg, 1), _mvs(alg, k))

    def ev(f, x, X):
        lhs = alg.schouten(x.scale(f), X)
        # i_{(phi^dagger)^-1 df} X contracts phi^dagger of the form into phi(X)
        contr = mv_interior(_d(alg, f), alg.phi(X))
        rhs = alg.schouten(x, X).scale(alg.sigma(f)) - alg.phi(x).wedge(contr)
        return lhs, rhs

    return check_cases("LieD4", "L_{fx} X = phi*(f) L_x X - phi x ^ i_{(phi^dagger)^-1 df} X",
                       ("f", "x", "X"), cases(), ev)


def id_Lied7(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for m in range(max(k - 1, 0), alg.rank + 1):
                yield from _cases_functions(alg, cfg, _mvs(alg, k), _forms(alg, m))

    def ev(f, X, xi):
        lhs = alg.lie_derivative_form(X.scale(f), xi)
        rhs = alg.lie_derivative_form(X, xi).scale(alg.sigma(f))
        ix = _ip(alg, X, xi)
        if ix is not None:
            rhs = rhs - _d(alg, f).wedge(ix).scale(_sign(X.grade))
        return lhs, rhs

    return check_cases("Lied7", "L_{fX} Xi = phi*(f) L_X Xi - (-1)^k df ^ i_X Xi",
                       ("f", "X", "Xi"), cases(), ev)


def id_Lied8(alg, cfg):
    def cases():
        for m in range(0, alg.rank + 1):
            yield from _cases_functions(alg, cfg, _mvs(alg, 1), _forms(alg, m))

    def ev(f, x, xi):
        lhs = alg.lie_derivative_form(x, xi.scale(f))
        rhs = alg.lie_derivative_form(x, xi).scale(alg.sigma(f)) + alg.dagger(xi).scale(
            alg.anchor(alg.phi(x))(f))
        return lhs, rhs

    return check_cases("Lied8", "L_x(f Xi) = phi*(f) L_x Xi + a(phi x)(f) phi^dagger Xi",
                       ("f", "x", "Xi"), cases(), ev)


def id_Lied0(alg, cfg):
    n = alg.rank

    def cases():
        for m in range(0, n + 1):
            for l in range(0, n + 1 - m):
                if m + l >= 1:
                    yield from _grid(cfg.monomials(alg), _mvs(alg, 1), _forms(alg, m),
                                     _forms(alg, l))

    def ev(x, xi, th):
        lhs = alg.interior(x, xi.wedge(th))
        rhs = _zero_form(alg, xi.grade + th.grade - 1)
        a = _ip(alg, x, xi)
        if a is not None:
            rhs = rhs + a.wedge(alg.dagger(th))
        b = _ip(alg, x, th)
        if b is not None:
            rhs = rhs + alg.dagger(xi).wedge(b).scale(_sign(xi.grade))
        return lhs, rhs

    return check_cases("Lied0", "i_x(Xi ^ Theta) = i_x Xi ^ phi^dagger Theta + (-1)^m phi^dagger Xi ^ i_x Theta",
                       ("x", "Xi", "Theta"), cases(), ev)


def id_Lied1(alg, cfg):
    n = alg.rank

    def cases():
        for m in range(0, n + 1):
            for l in range(0, n + 1 - m):
                yield from _grid(cfg.short(alg), _mvs(alg, 1), _forms(alg, m), _forms(alg, l))

    def ev(x, xi, th):
        L = alg.lie_derivative_form
        lhs = L(x, xi.wedge(th))
        rhs = L(x, xi).wedge(alg.dagger(th)) + alg.dagger(xi).wedge(L(x, th))
        return lhs, rhs

    return check_cases("Lied1", "L_x(Xi ^ Theta) = L_x Xi ^ phi^dagger Theta + phi^dagger Xi ^ L_x Theta",
                       ("x", "Xi", "Theta"), cases(), ev)


def id_Lied6(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                for m in range(k + l - 1, alg.rank + 1):
                    yield from _grid(cfg.short(alg), _mvs(alg, k), _mvs(alg, l), _forms(alg, m))

    def ev(X, Y, xi):
        k, l = X.grade, Y.grade
        lhs = alg.interior(alg.schouten(X, Y), alg.dagger(xi))
        a = alg.lie_derivative_form(alg.phi(X), alg.interior(Y, xi))
        b = alg.interior(alg.phi(Y), alg.lie_derivative_form(X, xi))
        rhs = (a - b.scale(_sign((k - 1) * l))).scale(_sign((k - 1) * (l - 1)))
        return lhs, rhs

    return check_cases("Lied6", "i_{[[X,Y]]} o phi^dagger = (-1)^{(k-1)(l-1)}(L_{phi X} o i_Y - (-1)^{(k-1)l} i_{phi Y} o L_X)",
                       ("X", "Y", "Xi"), cases(), ev)


def id_Lied2(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for m in range(k - 1, alg.rank + 1):
                yield from _grid(cfg.monomials(alg), _mvs(alg, k), _forms(alg, m))

    def ev(X, xi):
        return (alg.dagger(alg.lie_derivative_form(X, xi)),
                alg.lie_derivative_form(alg.phi(X), alg.dagger(xi)))

    return check_cases("Lied2", "phi^dagger(L_X Xi) = L_{phi X} phi^dagger Xi",
                       ("X", "Xi"), cases(), ev)


def id_Lied3(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for l in range(1, top + 1):
                for m in range(max(k + l - 2, 0), alg.rank + 1):
                    yield from _grid(cfg.short(alg), _mvs(alg, k), _mvs(alg, l), _forms(alg, m))

    def ev(X, Y, xi):
        k, l = X.grade, Y.grade
        L = alg.lie_derivative_form
        lhs = L(alg.schouten(X, Y), alg.dagger(xi))
        e = _sign((k - 1) * (l - 1))
        rhs = (L(alg.phi(X), L(Y, xi)) - L(alg.phi(Y), L(X, xi)).scale(e)).scale(e)
        return lhs, rhs

    return check_cases("Lied3", "L_{[[X,Y]]} o phi^dagger = (-1)^{(k-1)(l-1)}(L_{phi X} L_Y - (-1)^{(k-1)(l-1)} L_{phi Y} L_X)",
                       ("X", "Y", "Xi"), cases(), ev)


def id_Lied4(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for m in range(k - 1, alg.rank + 1):
                yield from _grid(cfg.monomials(alg), _mvs(alg, k), _forms(alg, m))

    def ev(X, xi):
        return (alg.dagger_inv(alg.lie_derivative_form(X, xi)),
                alg.lie_derivative_form(alg.phi_inv(X), alg.dagger_inv(xi)))

    return check_cases("Lied4", "(phi^dagger)^-1 o L_X = L_{phi^-1 X} o (phi^dagger)^-1",
                       ("X", "Xi"), cases(), ev)


def id_Lied5(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for m in range(k - 1, alg.rank):
                yield from _grid(cfg.monomials(alg), _mvs(alg, k), _forms(alg, m))

    def ev(X, xi):
        lhs = _d(alg, alg.lie_derivative_form(X, xi))
        rhs = alg.lie_derivative_form(alg.phi(X), _d(alg, xi)).scale(-_sign(X.grade))
        return lhs, rhs

    return check_cases("Lied5", "d o L_X = -(-1)^k L_{phi X} o d", ("X", "Xi"), cases(), ev)


def _pi_samples(alg):
    """Bivectors: each basis bivector with a degree <= 1 coefficient, plus one mixed sum."""
    v = alg.variables
    lin = monomials(v, 1)
    out = []
    pairs = list(itertools.combinations(range(alg.rank), 2))
    for I in pairs:
        for c in lin:
            out.append(MultiVector.basis(alg.rank, I, v, c))
    if pairs:
        mixed = MultiVector.zero(alg.rank, 2, v)
        for t, I in enumerate(pairs):
            mixed = mixed + MultiVector.basis(alg.rank, I, v, lin[t % len(lin)] + t + 1)
        out.append(mixed)
    return out


def hom_poisson_jacobiator(alg, pi, f, g, h):
    """Right side of the formula for ``i_{[[pi,pi]]}(df ^ dg ^ dh)``."""
    s = alg.sigma
    si = s.inverse()

    def br(a, b):
        return pair_pi(alg, pi, _d(alg, a), _d(alg, b))

    total = Poly.zero(alg.variables)
    for a, b, c in ((f, g, h), (g, h, f), (h, f, g)):
        inner = br(si(a), si(b))
        total = total + s(s(br(si(inner), si(c))))
    return total * (-2)


def pair_pi(alg, pi, xi, eta):
    from .exterior import pair
    return pair(xi.wedge(eta), pi)


def id_HomPFormu(alg, cfg):
    ms = monomials(alg.variables, min(cfg.max_degree, 2))

    def cases():
        for pi in _pi_samples(alg):
            for f, g, h in itertools.combinations(ms, 3):
                yield pi, f, g, h

    def ev(pi, f, g, h):
        pp = alg.schouten(pi, pi)
        w = _d(alg, f).wedge(_d(alg, g)).wedge(_d(alg, h))
        if pp.grade > alg.rank:
            lhs = Poly.zero(alg.variables)
        else:
            lhs = alg.interior(pp, w).scalar_value()
        return lhs, hom_poisson_jacobiator(alg, pi, f, g, h)

    return check_cases("HomPFormu", "i_{[[pi,pi]]}(df^dg^dh) = -2((phi*)^2 pi(d(phi*)^-1 pi(..), ..) + c.p.)",
                       ("pi", "f", "g", "h"), cases(), ev)


def id_anchor_morphism(alg, cfg):
    ms = cfg.monomials(alg)
    e = _mvs(alg, 1)

    def cases():
        for x, y in itertools.product(e, e):
            for f in ms:
                yield x.scale(f), y

    def ev(x, y):
        a = alg.anchor
        lhs = (a(alg.bracket(x, y)), a(alg.phi(x)))
        rhs = (sder_bracket(a(x), a(y)), sder_ad(a(x)))
        return lhs, rhs

    return check_cases("anchor_morphism", "anchor is a morphism to the tangent Hom-Lie algebroid",
                       ("x", "y"), cases(), ev)


def id_schouten_skew(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(0, top + 1):
            for l in range(0, top + 1):
                if k + l >= 1:
                    yield from _grid(cfg.short(alg), _mvs(alg, k), _mvs(alg, l))

    def ev(X, Y):
        k, l = X.grade, Y.grade
        return alg.schouten(X, Y), alg.schouten(Y, X).scale(-_sign((k - 1) * (l - 1)))

    return check_cases("schouten_skew", "[[X,Y]] = -(-1)^{(k-1)(l-1)} [[Y,X]]",
                       ("X", "Y"), cases(), ev)


def id_schouten_derivation(alg, cfg):
    top = _top(alg, cfg)

    def cases():
        for k in range(1, top + 1):
            for l in range(0, top + 1):
                for m in range(0, top + 1):
                    if 1 <= l + m <= alg.rank:
                        yield from _grid(cfg.short(alg), _mvs(alg, k), _mvs(alg, l),
                                         _mvs(alg, m))

    def ev(X, Y, Z):
        k, l = X.grade, Y.grade
        S = alg.schouten
        lhs = S(X, Y.wedge(Z))
        if l == 0 and Z.grade == 0:
            return lhs, lhs
        parts = []
        if l + k >= 1:
            parts.append(S(X, Y).wedge(alg.phi(Z)) if (k, l) != (0, 0) else None)
        parts.append(alg.phi(Y).wedge(S(X, Z)).scale(_sign((k - 1) * l)))
        rhs = _zero_mv(alg, k + l + Z.grade - 1)
        for p in parts:
            if p is not None:
                rhs = rhs + p
        return lhs, rhs

    return check_cases("schouten_derivation", "[[X, Y^Z]] = [[X,Y]] ^ phi Z + (-1)^{(k-1)l} phi Y ^ [[X,Z]]",
                       ("X", "Y", "Z"), cases(), ev)


def id_interior_11(alg, cfg):
    def cases():
        yield from _grid(cfg.monomials(alg), _mvs(alg, 1), _forms(alg, 1))

    def ev(x, xi):
        from .exterior import pair
        return alg.interior(x, xi).scalar_value(), alg.sigma(pair(xi, x))

    return check_cases("interior_11", "i_x xi = phi*<xi, x>", ("x", "xi"), cases(), ev)


CATALOG = {
    "d0": id_d0,
    "d2": id_d2,
    "d_squared": id_d_squared,
    "L11": id_L11,
    "L20": id_L20,
    "LieD1": id_LieD1,
    "LieD2": id_LieD2,
    "LieD3": id_LieD3,
    "LieD4": id_LieD4,
    "Lied0": id_Lied0,
    "Lied1": id_Lied1,
    "Lied2": id_Lied2,
    "Lied3": id_Lied3,
    "Lied4": id_Lied4,
    "Lied5": id_Lied5,
    "Lied6": id_Lied6,
    "Lied7": id_Lied7,
    "Lied8": id_Lied8,
    "HomPFormu": id_HomPFormu,
    "anchor_morphism": id_anchor_morphism,
    "schouten_skew": id_schouten_skew,
    "schouten_derivation": id_schouten_derivation,
    "interior_11": id_interior_11,
}


def identity_ids():
    return list(CATALOG)


def verify_identities(alg: HomLieAlgebroid, identity_id: str, cfg: SampleConfig | None = None) -> Check:
    try:
        fn = CATALOG[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}; known: {', '.join(CATALOG)}") from None
    return fn(alg, cfg or SampleConfig())


def verify_catalog(alg: HomLieAlgebroid, cfg: SampleConfig | None = None, ids=None) -> Report:
    cfg = cfg or SampleConfig()
    rep = Report(f"{alg.name} identities", sample_degree=cfg.max_degree)
    for key in ids or CATALOG:
        rep.add(verify_identities(alg, key, cfg))
    return rep
