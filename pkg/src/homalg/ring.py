"""Exact coefficient ring: rational multivariate polynomials, invertible
affine automorphisms, and (sigma, sigma)-derivations.

The smooth function ring of a manifold is modelled by ``Q[x_1..x_n]``; the
pullback along a diffeomorphism is modelled by an invertible affine
substitution ``sigma``.  A (sigma, sigma)-derivation is stored in the
basis ``sigma o d/dx_mu``::

    D(f) = sum_mu h_mu * sigma(df/dx_mu)
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RingMismatchError",
    "NonInvertibleError",
    "Poly",
    "RingAuto",
    "SigmaDerivation",
    "poly_arith",
    "auto_apply",
    "auto_invert",
    "sder_apply",
    "sder_bracket",
    "sder_ad",
    "monomials",
    "rational_inverse",
    "rational_det",
    "PolySyntaxError",
    "parse_poly",
]


class RingMismatchError(ValueError):
    """Operands live over different variable lists."""


class NonInvertibleError(ValueError):
    """An automorphism, matrix or bundle map has no inverse in the model."""


def _frac(c) -> Fraction:
    return c if type(c) is Fraction else Fraction(c)


def _order_key(exp):
    return (sum(exp), exp)


class Poly:
    """Polynomial with rational coefficients over a fixed variable list.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for variables {self.variables}")
            c = _frac(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        p = object.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "Poly":
        variables = tuple(variables)
        c = _frac(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "Poly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def one(cls, variables: Sequence[str] = ()) -> "Poly":
        return cls.constant(1, variables)

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "Poly":
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["Poly"]:
        return [cls.var(v, variables) for v in variables]

    # coercion

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise RingMismatchError(
                    f"variable lists differ: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.variables)
        return NotImplemented

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        z = (0,) * len(self.variables)
        return all(e == z for e in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; raises if not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s += c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.variables, {})
            return Poly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly._raw(self.variables, {})
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, Poly):
            c = c.constant_value()
        c = _frac(c)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to the i-th variable."""
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                terms[ne] = c * k
        return Poly._raw(self.variables, terms)

    # equality / hashing

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exp) if k)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r}, variables={self.variables})"


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    """``kind`` is one of ``add``, ``sub``, ``mul``."""
    if a.variables != b.variables:
        raise RingMismatchError(f"variable lists differ: {a.variables} vs {b.variables}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def monomials(variables: Sequence[str], max_degree: int) -> list[Poly]:
    """All monic monomials of total degree <= max_degree, lowest degree first."""
    variables = tuple(variables)
    n = len(variables)
    out = []
    for d in range(max_degree + 1):
        exps = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]
        for e in sorted(exps, reverse=True):
            out.append(Poly._raw(variables, {e: Fraction(1)}))
    return out


# --- exact rational linear algebra -------------------------------------------

def rational_det(m: Sequence[Sequence]) -> Fraction:
    a = [[_frac(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def rational_inverse(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Gauss-Jordan inverse over Q; raises NonInvertibleError when singular."""
    n = len(m)
    a = [[_frac(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise NonInvertibleError("singular rational matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


# --- automorphisms -----------------------------------------------------------

class RingAuto:
    """Affine substitution ``x_i -> sum_j L[i][j] x_j + t[i]``.

    Acting on a polynomial means substituting every variable by its image,
    so ``apply`` is an algebra endomorphism; it is an automorphism exactly
    when ``L`` is invertible.
    """

    __slots__ = ("variables", "images", "linear", "translation", "_powers", "_diag", "_hash")

    def __init__(self, variables: Sequence[str], images: Sequence[Poly]):
        self.variables = tuple(variables)
        n = len(self.variables)
        if len(images) != n:
            raise ValueError(f"expected {n} images, got {len(images)}")
        imgs = []
        for img in images:
            if not isinstance(img, Poly):
                img = Poly.constant(img, self.variables)
            if img.variables != self.variables:
                raise RingMismatchError("automorphism image over a different ring")
            if img.degree() > 1:
                raise ValueError(f"image {img} is not affine")
            imgs.append(img)
        self.images = tuple(imgs)
        z = (0,) * n
        unit = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        self.linear = tuple(tuple(img.terms.get(unit[j], Fraction(0)) for j in range(n))
                            for img in imgs)
        self.translation = tuple(img.terms.get(z, Fraction(0)) for img in imgs)
        self._powers: dict = {}
        diag = not any(self.translation) and all(
            self.linear[i][j] == 0 for i in range(n) for j in range(n) if i != j)
        self._diag = tuple(self.linear[i][i] for i in range(n)) if diag else None
        self._hash = None

    @classmethod
    def identity(cls, variables: Sequence[str]) -> "RingAuto":
        return cls(variables, Poly.gens(variables))

    @classmethod
    def scaling(cls, variables: Sequence[str], factors: Sequence) -> "RingAuto":
        gens = Poly.gens(variables)
        return cls(variables, [g * _frac(f) for g, f in zip(gens, factors)])

    @classmethod
    def from_matrix(cls, variables, linear, translation=None) -> "RingAuto":
        variables = tuple(variables)
        n = len(variables)
        translation = translation or [0] * n
        gens = Poly.gens(variables)
        imgs = []
        for i in range(n):
            img = Poly.constant(translation[i], variables)
            for j in range(n):
                img = img + gens[j] * _frac(linear[i][j])
            imgs.append(img)
        return cls(variables, imgs)

    def is_identity(self) -> bool:
        return self.images == tuple(Poly.gens(self.variables))

    def is_invertible(self) -> bool:
        return rational_det(self.linear) != 0 if self.variables else True

    def _power_of_image(self, i: int, k: int) -> Poly:
        key = (i, k)
        p = self._powers.get(key)
        if p is None:
            if k == 0:
                p = Poly.one(self.variables)
            elif k == 1:
                p = self.images[i]
            else:
                p = self._power_of_image(i, k - 1) * self.images[i]
            self._powers[key] = p
        return p

    def __call__(self, f: Poly) -> Poly:
        if f.variables != self.variables:
            raise RingMismatchError(f"variable lists differ: {f.variables} vs {self.variables}")
        if not f.terms:
            return f
        if self._diag is not None:
            d = self._diag
            terms = {}
            for e, c in f.terms.items():
                for s, k in zip(d, e):
                    if k:
                        c = c * s ** k
                terms[e] = c
            return Poly._raw(self.variables, terms)
        out = Poly.zero(self.variables)
        for e, c in f.terms.items():
            term = Poly.constant(c, self.variables)
            for i, k in enumerate(e):
                if k:
                    term = term * self._power_of_image(i, k)
            out = out + term
        return out

    apply = __call__

    def compose(self, other: "RingAuto") -> "RingAuto":
        """``self o other``: apply ``other`` first, then ``self``."""
        if other.variables != self.variables:
            raise RingMismatchError("automorphisms over different rings")
        return RingAuto(self.variables, [self(img) for img in other.images])

    def inverse(self) -> "RingAuto":
        if not self.is_invertible():
            raise NonInvertibleError("automorphism has a singular linear part")
        n = len(self.variables)
        if n == 0:
            return self
        linv = rational_inverse(self.linear)
        shift = [-sum(linv[i][j] * self.translation[j] for j in range(n)) for i in range(n)]
        return RingAuto.from_matrix(self.variables, linv, shift)

    def __pow__(self, k: int) -> "RingAuto":
        if k < 0:
            return self.inverse() ** (-k)
        out = RingAuto.identity(self.variables)
        for _ in range(k):
            out = self.compose(out)
        return out

    def __eq__(self, other):
        return isinstance(other, RingAuto) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        maps = ", ".join(f"{v}->{img}" for v, img in zip(self.variables, self.images))
        return f"RingAuto({maps})"


def auto_apply(sigma: RingAuto, f: Poly) -> Poly:
    return sigma(f)


def auto_invert(sigma: RingAuto) -> RingAuto:
    return sigma.inverse()


# --- (sigma, sigma)-derivations ----------------------------------------------

class SigmaDerivation:
    """``D = sum_mu h_mu * (sigma o d/dx_mu)``."""

    __slots__ = ("sigma", "coeffs")

    def __init__(self, sigma: RingAuto, coeffs: Sequence[Poly]):
        if len(coeffs) != len(sigma.variables):
            raise ValueError("one coefficient per ring variable is required")
        self.sigma = sigma
        self.coeffs = tuple(
            c if isinstance(c, Poly) else Poly.constant(c, sigma.variables) for c in coeffs)
        for c in self.coeffs:
            if c.variables != sigma.variables:
                raise RingMismatchError("derivation coefficient over a different ring")

    @classmethod
    def zero(cls, sigma: RingAuto) -> "SigmaDerivation":
        return cls(sigma, [Poly.zero(sigma.variables)] * len(sigma.variables))

    @classmethod
    def basis(cls, sigma: RingAuto, mu: int) -> "SigmaDerivation":
        v = sigma.variables
        return cls(sigma, [Poly.constant(int(i == mu), v) for i in range(len(v))])

    @classmethod
    def from_operator(cls, sigma: RingAuto, op) -> "SigmaDerivation":
        """Recover coefficients of a (sigma, sigma)-derivation from its values on variables."""
        return cls(sigma, [op(x) for x in Poly.gens(sigma.variables)])

    def __call__(self, f: Poly) -> Poly:
        out = Poly.zero(self.sigma.variables)
        for mu, h in enumerate(self.coeffs):
            if h.terms:
                df = f.diff(mu)
                if df.terms:
                    out = out + h * self.sigma(df)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "SigmaDerivation"):
        return SigmaDerivation(self.sigma, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "SigmaDerivation"):
        return SigmaDerivation(self.sigma, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return SigmaDerivation(self.sigma, [-a for a in self.coeffs])

    def scale(self, f) -> "SigmaDerivation":
        """Left multiplication ``f * D``."""
        return SigmaDerivation(self.sigma, [f * a for a in self.coeffs])

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, SigmaDerivation) and self.sigma == other.sigma
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.sigma, self.coeffs))

    def __repr__(self):
        parts = [f"({c})*D_{v}" for c, v in zip(self.coeffs, self.sigma.variables) if c]
        return "SigmaDerivation(" + (" + ".join(parts) or "0") + ")"


def sder_apply(D: SigmaDerivation, f: Poly) -> Poly:
    return D(f)


def sder_bracket(D1: SigmaDerivation, D2: SigmaDerivation) -> SigmaDerivation:
    """``s D1 s^-1 D2 s^-1 - s D2 s^-1 D1 s^-1``, read back on the variables."""
    sigma = D1.sigma
    if D2.sigma != sigma:
        raise RingMismatchError("derivations twisted by different automorphisms")
    inv = sigma.inverse()

    def op(f):
        a = sigma(D1(inv(D2(inv(f)))))
        b = sigma(D2(inv(D1(inv(f)))))
        return a - b

    return SigmaDerivation.from_operator(sigma, op)


def sder_ad(D: SigmaDerivation) -> SigmaDerivation:
    """``Ad_sigma(D) = sigma o D o sigma^-1``."""
    sigma = D.sigma
    inv = sigma.inverse()
    return SigmaDerivation.from_operator(sigma, lambda f: sigma(D(inv(f))))


# --- literal grammar ---------------------------------------------------------
#
#   expr  := term (('+' | '-') term)*
#   term  := unary ('*' unary)*
#   unary := ('+' | '-') unary | power
#   power := atom ('^' INT)?
#   atom  := INT ('/' INT)? | IDENT | '(' expr ')'

class PolySyntaxError(ValueError):
    """Malformed polynomial literal; ``pos`` is a 0-based character offset."""

    def __init__(self, message, text="", pos=0, expected=()):
        self.text = text
        self.pos = pos
        self.expected = tuple(expected)
        detail = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at column {pos + 1}{detail}")


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("IDENT", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", text, i,
                                  ("number", "variable", "operator"))
    toks.append(("END", "", n))
    return toks


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = tuple(variables)
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind, expected):
        tok = self.toks[self.k]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "END" else repr(tok[1])
            raise PolySyntaxError(f"unexpected {what}", self.text, tok[2], expected)
        self.k += 1
        return tok

    def parse(self):
        if self.peek()[0] == "END":
            raise PolySyntaxError("empty polynomial", self.text, 0, ("number", "variable", "("))
        p = self.expr()
        self.take("END", ("operator", "end of input"))
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0], ())[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "*":
            self.k += 1
            p = p * self.unary()
        return p

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.k += 1
            return -self.unary()
        if kind == "+":
            self.k += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.k += 1
            tok = self.take("INT", ("nonnegative integer exponent",))
            base = base ** int(tok[1])
            if self.peek()[0] == "^":
                raise PolySyntaxError("chained exponent needs parentheses", self.text,
                                      self.peek()[2], ("operator", "end of input"))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "INT":
            self.k += 1
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.k += 1
                den = self.take("INT", ("integer denominator",))
                if int(den[1]) == 0:
                    raise PolySyntaxError("zero denominator", self.text, den[2])
                value = value / int(den[1])
            return Poly.constant(value, self.variables)
        if tok[0] == "IDENT":
            self.k += 1
            if tok[1] not in self.variables:
                raise PolySyntaxError(f"unknown variable {tok[1]!r}", self.text, tok[2],
                                      self.variables or ("no variables declared",))
            return Poly.var(tok[1], self.variables)
        if tok[0] == "(":
            self.k += 1
            p = self.expr()
            self.take(")", ("')'",))
            return p
        what = "end of input" if tok[0] == "END" else repr(tok[1])
        raise PolySyntaxError(f"unexpected {what}", self.text, tok[2], ("number", "variable", "("))


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse a polynomial literal over the given variables."""
    if isinstance(text, (int, Fraction)):
        return Poly.constant(text, variables)
    return _Parser(str(text), variables).parse()
