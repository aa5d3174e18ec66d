"""Graded exterior algebra over a free module of finite rank.

Basis multivectors ``e_I`` and forms ``e^I`` are keyed by strictly increasing
0-based index tuples.  The pairing is the determinant pairing, so
``<e^I, e_J> = delta_IJ`` on sorted tuples.

``SemilinearMap`` models a sigma-semilinear bundle map
``phi(f v) = sigma(f) phi(v)`` given by a polynomial matrix on the basis.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .ring import NonInvertibleError, Poly, RingAuto, RingMismatchError

__all__ = [
    "GradeError",
    "MultiVector",
    "MultiForm",
    "SemilinearMap",
    "merge_sign",
    "wedge",
    "pair",
    "contract",
    "semilinear_apply",
    "semilinear_invert",
    "semilinear_dagger",
    "interior",
    "poly_det",
]


class GradeError(ValueError):
    """Grades or kinds of the operands do not fit the operation."""


def merge_sign(a: tuple, b: tuple):
    """Sign of the shuffle sorting ``a + b``, and the merged tuple.

    Returns ``(0, None)`` when the tuples share an index.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    inv = 0
    for x in a:
        for y in b:
            if x == y:
                return 0, None
            if x > y:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(a + b))


def _sort_sign(idx):
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
            elif idx[j] == idx[j + 1]:
                return 0, None
    for j in range(len(idx) - 1):
        if idx[j] == idx[j + 1]:
            return 0, None
    return sign, tuple(idx)


def _as_poly(c, variables):
    if isinstance(c, Poly):
        if c.variables != variables:
            raise RingMismatchError(f"coefficient over {c.variables}, expected {variables}")
        return c
    return Poly.constant(c, variables)


class _Graded:
    """Homogeneous element of the exterior algebra (shared by both kinds)."""

    __slots__ = ("rank", "grade", "variables", "components", "_hash")
    kind = "?"

    def __init__(self, rank: int, grade: int, components: Mapping | None = None,
                 variables: Sequence[str] = ()):
        self.rank = int(rank)
        self.grade = int(grade)
        self.variables = tuple(variables)
        if self.grade < 0 or self.grade > self.rank:
            raise GradeError(f"grade {grade} outside 0..{rank}")
        comps: dict = {}
        for idx, c in (components or {}).items():
            idx = (idx,) if isinstance(idx, int) else tuple(idx)
            if len(idx) != self.grade:
                raise GradeError(f"index tuple {idx} has length != grade {self.grade}")
            if any(i < 0 or i >= self.rank for i in idx):
                raise IndexError(f"index tuple {idx} out of range for rank {self.rank}")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            c = _as_poly(c, self.variables)
            comps[key] = comps[key] + c * sign if key in comps else c * sign
        self.components = {k: v for k, v in comps.items() if v.terms}
        self._hash = None

    @classmethod
    def _new(cls, rank, grade, variables, comps):
        obj = object.__new__(cls)
        obj.rank = rank
        obj.grade = grade
        obj.variables = variables
        obj.components = comps
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, rank, grade, variables=()):
        return cls._new(rank, grade, tuple(variables), {})

    @classmethod
    def basis(cls, rank, idx, variables=(), coeff=1):
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        return cls(rank, len(idx), {idx: coeff}, variables)

    @classmethod
    def scalar(cls, f: Poly, rank: int):
        return cls._new(rank, 0, f.variables, {(): f} if f.terms else {})

    @classmethod
    def from_vector(cls, coeffs: Sequence, variables=()):
        variables = tuple(variables)
        comps = {}
        for i, c in enumerate(coeffs):
            c = _as_poly(c, variables)
            if c.terms:
                comps[(i,)] = c
        return cls._new(len(coeffs), 1, variables, comps)

    # access

    def coeff(self, idx) -> Poly:
        idx = (idx,) if isinstance(idx, int) else tuple(idx)
        sign, key = _sort_sign(idx)
        if not sign:
            return Poly.zero(self.variables)
        c = self.components.get(key)
        if c is None:
            return Poly.zero(self.variables)
        return c if sign > 0 else -c

    def vector(self) -> list[Poly]:
        """Coefficient list of a grade-1 element."""
        if self.grade != 1:
            raise GradeError("vector() needs grade 1")
        z = Poly.zero(self.variables)
        return [self.components.get((i,), z) for i in range(self.rank)]

    def scalar_value(self) -> Poly:
        if self.grade != 0:
            raise GradeError("scalar_value() needs grade 0")
        return self.components.get((), Poly.zero(self.variables))

    def items(self):
        return sorted(self.components.items())

    def is_zero(self) -> bool:
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def max_degree(self) -> int:
        return max((c.degree() for c in self.components.values()), default=-1)

    # arithmetic

    def _check(self, other, same_grade=True):
        if type(other) is not type(self):
            raise GradeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.rank != self.rank:
            raise GradeError(f"rank mismatch {self.rank} vs {other.rank}")
        if other.variables != self.variables:
            raise RingMismatchError(f"variable lists differ: {self.variables} vs {other.variables}")
        if same_grade and other.grade != self.grade:
            raise GradeError(f"grade mismatch {self.grade} vs {other.grade}")

    def __add__(self, other):
        self._check(other)
        if not other.components:
            return self
        comps = dict(self.components)
        for k, v in other.components.items():
            s = comps.get(k)
            if s is None:
                comps[k] = v
            else:
                s = s + v
                if s.terms:
                    comps[k] = s
                else:
                    del comps[k]
        return self._new(self.rank, self.grade, self.variables, comps)

    def __neg__(self):
        return self._new(self.rank, self.grade, self.variables,
                         {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        """Multiply every coefficient by the function (or number) ``f``."""
        if isinstance(f, Poly):
            if f.variables != self.variables:
                raise RingMismatchError("scaling function over a different ring")
            if not f.terms:
                return self.zero(self.rank, self.grade, self.variables)
        elif not f:
            return self.zero(self.rank, self.grade, self.variables)
        comps = {}
        for k, v in self.components.items():
            p = v * f
            if p.terms:
                comps[k] = p
        return self._new(self.rank, self.grade, self.variables, comps)

    def __rmul__(self, f):
        if isinstance(f, (Poly, int, Fraction)):
            return self.scale(f)
        return NotImplemented

    def __mul__(self, f):
        if isinstance(f, (Poly, int, Fraction)):
            return self.scale(f)
        return NotImplemented

    def wedge(self, other):
        self._check(other, same_grade=False)
        grade = self.grade + other.grade
        if grade > self.rank:
            # past the top degree the product vanishes; keep the nominal grade
            return self._new(self.rank, grade, self.variables, {})
        comps: dict = {}
        for a, ca in self.components.items():
            for b, cb in other.components.items():
                sign, key = merge_sign(a, b)
                if not sign:
                    continue
                p = ca * cb
                if sign < 0:
                    p = -p
                s = comps.get(key)
                comps[key] = p if s is None else s + p
        return self._new(self.rank, grade, self.variables,
                         {k: v for k, v in comps.items() if v.terms})

    def map_coeffs(self, fn):
        comps = {}
        for k, v in self.components.items():
            p = fn(v)
            if p.terms:
                comps[k] = p
        return self._new(self.rank, self.grade, self.variables, comps)

    def dual(self):
        """Same components read in the other kind (sections of A* as forms of A)."""
        other = MultiForm if isinstance(self, MultiVector) else MultiVector
        return other._new(self.rank, self.grade, self.variables, dict(self.components))

    # comparison / display

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.rank == other.rank and self.grade == other.grade
                and self.variables == other.variables and self.components == other.components)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.rank, self.grade, self.variables,
                               frozenset(self.components.items())))
        return self._hash

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for k, v in self.items():
            label = self._label(k)
            parts.append(f"({v})" if not label else f"({v})*{label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}(rank={self.rank}, grade={self.grade}, {self})"


class MultiVector(_Graded):
    __slots__ = ()
    kind = "vector"

    @staticmethod
    def _label(k):
        return "e[" + ",".join(str(i + 1) for i in k) + "]" if k else ""


class MultiForm(_Graded):
    __slots__ = ()
    kind = "form"

    @staticmethod
    def _label(k):
        return "e^[" + ",".join(str(i + 1) for i in k) + "]" if k else ""


def wedge(a, b):
    return a.wedge(b)


def pair(xi: MultiForm, x: MultiVector) -> Poly:
    """Determinant pairing ``<xi, x>``."""
    if not isinstance(xi, MultiForm) or not isinstance(x, MultiVector):
        raise GradeError("pair expects (MultiForm, MultiVector)")
    if xi.grade != x.grade or xi.rank != x.rank:
        raise GradeError(f"pairing grade {xi.grade} with grade {x.grade}")
    if xi.variables != x.variables:
        raise RingMismatchError("pairing over different rings")
    out = Poly.zero(x.variables)
    small, big = (xi, x) if len(xi.components) <= len(x.components) else (x, xi)
    for k, v in small.components.items():
        w = big.components.get(k)
        if w is not None:
            out = out + v * w
    return out


def contract(x: MultiVector, xi: MultiForm, strict: bool = True) -> MultiForm:
    """Untwisted contraction ``c`` with ``<c, Y> = <xi, x ^ Y>``."""
    if x.grade > xi.grade:
        if strict:
            raise GradeError(f"cannot contract grade {x.grade} into grade {xi.grade}")
        return MultiForm.zero(xi.rank, 0, xi.variables)
    if x.rank != xi.rank or x.variables != xi.variables:
        raise GradeError("contraction between incompatible modules")
    grade = xi.grade - x.grade
    comps: dict = {}
    for J, a in x.components.items():
        sJ = set(J)
        for I, b in xi.components.items():
            if not sJ.issubset(I):
                continue
            rest = tuple(i for i in I if i not in sJ)
            sign, _ = merge_sign(J, rest)
            p = a * b
            if sign < 0:
                p = -p
            s = comps.get(rest)
            comps[rest] = p if s is None else s + p
    return MultiForm._new(xi.rank, grade, xi.variables,
                          {k: v for k, v in comps.items() if v.terms})


# --- semilinear maps ---------------------------------------------------------

def poly_det(m: Sequence[Sequence[Poly]], variables=()) -> Poly:
    n = len(m)
    if n == 0:
        return Poly.one(variables)
    memo: dict = {}
    return _minor(m, tuple(range(n)), tuple(range(n)), memo, variables)


def _minor(m, rows, cols, memo, variables):
    if not rows:
        return Poly.one(variables)
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    if len(rows) == 1:
        val = m[rows[0]][cols[0]]
    else:
        val = Poly.zero(variables)
        r0, rest = rows[0], rows[1:]
        for t, c in enumerate(cols):
            a = m[r0][c]
            if not a.terms:
                continue
            sub = _minor(m, rest, cols[:t] + cols[t + 1:], memo, variables)
            if sub.terms:
                term = a * sub
                val = val - term if t & 1 else val + term
    memo[key] = val
    return val


class SemilinearMap:
    """``phi(e_j) = sum_i P[i][j] e_i`` with ``phi(f v) = twist(f) phi(v)``.

    Acts on either kind of graded element through the k-th exterior power:
    ``phi(e_J) = sum_I minor(P, I, J) e_I``.
    """

    __slots__ = ("matrix", "twist", "rank", "variables", "_images", "_memo", "_inv", "_dag")

    def __init__(self, matrix: Sequence[Sequence], twist: RingAuto):
        self.twist = twist
        self.variables = twist.variables
        self.rank = len(matrix)
        rows = []
        for row in matrix:
            if len(row) != self.rank:
                raise ValueError("twist matrix must be square")
            rows.append(tuple(_as_poly(c, self.variables) for c in row))
        self.matrix = tuple(rows)
        self._images: dict = {}
        self._memo: dict = {}
        self._inv = None
        self._dag = None

    @classmethod
    def identity(cls, rank: int, twist: RingAuto) -> "SemilinearMap":
        return cls([[int(i == j) for j in range(rank)] for i in range(rank)], twist)

    @classmethod
    def diagonal(cls, entries, twist: RingAuto) -> "SemilinearMap":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], twist)

    def det(self) -> Poly:
        return poly_det(self.matrix, self.variables)

    def is_invertible(self) -> bool:
        d = self.det()
        return d.is_constant() and bool(d) and self.twist.is_invertible()

    def column(self, j) -> list[Poly]:
        return [self.matrix[i][j] for i in range(self.rank)]

    def _image(self, J):
        got = self._images.get(J)
        if got is None:
            from itertools import combinations
            got = {}
            for I in combinations(range(self.rank), len(J)):
                m = _minor(self.matrix, I, J, self._memo, self.variables)
                if m.terms:
                    got[I] = m
            self._images[J] = got
        return got

    def __call__(self, x):
        if x.rank != self.rank:
            raise GradeError(f"rank mismatch: map {self.rank}, element {x.rank}")
        if x.variables != self.variables:
            raise RingMismatchError("map and element over different rings")
        sigma = self.twist
        comps: dict = {}
        for J, c in x.components.items():
            sc = sigma(c)
            for I, m in self._image(J).items():
                p = sc * m
                s = comps.get(I)
                comps[I] = p if s is None else s + p
        return type(x)._new(x.rank, x.grade, x.variables,
                            {k: v for k, v in comps.items() if v.terms})

    apply = __call__

    def on_basis(self, j: int, kind=None):
        kind = kind or MultiVector
        return kind.from_vector(self.column(j), self.variables)

    def inverse(self) -> "SemilinearMap":
        if self._inv is None:
            d = self.det()
            if not d.is_constant() or not d:
                raise NonInvertibleError(f"determinant {d} is not a nonzero rational")
            sinv = self.twist.inverse()
            inv = _adjugate_over_det(self.matrix, d.constant_value(), self.variables)
            self._inv = SemilinearMap([[sinv(c) for c in row] for row in inv], sinv)
            self._inv._inv = self
        return self._inv

    def dagger(self) -> "SemilinearMap":
        """Map on forms with ``<dagger(xi), phi(x)> = twist(<xi, x>)``."""
        if self._dag is None:
            d = self.det()
            if not d.is_constant() or not d:
                raise NonInvertibleError(f"determinant {d} is not a nonzero rational")
            inv = _adjugate_over_det(self.matrix, d.constant_value(), self.variables)
            n = self.rank
            self._dag = SemilinearMap([[inv[j][i] for j in range(n)] for i in range(n)],
                                      self.twist)
        return self._dag

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """``self o other``."""
        n = self.rank
        s = self.twist
        om = [[s(c) for c in row] for row in other.matrix]
        prod = [[sum((self.matrix[i][k] * om[k][j] for k in range(n)),
                     Poly.zero(self.variables)) for j in range(n)] for i in range(n)]
        return SemilinearMap(prod, self.twist.compose(other.twist))

    def __eq__(self, other):
        return (isinstance(other, SemilinearMap) and self.matrix == other.matrix
                and self.twist == other.twist)

    def __hash__(self):
        return hash((self.matrix, self.twist))

    def __repr__(self):
        rows = "; ".join(", ".join(str(c) for c in row) for row in self.matrix)
        return f"SemilinearMap([{rows}], twist={self.twist!r})"


def _adjugate_over_det(m, det: Fraction, variables):
    n = len(m)
    memo: dict = {}
    full = tuple(range(n))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            # inverse[i][j] = (-1)^(i+j) minor(j, i) / det
            rows = full[:j] + full[j + 1:]
            cols = full[:i] + full[i + 1:]
            c = _minor(m, rows, cols, memo, variables) if n > 1 else Poly.one(variables)
            if (i + j) & 1:
                c = -c
            row.append(c * (1 / det))
        out.append(row)
    return out


def semilinear_apply(phi: SemilinearMap, x):
    return phi(x)


def semilinear_invert(phi: SemilinearMap) -> SemilinearMap:
    return phi.inverse()


def semilinear_dagger(phi: SemilinearMap) -> SemilinearMap:
    return phi.dagger()


def interior(x: MultiVector, xi: MultiForm, phi: SemilinearMap, strict: bool = True) -> MultiForm:
    """``(i_X xi)(y...) = (phi^dagger xi)(phi(X), y...)``."""
    if x.grade > xi.grade:
        if strict:
            raise GradeError(f"interior product of grade {x.grade} into grade {xi.grade}")
        return MultiForm.zero(xi.rank, 0, xi.variables)
    return contract(phi(x), phi.dagger()(xi))
