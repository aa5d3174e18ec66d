"""YAML structure files: parse with line/column diagnostics, print canonically.

Polynomials are strings in the ring grammar.  Indices in files are 1-based.
The full field reference lives in README.md ("File format").
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import yaml

from .algebroid import HomLieAlgebroid
from .bialgebroid import BialgebroidError, HomLieBialgebroid
from .courant import HomCourantAlgebroid
from .exterior import SemilinearMap
from .homlie import HomLieAlgebra, PurelyHomLieBialgebra, QuadraticHomLieAlgebra
from .poisson import HomPoissonStructure
from .ring import Poly, PolySyntaxError, RingAuto, SigmaDerivation, parse_poly, rational_det

__all__ = ["KINDS", "StructureError", "StructureFile", "parse_structure", "print_structure",
           "load_structure", "structure_of"]

KINDS = ("homlie", "bialgebra", "algebroid", "poisson", "bialgebroid", "courant")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_PAIR = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


class StructureError(ValueError):
    """Syntax or semantic problem in a structure file; ``line``/``column`` are 1-based."""

    def __init__(self, message, line=None, column=None, semantic=False):
        self.message = message
        self.line = line
        self.column = column
        self.semantic = semantic
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class StructureFile:
    kind: str
    name: str
    obj: Any
    variables: tuple = ()
    sigma: RingAuto | None = None
    extra: dict = field(default_factory=dict)


# --- node helpers ---------------------------------------------------------------

def _fail(node, message, offset=0, semantic=False):
    mark = node.start_mark
    raise StructureError(message, mark.line + 1, mark.column + 1 + offset, semantic)


def _mapping(node, what, required=(), optional=()):
    if not isinstance(node, yaml.MappingNode):
        _fail(node, f"{what} must be a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            _fail(k, f"keys of {what} must be plain scalars")
        if k.value in out:
            _fail(k, f"duplicate key {k.value!r} in {what}")
        out[k.value] = (k, v)
    if required or optional:
        allowed = set(required) | set(optional)
        for key, (kn, _) in out.items():
            if key not in allowed:
                _fail(kn, f"unknown field {key!r} in {what} (expected one of "
                          f"{', '.join(sorted(allowed))})")
        for key in required:
            if key not in out:
                _fail(node, f"{what} is missing required field {key!r}")
    return out


def _seq(node, what, length=None):
    if not isinstance(node, yaml.SequenceNode):
        _fail(node, f"{what} must be a list")
    if length is not None and len(node.value) != length:
        _fail(node, f"{what} must have {length} entries, found {len(node.value)}",
              semantic=True)
    return node.value


def _scalar(node, what):
    if not isinstance(node, yaml.ScalarNode):
        _fail(node, f"{what} must be a scalar")
    return node.value


def _int(node, what, low=0):
    text = _scalar(node, what)
    if not re.fullmatch(r"\d+", text.strip()):
        _fail(node, f"{what} must be a nonnegative integer, got {text!r}")
    value = int(text)
    if value < low:
        _fail(node, f"{what} must be at least {low}", semantic=True)
    return value


def _poly(node, variables, what):
    text = _scalar(node, what)
    try:
        return parse_poly(text, variables)
    except PolySyntaxError as exc:
        quoted = 1 if node.style in ("'", '"') else 0
        msg = str(exc).rsplit(" at column", 1)[0]
        detail = f" (expected {', '.join(exc.expected)})" if exc.expected else ""
        _fail(node, f"in {what}: {msg}{detail}", offset=exc.pos + quoted)


def _rational(node, what):
    return _poly(node, (), what).constant_value()


def _index(node, text, bound, what):
    if not re.fullmatch(r"\s*\d+\s*", text):
        _fail(node, f"{what} index must be an integer, got {text!r}")
    k = int(text)
    if not 1 <= k <= bound:
        _fail(node, f"index out of range: {what} index {k} not in 1..{bound}", semantic=True)
    return k - 1


def _pair(node, bound, what):
    m = _PAIR.match(_scalar(node, what))
    if not m:
        _fail(node, f"{what} key must look like \"i,j\", got {node.value!r}")
    out = []
    for g in m.groups():
        k = int(g)
        if not 1 <= k <= bound:
            _fail(node, f"index out of range: {what} index {k} not in 1..{bound}",
                  semantic=True)
        out.append(k - 1)
    return tuple(out)


def _matrix(node, n, what, entry):
    rows = _seq(node, what, n)
    return [[entry(c, f"{what} entry ({r + 1}, {j + 1})")
             for j, c in enumerate(_seq(row, f"{what} row {r + 1}", n))]
            for r, row in enumerate(rows)]


def _vector_table(node, n, comp_bound, what, entry):
    """``{"i,j": {k: value}}`` -> ``{(i, j): [values]}`` (0-based, dense)."""
    out = {}
    for key, (kn, vn) in _mapping(node, what).items():
        i, j = _pair(kn, n, what)
        if (i, j) in out or (j, i) in out:
            _fail(kn, f"{what} entry {key!r} given twice", semantic=True)
        vec = [None] * comp_bound
        for ck, (ckn, cvn) in _mapping(vn, f"{what} entry {key!r}").items():
            k = _index(ckn, ck, comp_bound, f"{what} component")
            vec[k] = entry(cvn, f"{what} entry {key!r} component {k + 1}")
        out[(i, j)] = vec
    return out


def _fill(vec, zero):
    return [zero if c is None else c for c in vec]


def _semantic(node, fn, *args):
    try:
        return fn(*args)
    except StructureError:
        raise
    except (ValueError, IndexError, ArithmeticError) as exc:
        _fail(node, str(exc), semantic=True)


# --- sections of the file ---------------------------------------------------------

def _ring(node):
    m = _mapping(node, "ring", ("variables", "automorphism"))
    vnode = m["variables"][1]
    variables = []
    for item in _seq(vnode, "ring.variables"):
        name = _scalar(item, "variable")
        if not _IDENT.match(name):
            _fail(item, f"invalid variable name {name!r}")
        if name in variables:
            _fail(item, f"variable {name!r} declared twice", semantic=True)
        variables.append(name)
    anode = m["automorphism"][1]
    images = [_poly(c, variables, f"automorphism image of {variables[i]}")
              for i, c in enumerate(_seq(anode, "ring.automorphism", len(variables)))]
    sigma = _semantic(anode, RingAuto, variables, images)
    if not sigma.is_invertible():
        _fail(anode, "non-invertible automorphism: the linear part is singular", semantic=True)
    return tuple(variables), sigma


def _twist(node, n, sigma, what="twist"):
    v = sigma.variables
    mat = _matrix(node, n, what, lambda c, w: _poly(c, v, w))
    phi = SemilinearMap(mat, sigma)
    det = phi.det()
    if not det:
        _fail(node, f"singular {what}: determinant is 0", semantic=True)
    if not det.is_constant():
        _fail(node, f"{what} determinant {det} is not a nonzero constant", semantic=True)
    return phi


def _anchors(node, n, sigma):
    v = sigma.variables
    out = [SigmaDerivation.zero(sigma) for _ in range(n)]
    if node is None:
        return out
    for key, (kn, vn) in _mapping(node, "anchors").items():
        i = _index(kn, key, n, "anchor")
        coeffs = [Poly.zero(v)] * len(v)
        for var, (vkn, vvn) in _mapping(vn, f"anchor {i + 1}").items():
            if var not in v:
                _fail(vkn, f"unknown variable {var!r} in anchor {i + 1}", semantic=True)
            coeffs = list(coeffs)
            coeffs[v.index(var)] = _poly(vvn, v, f"anchor {i + 1} coefficient of {var}")
        out[i] = SigmaDerivation(sigma, coeffs)
    return out


def _algebroid_part(m, n, sigma, what, name):
    v = sigma.variables
    phi = _twist(m["twist"][1], n, sigma, f"{what}twist")
    br = {}
    if "brackets" in m:
        table = _vector_table(m["brackets"][1], n, n, f"{what}brackets",
                              lambda c, w: _poly(c, v, w))
        br = {k: _fill(vec, Poly.zero(v)) for k, vec in table.items()}
    anchors = _anchors(m["anchors"][1] if "anchors" in m else None, n, sigma)
    node = m["twist"][0]
    return _semantic(node, HomLieAlgebroid, phi, br, anchors, name)


def _homlie_part(m, n, what):
    phi = _matrix(m["twist"][1], n, f"{what}twist", _rational)
    if rational_det(phi) == 0:
        _fail(m["twist"][1], f"singular {what}twist: determinant is 0", semantic=True)
    br = {}
    if "brackets" in m:
        table = _vector_table(m["brackets"][1], n, n, f"{what}brackets", _rational)
        br = {k: _fill(vec, Fraction(0)) for k, vec in table.items()}
    return phi, br


def _name(m, default):
    return _scalar(m["name"][1], "name") if "name" in m else default


def _parse_homlie(m):
    n = _int(m["dim"][1], "dim", 1)
    phi, br = _homlie_part(m, n, "")
    name = _name(m, "homlie")
    if "pairing" in m:
        form = _matrix(m["pairing"][1], n, "pairing", _rational)
        g = _semantic(m["dim"][1], QuadraticHomLieAlgebra, n, br, phi, form)
    else:
        g = _semantic(m["dim"][1], HomLieAlgebra, n, br, phi)
    return StructureFile("homlie", name, g)


def _parse_bialgebra(m):
    n = _int(m["dim"][1], "dim", 1)
    parts = []
    for key in ("g", "dual"):
        sub = _mapping(m[key][1], key, ("twist",), ("brackets",))
        phi, br = _homlie_part(sub, n, f"{key}.")
        parts.append(HomLieAlgebra(n, br, phi))
    return StructureFile("bialgebra", _name(m, "bialgebra"), PurelyHomLieBialgebra(*parts))


def _parse_algebroid(m):
    variables, sigma = _ring(m["ring"][1])
    n = _int(m["rank"][1], "rank", 1)
    name = _name(m, "algebroid")
    alg = _algebroid_part(m, n, sigma, "", name)
    return StructureFile("algebroid", name, alg, variables, sigma)


def _parse_poisson(m):
    variables, sigma = _ring(m["ring"][1])
    n = len(variables)
    coeffs = {}
    if "bivector" in m:
        for key, (kn, vn) in _mapping(m["bivector"][1], "bivector").items():
            mu, nu = _pair(kn, n, "bivector")
            if mu == nu:
                _fail(kn, "bivector has no diagonal components", semantic=True)
            c = _poly(vn, variables, f"bivector entry {key!r}")
            if mu > nu:
                mu, nu, c = nu, mu, -c
            if (mu, nu) in coeffs:
                _fail(kn, f"bivector entry {key!r} given twice", semantic=True)
            coeffs[(mu, nu)] = c
    name = _name(m, "poisson")
    p = HomPoissonStructure.from_coefficients(sigma, coeffs, name)
    return StructureFile("poisson", name, p, variables, sigma)


def _parse_bialgebroid(m):
    variables, sigma = _ring(m["ring"][1])
    n = _int(m["rank"][1], "rank", 1)
    name = _name(m, "bialgebroid")
    algs = []
    for key in ("A", "dual"):
        sub = _mapping(m[key][1], key, ("twist",), ("brackets", "anchors"))
        algs.append(_algebroid_part(sub, n, sigma, f"{key}.", "A" if key == "A" else "A*"))
    try:
        b = HomLieBialgebroid(algs[0], algs[1], name)
    except BialgebroidError as exc:
        _fail(m["dual"][1], str(exc), semantic=True)
    return StructureFile("bialgebroid", name, b, variables, sigma)


def _parse_courant(m):
    variables, sigma = _ring(m["ring"][1])
    n = _int(m["rank"][1], "rank", 1)
    v = variables
    phi = _twist(m["twist"][1], n, sigma)
    form = _matrix(m["pairing"][1], n, "pairing", lambda c, w: _poly(c, v, w))
    table = {}
    if "products" in m:
        pnode = m["products"][1]
        for key, (kn, vn) in _mapping(pnode, "products").items():
            a, b = _pair(kn, n, "products")
            if (a, b) in table:
                _fail(kn, f"products entry {key!r} given twice", semantic=True)
            vec = [Poly.zero(v)] * n
            for ck, (ckn, cvn) in _mapping(vn, f"products entry {key!r}").items():
                k = _index(ckn, ck, n, "products component")
                vec = list(vec)
                vec[k] = _poly(cvn, v, f"products entry {key!r} component {k + 1}")
            table[(a, b)] = vec
    anchors = _anchors(m["anchors"][1] if "anchors" in m else None, n, sigma)
    name = _name(m, "courant")
    c = _semantic(m["pairing"][1], HomCourantAlgebroid, phi, form, table, anchors, name)
    return StructureFile("courant", name, c, variables, sigma)


_SCHEMA = {
    "homlie": (("dim", "twist"), ("brackets", "pairing"), _parse_homlie),
    "bialgebra": (("dim", "g", "dual"), (), _parse_bialgebra),
    "algebroid": (("ring", "rank", "twist"), ("brackets", "anchors"), _parse_algebroid),
    "poisson": (("ring",), ("bivector",), _parse_poisson),
    "bialgebroid": (("ring", "rank", "A", "dual"), (), _parse_bialgebroid),
    "courant": (("ring", "rank", "twist", "pairing"), ("products", "anchors"), _parse_courant),
}


def parse_structure(text: str) -> StructureFile:
    """Parse a structure file; raises :class:`StructureError` with a position."""
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        msg = f"YAML syntax error: {exc.problem or exc.context}"
        if mark is None:
            raise StructureError(msg) from None
        raise StructureError(msg, mark.line + 1, mark.column + 1) from None
    except yaml.YAMLError as exc:
        raise StructureError(f"YAML error: {exc}") from None
    if root is None:
        raise StructureError("empty structure file", 1, 1)
    top = _mapping(root, "the document")
    if "kind" not in top:
        _fail(root, f"missing field 'kind' (one of {', '.join(KINDS)})")
    knode = top["kind"][1]
    kind = _scalar(knode, "kind")
    if kind not in _SCHEMA:
        _fail(knode, f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    required, optional, builder = _SCHEMA[kind]
    m = _mapping(root, f"a {kind} file", ("kind",) + required, ("name",) + optional)
    return builder(m)


def load_structure(path) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse_structure(fh.read())


# --- printing -------------------------------------------------------------------------

def _q(x) -> str:
    return json.dumps(str(x))


def _row(values) -> str:
    return "[" + ", ".join(_q(c) for c in values) + "]"


def _emit_matrix(lines, key, mat, indent=""):
    lines.append(f"{indent}{key}:")
    for row in mat:
        lines.append(f"{indent}  - {_row(row)}")


def _emit_table(lines, key, table, indent=""):
    """``table`` maps 0-based ``(i, j)`` to a dense component list."""
    entries = []
    for (i, j), vec in sorted(table.items()):
        comps = [f"{k + 1}: {_q(c)}" for k, c in enumerate(vec) if c]
        if comps:
            entries.append(f"{indent}  \"{i + 1},{j + 1}\": {{{', '.join(comps)}}}")
    if entries:
        lines.append(f"{indent}{key}:")
        lines.extend(entries)
    else:
        lines.append(f"{indent}{key}: {{}}")


def _emit_anchors(lines, anchors, variables, indent=""):
    entries = []
    for i, a in enumerate(anchors):
        comps = [f"{v}: {_q(c)}" for v, c in zip(variables, a.coeffs) if c]
        if comps:
            entries.append(f"{indent}  {i + 1}: {{{', '.join(comps)}}}")
    if entries:
        lines.append(f"{indent}anchors:")
        lines.extend(entries)
    else:
        lines.append(f"{indent}anchors: {{}}")


def _emit_ring(lines, sigma):
    lines.append("ring:")
    lines.append("  variables: [" + ", ".join(sigma.variables) + "]")
    lines.append("  automorphism: " + _row(sigma.images))


def _head(kind, name):
    return [f"kind: {kind}", f"name: {_q(name)}"]


def _algebroid_lines(lines, alg, indent=""):
    _emit_matrix(lines, "twist", alg.phi.matrix, indent)
    _emit_table(lines, "brackets", {k: v.vector() for k, v in alg.brackets.items()}, indent)
    _emit_anchors(lines, alg.anchors, alg.variables, indent)


def _homlie_lines(lines, g, indent=""):
    _emit_matrix(lines, "twist", g.phi, indent)
    _emit_table(lines, "brackets", g.brackets, indent)


def structure_of(obj, name=None) -> StructureFile:
    """Wrap a library object as a :class:`StructureFile`."""
    if isinstance(obj, StructureFile):
        return obj
    if isinstance(obj, PurelyHomLieBialgebra):
        return StructureFile("bialgebra", name or "bialgebra", obj)
    if isinstance(obj, HomLieAlgebra):
        return StructureFile("homlie", name or "homlie", obj)
    for cls, kind in ((HomLieAlgebroid, "algebroid"), (HomPoissonStructure, "poisson"),
                      (HomLieBialgebroid, "bialgebroid"), (HomCourantAlgebroid, "courant")):
        if isinstance(obj, cls):
            return StructureFile(kind, name or obj.name, obj, tuple(obj.variables), obj.sigma)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def print_structure(obj, name=None) -> str:
    """Canonical text; ``parse_structure(print_structure(s))`` prints back identically."""
    sf = structure_of(obj, name)
    o = sf.obj
    lines = _head(sf.kind, name or sf.name)
    if sf.kind == "homlie":
        lines.append(f"dim: {o.dim}")
        _homlie_lines(lines, o)
        if isinstance(o, QuadraticHomLieAlgebra):
            _emit_matrix(lines, "pairing", o.form)
    elif sf.kind == "bialgebra":
        lines.append(f"dim: {o.g.dim}")
        for key, g in (("g", o.g), ("dual", o.gstar)):
            lines.append(f"{key}:")
            _homlie_lines(lines, g, "  ")
    elif sf.kind == "algebroid":
        _emit_ring(lines, o.sigma)
        lines.append(f"rank: {o.rank}")
        _algebroid_lines(lines, o)
    elif sf.kind == "poisson":
        _emit_ring(lines, o.sigma)
        entries = [f"  \"{I[0] + 1},{I[1] + 1}\": {_q(c)}" for I, c in sorted(o.pi.items()) if c]
        if entries:
            lines.append("bivector:")
            lines.extend(entries)
        else:
            lines.append("bivector: {}")
    elif sf.kind == "bialgebroid":
        _emit_ring(lines, o.sigma)
        lines.append(f"rank: {o.rank}")
        for key, alg in (("A", o.A), ("dual", o.Astar)):
            lines.append(f"{key}:")
            _algebroid_lines(lines, alg, "  ")
    elif sf.kind == "courant":
        _emit_ring(lines, o.sigma)
        lines.append(f"rank: {o.rank}")
        _emit_matrix(lines, "twist", o.phi.matrix)
        _emit_matrix(lines, "pairing", o.form)
        _emit_table(lines, "products", {k: v.vector() for k, v in o.table.items()})
        _emit_anchors(lines, o.anchors, o.variables)
    return "\n".join(lines) + "\n"
