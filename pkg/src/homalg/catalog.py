"""Built-in example structures, each with a documented one-byte mutation that breaks it."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .algebroid import action_algebroid, tangent_algebroid
from .courant import standard_courant
from .homlie import HomLieAlgebra
from .poisson import HomPoissonStructure
from .ring import Poly, RingAuto, SigmaDerivation
from .structfile import print_structure

__all__ = ["Entry", "ENTRIES", "names", "build", "emit", "mutated"]


def _tangent():
    t = Poly.var("t", ["t"])
    return tangent_algebroid(RingAuto(["t"], [2 * t]), "tangent")


def _action():
    sigma = RingAuto.scaling(["t"], [2])
    t = Poly.var("t", ["t"])
    g = HomLieAlgebra(2, {(0, 1): [0, Fraction(-1, 4)]}, [[1, 0], [0, Fraction(1, 2)]])
    rho = [SigmaDerivation(sigma, [t]), SigmaDerivation(sigma, [1])]
    return action_algebroid(g, rho, sigma, "action")


def _xy():
    x, y = Poly.gens(["x", "y"])
    sigma = RingAuto(["x", "y"], [2 * x, 2 * y])
    return HomPoissonStructure.from_coefficients(sigma, {(0, 1): x * y}, "xy-poisson")


def _standard():
    x, y = Poly.gens(["x", "y"])
    return standard_courant(RingAuto(["x", "y"], [2 * x, 3 * y]), "standard-courant")


def _dim2():
    return HomLieAlgebra(2, {(0, 1): [0, 1]}, [[1, 0], [0, 3]])


@dataclass(frozen=True)
class Entry:
    name: str
    kind: str
    summary: str
    build: Callable
    old: str          # unique substring of the emitted text
    new: str          # same length, exactly one byte differs
    breaks: str       # what the mutation violates


ENTRIES = {e.name: e for e in (
    Entry("tangent", "algebroid", "pullback tangent bundle over Q[t], sigma: t -> 2t",
          _tangent, '- ["1/2"]', '- ["1/3"]',
          "the twist no longer matches Ad_sigma of the anchor"),
    Entry("action", "algebroid",
          "action algebroid of [e1,e2] = -1/4 e2, Phi = diag(1, 1/2) acting by (tD, D) on Q[t]",
          _action, '"-1/4"', '"-1/5"', "the bracket stops being represented by the anchor"),
    Entry("xy-poisson", "poisson", "pi = xy D_x ^ D_y over Q[x,y], sigma = (2x, 2y)",
          _xy, '"x*y"', '"x+y"', "pi is no longer Ad-invariant"),
    Entry("standard-courant", "courant",
          "phi!TM + phi!T*M over Q[x,y], sigma = (2x, 3y)",
          _standard, '- ["1/2", "0", "0", "0"]', '- ["1/3", "0", "0", "0"]',
          "the twist on the tangent part no longer matches Ad_sigma"),
    Entry("dim2-homlie", "homlie", "[e1,e2] = e2 with Phi = diag(1, 3)",
          _dim2, '- ["1", "0"]', '- ["2", "0"]', "Phi is no longer an algebra morphism"),
)}


def names():
    return list(ENTRIES)


def _entry(name) -> Entry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(ENTRIES)}") from None


def build(name):
    return _entry(name).build()


def emit(name) -> str:
    return print_structure(build(name), name)


def mutated(name) -> str:
    """The emitted text with its documented one-byte mutation applied."""
    e = _entry(name)
    text = emit(name)
    if text.count(e.old) != 1:
        raise AssertionError(f"mutation anchor {e.old!r} must occur once in {name}")
    return text.replace(e.old, e.new)
