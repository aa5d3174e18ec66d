"""Algebroids used across the suite (also exercised by the acceptance run)."""
from fractions import Fraction

from homalg import catalog
from homalg.algebroid import tangent_algebroid
from homalg.poisson import HomPoissonStructure, cotangent_algebroid
from homalg.ring import Poly, RingAuto


def tangent_t():
    return catalog.build("tangent")


def action_t():
    return catalog.build("action")


def xy_poisson(lam=2):
    x, y = Poly.gens(["x", "y"])
    sigma = RingAuto(["x", "y"], [lam * x, lam * y])
    return HomPoissonStructure.from_coefficients(sigma, {(0, 1): x * y}, "xy")


def cotangent_xy():
    return cotangent_algebroid(xy_poisson())


def shear_tangent():
    x, y = Poly.gens(["x", "y"])
    return tangent_algebroid(RingAuto(["x", "y"], [2 * x + y, 3 * y]), "shear tangent")


def three():
    """The three algebroids named by the d^2 and round-trip criteria."""
    return [tangent_t(), action_t(), cotangent_xy()]


def classical_tangent():
    x, y = Poly.gens(["x", "y"])
    return tangent_algebroid(RingAuto.identity(["x", "y"]), "classical tangent")


HALF = Fraction(1, 2)
