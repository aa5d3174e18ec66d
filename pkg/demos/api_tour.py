"""A short tour of the Python API on the examples used throughout the tests."""
from fractions import Fraction

from homalg.algebroid import reconstruct_from_differential, tangent_algebroid, verify_algebroid
from homalg.bialgebroid import from_poisson, induced_poisson, verify_bialgebroid
from homalg.courant import build_double, standard_courant, to_hom_lie_2, verify_courant, verify_hom_lie_2
from homalg.identities import SampleConfig, verify_catalog
from homalg.poisson import HomPoissonStructure, cotangent_algebroid, verify_poisson
from homalg.ring import Poly, RingAuto, SigmaDerivation, sder_bracket


def banner(text):
    print(f"\n== {text}")


banner("sigma-derivations over Q[t], sigma: t -> 2t")
t = Poly.var("t", ["t"])
sigma = RingAuto(["t"], [2 * t])
D = SigmaDerivation.basis(sigma, 0)
print("D(t^3) =", D(t ** 3))
print("[tD, D] =", sder_bracket(D.scale(t), D))

banner("tangent Hom-Lie algebroid")
T = tangent_algebroid(sigma, "tangent")
print("twist matrix:", T.phi.matrix)
print(verify_algebroid(T))
print("d(t^2) =", T.differential(t ** 2))
print("round trip:", reconstruct_from_differential(T.phi, T.differential).same_structure(T))
print("identity catalog passes:", verify_catalog(T, SampleConfig(3)).passed)

banner("Hom-Poisson xy over Q[x,y], sigma = (2x, 2y)")
x, y = Poly.gens(["x", "y"])
p = HomPoissonStructure.from_coefficients(RingAuto(["x", "y"], [2 * x, 2 * y]), {(0, 1): x * y}, "xy")
print("{x, y} =", p.bracket(x, y), "  {x^2, y} =", p.bracket(x ** 2, y))
print("Hom-Poisson:", verify_poisson(p).passed)
C = cotangent_algebroid(p)
print("cotangent brackets:", {k: str(v) for k, v in C.brackets.items()})

banner("bialgebroid and its Courant double")
b = from_poisson(p)
print("bialgebroid:", verify_bialgebroid(b).passed)
print("induced bivector:", induced_poisson(b).pi)
E = build_double(b)
print("double passes:", verify_courant(E, 2).passed)

banner("standard Courant algebroid and its Hom-Lie 2-algebra")
S = standard_courant(RingAuto(["x", "y"], [2 * x, 3 * y]))
print("pairing <e1, eps1> =", S.pairing(S.basis(0), S.basis(2)))
print(verify_hom_lie_2(to_hom_lie_2(S, 1), 1))
