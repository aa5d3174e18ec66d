"""Exact symbolic Hom-Lie algebroids, bialgebroids and Courant algebroids over Q[x1..xn]."""
from .ring import Poly, RingAuto, SigmaDerivation, parse_poly, monomials
from .exterior import MultiVector, MultiForm, SemilinearMap, pair
from .homlie import HomLieAlgebra, PurelyHomLieBialgebra, verify_homlie, verify_bialgebra
from .algebroid import (HomLieAlgebroid, tangent_algebroid, action_algebroid,
                        reconstruct_from_differential, verify_algebroid)
from .identities import SampleConfig, verify_identities, verify_catalog
from .poisson import (HomPoissonStructure, verify_poisson, verify_purely_hom_poisson,
                      cotangent_algebroid, linear_poisson_on_dual)
from .bialgebroid import (HomLieBialgebroid, verify_bialgebroid, from_poisson,
                          induced_poisson, dual_bialgebroid)
from .courant import (HomCourantAlgebroid, build_double, standard_courant, verify_courant,
                      to_hom_lie_2, verify_hom_lie_2)
from .report import Check, Report

__version__ = "0.1.0"
