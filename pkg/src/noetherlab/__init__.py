"""Verification toolkit for Jordan-algebraic quantum and classical mechanics.

Finite-dimensional formally real Jordan algebras (real, complex and
quaternionic hermitian matrices, spin factors, the Albert algebra and
their direct sums) with spectral theory, states and thermal flows, order
derivations, Noether-equivalence checks, dynamical correspondences with
C*-algebra reconstruction, and an exact polynomial Poisson module.
"""

__version__ = "0.1.0"

from .errors import (FunctionDomainError, IncompatibleAlgebras,
                     InternalCheckError, InvalidCorrespondenceError,
                     InvalidDerivationError, NotPositiveError)
from .jordan import (AlgebraDescriptor, JordanElement, albert, direct_sum,
                     herm_c, herm_h, herm_r, jordan_product, jpower, jtrace,
                     quadratic_rep, random_element, spin, trace_form, unit,
                     zero)
from .spectral import (SpectralDecomposition, functional_calculus,
                       is_positive, jabs, jb_norm, jexp, jsqrt, spectrum)
from .states import (State, evaluate, gibbs_state, partition_function,
                     spectral_measure, star_product, state_from_density,
                     thermal_translate, trace_state)
from .derivations import (FlowResult, OrderDerivation, apply_derivation,
                          bracket_derivations, flow, integrate_flow)
from .noether import (NoetherReport, generates_symmetries, noether_check,
                      self_conservation_check)
from .reconstruction import (ComplexStarElement, DynamicalCorrespondence,
                             canonical_correspondence, complex_mul,
                             correspondence_obstruction, cstar_norm,
                             verify_cstar, zero_correspondence)
from .classical import (PolynomialObservable, parse_polynomial,
                        poisson_bracket)
