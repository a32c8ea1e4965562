"""Exact non-Archimedean spectral theory on finite-dimensional p-adic spaces."""

from ._backend import BACKEND
from .errors import (AxiomViolation, InputError, NoSquareRootError, PrimeMismatchError,
                     UnsupportedError)
from .gelfand import (BElement, Character, GelfandTable, Projector, b_norm, characters,
                      d_spectrum_finite, gelfand, gelfand_inverse, is_idempotent_diagonal)
from .measure import (ClopenAlgebra, KMeasure, ProjectionValuedMeasure, StepFunction,
                      is_regular, measure_norm, n_mu_weight, pvm_eval, pvm_new, scalar_measure,
                      spectral_integral, support)
from .operators import (Operator, adjoint_omega, adjoint_pi, apply, check_algebra_axioms,
                        compose, is_self_adjoint, is_self_adjoint_pi, op_norm,
                        square_norm_witness, transpose)
from .scalar import LogNorm, PadicScalar, add, hensel_sqrt, inv, mul, neg, padic_abs
from .space import (PiStructure, Vector, WeightedSpace, f_omega, is_isotropic,
                    is_orthogonal_family, make_pi_structure, vector_norm)
from .theorems import (FiniteRepresentation, MultiplicationRep, eigenrange_check, faithfulness,
                       multiplication_rep, pvm_from_rep, rep_from_pvm, simultaneous_decompose,
                       spectral_decompose_diagonal)

__version__ = "0.1.0"
