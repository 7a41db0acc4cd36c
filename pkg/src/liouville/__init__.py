"""Exact germ classification and form-preserving dynamics.

The package classifies univariate function germs under the derivative-
weighted contact action g = (1/phi')(f o phi), realizes each germ as the
plane field (-x f'(y), f(y)) preserving the 1-form x dy, lifts those fields
to strictly contact fields of R^3 with the form dz + x dy, constructs
normalizing diffeomorphisms and transversal unfoldings, and explores flows
and bifurcations numerically.  The algebra is exact end to end (rationals,
extended by real radicals exactly where a normalization scale demands one);
floating point enters only in the trajectory integrators.
"""

from .errors import (ComponentsDependOnZ, FamilyMismatch, HamiltonianDependsOnZ,
                     InternalInvariantError, KindMismatch, LiouvilleError,
                     NonzeroConstantTerm, NotInSpan, NotLiouville, ParseError,
                     ResonantMultiplier, ZeroConstantTerm, ZeroGerm,
                     ZeroLinearPart)
from .jets import DEFAULT_ORDER, DiffeoGerm, Jet
from .radicals import Radical, nth_root
from .germs import (ClassKind, GermClass, NormalForm, classify, codimension,
                    conjugacy_invariants, is_determined, normal_form,
                    normalizing_diffeo, residue, rk_action, tangent_space)
from .polys import SparsePoly, bivar, trivar
from .plane import (Equilibrium, EquilibriumType, FieldKind, GermFamily,
                    LiouvilleDiffeo, PlaneField, constant_family, equilibria,
                    field_from_germ, lie_residual, linearize_diffeo, pushforward,
                    q_family, singularity_tangent_space, t_family,
                    time_reversal_equivalent, transversality, unfolding_q,
                    unfolding_t)
from .contact import (Field3, HomBasis, LinearizationStep, ad_matrix,
                      decompose_liouville, eigenvalue_of, field_from_hamiltonian,
                      flow_germ, germ_route_linearization, homogeneous_basis,
                      induced_plane_diffeo, lie_bracket, lie_residual3,
                      lift_plane_field, linear_field, linearize_field,
                      liouville_homogeneous, project_to_plane, reeb_field)
from .dynamics import (PortraitData, SweepResult, Trajectory, integrate,
                       parameter_sweep, phase_portrait, portrait_svg)
from .expr import parse_germ, parse_plane_polynomial, parse_polynomial

__version__ = "0.1.0"
