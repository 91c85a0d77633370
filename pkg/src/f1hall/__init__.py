"""Exact computations with the elliptic Hall algebra at t = q, Hall algebras of
pointed modules over finite commutative monoids, and the toric atlas of the
monoidal Tate curve."""

from .eha import EHAElement, commutator, pbw_normal_form, sl2_act, u, w
from .hall import HallAlgebra, HallElement, TensorElement, third_iso_check
from .laurent import LaurentPoly, NotDivisible, exact_divide, specialize
from .lattice import LatticeVec, SL2Matrix, interior_points, order_key
from .monoid import FiniteMonoid, PointedModule, field_with_one_element, truncated_polynomial_monoid
from .parser import eval_text, parse
from .series import FormalSeries
from .tate import cone_dual_monoid, glue_map, spec_mon, z_action
from .theta import alpha, alpha_ratio_limit, quantum_int, theta_poly

__version__ = "0.1.0"
