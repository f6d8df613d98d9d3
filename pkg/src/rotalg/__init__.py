"""rotalg: exact calculus for the intermediate-subalgebra lattice of the
irrational rotation crossed product, plus numerical sandboxes.

The exact side (angles, circle sets, ideal functions) decides everything
with integer/rational arithmetic; the sandboxes (operator model, finite
group matrices) verify the algebraic machinery numerically and exactly at
desk scale.
"""

__version__ = "0.1.0"

from .angle import Angle, default_angle, golden_angle, named_angle, silver_angle
from .circleset import (Arc, CirclePoint, ClosedCircleSet, covering_index,
                        render_svg, set_from_json, set_to_json)
from .idealfn import (BasicFunction, Certificate, CIdealFunction,
                      IdealFunction, JoinFunction, WindowFunction, all_empty,
                      canonical_decomposition, check_c_closed, check_closed,
                      classify_algebra, close, closed_join, closed_join_value,
                      extend_from_positive, function_from_json,
                      function_to_json, join_many, make_basic, make_ideal_IQ,
                      meet, naive_join, omega, q_intersection,
                      simplicity_report, support, triviality, values_equal,
                      window_function)
from .sandbox import (AveragingOperator, CrossedElement, TrigPoly, adjoint,
                      apply_averaging, build_averaging, center_check,
                      derivative_extract, element_from_json, element_to_json,
                      expectation_canonical, expectation_mu, fejer_bracket,
                      membership_test, multiply, project_qn, q_of,
                      truncated_norm)
from .finitegroup import (FiniteAbelianGroup, FiniteAction,
                          augmentation_ideal, build_BI,
                          check_no_intermediate_M2, check_not_from_subgroup,
                          extend_ideal)
