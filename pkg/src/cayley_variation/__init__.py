"""Numerical checks for second-variation arguments on products of projective spaces.

Octonion arithmetic, trace inequalities, octonionic lines, the Cayley plane
curvature tensor, summed second-variation integrands and the eigenvalue
extremization behind the octonionic projection inequality.
"""

from .cayley_plane_curvature import (
    CurvatureScale,
    curvature_diag,
    curvature_full,
    gauss_2ff_inner,
    sectional_curvature,
)
from .dense_linear import (
    frobenius_inner,
    frobenius_norm,
    nonzero_spectrum_match,
    random_orthogonal,
    row_space_equal,
    sym_eig,
)
from .division_algebra import Octonion, check_identities, oct_mul
from .octo_extremizer import (
    LineDecomposition,
    decompose,
    eigen_f,
    eigen_f_gradient,
    falsify_search,
    maximize_f,
    octo_defect,
)
from .octonionic_lines import LineParam, hopf, line_basis, line_gram, line_through
from .second_variation import (
    ComplexStructure,
    ProductFrame,
    QuaternionicStructure,
    VariationReport,
    complex_integrand,
    octonionic_integrand_normal,
    octonionic_integrand_tangent,
    odd_dimension_certificate,
    quaternionic_integrand,
    raw_2ff_sum,
    splitting_check,
)
from .tolerance import DEFAULT_TOL, Tolerance
from .trace_inequalities import key_defect, sum_defect

__version__ = "0.1.0"
