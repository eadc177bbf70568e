"""Exact verifier for diagonal degree-2 del Pezzo surface arithmetic.

Layers, bottom up: exact integer lattices (exactalg), the Q(zeta8) scalar
tower (cyclo, splitscalar), F_p polynomials with the shared text grammar
(fppoly), the 56-curve geometry with its Galois actions (geometry), matrix
group closures and invariant lattices (galois_lattice), quaternion-symbol
residues (residues), and the arrangement verifier (refvar).  The cli module
exposes all of it as the `dp2` command.
"""

from .cyclo import Cyclo
from .exactalg import (
    IntLattice,
    IntMatrix,
    hnf,
    index_in,
    intersect,
    kernel_basis,
    saturate,
    snf,
    solve_integral,
)
from .fppoly import (
    FpPoly,
    gcd_multivar,
    is_square_mod_constants,
    parse,
    restrict_to_line,
    split_into_linear,
    squarefree_decomposition,
)
from .galois_lattice import (
    MatrixGroup,
    group_closure,
    invariant_report,
    invariant_sublattice,
    orbit_sum_sublattice,
    orbits,
)
from .geometry import (
    CASE_NONSQUARE,
    CASE_SQUARE_D,
    CurveLabel,
    ExceptionalCurve,
    anticanonical_class,
    apply_galois,
    class_in_basis,
    enumerate_curves,
    galois_matrix,
    generators,
    gram_basis,
    intersection_number,
    surface,
    verify_norm_identity,
)
from .refvar import (
    ArrangementConfig,
    alpha_certificate,
    build_equation,
    builtin_example,
    check_conditions,
    config_from_text,
    corollary_family,
    local_certificates,
    make_config,
    normalize_local_form,
    verify_all,
)
from .residues import (
    DivisorialValuation,
    SquareClass,
    SymbolClass,
    ramification_divisor,
    residue,
    square_class_trivial,
    valuation,
)
from .splitscalar import SplitScalar

__version__ = "0.1.0"
