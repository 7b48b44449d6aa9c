"""sympspin: exact symplectic spinor calculus with machine-verified identities.

The package computes over Q(i) with arbitrary-precision rationals, so every
identity check is an exact zero test.  See the README for the module map and
the CLI (`sympspin --help`) for the verification suites.
"""

from .exact import (
    ExactMatrix,
    GaussianRational,
    RandomStream,
    nullspace_basis,
    rref,
    sample_rational_vector,
    solve_linear,
)
from .symplectic import (
    SymplecticSpace,
    omega_inverse,
    omega_pairing,
    raise_lower_index,
    standard_symplectic_form,
)
from .spinors import (
    DegreeCapError,
    PolySpinor,
    SpLieElement,
    clifford_basis,
    clifford_vector,
    parity_decompose,
    sp_action,
)
from .forms import (
    SpinorForm,
    contract,
    decompose_two_form,
    op_H,
    op_X,
    op_Y,
    project,
    sp_action_form,
    wedge,
    wedge_covector,
)
from .curvature import (
    CurvatureTensor,
    RicciTensor,
    WeylTensor,
    check_symmetries,
    random_curvature,
    random_weyl,
    ricci_of,
    sigma_tilde_of,
    weyl_of,
)
from .connections import (
    CurvatureField,
    Poly,
    PolynomialConnection,
    check_connection_axioms,
    curvature_field_of,
    evaluate_curvature_at,
    random_connection,
)
from .verify import (
    ActionReport,
    lemma_suites,
    spinor_curvature_action,
    verify_corollary11,
    verify_symbol_complex,
    verify_theorem9,
    verify_theorem10,
)
from .cli import RunConfig, SuiteReport, emit_report, run_suite

__version__ = "0.1.0"
