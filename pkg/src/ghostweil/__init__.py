"""Exact symbolic engine for free-field vertex algebras.

Fermionic (bc) and bosonic (beta-gamma) ghost systems over the rationals:
normally ordered products, circle products and singular OPEs, Virasoro
elements with exact central charges, and the BRST cohomology of the
coupled system together with its induced dot and bracket structure.
"""

from .fock import (
    B, C, BETA, GAMMA, KIND_NAMES, GradingScheme, State,
    apply_generator_mode, canonicalize, enumerate_basis, grade,
    homogeneous_components, mode, monomial_key, single, vacuum, zero,
)
from .engine import (
    circle, derive, derive_pow, field_mode_apply, general_binomial,
    iterated_wick, max_annihilator_index, nonassoc_defect, ope_singular,
    wick,
)
from .ghosts import (
    VirasoroElement, central_charge, generator, ghost_current_B,
    ghost_current_F, verify_virasoro, virasoro_E, virasoro_S,
)
from .weil import (
    BrstContext, brst_context, class_coordinate, class_x, class_y,
    cohomology_dim, cohomology_equal, cohomology_table, in_derivative_subspace,
    is_coboundary, lz_bracket, odd_power_rep, power_rep, q_apply, q_matrix,
    q_square_obstruction,
)
from .exprs import ParseError, eval_expr, parse, print_expr, state_json, state_text

__version__ = "0.1.0"
