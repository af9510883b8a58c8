"""Exact Tate spectral sequence engine and duality shift calculator at
height n = p - 1."""

from .chart_render import ChartSpec, diff_overlay, render
from .cp_rep import (
    CpModule,
    JordanProfile,
    TateDims,
    freeness_check,
    jordan_decompose,
    orbit_product,
    symmetric_power,
    tate_cohomology,
    u_k_module,
    vk_nilpotence_check,
)
from .duality_shifts import (
    ShiftReport,
    periodicity,
    shift_det_route,
    shift_dual_route,
    shifts_table,
    verify_tate_vanishing,
)
from .errors import (
    InvalidInput,
    ResourceGuard,
    RouteDisagreement,
    TatedualError,
    VerificationFailure,
)
from .mod_arith import (
    HeightParams,
    congruence_check,
    det_tau_exponent,
    height_params,
    invariant_delta_exponent,
    invariant_delta_residue,
)
from .tate_engine import (
    MonomialClass,
    Page,
    SequenceRecord,
    TwistedPage,
    dualize,
    e2_page,
    find_cycle_generator,
    hfpss_view,
    hoss_view,
    run_to_einfty,
    turn_page,
    twisted_e2,
)

__version__ = "0.1.0"
