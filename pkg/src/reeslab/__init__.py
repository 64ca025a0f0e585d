"""Exact-arithmetic finite-generation tests for Cox rings of blown-up
triangle toric surfaces."""

from .algebra import (
    AlgebraContext,
    AlgebraElement,
    DecompositionCertificate,
    canonicalize_from_laurent,
    context_for,
    dump_element,
    invert_unit,
    multiply,
    subspace_decompose,
    w_pow_expand,
    x_basis,
    xi_power,
    z_element,
)
from .cohomology import (
    CohomReport,
    DSetReport,
    FactorizationOutcome,
    ObstructionMatrix,
    char0_b2_check,
    cohomology_dims,
    d_set,
    factorization_search,
    per_level_chi,
)
from .decision import (
    FG_EXACT,
    FG_WITNESS,
    NO_WITNESS_UP_TO_BOUNDS,
    NOT_FG_EXACT,
    ScanRow,
    SearchBounds,
    SuiteItem,
    Verdict,
    decide,
    family_triangle,
    reference_example_suite,
    scan_family,
)
from .fields import RATIONALS, FieldSpec
from .geometry import (
    ConeTables,
    EmuReport,
    NormalizedTriangle,
    PeriodData,
    ToricData,
    cone_tables,
    delta_prime,
    emu_check,
    enumerate_polygon_points,
    normalize_triangle,
    overlaps_and_gaps,
    pa_member,
    pb_member,
    period_data,
    read_triangle_file,
    toric_data,
)

__version__ = "0.1.0"
