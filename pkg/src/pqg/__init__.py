"""Path-space holonomy and prequantum-groupoid phase arithmetic on
concrete parasymplectic spaces (symplectic planes, the round sphere,
cone orbifolds)."""

__version__ = "0.1.0"

from .spaces import (  # noqa: F401
    Point,
    SpaceModel,
    cone,
    euclidean,
    eval_one_form,
    eval_two_form,
    geodesic,
    make_point,
    orbifold_canonical,
    points_equal,
    project_tangent,
    sphere2,
)
from .paths import (  # noqa: F401
    SampledHomotopy,
    SampledPath,
    concat,
    concat_homotopy,
    constant_path,
    eval_path,
    linear_homotopy,
    make_path,
    resample,
    reverse,
    reverse_homotopy_s,
    reverse_homotopy_t,
    smash_reparam,
    stack_homotopies,
)
from .integrator import (  # noqa: F401
    PathFamily,
    QuadratureConfig,
    convergence_order,
    k_pairing,
    kdk_identity_residual,
    line_integral,
    pairing_additivity_residual,
    pairwise_sum,
    sphere_sweep_integral,
)
from .prequantum import (  # noqa: F401
    Morphism,
    PeriodGroup,
    Phase,
    ReferenceScheme,
    cap_contraction,
    class_of_path,
    cocycle_phi,
    compose,
    curvature_check,
    cyclic_group,
    detect_periods,
    exact_lambda_eval,
    exact_morphism,
    generated_group,
    identity_morphism,
    inverse,
    isotropy_phase,
    isotropy_surjectivity_witness,
    latitude_loop,
    phase_add,
    phase_eq,
    phase_neg,
    standard_period_group,
    trivialization_correction,
    zero_group,
)
from .symmetry import (  # noqa: F401
    Diffeo,
    LieGenerator,
    MomentValue,
    act_homotopy,
    act_path,
    act_point,
    cocycle_invariance_residual,
    moment_additivity_residual,
    omega_invariance_residual,
    one_point_moment,
    paths_moment,
    two_point_moment,
)
