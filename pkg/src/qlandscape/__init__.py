"""Control-landscape analysis for single-qubit gate generation.

Exact qubit propagation under piecewise-constant controls, analytic
gradient/Hessian kernels of the gate fidelity, trap-freedom classification
of target gates, saddle-point witnesses at the special control, and
Monte-Carlo probability maps of the landscape near it.
"""

from .backend import backend_name
from .canonical import (
    CanonicalSystem,
    ControlSystem,
    GateDecomposition,
    HADAMARD,
    canonical_frame,
    gate_angles,
    phase_gate,
    phase_shift_target,
    recenter_traceless,
    special_control,
    special_time,
)
from .kernels import (
    GradientProfile,
    HessianGrid,
    YAngles,
    build_hessian_grid,
    gradient_profile,
    hessian_kernel,
    l_functional,
    second_variation,
    y_angles,
)
from .montecarlo import (
    ProbabilityMap,
    SamplingConfig,
    hadamard_scan,
    neighborhood_probability,
    probability_map,
    random_control,
    rotation_invariance_check,
)
from .optimize import AscentConfig, AscentTrace, gradient_ascent, multistart
from .pauli import (
    PauliCoefficients,
    commutator_norm,
    expm_hermitian,
    operator_norm,
    pauli_compose,
    pauli_decompose,
)
from .propagation import (
    PiecewiseControl,
    Trajectory,
    interaction_v,
    objective,
    propagate,
)
from .traps import (
    SaddleWitness,
    TrapVerdict,
    classify,
    critical_point_test,
    discriminant,
    saddle_witness,
)

__version__ = "0.1.0"
