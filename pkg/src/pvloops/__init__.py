"""Point vortices, vortex loops and pointed vortex loops in the plane.

Spectral discretization of closed curves, the symplectic forms and momentum
maps of the three vorticity objects, their orbit invariants, the polarization
and transitivity constructions, and a vortex-blob simulator.
"""

from .errors import (
    ConvergenceError,
    DegenerateCurveError,
    InvalidArgument,
    NotAreaTangentError,
    NotSimpleCurveError,
    SimulationHalted,
    SingularityError,
    TubeOverlapError,
)
from .geometry import (
    ClosedCurve,
    DecomposedTangent,
    FrameField,
    arc_measure,
    area_form,
    decompose_tangent,
    enclosed_area,
    frame,
    is_area_tangent,
    length,
    project_area_tangent,
    reach,
    recompose_tangent,
    resample,
)
from .spectral import periodic_quadrature
from .objects import (
    OrbitInvariants,
    PointedVortexLoop,
    PointVortexConfig,
    VortexLoop,
    canonical_marks,
    canonicalize,
    is_prequantizable,
    orbit_invariants,
    partial_vorticities,
    point_partition,
    realize,
    rotate_pvl,
    symmetry_period,
    total_vorticity,
    zm_canonical_rep,
)
from .hamiltonians import (
    Bump,
    HamiltonianExpr,
    TubeTerm,
    curve_constant_hamiltonian,
    eval_h,
    eval_X,
    flow,
    poisson_bracket,
    random_dictionary,
    transverse_hamiltonian,
)
from .symplectic import (
    PairingSpec,
    momentum,
    momentum_equal,
    momentum_loop,
    momentum_point,
    momentum_pointed,
    omega_emb,
    omega_gamma,
    omega_pointed,
    omega_pointed_canonical,
    pairing,
    pairing_gram_spectrum,
    polarization_pairing,
    product_embed,
    reduced_form,
)
from .transitivity import ReconstructionResult, lambda_from_tangent, reconstruct_hamiltonian
from .dynamics import BlobParams, Diagnostics, SimState, diagnostics, induced_velocity, make_state, run, step

__version__ = "0.1.0"
