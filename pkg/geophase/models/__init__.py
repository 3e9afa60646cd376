from .state import (
    BlochState,
    DensityMatrix2,
    Picture,
    SpectralPair,
    Trajectory,
    bloch_vector,
    eigensystem,
    min_eigenvalue,
    pure_state,
    purity,
    spectral_arrays,
    to_schroedinger,
)
from .params import (
    CorrelatedProjection,
    MarkovianProjection,
    MemoryKernel,
    ModelKind,
    ModelParams,
    PostMarkovian,
    XiBranch,
)
from .results import (
    Deviation,
    PhaseResult,
    QuadratureConfig,
    QuadratureScheme,
    SolverConfig,
    SolverMethod,
    SweepSpec,
)
