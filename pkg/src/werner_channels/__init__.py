"""Nonlinear power channels rho -> rho^n / Tr[rho^n] on two-qubit Werner states."""

from .chsh import (
    ChshConfiguration,
    OptimizerSettings,
    analytic_max_bell,
    bell_correlation,
    correlator,
    maximize_bell,
    zeta,
)
from .entanglement import (
    Classification,
    EntanglementVerdict,
    classify_werner,
    entanglement_boundaries,
    negativity,
    negativity_closed,
    ppt_spectrum_closed,
)
from .errors import DimensionError, OptimizerError, SingularityError, ValidationError
from .smallmat import (
    ComplexMatrix,
    Spectrum,
    hermitian_eigenvalues,
    matrix_power,
    partial_transpose_second,
    tensor_product,
)
from .tomography import EulerAngles, Spin, TwoSpinOutcome, su2_matrix, tomogram_closed, tomogram_general, tomogram_single
from .werner import (
    Sign,
    WernerCoefficients,
    WernerParameters,
    channel_density,
    channel_spectrum,
    limit_spectrum,
    werner_coefficients,
    werner_density,
    werner_eigenbasis,
)

__version__ = "0.1.0"
