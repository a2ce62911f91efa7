"""Euclidean Jordan algebras as sharp theories with purification, with
multi-slit interference, projector, norm and adjoint checks."""

from .algebra import (
    AlgebraKind,
    JordanElement,
    SpectralDecomposition,
    SpectralError,
    KindMismatchError,
    classical,
    complex_hermitian,
    cone_contains,
    eigenvalues,
    from_natural,
    jordan_product,
    quadratic_rep,
    quaternionic_hermitian,
    real_symmetric,
    spectral_decompose,
    spin_factor,
    to_natural,
    trace_inner_product,
    unit,
)
from .system import (
    Effect,
    State,
    System,
    dagger,
    diagonalize_state,
    invariant_state,
    is_pure,
    pairing,
    perfectly_distinguishable,
    random_frame,
)
from .projectors import LinearMap, SlitPartition, face_effect, projector
from .interference import (
    InterferenceReport,
    SlitExperiment,
    ValueTable,
    interference_report,
    maximize_interference,
    slit_values,
    sorkin_I,
    sorkin_defect_norm,
)

__version__ = "0.1.0"
