"""Generalized amplitude amplification, coherence quantifiers and their bounds."""

from ._ampcoh import *  # noqa: F401,F403
from ._ampcoh import (
    ClosedFormUnavailable,
    DensityMatrix,
    DomainError,
    Error,
    InvalidScenario,
    MarkedSet,
    PureState,
)

__version__ = "0.1.0"
