"""Three-mode Tavis-Cummings laboratory.

Exact block diagonalization of the trilinear boson Hamiltonian
``w1 n_a + w2 n_b + w3 n_c + g (a^+ b c + a b^+ c^+)`` next to the closed-form
spectra obtained from the Bogoliubov, normal-mode, SU(1,1) and SU(2) tilting
treatments, with the Perelomov coherent-state machinery they rely on.
"""

from .errors import (
    AccuracyError,
    DomainError,
    InvalidArgument,
    MethodInapplicable,
    TCError,
    UnsupportedOperation,
)
from .spectra import ModelParams

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "DomainError",
    "InvalidArgument",
    "MethodInapplicable",
    "ModelParams",
    "TCError",
    "UnsupportedOperation",
]
