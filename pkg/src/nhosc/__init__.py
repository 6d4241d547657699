"""Non-Hermitian oscillators with real spectra.

Operator conjugation by an invertible linear map of (x, p) turns the
harmonic oscillator into non-Hermitian operators that keep its spectrum.
This package provides the exact operator algebra, the transform families,
closed-form and truncated-matrix spectra of the three-parameter oscillator,
position-space eigenfunctions, and a CLI to drive it all.
"""

from . import canonical, linalg, spectra, wavefun, weyl

__version__ = "0.1.0"

__all__ = ["canonical", "linalg", "spectra", "wavefun", "weyl", "__version__"]
