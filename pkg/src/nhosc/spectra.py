"""Spectra of the three-parameter oscillator and general quadratic operators.

The central object is H = h11 p^2 + i h12 (xp + px) + h22 x^2 with real
coefficients.  In a number basis built at frequency w the operator couples
|n> only to |n> and |n +- 2>, with coefficients A_n, B_n, C_n.  At the two
roots w of C_n(w) = 0 the matrix becomes upper triangular, the diagonal is
+-sqrt(D) (2n+1) with D = h11 h22 + h12^2, and the three-term recurrence for
the eigenvector coefficients terminates, giving finitely many Fock
components per state.  Away from those roots the truncated matrix is
diagonalized numerically and compared against the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import canonical, linalg, weyl
from .canonical import NormalizabilityResult, QuadraticHamiltonian

__all__ = [
    "BrokenPhaseError",
    "DegenerateEigenvaluesError",
    "ThreeParamOscillator",
    "FockMatrix",
    "EigenPair",
    "CriticalFrequencies",
    "SpectrumLevel",
    "SpectrumReport",
    "EtaReport",
    "rath_mallick_oscillator",
    "fock_coefficients",
    "critical_frequencies",
    "branch_frequency",
    "closed_form_eigenvalue",
    "eigenvector_coefficients",
    "build_fock_matrix",
    "quadratic_fock_matrix",
    "eigenvalues_by_parity",
    "general_quadratic_spectrum",
    "verify_isospectral",
    "eta_check",
]


class BrokenPhaseError(ValueError):
    """The discriminant is negative: the closed-form spectrum is complex."""


class DegenerateEigenvaluesError(ValueError):
    """Retained eigenvalues too close for a biorthogonal construction."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class ThreeParamOscillator:
    """H = h11 p^2 + i h12 (xp + px) + h22 x^2, all coefficients real."""

    h11: float
    h12: float
    h22: float

    def __post_init__(self):
        for name in ("h11", "h12", "h22"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @property
    def discriminant(self):
        return self.h11 * self.h22 + self.h12 * self.h12

    def as_quadratic(self):
        return QuadraticHamiltonian(self.h11, 1j * self.h12, self.h22)

    def weyl_poly(self):
        return self.as_quadratic().weyl_poly()


def rath_mallick_oscillator(lam, beta):
    """Coefficients of the oscillator produced by the two-parameter mix.

    h11 = (1-l^2)/(2(1+l b)), h12 = (l+b)/(2(1+l b)), h22 = (1-b^2)/(2(1+l b));
    the discriminant is exactly 1/4 for every admissible (l, b).
    """
    denom = 2.0 * (1.0 + lam * beta)
    if denom == 0:
        raise ValueError("singular parameters: 1 + lam*beta = 0")
    return ThreeParamOscillator(
        (1.0 - lam * lam) / denom,
        (lam + beta) / denom,
        (1.0 - beta * beta) / denom,
    )


def fock_coefficients(h, omega, n):
    """(A_n, B_n, C_n): the |n-2>, |n>, |n+2> amplitudes of H|n> at frequency omega."""
    omega = float(omega)
    if omega == 0:
        raise ValueError("frequency must be nonzero")
    if n < 0:
        raise ValueError("index must be non-negative")
    half_diff = -0.5 * h.h11 * omega + 0.5 * h.h22 / omega
    a_n = (half_diff + h.h12) * math.sqrt(n * (n - 1)) if n >= 2 else 0.0
    b_n = (0.5 * h.h11 * omega + 0.5 * h.h22 / omega) * (2 * n + 1)
    c_n = (half_diff - h.h12) * math.sqrt((n + 1) * (n + 2))
    return a_n, b_n, c_n


@dataclass(frozen=True)
class CriticalFrequencies:
    """Classification of the roots of C_n(omega) = 0.

    kind is one of "pair" (two real roots), "degenerate" (coincident roots,
    exceptional point), "complex_pair" (negative discriminant, broken phase),
    "single" (h11 = 0, one root), "none" (h11 = h12 = 0).  sign_contract
    records whether the labels match omega_plus > 0 > omega_minus; it can be
    False when h22 <= 0, in which case the labels are formula names only.
    """

    kind: str
    discriminant: float
    omega_plus: float | None = None
    omega_minus: float | None = None
    omega_single: float | None = None
    sign_contract: bool | None = None


def critical_frequencies(h):
    d = h.discriminant
    if h.h11 == 0.0:
        if h.h12 == 0.0:
            return CriticalFrequencies(kind="none", discriminant=d)
        return CriticalFrequencies(
            kind="single", discriminant=d, omega_single=h.h22 / (2.0 * h.h12)
        )
    if d < 0.0:
        return CriticalFrequencies(kind="complex_pair", discriminant=d)
    if d == 0.0:
        return CriticalFrequencies(
            kind="degenerate", discriminant=d, omega_single=-h.h12 / h.h11
        )
    root = math.sqrt(d)
    w_plus = (root - h.h12) / h.h11
    w_minus = -(root + h.h12) / h.h11
    return CriticalFrequencies(
        kind="pair",
        discriminant=d,
        omega_plus=w_plus,
        omega_minus=w_minus,
        sign_contract=(w_plus > 0.0) and (w_minus < 0.0),
    )


def branch_frequency(h, branch):
    """The critical frequency realizing the branch (+1 or -1)."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    crit = critical_frequencies(h)
    if crit.kind == "pair":
        return crit.omega_plus if branch == 1 else crit.omega_minus
    if crit.kind == "single":
        realized = 1 if h.h12 > 0 else -1
        if branch != realized:
            raise ValueError(
                f"h11 = 0 realizes only the {'+' if realized == 1 else '-'} branch"
            )
        return crit.omega_single
    if crit.kind == "complex_pair":
        raise BrokenPhaseError(f"discriminant {crit.discriminant} < 0: complex spectrum")
    if crit.kind == "degenerate":
        raise ValueError("exceptional point: the two critical frequencies coincide")
    raise ValueError("no critical frequency exists (h11 = h12 = 0)")


def closed_form_eigenvalue(h, n, branch):
    """E_n = branch * sqrt(D) (2n+1); requires D >= 0."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    if n < 0:
        raise ValueError("index must be non-negative")
    d = h.discriminant
    if d < 0:
        raise BrokenPhaseError(f"discriminant {d} < 0: complex spectrum")
    return branch * (math.sqrt(d) * (2 * n + 1))


@dataclass(frozen=True)
class FockMatrix:
    """Dense truncation of an operator in the number basis at one frequency."""

    matrix: np.ndarray
    omega: float
    size: int

    def __post_init__(self):
        if self.matrix.shape != (self.size, self.size):
            raise ValueError("matrix shape does not match declared size")


def build_fock_matrix(h, omega, size):
    """Banded truncation with entries A_n, B_n, C_n on the +-2 bands and diagonal."""
    omega = float(omega)
    size = int(size)
    if omega == 0:
        raise ValueError("frequency must be nonzero")
    if size < 1:
        raise ValueError("size must be at least 1")
    half_diff = -0.5 * h.h11 * omega + 0.5 * h.h22 / omega
    n = np.arange(size, dtype=float)
    mat = np.zeros((size, size), dtype=complex)
    mat[np.arange(size), np.arange(size)] = (
        0.5 * h.h11 * omega + 0.5 * h.h22 / omega
    ) * (2 * n + 1)
    if size >= 3:
        nn = n[2:]
        # column n, row n-2 holds A_n; column n, row n+2 holds C_n
        mat[np.arange(size - 2), np.arange(2, size)] = (half_diff + h.h12) * np.sqrt(
            nn * (nn - 1)
        )
        mm = n[: size - 2]
        mat[np.arange(2, size), np.arange(size - 2)] = (half_diff - h.h12) * np.sqrt(
            (mm + 1) * (mm + 2)
        )
    return FockMatrix(matrix=mat, omega=omega, size=size)


def quadratic_fock_matrix(q, omega, size):
    """Truncation of a general quadratic via the symbolic ladder rewriting."""
    ladder = weyl.to_ladder(q.weyl_poly(), omega)
    return FockMatrix(matrix=weyl.fock_matrix(ladder, size), omega=float(omega), size=int(size))


@dataclass(frozen=True)
class EigenPair:
    """Terminating eigenvector of the oscillator at a critical frequency.

    coefficients[n] is the amplitude on |n>; the support is {s, s+2, ..., 2k+s}
    for parity s and excitation k.  residual is ||(M - E) d|| / ||d|| on the
    truncation of size len(coefficients) at the branch frequency.
    """

    eigenvalue: complex
    coefficients: np.ndarray
    parity: int
    excitation: int
    branch: int
    frequency: float
    residual: float


def eigenvector_coefficients(h, branch, excitation, parity, trunc=None):
    """Finite-support eigenvector from the terminating three-term recurrence.

    At the branch frequency every C_n vanishes, so d_{n+2} = (E - B_n)/A_{n+2} d_n
    terminates at n = 2k+s with E = B_{2k+s}.  For h12 = 0 the matrix is already
    diagonal and the unit vector at 2k+s is returned.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if excitation < 0:
        raise ValueError("excitation must be non-negative")
    top = 2 * excitation + parity
    omega = branch_frequency(h, branch)
    size = int(trunc) if trunc is not None else top + 8
    if size <= top:
        raise ValueError(f"truncation {size} does not contain index {top}")
    _, e_val, _ = fock_coefficients(h, omega, top)
    d = np.zeros(size, dtype=complex)
    if h.h12 == 0.0:
        d[top] = 1.0
    else:
        d[parity] = 1.0
        for n in range(parity, top, 2):
            a_next, b_n, _ = fock_coefficients(h, omega, n + 2)
            _, b_here, _ = fock_coefficients(h, omega, n)
            d[n + 2] = (e_val - b_here) / a_next * d[n]
    d /= math.sqrt(float((np.abs(d) ** 2).sum()))
    m = build_fock_matrix(h, omega, size).matrix
    residual = float(np.sqrt((np.abs(m @ d - e_val * d) ** 2).sum()))
    return EigenPair(
        eigenvalue=complex(e_val),
        coefficients=d,
        parity=parity,
        excitation=excitation,
        branch=branch,
        frequency=omega,
        residual=residual,
    )


def general_quadratic_spectrum(q, n):
    """E_n = Omega (2n+1) with Omega = sqrt(c_pp c_xx - c_xp^2), principal branch.

    A complex value signals the broken phase; callers needing the truncation
    route should diagonalize instead.
    """
    if n < 0:
        raise ValueError("index must be non-negative")
    return q.frequency_scale * (2 * n + 1)


def _parity_indices(size):
    return np.arange(0, size, 2), np.arange(1, size, 2)


def eigenvalues_by_parity(mat, max_iter=30, tol=1e-12):
    """Eigenvalues of a parity-decoupled matrix, labeled by basis parity.

    The even and odd sub-blocks are diagonalized separately, which compresses
    the +-2 bands to tridiagonal form.  Rejects matrices with odd-offset
    coupling.  Returns (eigenvalues, parities) sorted by real part then
    imaginary part.
    """
    mat = np.asarray(mat, dtype=complex)
    size = mat.shape[0]
    even, odd = _parity_indices(size)
    coupling = np.abs(mat[np.ix_(even, odd)]).max() if even.size and odd.size else 0.0
    coupling = max(coupling, np.abs(mat[np.ix_(odd, even)]).max() if even.size and odd.size else 0.0)
    scale = np.abs(mat).max()
    if scale > 0 and coupling > 1e-12 * scale:
        raise ValueError("matrix couples even and odd sectors; no parity split")
    eigs = []
    labels = []
    for par, idx in ((0, even), (1, odd)):
        if idx.size == 0:
            continue
        block = mat[np.ix_(idx, idx)]
        for lam in linalg.eigenvalues(block, max_iter=max_iter, tol=tol):
            eigs.append(lam)
            labels.append(par)
    eigs = np.array(eigs)
    labels = np.array(labels)
    order = np.lexsort((eigs.imag, eigs.real))
    return eigs[order], labels[order]


@dataclass(frozen=True)
class SpectrumLevel:
    index: int
    eigenvalue: complex
    parity: int | None
    reference: complex | None
    deviation: float | None
    label: str
    matched: bool


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues with reference values, deviations, and normalizability."""

    levels: tuple
    truncation: int
    omega: float
    tol: float
    passed: bool
    max_deviation: float
    normalizable: NormalizabilityResult | None = None
    notes: tuple = field(default_factory=tuple)


def verify_isospectral(transform, trunc=200, n_levels=10, tol=1e-8, base=None, omega=1.0):
    """Check that the transformed oscillator keeps the base spectrum.

    Builds the quadratic image of the base under the transform, truncates it
    at frequency omega, and compares the lowest n_levels numeric eigenvalues
    to Omega_base (2n+1).  Requires n_levels <= trunc/4 so the retained levels
    are well below the truncation edge.
    """
    trunc = int(trunc)
    n_levels = int(n_levels)
    if n_levels < 1 or n_levels * 4 > trunc:
        raise ValueError(f"need n_levels <= trunc/4, got {n_levels} vs {trunc}")
    if base is None:
        base = canonical.harmonic_oscillator()
    scale = base.frequency_scale
    if abs(scale.imag) > 1e-12 * max(1.0, abs(scale)) or scale.real <= 0:
        raise ValueError("base operator must have a real positive spectral scale")
    target = canonical.apply_to_quadratic(transform, base)
    fock = quadratic_fock_matrix(target, omega, trunc)
    eigs, parities = eigenvalues_by_parity(fock.matrix)
    levels = []
    max_dev = 0.0
    notes = []
    for n in range(n_levels):
        ref = scale.real * (2 * n + 1)
        dev = float(abs(eigs[n] - ref))
        max_dev = max(max_dev, dev)
        matched = bool(dev <= tol)
        levels.append(
            SpectrumLevel(
                index=n,
                eigenvalue=complex(eigs[n]),
                parity=int(parities[n]),
                reference=complex(ref),
                deviation=dev,
                label="numeric",
                matched=matched,
            )
        )
        if int(parities[n]) != n % 2:
            notes.append(f"level {n}: observed parity {int(parities[n])} != {n % 2}")
    try:
        norm = canonical.normalizable(transform)
    except ValueError:
        norm = None
    passed = all(level.matched for level in levels)
    return SpectrumReport(
        levels=tuple(levels),
        truncation=trunc,
        omega=float(omega),
        tol=float(tol),
        passed=passed,
        max_deviation=max_dev,
        normalizable=norm,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class EtaReport:
    """Biorthonormality and pseudo-Hermiticity defects on the retained span."""

    eigenvalues: tuple
    biorthonormality_defect: float
    pseudo_hermiticity_defect: float
    tol: float
    passed: bool


def eta_check(fock, n_levels, tol=1e-6):
    """Numerical pseudo-Hermiticity check on the lowest retained levels.

    Computes right eigenvectors phi_n of M and Phi_n of the conjugate
    transpose, rescales to <Phi_m|phi_n> = delta_mn, forms the metric
    eta = sum |Phi_n><Phi_n|, and measures how far eta M - M+ eta is from
    zero on the span of the retained phi_n.  Retained eigenvalues must be
    simple with pairwise gaps above 1e-6.
    """
    mat = fock.matrix if isinstance(fock, FockMatrix) else np.asarray(fock, dtype=complex)
    n_levels = int(n_levels)
    if n_levels < 1:
        raise ValueError("need at least one retained level")
    if n_levels > mat.shape[0]:
        raise ValueError(f"cannot retain {n_levels} levels from a {mat.shape[0]}-dim truncation")
    eigs, _ = eigenvalues_by_parity(mat)
    retained = eigs[:n_levels]
    for i in range(n_levels):
        for j in range(i + 1, n_levels):
            gap = abs(retained[i] - retained[j])
            if gap <= 1e-6:
                raise DegenerateEigenvaluesError(
                    f"eigenvalues {retained[i]} and {retained[j]} separated by {gap:.2e}",
                    pair=(complex(retained[i]), complex(retained[j])),
                )
    size = mat.shape[0]
    phi = np.empty((size, n_levels), dtype=complex)
    chi = np.empty((size, n_levels), dtype=complex)
    adj = mat.conj().T
    for k, lam in enumerate(retained):
        phi[:, k] = linalg.eigenvector(mat, lam)
        chi[:, k] = linalg.eigenvector(adj, lam.conjugate())
    overlap = chi.conj().T @ phi
    diag = np.diagonal(overlap)
    if np.abs(diag).min() < 1e-12:
        raise DegenerateEigenvaluesError("near-defective pair: vanishing biorthogonal overlap")
    chi = chi / diag.conj()
    overlap = overlap / diag[:, None]
    bio_defect = float(np.abs(overlap - np.eye(n_levels)).max())
    eta = chi @ chi.conj().T
    residual = (eta @ mat - adj @ eta) @ phi
    col_scale = np.sqrt((np.abs(chi) ** 2).sum(axis=0)) * linalg.frobenius_norm(mat)
    pseudo_defect = float(
        (np.sqrt((np.abs(residual) ** 2).sum(axis=0)) / col_scale).max()
    )
    passed = bool(bio_defect <= tol and pseudo_defect <= tol)
    return EtaReport(
        eigenvalues=tuple(complex(v) for v in retained),
        biorthonormality_defect=bio_defect,
        pseudo_hermiticity_defect=pseudo_defect,
        tol=float(tol),
        passed=passed,
    )
