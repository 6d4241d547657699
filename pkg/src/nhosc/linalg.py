"""Dense complex eigensolver for general (non-normal) matrices.

Pipeline: diagonal balancing, Householder reduction to upper Hessenberg
form, then single-shift QR iteration with Wilkinson shifts, deflating one or
two eigenvalues at a time.  Eigenvectors come from shifted inverse iteration
on an LU factorization with partial pivoting.  Matrices are plain numpy
complex128 arrays throughout; numpy is used for storage and vectorized
arithmetic only.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

DEFLATION_REL = 1e-14
EPS = 2.220446049250313e-16

__all__ = [
    "EigenConvergenceError",
    "as_cmatrix",
    "frobenius_norm",
    "balance",
    "hessenberg",
    "eigenvalues",
    "eigenvector",
    "solve",
]


class EigenConvergenceError(RuntimeError):
    """QR or inverse iteration failed to converge.

    Carries how far the computation got: eigenvalues already deflated for the
    QR loop, or the best residual achieved for inverse iteration.
    """

    def __init__(self, message, deflated=None, residual=None):
        super().__init__(message)
        self.deflated = deflated
        self.residual = residual


def as_cmatrix(m):
    """Validate and copy into a square complex128 array."""
    a = np.array(m, dtype=complex, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimensions must be positive")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def frobenius_norm(a):
    return float(np.sqrt((np.abs(a) ** 2).sum()))


def balance(m, max_sweeps=10):
    """Diagonal similarity scaling by powers of two equalizing row/col norms.

    Leaves the spectrum unchanged and introduces no rounding error since the
    scale factors are exact powers of the radix.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    for _ in range(max_sweeps):
        changed = False
        for i in range(n):
            r = np.abs(a[i]).sum() - abs(a[i, i])
            c = np.abs(a[:, i]).sum() - abs(a[i, i])
            if r == 0.0 or c == 0.0:
                continue
            f = 2.0 ** round(math.log2(math.sqrt(r / c)))
            if f != 1.0 and (r / f + c * f) < 0.95 * (r + c):
                a[i, :] /= f
                a[:, i] *= f
                changed = True
        if not changed:
            break
    return a


def _householder_vector(col):
    """Unit reflector v with (I - 2 v v+) col = alpha e1, or None if skippable."""
    norm = math.sqrt(float((np.abs(col) ** 2).sum()))
    if norm == 0.0:
        return None
    a0 = col[0]
    phase = a0 / abs(a0) if a0 != 0 else 1.0
    v = col.copy()
    v[0] += phase * norm
    vnorm = math.sqrt(float((np.abs(v) ** 2).sum()))
    if vnorm == 0.0:
        return None
    return v / vnorm


def _hessenberg_reduce(a, want_q):
    h = a.copy()
    n = h.shape[0]
    q = np.eye(n, dtype=complex) if want_q else None
    for k in range(n - 2):
        v = _householder_vector(h[k + 1 :, k])
        if v is None:
            continue
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v.conj())
        if want_q:
            q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v.conj())
        h[k + 2 :, k] = 0.0
    return h, q


def hessenberg(m):
    """Unitary reduction m = Q H Q+ with H upper Hessenberg."""
    a = as_cmatrix(m)
    return _hessenberg_reduce(a, want_q=True)


def _eig2(a, b, c, d):
    """Eigenvalues of [[a, b], [c, d]], larger-magnitude root first."""
    mid = 0.5 * (a + d)
    q = cmath.sqrt(0.25 * (a - d) ** 2 + b * c)
    l1 = mid + q if abs(mid + q) >= abs(mid - q) else mid - q
    det = a * d - b * c
    l2 = det / l1 if l1 != 0 else mid - q
    return l1, l2


def _is_triangular(a):
    return not np.tril(a, -1).any() or not np.triu(a, 1).any()


def _qr_sweep(h, lo, hi, shift):
    """One implicit-shift QR step (bulge chase) on the block h[lo:hi, lo:hi].

    The shift enters only the first rotation, so large shifts never touch
    entries far from the bulge; each rotation is a similarity applied
    immediately on both sides.
    """
    x = h[lo, lo] - shift
    z = h[lo + 1, lo]
    for k in range(lo, hi - 1):
        r = math.hypot(abs(x), abs(z))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x.conjugate() / r, z.conjugate() / r
        col0 = k - 1 if k > lo else lo
        top = h[k, col0:hi].copy()
        bot = h[k + 1, col0:hi]
        h[k, col0:hi] = c * top + s * bot
        h[k + 1, col0:hi] = -s.conjugate() * top + c.conjugate() * bot
        if k > lo:
            h[k + 1, k - 1] = 0.0
        row_end = min(k + 3, hi)
        left = h[lo:row_end, k].copy()
        right = h[lo:row_end, k + 1]
        h[lo:row_end, k] = c.conjugate() * left + s.conjugate() * right
        h[lo:row_end, k + 1] = -s * left + c * right
        if k + 2 < hi:
            x = h[k + 1, k]
            z = h[k + 2, k]


def eigenvalues(m, max_iter=30, tol=1e-12):
    """All eigenvalues, sorted by real part then imaginary part.

    max_iter bounds the QR sweeps spent per deflation; exceeding it raises
    EigenConvergenceError carrying the number of eigenvalues already found.
    Triangular input short-circuits to the diagonal.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    if n == 1 or _is_triangular(a):
        return _sorted_eigs(np.diagonal(a).astype(complex))
    h, _ = _hessenberg_reduce(balance(a), want_q=False)
    hnorm = frobenius_norm(h)
    # a tighter requested tolerance postpones deflation; the default keeps
    # the standard 1e-14 relative threshold
    deflation_rel = min(DEFLATION_REL, max(float(tol), EPS))
    eig = np.empty(n, dtype=complex)
    hi = n
    sweeps = 0
    while hi > 0:
        for k in range(1, hi):
            thresh = deflation_rel * (abs(h[k - 1, k - 1]) + abs(h[k, k]))
            if thresh == 0.0:
                thresh = EPS * hnorm
            if abs(h[k, k - 1]) <= thresh:
                h[k, k - 1] = 0.0
        lo = hi - 1
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        if lo == hi - 1:
            eig[hi - 1] = h[hi - 1, hi - 1]
            hi -= 1
            sweeps = 0
            continue
        if lo == hi - 2:
            eig[hi - 2], eig[hi - 1] = _eig2(
                h[lo, lo], h[lo, lo + 1], h[lo + 1, lo], h[lo + 1, lo + 1]
            )
            hi -= 2
            sweeps = 0
            continue
        if sweeps >= max_iter:
            raise EigenConvergenceError(
                f"QR iteration stalled on block [{lo}, {hi}) after {sweeps} sweeps",
                deflated=n - hi,
            )
        sweeps += 1
        if sweeps % 10 == 0:
            # exceptional shift to break symmetry-induced cycles
            shift = h[hi - 1, hi - 1] + 0.75 * abs(h[hi - 1, hi - 2])
        else:
            l1, l2 = _eig2(
                h[hi - 2, hi - 2], h[hi - 2, hi - 1], h[hi - 1, hi - 2], h[hi - 1, hi - 1]
            )
            corner = h[hi - 1, hi - 1]
            shift = l1 if abs(l1 - corner) <= abs(l2 - corner) else l2
        _qr_sweep(h, lo, hi, shift)
    return _sorted_eigs(eig)


def _sorted_eigs(eig):
    order = np.lexsort((eig.imag, eig.real))
    return eig[order]


def _lu_factor(a, pivot_floor=0.0):
    """In-place partial-pivot LU; tiny pivots lifted to pivot_floor if given."""
    lu = a.copy()
    n = lu.shape[0]
    perm = np.arange(n)
    for k in range(n):
        j = k + int(np.argmax(np.abs(lu[k:, k])))
        if j != k:
            lu[[k, j], :] = lu[[j, k], :]
            perm[[k, j]] = perm[[j, k]]
        pivot = lu[k, k]
        if abs(pivot) <= pivot_floor:
            if pivot_floor == 0.0:
                raise EigenConvergenceError(f"singular pivot at column {k}")
            phase = pivot / abs(pivot) if pivot != 0 else 1.0
            pivot = phase * pivot_floor
            lu[k, k] = pivot
        if k + 1 < n:
            lu[k + 1 :, k] /= pivot
            lu[k + 1 :, k + 1 :] -= np.outer(lu[k + 1 :, k], lu[k, k + 1 :])
    return lu, perm


def _lu_solve(lu, perm, b):
    n = lu.shape[0]
    y = b[perm].astype(complex)
    for k in range(1, n):
        y[k] -= lu[k, :k] @ y[:k]
    for k in range(n - 1, -1, -1):
        y[k] = (y[k] - lu[k, k + 1 :] @ y[k + 1 :]) / lu[k, k]
    return y


def solve(a, b):
    """Solve a x = b by LU with partial pivoting."""
    a = as_cmatrix(a)
    b = np.asarray(b, dtype=complex)
    lu, perm = _lu_factor(a)
    return _lu_solve(lu, perm, b)


def eigenvector(m, lam, tol=1e-12, max_iter=20):
    """Unit right eigenvector for an approximate eigenvalue via inverse iteration.

    Accepts when ||(m - lam) v|| <= tol * ||m||_F; otherwise raises with the
    best residual achieved.
    """
    a = as_cmatrix(m)
    n = a.shape[0]
    scale = frobenius_norm(a)
    if scale == 0.0:
        scale = 1.0
    shifted = a - complex(lam) * np.eye(n, dtype=complex)
    floor = EPS * max(1.0, float(np.abs(shifted).max()))
    lu, perm = _lu_factor(shifted, pivot_floor=floor)
    rng = np.random.default_rng(1914)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= math.sqrt(float((np.abs(v) ** 2).sum()))
    best_res = math.inf
    for _ in range(max_iter):
        w = _lu_solve(lu, perm, v)
        wnorm = math.sqrt(float((np.abs(w) ** 2).sum()))
        if wnorm == 0.0 or not np.isfinite(wnorm):
            break
        v = w / wnorm
        res = math.sqrt(float((np.abs(shifted @ v) ** 2).sum()))
        best_res = min(best_res, res)
        if res <= tol * scale:
            return v
    raise EigenConvergenceError(
        f"inverse iteration did not reach tol {tol:g}; best residual {best_res:.3e}",
        residual=best_res,
    )
