"""Dense linear-algebra kernels: solves, Schur complements, pseudoinverses,
Lyapunov and Sylvester equations, spectra.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import PreconditionError, SingularMatrixError

__all__ = [
    "SolveReport",
    "submatrix",
    "lu_solve",
    "schur_complement",
    "pinv",
    "balanced_pinv",
    "lyapunov_solve",
    "sylvester_minnorm_solve",
    "eigenvalues",
    "is_psd",
    "centering_matrix",
]

PIVOT_TOL = 1e-12
RANK_TOL = 1e-12


@dataclass(frozen=True)
class SolveReport:
    solution: np.ndarray
    residual_norm: float
    condition_estimate: float | None = None


def _square(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError(f"{name} must be square, got shape {a.shape}")
    return a


def centering_matrix(n):
    """Orthogonal projector ``I - 11^T/n`` onto the complement of the ones vector."""
    return np.eye(n) - np.full((n, n), 1.0 / n)


def submatrix(a, rows, cols):
    """Copy of ``a[rows, cols]`` with entries in the order of the index lists."""
    a = np.asarray(a, dtype=float)
    rows = np.asarray(rows, dtype=int).reshape(-1)
    cols = np.asarray(cols, dtype=int).reshape(-1)
    for idx, size, what in ((rows, a.shape[0], "row"), (cols, a.shape[1], "column")):
        if idx.size and (idx.min() < 0 or idx.max() >= size):
            raise PreconditionError(f"{what} index out of range for shape {a.shape}")
    return a[np.ix_(rows, cols)].copy()


def lu_solve(a, b):
    """Solve ``a x = b`` by LU with partial pivoting.

    Raises SingularMatrixError when a pivot falls below ``1e-12 * max|a|``.
    """
    a = _square(a)
    b = np.asarray(b, dtype=float)
    vector = b.ndim == 1
    rhs = b.reshape(a.shape[0], -1)
    if a.shape[0] == 0:
        return SolveReport(rhs.reshape(b.shape).copy(), 0.0, None)
    scale = np.abs(a).max()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if scale == 0 or pivots.min() <= PIVOT_TOL * scale:
        k = int(np.argmin(pivots))
        raise SingularMatrixError(
            f"matrix is singular to working precision (pivot {pivots[k]:.2e} at step {k}, max entry {scale:.2e})"
        )
    x = scipy.linalg.lu_solve((lu, piv), rhs)
    residual = float(np.abs(a @ x - rhs).max(initial=0.0))
    rcond, _ = scipy.linalg.lapack.dgecon(lu, np.linalg.norm(a, 1), norm="1")
    cond = float(1.0 / rcond) if rcond > 0 else float("inf")
    return SolveReport(x.reshape(b.shape) if vector else x, residual, cond)


def schur_complement(a, alpha):
    """``a[α,α] - a[α,αᶜ] a[αᶜ,αᶜ]^{-1} a[αᶜ,α]``, with ``αᶜ`` in increasing order.

    If ``alpha`` covers every index the matrix is returned unchanged.
    """
    a = _square(a)
    n = a.shape[0]
    alpha = [int(i) for i in alpha]
    members = set(alpha)
    interior = [i for i in range(n) if i not in members]
    if not interior:
        return a[np.ix_(alpha, alpha)].copy()
    report = lu_solve(submatrix(a, interior, interior), submatrix(a, interior, alpha))
    return submatrix(a, alpha, alpha) - submatrix(a, alpha, interior) @ report.solution


def pinv(a, rank_tol=RANK_TOL):
    """Moore-Penrose pseudoinverse via SVD.

    Singular values at or below ``rank_tol * s_max`` are treated as zero.
    """
    a = np.asarray(a, dtype=float)
    if a.size == 0:
        return np.zeros(a.shape[::-1])
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0:
        return np.zeros(a.shape[::-1])
    keep = s > rank_tol * s[0]
    return (vt[keep].T / s[keep]) @ u[:, keep].T


def balanced_pinv(l, gamma=1.0):
    """Pseudoinverse of a strongly connected, weight-balanced Laplacian by a
    rank-one shift: ``(l + γ/n 11ᵀ)^{-1} - 1/(nγ) 11ᵀ``.
    """
    l = _square(l, "Laplacian")
    if gamma == 0:
        raise PreconditionError("gamma must be nonzero")
    n = l.shape[0]
    ones = np.ones((n, n))
    shifted = lu_solve(l + (gamma / n) * ones, np.eye(n)).solution
    return shifted - ones / (n * gamma)


def _sylvester_operator(a):
    # vec(aX + Xaᵀ) = (I ⊗ a + a ⊗ I) vec(X) with column-major vec
    m = a.shape[0]
    eye = np.eye(m)
    return np.kron(eye, a) + np.kron(a, eye)


def lyapunov_solve(a, c):
    """Solve ``a Σ + Σ aᵀ = c`` through the dense ``m² x m²`` linearization."""
    a = _square(a)
    c = _square(c, "right-hand side")
    if c.shape != a.shape:
        raise PreconditionError(f"shape mismatch {a.shape} vs {c.shape}")
    m = a.shape[0]
    op = _sylvester_operator(a)
    try:
        vec = lu_solve(op, c.reshape(-1, order="F")).solution
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "Lyapunov operator is singular: a has eigenvalues summing to zero"
        ) from exc
    sigma = vec.reshape(m, m, order="F")
    residual = np.abs(a @ sigma + sigma @ a.T - c).max(initial=0.0)
    if residual > 1e-8 * max(1.0, np.abs(c).max(initial=0.0)):
        raise SingularMatrixError(f"Lyapunov residual {residual:.2e} exceeds tolerance")
    return sigma


def sylvester_minnorm_solve(a, c):
    """Minimum-norm least-squares ``K`` with ``a K + K aᵀ = c``.

    The linearized operator is allowed to be singular.
    """
    a = _square(a)
    c = _square(c, "right-hand side")
    m = a.shape[0]
    op = _sylvester_operator(a)
    vec, *_ = np.linalg.lstsq(op, c.reshape(-1, order="F"), rcond=RANK_TOL)
    return vec.reshape(m, m, order="F")


def eigenvalues(a):
    """All eigenvalues as complex numbers, ordered by real part then imaginary part."""
    a = _square(a)
    w = np.linalg.eigvals(a).astype(complex)
    return w[np.lexsort((w.imag, w.real))]


def is_psd(a, tol=1e-8):
    """True iff the symmetric matrix ``a`` has smallest eigenvalue ``>= -tol``."""
    a = _square(a)
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * max(1.0, np.abs(a).max(initial=0.0))):
        raise PreconditionError("matrix is not symmetric")
    if a.shape[0] == 0:
        return True
    return bool(np.linalg.eigvalsh((a + a.T) / 2).min() >= -tol)
