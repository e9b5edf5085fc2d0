"""Dense complex linear-algebra kernels shared by the beamforming solvers.

Everything here operates on plain numpy arrays and is pure: no state, no
in-place modification of inputs.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-10
# Relative singular-value cutoff for the Gram-matrix pseudo-inverse.
PINV_CUTOFF = 1e-12


def _as_complex_matrix(m, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _check_hermitian(m: np.ndarray, name: str, tol: float = HERMITIAN_TOL) -> None:
    scale = max(np.linalg.norm(m), 1.0)
    if np.linalg.norm(m - m.conj().T) > tol * scale:
        raise ValueError(f"{name} is not Hermitian within {tol:g}")


def hermitian_pinv(gram: np.ndarray) -> np.ndarray:
    """Pseudo-inverse of a Hermitian PSD Gram matrix via eigendecomposition.

    Eigenvalues below PINV_CUTOFF times the largest one are treated as zero,
    so rank-deficient inputs (including the zero matrix) are handled.
    """
    gram = _as_complex_matrix(gram, "gram")
    _check_hermitian(gram, "gram")
    w, v = np.linalg.eigh(gram)
    cutoff = PINV_CUTOFF * max(w[-1], 0.0)
    inv_w = np.where(w > cutoff, 1.0 / np.where(w > cutoff, w, 1.0), 0.0)
    return (v * inv_w) @ v.conj().T


def null_space_projector(p) -> np.ndarray:
    """Orthogonal projector onto the null space of the rows of ``p``.

    Returns T = I - P^H (P P^H)^+ P, an n x n Hermitian idempotent matrix
    with T P^H = 0.  Rank deficiency of P is not an error.
    """
    p = _as_complex_matrix(p, "p")
    r, n = p.shape
    if n < 1 or r < 1:
        raise ValueError("projector needs at least one row and one column")
    gram = p @ p.conj().T
    t = np.eye(n, dtype=np.complex128) - p.conj().T @ hermitian_pinv(gram) @ p
    # Symmetrize to squash roundoff drift.
    return 0.5 * (t + t.conj().T)


def _fix_global_phase(x: np.ndarray) -> np.ndarray:
    """Rotate ``x`` so its largest-magnitude entry is real nonnegative."""
    k = int(np.argmax(np.abs(x)))
    pivot = x[k]
    if abs(pivot) == 0.0:
        return x
    return x * (pivot.conjugate() / abs(pivot))


def rayleigh_quotient(a: np.ndarray, b: np.ndarray, x: np.ndarray) -> float:
    x = np.asarray(x, dtype=np.complex128)
    num = np.vdot(x, a @ x).real
    den = np.vdot(x, b @ x).real
    return num / den


def dominant_gen_eigvec(a, b) -> np.ndarray:
    """Unit-norm maximizer of the generalized Rayleigh quotient x^H A x / x^H B x.

    ``a`` must be Hermitian PSD and ``b`` Hermitian positive definite; the
    problem is solved in its symmetric form (never by forming B^-1 A).  The
    returned vector has its largest-magnitude entry real nonnegative.
    """
    a = _as_complex_matrix(a, "a")
    b = _as_complex_matrix(b, "b")
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"shape mismatch: a is {a.shape}, b is {b.shape}")
    _check_hermitian(a, "a")
    _check_hermitian(b, "b")
    if np.linalg.eigvalsh(b)[0] <= 0.0:
        raise ValueError("indefinite denominator")
    _, vecs = scipy.linalg.eigh(a, b)
    x = vecs[:, -1]
    x = x / np.linalg.norm(x)
    return _fix_global_phase(x)


def dominant_gen_eigvec_rank_one(num_vec, den_vec, den_reg: float) -> np.ndarray:
    """Fast path of :func:`dominant_gen_eigvec` for A = e e^H, B = f f^H + c I.

    The maximizer of |e^H x|^2 / x^H B x is x = B^-1 e, computed here by the
    Sherman-Morrison identity in O(n); agrees with the dense solver up to
    global phase.
    """
    e = np.asarray(num_vec, dtype=np.complex128).ravel()
    f = np.asarray(den_vec, dtype=np.complex128).ravel()
    if e.shape != f.shape:
        raise ValueError("numerator/denominator vector length mismatch")
    if den_reg <= 0.0:
        raise ValueError("indefinite denominator")
    x = (e - f * (np.vdot(f, e) / (den_reg + np.vdot(f, f).real))) / den_reg
    nrm = np.linalg.norm(x)
    if nrm == 0.0:
        raise ValueError("numerator vector is zero")
    return _fix_global_phase(x / nrm)
