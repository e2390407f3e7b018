"""Dense numerical kernel: Gaussian sampling, SVD, pseudoinverse, min-norm LS.

Matrices are plain float64 (or complex128) numpy arrays in row-major order;
no wrapper class is introduced.  All operations are pure functions of their
inputs plus, where present, the RngStream state.
"""

from __future__ import annotations

import numpy as np

from .rng import RngStream

DEFAULT_REL_TOL = 1e-12


def sample_gaussian(rng: RngStream, rows: int, cols: int, mean: float = 0.0,
                    std: float = 1.0) -> np.ndarray:
    """rows x cols matrix of i.i.d. N(mean, std^2) entries."""
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if std < 0:
        raise ValueError("std must be non-negative")
    return rng.normal(mean, std, (rows, cols))


def sample_cgaussian(rng: RngStream, rows: int, cols: int, std: float = 1.0) -> np.ndarray:
    """Complex matrix with i.i.d. CN(0, std^2) entries.

    Real and imaginary parts are independent N(0, std^2/2), so the complex
    per-entry variance E|h|^2 equals std^2.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
    if std < 0:
        raise ValueError("std must be non-negative")
    parts = rng.normal(0.0, std * np.sqrt(0.5), (2, rows, cols))
    return parts[0] + 1j * parts[1]


def svd(a: np.ndarray):
    """Thin SVD: returns (U, s, V) with a = U @ diag(s) @ V.T.conj().

    Singular values are non-negative and sorted descending; U and V have
    orthonormal columns.
    """
    a = np.asarray(a)
    if not np.all(np.isfinite(a)):
        raise ValueError("svd: input contains NaN or Inf")
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return u, s, vt.conj().T


def pseudoinverse(a: np.ndarray, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD with a relative cutoff.

    Singular values at or below tau = rel_tol * max(rows, cols) * s_max are
    treated as zero.  The result satisfies the four Penrose conditions to
    roughly machine precision for well-scaled inputs.
    """
    a = np.asarray(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("pseudoinverse: input contains NaN or Inf")
    if not (0.0 < rel_tol < 1.0):
        raise ValueError(f"rel_tol must lie in (0, 1), got {rel_tol!r}")
    u, s, v = svd(a)
    tau = rel_tol * max(a.shape) * (s[0] if s.size else 0.0)
    keep = s > tau
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return v @ (inv_s[:, None] * u.T)


def min_norm_lstsq(g: np.ndarray, t: np.ndarray,
                   rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Minimum-norm least-squares solution w of G w ~= t.

    Computed as G^+ t through the SVD, without forming the pseudoinverse
    explicitly.  Among all minimizers of ||G w - t|| the returned w has the
    smallest Euclidean norm and lies in the row space of G.
    """
    g = np.asarray(g, dtype=float)
    t = np.asarray(t, dtype=float)
    if not (np.all(np.isfinite(g)) and np.all(np.isfinite(t))):
        raise ValueError("min_norm_lstsq: input contains NaN or Inf")
    if t.ndim == 2 and t.shape[1] == 1:
        t = t[:, 0]
    if t.ndim != 1 or g.ndim != 2 or g.shape[0] != t.shape[0]:
        raise ValueError(
            f"min_norm_lstsq: shape mismatch, G is {g.shape}, t has {t.shape}")
    u, s, v = svd(g)
    tau = rel_tol * max(g.shape) * (s[0] if s.size else 0.0)
    keep = s > tau
    coeff = np.zeros_like(s)
    coeff[keep] = (u.T @ t)[keep] / s[keep]
    return v @ coeff
