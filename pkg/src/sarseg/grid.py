"""2-D scalar fields and the discrete difference operators shared by all solvers.

Fields are plain ``float64`` numpy arrays indexed ``[row, col]``. The x axis
runs along columns, the y axis along rows. Boundaries are replicate
(Neumann): the forward difference is zero on the last column/row.
"""

from typing import NamedTuple

import numpy as np


class GradPair(NamedTuple):
    """Per-axis companion fields (gradients, split or Bregman variables)."""

    gx: np.ndarray
    gy: np.ndarray


def as_field(u, name="field"):
    """Validate ``u`` as a finite 2-D field of at least 2x2 and return a float64 copy-free view."""
    a = np.asarray(u, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {a.shape}")
    if a.shape[0] < 2 or a.shape[1] < 2:
        raise ValueError(f"{name} must be at least 2x2, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values")
    return a


def zeros_like_pair(u):
    return GradPair(np.zeros_like(u, dtype=np.float64), np.zeros_like(u, dtype=np.float64))


def grad_forward(u):
    """Forward differences with a zero last column (x) and last row (y)."""
    u = np.asarray(u, dtype=np.float64)
    gx = np.zeros_like(u)
    gy = np.zeros_like(u)
    gx[:, :-1] = u[:, 1:] - u[:, :-1]
    gy[:-1, :] = u[1:, :] - u[:-1, :]
    return GradPair(gx, gy)


def grad_x_adjoint(v):
    """Exact adjoint of the x forward difference (a negated backward difference)."""
    v = np.asarray(v, dtype=np.float64)
    out = np.empty_like(v)
    out[:, 0] = -v[:, 0]
    out[:, 1:-1] = v[:, :-2] - v[:, 1:-1]
    out[:, -1] = v[:, -2]
    return out


def grad_y_adjoint(v):
    v = np.asarray(v, dtype=np.float64)
    out = np.empty_like(v)
    out[0, :] = -v[0, :]
    out[1:-1, :] = v[:-2, :] - v[1:-1, :]
    out[-1, :] = v[-2, :]
    return out


def div_adjoint(g):
    """Return ``Dx^T gx + Dy^T gy`` for a :class:`GradPair` ``g``.

    This is the matrix transpose of :func:`grad_forward` under the plain sum
    inner product, i.e. minus the discrete divergence.
    """
    gx, gy = g
    return grad_x_adjoint(gx) + grad_y_adjoint(gy)


def laplacian_neighbors(u, i, j):
    """Sum of the four neighbours of ``(i, j)``, replicating out-of-range ones."""
    h, w = u.shape
    if not (0 <= i < h and 0 <= j < w):
        raise IndexError(f"pixel ({i}, {j}) outside {h}x{w} field")
    up = u[i - 1, j] if i > 0 else u[i, j]
    down = u[i + 1, j] if i < h - 1 else u[i, j]
    left = u[i, j - 1] if j > 0 else u[i, j]
    right = u[i, j + 1] if j < w - 1 else u[i, j]
    return float(up + down + left + right)


def neighbor_sum(u):
    """Vectorised :func:`laplacian_neighbors` over the whole field."""
    p = np.pad(np.asarray(u, dtype=np.float64), 1, mode="edge")
    return p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]


def clip01(u):
    return np.clip(u, 0.0, 1.0)


def inner(u, v):
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    return float(np.sum(u * v))
