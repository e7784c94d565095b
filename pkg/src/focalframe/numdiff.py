"""Finite-difference weights and grid differentiation.

Weights come from Fornberg's recursion, which handles arbitrary node
placement and every derivative order up to the window size in one pass.
That lets the same code serve interior central stencils, one-sided
boundary stencils and off-node interpolation of sampled curves.
"""

from __future__ import annotations

import numpy as np


def fd_weights(nodes, x0: float, max_order: int) -> np.ndarray:
    """Differentiation weights on ``nodes`` about ``x0``.

    Returns an array ``w`` of shape ``(max_order + 1, len(nodes))`` such that
    ``w[k] @ f(nodes)`` approximates the k-th derivative of ``f`` at ``x0``
    (k = 0 reproduces interpolation).
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    if n <= max_order:
        raise ValueError(f"need more than {max_order} nodes, got {n}")
    C = np.zeros((n, max_order + 1))
    C[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - x0
    for i in range(1, n):
        mn = min(i, max_order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - x0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    C[i, k] = c1 * (k * C[i - 1, k - 1] - c5 * C[i - 1, k]) / c2
                C[i, 0] = -c1 * c5 * C[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                C[j, k] = (c4 * C[j, k] - k * C[j, k - 1]) / c3
            C[j, 0] = c4 * C[j, 0] / c3
        c1 = c2
    return C.T.copy()


def grid_derivative(values, ts, window: int = 5) -> np.ndarray:
    """First derivative of gridded data, 4th order accurate.

    ``values`` may be (N,) or (N, d); differentiation runs along axis 0.
    Interior points get centered 5-point stencils; the two points at each
    end get the one-sided 5-point stencils that fall out of the same
    weight recursion. Nodes need not be uniform.
    """
    y = np.asarray(values, dtype=float)
    t = np.asarray(ts, dtype=float)
    n = t.size
    if y.shape[0] != n:
        raise ValueError("values and ts disagree in length")
    if n < window:
        raise ValueError(f"need at least {window} grid points, got {n}")
    half = window // 2
    out = np.empty_like(y)
    for i in range(n):
        lo = min(max(i - half, 0), n - window)
        sl = slice(lo, lo + window)
        w = fd_weights(t[sl], t[i], 1)[1]
        out[i] = w @ y[sl]
    return out


def window_slice(n: int, center: int, size: int) -> slice:
    """Slice of ``size`` indices out of ``n``, centered on ``center``, clamped."""
    if size > n:
        raise ValueError(f"window {size} exceeds grid size {n}")
    lo = min(max(center - size // 2, 0), n - size)
    return slice(lo, lo + size)
