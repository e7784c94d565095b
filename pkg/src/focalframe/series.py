"""Truncated power-series arithmetic on plain coefficient arrays.

A series is a 1-d float array ``a`` meaning ``f(x0 + h) = sum a[j] h**j``.
Used for two jobs that would otherwise need nested chain rules to high
order: rebuilding derivative oracles after arclength reparametrization,
and reconstructing high derivatives of synthesized curves from their
frame and curvature data. Truncation orders stay below ~10, so the
O(n^2)-per-product cost is irrelevant.
"""

from __future__ import annotations

import math

import numpy as np


def series_mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    out = np.convolve(a, b)[:n]
    if out.size < n:
        out = np.pad(out, (0, n - out.size))
    return out


def series_diff(a: np.ndarray) -> np.ndarray:
    """Coefficients of the derivative series (one order shorter)."""
    if a.size <= 1:
        return np.zeros(1)
    return a[1:] * np.arange(1, a.size)


def series_sqrt(a: np.ndarray, n: int) -> np.ndarray:
    """Square root of a series with a[0] > 0."""
    if a[0] <= 0.0:
        raise ValueError("series_sqrt needs a positive leading coefficient")
    s = np.zeros(n)
    s[0] = math.sqrt(a[0])
    for j in range(1, n):
        acc = a[j] if j < a.size else 0.0
        acc -= np.dot(s[1:j], s[j - 1:0:-1])
        s[j] = acc / (2.0 * s[0])
    return s


def series_compose(f: np.ndarray, g: np.ndarray, n: int) -> np.ndarray:
    """Coefficients of f(g(h)) for g with zero constant term (Horner form)."""
    if abs(g[0]) > 0.0:
        raise ValueError("series_compose requires g[0] == 0")
    out = np.zeros(n)
    out[0] = f[-1]
    for c in f[-2::-1]:
        out = series_mul(out, g, n)
        out[0] += c
    return out


def series_reverse(s: np.ndarray, n: int) -> np.ndarray:
    """Compositional inverse of a series with s[0] == 0, s[1] != 0.

    Fixed-point iteration t <- t - (s(t) - id)/s[1] gains one correct order
    per pass, so n passes are always enough at truncation n.
    """
    if abs(s[0]) > 0.0 or s[1] == 0.0:
        raise ValueError("series_reverse needs s[0] == 0 and s[1] != 0")
    ident = np.zeros(n)
    if n > 1:
        ident[1] = 1.0
    t = ident / s[1]
    for _ in range(n):
        t = t - (series_compose(s, t, n) - ident) / s[1]
    return t


def factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(j) for j in range(n)], dtype=float)
