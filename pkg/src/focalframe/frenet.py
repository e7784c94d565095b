"""Frenet apparatus: moving frames, curvature profiles, classification.

The frame at a point comes from orthogonalizing the derivative stack
without normalization; the curvature functions are quotients of the
resulting norms, so they are positive by construction and invariant
under reparametrization. Everything operates pointwise over immutable
curves; the only sequential step is the sign-alignment pass over a grid,
which exists to keep downstream axis estimation free of spurious frame
flips.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Curve, eval_derivatives
from .errors import DegenerateFlag, DivisionGuard, ReducedOrder
from .linalg import gram_schmidt

DEFAULT_CLASSIFY_TOL = 1e-6


@dataclass(frozen=True)
class FrenetData:
    """Frame, curvatures and speed of a curve at one parameter value.

    ``frame`` rows are the unit tangent followed by the unit normals;
    ``curvatures`` has one entry fewer than the frame has rows.
    """

    s: float
    speed: float
    frame: np.ndarray
    curvatures: np.ndarray
    osculating_order: int


def frenet_apparatus(curve: Curve, s: float, order: int | None = None) -> FrenetData:
    """Frenet data of ``curve`` at ``s`` for osculating order ``order``.

    Defaults to the ambient dimension (a generic curve). Raises
    ReducedOrder with the failing derivative index when the derivatives
    stop being linearly independent at ``s``.
    """
    d = curve.dimension if order is None else int(order)
    if not 2 <= d <= curve.dimension:
        raise ValueError(f"order must lie in [2, {curve.dimension}], got {d}")
    derivs = eval_derivatives(curve, s, d)[1:]
    try:
        orth, norms = gram_schmidt(derivs)
    except DegenerateFlag as exc:
        raise ReducedOrder(exc.index, s) from exc
    frame = orth / norms[:, None]
    curvatures = norms[1:] / (norms[:-1] * norms[0])
    frame.setflags(write=False)
    curvatures.setflags(write=False)
    return FrenetData(float(s), float(norms[0]), frame, curvatures, d)


def align_frames(frames: list[np.ndarray]) -> list[np.ndarray]:
    """Sign-align each frame vector with its predecessor along a grid.

    On a generic curve the raw frames are already continuous and this is a
    no-op; it only acts when numerical noise near a degeneracy flips an
    orthogonalization sign.
    """
    if not frames:
        return []
    out = [np.array(frames[0])]
    for F in frames[1:]:
        G = np.array(F)
        prev = out[-1]
        for i in range(G.shape[0]):
            if float(G[i] @ prev[i]) < 0.0:
                G[i] = -G[i]
        out.append(G)
    return out


def frenet_grid(
    curve: Curve,
    grid,
    order: int | None = None,
    align: bool = True,
) -> list[FrenetData]:
    """Frenet data over a parameter grid, sign-aligned by default."""
    data = [frenet_apparatus(curve, float(s), order) for s in np.asarray(grid, dtype=float)]
    if align and len(data) > 1:
        aligned = align_frames([fd.frame for fd in data])
        data = [
            FrenetData(fd.s, fd.speed, F, fd.curvatures, fd.osculating_order)
            for fd, F in zip(data, aligned)
        ]
    return data


@dataclass(frozen=True)
class CurvatureTable:
    """Curvatures and speed per grid row; degenerate rows flagged, not dropped."""

    s: np.ndarray
    curvatures: np.ndarray  # (N, d-1), NaN on flagged rows
    speed: np.ndarray
    reduced_order: np.ndarray  # 0 where fine, else the failing derivative index

    @property
    def ok(self) -> np.ndarray:
        return self.reduced_order == 0


def curvature_table(curve: Curve, grid, order: int | None = None) -> CurvatureTable:
    d = curve.dimension if order is None else int(order)
    ss = np.asarray(grid, dtype=float)
    n = ss.size
    kappas = np.full((n, d - 1), np.nan)
    speed = np.full(n, np.nan)
    reduced = np.zeros(n, dtype=int)
    for i, s in enumerate(ss):
        try:
            fd = frenet_apparatus(curve, float(s), d)
        except ReducedOrder as exc:
            reduced[i] = exc.order
            if exc.order > 1:
                speed[i] = float(np.linalg.norm(eval_derivatives(curve, float(s), 1)[1]))
            continue
        kappas[i] = fd.curvatures
        speed[i] = fd.speed
    return CurvatureTable(ss, kappas, speed, reduced)


@dataclass(frozen=True)
class Classification:
    is_w_curve: bool
    is_ccr: bool
    ratios: np.ndarray  # mean kappa_{i+1}/kappa_i over the grid
    spreads: np.ndarray  # relative (max-min) spread per curvature


def classify(curve: Curve, grid=None, tol: float = DEFAULT_CLASSIFY_TOL) -> Classification:
    """Constant-curvature and constant-ratio verdicts on a grid.

    A curve passes the constant-curvature test when every curvature's
    relative spread stays below ``tol``; it passes the constant-ratio test
    when every consecutive curvature ratio does.
    """
    if grid is None:
        grid = curve.grid(64)
    grid = np.asarray(grid, dtype=float)
    if grid.size < 8:
        raise ValueError("classification grid needs at least 8 points")
    table = curvature_table(curve, grid)
    bad = np.flatnonzero(~table.ok)
    if bad.size:
        raise ReducedOrder(int(table.reduced_order[bad[0]]), float(grid[bad[0]]))

    K = table.curvatures
    means = K.mean(axis=0)
    if np.any(np.abs(means) < 1e-12):
        raise DivisionGuard("a curvature mean is below 1e-12; ratios are meaningless")
    spreads = (K.max(axis=0) - K.min(axis=0)) / means
    is_w = bool(np.all(spreads < tol))

    if K.shape[1] >= 2:
        R = K[:, 1:] / K[:, :-1]
        r_means = R.mean(axis=0)
        r_spread = (R.max(axis=0) - R.min(axis=0)) / np.abs(r_means)
        is_ccr = bool(np.all(r_spread < tol))
        ratios = r_means
    else:
        is_ccr = is_w
        ratios = np.empty(0)
    return Classification(is_w, is_ccr, ratios, spreads)
