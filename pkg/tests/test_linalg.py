import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from focalframe import (
    ConvergenceFailure,
    DegenerateFlag,
    SingularSystem,
    SymMatrix,
    gram_schmidt,
    smallest_eigenpair,
    solve_linear,
)
from focalframe.linalg import jacobi_eigh, sample_covariance


# ---------------------------------------------------------------- gram_schmidt

def test_gram_schmidt_already_orthonormal():
    orth, norms = gram_schmidt([(1.0, 0.0), (0.0, 1.0)])
    np.testing.assert_allclose(orth, np.eye(2))
    np.testing.assert_allclose(norms, [1.0, 1.0])


def test_gram_schmidt_removes_component():
    orth, norms = gram_schmidt([(1.0, 0.0), (1.0, 1.0)])
    np.testing.assert_allclose(orth, [[1.0, 0.0], [0.0, 1.0]], atol=1e-15)
    np.testing.assert_allclose(norms, [1.0, 1.0])


def test_gram_schmidt_hand_projection():
    # axis-aligned construction solved by hand
    orth, norms = gram_schmidt([(2.0, 0.0, 0.0), (2.0, 3.0, 0.0), (1.0, 1.0, 5.0)])
    np.testing.assert_allclose(orth, [[2, 0, 0], [0, 3, 0], [0, 0, 5]], atol=1e-14)
    np.testing.assert_allclose(norms, [2.0, 3.0, 5.0])


def test_gram_schmidt_dependent_input_flagged():
    with pytest.raises(DegenerateFlag) as exc:
        gram_schmidt([(1.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 1.0, 0.0)])
    assert exc.value.index == 2


def test_gram_schmidt_rejects_too_many_vectors():
    with pytest.raises(ValueError):
        gram_schmidt([(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)])


@st.composite
def well_conditioned_sets(draw):
    dim = draw(st.integers(2, 6))
    k = draw(st.integers(2, dim))
    V = draw(arrays(float, (k, dim), elements=st.floats(-2, 2, allow_nan=False)))
    try:
        cond = np.linalg.cond(V @ V.T)
    except np.linalg.LinAlgError:
        cond = np.inf
    if not np.isfinite(cond) or cond > 1e6:
        # mix a clean orthogonal block in to keep the set well conditioned
        V = V + 3.0 * np.eye(dim)[:k]
    return V


@given(well_conditioned_sets())
def test_gram_schmidt_orthogonality_and_span(V):
    try:
        orth, norms = gram_schmidt(V)
    except DegenerateFlag:
        return
    k = V.shape[0]
    for i in range(k):
        for j in range(i + 1, k):
            assert abs(orth[i] @ orth[j]) < 1e-10 * norms[i] * norms[j]
    # span preservation prefix by prefix: every input vector projects onto the
    # orthogonalized prefix with negligible least-squares residual
    for p in range(1, k + 1):
        basis = orth[:p] / norms[:p, None]
        for v in V[:p]:
            resid = v - basis.T @ (basis @ v)
            assert np.linalg.norm(resid) < 1e-10 * max(1.0, np.linalg.norm(v))


# ------------------------------------------------------------------ eigensolver

def test_smallest_eigenpair_identity():
    val, vec = smallest_eigenpair(np.eye(3))
    assert val == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.eye(3) @ vec, val * vec, atol=1e-12)


def test_smallest_eigenpair_diagonal():
    val, vec = smallest_eigenpair(np.diag([3.0, 1.0, 2.0]))
    assert val == pytest.approx(1.0, abs=1e-12)
    assert abs(abs(vec[1]) - 1.0) < 1e-12


def test_smallest_eigenpair_rank2_covariance_nullspace():
    # four samples +-e1, +-e2: covariance diag(1/2, 1/2, 0), nullspace e3
    samples = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]], dtype=float)
    cov = sample_covariance(samples)
    val, vec = smallest_eigenpair(cov)
    assert val == pytest.approx(0.0, abs=1e-14)
    assert abs(abs(vec[2]) - 1.0) < 1e-10


def test_smallest_eigenpair_two_sample_covariance_is_rank_one():
    # two samples only: the nullspace is 2-d, so only the eigenvalue and the
    # residual are pinned down, not the direction
    cov = sample_covariance(np.array([[1.0, 0, 0], [0, 1.0, 0]]))
    val, vec = smallest_eigenpair(cov)
    assert val == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(cov.array @ vec, np.zeros(3), atol=1e-12)


def test_jacobi_residuals_on_random_matrices():
    rng = np.random.default_rng(1234)
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        M = rng.normal(size=(n, n))
        M = 0.5 * (M + M.T)
        scale = np.linalg.norm(M)
        vals, vecs = jacobi_eigh(M)
        resid = np.max(np.abs(M @ vecs - vecs * vals))
        assert resid < 1e-10 * max(scale, 1e-30)
        np.testing.assert_allclose(vals, np.linalg.eigvalsh(M), atol=1e-11 * max(scale, 1.0))


def test_jacobi_budget_exhaustion():
    M = np.array([[1.0, 0.5], [0.5, 2.0]])
    with pytest.raises(ConvergenceFailure):
        jacobi_eigh(M, max_sweeps=0)


def test_symmatrix_symmetrizes():
    m = SymMatrix([[1.0, 2.0], [0.0, 3.0]])
    np.testing.assert_allclose(m.array, [[1.0, 1.0], [1.0, 3.0]])
    with pytest.raises(ValueError):
        SymMatrix([[1.0, 2.0, 3.0]])


# ----------------------------------------------------------------- linear solve

def test_solve_identity():
    np.testing.assert_allclose(solve_linear(np.eye(2), (4.0, 5.0)), [4.0, 5.0])


def test_solve_diagonal():
    np.testing.assert_allclose(solve_linear([[2.0, 0.0], [0.0, 4.0]], (2.0, 8.0)), [1.0, 2.0])


def test_solve_hand_2x2():
    np.testing.assert_allclose(solve_linear([[1.0, 1.0], [1.0, -1.0]], (3.0, 1.0)), [2.0, 1.0])


def test_solve_singular():
    with pytest.raises(SingularSystem):
        solve_linear([[1.0, 1.0], [1.0, 1.0]], (1.0, 2.0))


@given(st.integers(2, 7), st.integers(0, 10_000))
def test_solve_round_trip(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n)) + 2.0 * np.eye(n)
    if np.linalg.cond(A) > 1e6:
        return
    b = rng.normal(size=n)
    x = solve_linear(A, b)
    err = np.linalg.norm(A @ x - b)
    bound = 1e-9 * (np.linalg.norm(A) * np.linalg.norm(x) + np.linalg.norm(b))
    assert err <= bound
    np.testing.assert_allclose(x, np.linalg.solve(A, b), atol=1e-8 * max(1.0, np.linalg.norm(x)))
