"""Group/algebra containers, ordering conversions, and the exponential map."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sympberry import (
    GROUPED,
    INTERLEAVED,
    BlockDecomposition,
    LieAlgElement,
    SympMatrix,
    block_decompose,
    convert_ordering,
    exp_map,
    gamma_permutation,
    is_symplectic,
    omega,
    omega_interleaved,
    symplectic_residual,
)


def test_omega_structure():
    for n in (1, 2, 3):
        om = omega(n)
        assert np.array_equal(om.T, -om)
        assert np.array_equal(om @ om, -np.eye(2 * n))
    J = omega_interleaved(1)
    assert np.array_equal(J, np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert np.array_equal(omega_interleaved(2)[:2, :2], J)
    assert np.array_equal(omega_interleaved(2)[2:, 2:], J)


def test_is_symplectic_basics():
    assert is_symplectic(np.eye(4))
    assert not is_symplectic(2 * np.eye(4))
    bad = np.eye(4)
    bad[0, 0] = np.nan
    assert not is_symplectic(bad)
    with pytest.raises(ValueError):
        is_symplectic(np.eye(3))
    with pytest.raises(ValueError):
        is_symplectic(np.eye(4)[:2])


def test_sympmatrix_validation(rng, random_symmetric):
    M = exp_map(LieAlgElement(2, random_symmetric(rng, 4)))
    assert symplectic_residual(M.data) <= 1e-10
    assert abs(np.linalg.det(M.data) - 1.0) <= 1e-8
    with pytest.raises(ValueError):
        SympMatrix(2, M.data + 1e-3)
    with pytest.raises(ValueError):
        SympMatrix(1, M.data)  # wrong mode count for a 4x4


def test_sympmatrix_immutable(rng, random_symmetric):
    M = exp_map(LieAlgElement(1, random_symmetric(rng, 2)))
    with pytest.raises(ValueError):
        M.data[0, 0] = 5.0


def test_inverse_is_form_conjugate(rng, random_symplectic):
    # inverse identity M^{-1} = -Omega M^T Omega, a direct group consequence
    for n in (1, 2, 3):
        M = random_symplectic(rng, n)
        om = omega(n)
        np.testing.assert_allclose(
            M.inverse().data, -om @ M.data.T @ om, atol=1e-12
        )
        np.testing.assert_allclose(
            (M @ M.inverse()).data, np.eye(2 * n), atol=1e-9
        )


def test_matmul_closure(rng, random_symplectic):
    M1 = random_symplectic(rng, 2)
    M2 = random_symplectic(rng, 2)
    prod = M1 @ M2
    assert is_symplectic(prod.data, tol=1e-9)


def test_matmul_ordering_mismatch(rng, random_symplectic):
    M = random_symplectic(rng, 1)
    tilted = SympMatrix(1, M.data, INTERLEAVED)  # n=1: orderings coincide
    with pytest.raises(ValueError):
        M @ tilted


def test_lie_alg_element_requires_symmetry():
    with pytest.raises(ValueError):
        LieAlgElement(1, np.array([[0.0, 1.0], [0.5, 0.0]]))
    L = LieAlgElement(1, np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert L.n == 1


def test_block_decompose_identities(rng, random_symplectic):
    M = random_symplectic(rng, 2)
    blocks = block_decompose(M)
    A, B, C, D = blocks.A, blocks.B, blocks.C, blocks.D
    np.testing.assert_allclose(A @ D.T - B @ C.T, np.eye(2), atol=1e-10)
    np.testing.assert_allclose(A @ B.T, B @ A.T, atol=1e-10)
    np.testing.assert_allclose(C @ D.T, D @ C.T, atol=1e-10)
    np.testing.assert_allclose(blocks.assemble(), M.data, atol=0)


def test_block_decomposition_rejects_broken_blocks():
    with pytest.raises(ValueError):
        BlockDecomposition(
            A=np.eye(2), B=np.zeros((2, 2)), C=np.zeros((2, 2)), D=2 * np.eye(2)
        )


def test_gamma_permutation_is_orthogonal():
    for n in (1, 2, 3):
        g = gamma_permutation(n)
        np.testing.assert_array_equal(g @ g.T, np.eye(2 * n))
        # it carries the block-diagonal form to the grouped form
        np.testing.assert_array_equal(g @ omega_interleaved(n) @ g.T, omega(n))


def test_convert_ordering_round_trip(rng, random_symplectic):
    M = random_symplectic(rng, 2)
    g = gamma_permutation(2)
    tilde = g.T @ M.data @ g
    back = convert_ordering(tilde)
    np.testing.assert_allclose(back.data, M.data, atol=1e-13)
    # permutation similarity preserves the Frobenius norm exactly
    assert np.linalg.norm(tilde) == pytest.approx(np.linalg.norm(M.data), abs=0)


def test_convert_ordering_rejects_non_symplectic():
    with pytest.raises(ValueError):
        convert_ordering(2 * np.eye(4))


def test_interleaved_block_diagonal_of_single_mode_elements(rng, random_symmetric):
    # block-diag of per-mode group elements is interleaved-symplectic
    blocks = [
        exp_map(LieAlgElement(1, random_symmetric(rng, 2))).data for _ in range(3)
    ]
    tilde = np.zeros((6, 6))
    for i, blk in enumerate(blocks):
        tilde[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = blk
    assert symplectic_residual(tilde, INTERLEAVED) <= 1e-12
    M = convert_ordering(tilde)
    assert M.n == 3 and M.ordering == GROUPED


def test_exp_map_zero_is_identity():
    M = exp_map(LieAlgElement(2, np.zeros((4, 4))))
    np.testing.assert_array_equal(M.data, np.eye(4))


@settings(max_examples=40, deadline=None)
@given(
    entries=arrays(
        np.float64,
        (4, 4),
        elements=st.floats(min_value=-1.0, max_value=1.0),
    )
)
def test_exp_map_lands_in_group(entries):
    L = LieAlgElement(2, (entries + entries.T) / 2.0)
    M = exp_map(L, tol=1e-8)
    assert symplectic_residual(M.data) <= 1e-8


def test_product_of_exponentials_stays_symplectic(rng, random_symmetric):
    for _ in range(20):
        L1 = LieAlgElement(2, random_symmetric(rng, 4))
        L2 = LieAlgElement(2, random_symmetric(rng, 4))
        prod = exp_map(L1) @ exp_map(L2)
        assert is_symplectic(prod.data, tol=1e-9)
