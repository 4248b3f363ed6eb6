"""Kernel engine: SVD dimension counting, stabilization, residual validation."""
import numpy as np
import pytest

from toeplitz_lab.errors import ResidualFailureError, UnstabilizedError
from toeplitz_lab.kernel import (AnalyticIndex, analytic_index_from_builders,
                                 kernel_dim, stabilized_kernel_dim)


def shift_matrix(n, rows=None):
    """Rectangular forward shift: e_i -> e_{i+1}; exact model of T_z."""
    rows = n + 1 if rows is None else rows
    m = np.zeros((rows, n), dtype=complex)
    for i in range(min(n, rows - 1)):
        m[i + 1, i] = 1.0
    return m


class TestKernelDim:
    def test_full_rank(self):
        assert kernel_dim(np.eye(5)) == 0

    def test_exact_deficiency(self):
        m = np.diag([1.0, 2.0, 0.0, 3.0])
        assert kernel_dim(m) == 1

    def test_zero_matrix_kernel_is_everything(self):
        assert kernel_dim(np.zeros((3, 4))) == 4

    def test_wide_block_counts_missing_columns(self):
        m = np.hstack([np.eye(2), np.zeros((2, 3))])
        assert kernel_dim(m) == 3

    def test_relative_threshold(self):
        m = np.diag([1e6, 1.0])
        # 1.0 <= 1e-8 * 1e6 is false: full rank despite the scale spread
        assert kernel_dim(m) == 0
        assert kernel_dim(np.diag([1e6, 1e-4])) == 1

    def test_block_additivity(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((6, 4))
        a[:, 0] = a[:, 1]  # one exact deficiency
        b = np.diag([1.0, 0.0, 2.0])
        block = np.block([[a, np.zeros((6, 3))], [np.zeros((3, 4)), b]])
        assert kernel_dim(block) == kernel_dim(a) + kernel_dim(b)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(1)
        m = np.diag([1.0, 0.5, 0.0, 0.0])
        q1, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        q2, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        assert kernel_dim(q1 @ m @ q2) == kernel_dim(m)


class TestStabilized:
    def test_clean_zero_kernel(self):
        report = stabilized_kernel_dim(shift_matrix, (8, 16))
        assert report.dim == 0
        assert report.dims == (0, 0)
        assert report.residual == 0.0
        assert report.spectral_gap == np.inf

    def test_clean_positive_kernel(self):
        # backward shift kills exactly the lowest basis vector at every size
        def builder(n):
            return shift_matrix(n).T

        report = stabilized_kernel_dim(builder, (8, 16))
        assert report.dim == 1
        assert report.residual <= 1e-12

    def test_disagreeing_dims_raise(self):
        def builder(n):
            d = np.ones(n)
            if n >= 8:
                d[-1] = 0.0
            return np.diag(d)

        with pytest.raises(UnstabilizedError, match="does not stabilize"):
            stabilized_kernel_dim(builder, (4, 8))

    def test_square_truncation_artifact_caught_by_residual(self):
        # The classic trap: square truncations of the forward shift have a
        # spurious kernel vector (the last basis vector) at every size.  The
        # sizes agree, so only the exact-operator residual check can object.
        def square(n):
            return shift_matrix(n, rows=n)

        with pytest.raises(ResidualFailureError, match="residual"):
            stabilized_kernel_dim(square, (8, 16))

    def test_narrow_spectral_gap_warns(self):
        def builder(n):
            d = np.ones(n)
            d[5], d[6] = 1e-9, 5e-7
            return np.diag(d)

        with pytest.warns(RuntimeWarning, match="spectral gap"):
            report = stabilized_kernel_dim(builder, (10, 14))
        assert report.dim == 1
        assert report.spectral_gap == pytest.approx(500.0)

    def test_sizes_validation(self):
        with pytest.raises(ValueError):
            stabilized_kernel_dim(shift_matrix, (8,))
        with pytest.raises(ValueError):
            stabilized_kernel_dim(shift_matrix, (8, 8))
        with pytest.raises(ValueError):
            stabilized_kernel_dim(shift_matrix, (16, 8))

    def test_report_carries_top_size_evidence(self):
        report = stabilized_kernel_dim(shift_matrix, (4, 6))
        assert report.sizes == (4, 6)
        assert report.singular_values.shape == (6,)


def up_shift(k):
    """Image-exact truncation family for the k-step forward shift (k >= 0)."""
    def builder(n):
        m = np.zeros((n + k, n), dtype=complex)
        for i in range(n):
            m[i + k, i] = 1.0
        return m
    return builder


def down_shift(k):
    """Image-exact truncation family for the k-step backward shift (k >= 0)."""
    def builder(n):
        m = np.zeros((n, n), dtype=complex)
        for i in range(n - k):
            m[i, i + k] = 1.0
        return m
    return builder


class TestAnalyticIndexAssembly:
    def test_two_step_shift_model(self):
        # forward shift by 2: trivial kernel; its adjoint (backward shift by
        # 2) annihilates the first two basis vectors, so coker dim is 2
        result = analytic_index_from_builders(up_shift(2), down_shift(2), (8, 16))
        assert isinstance(result, AnalyticIndex)
        assert (result.ker_dim, result.coker_dim, result.index) == (0, 2, -2)

    def test_opposite_orientation(self):
        result = analytic_index_from_builders(down_shift(3), up_shift(3), (8, 16))
        assert (result.ker_dim, result.coker_dim, result.index) == (3, 0, 3)

    def test_identity_model(self):
        result = analytic_index_from_builders(up_shift(0), down_shift(0), (8, 16))
        assert (result.ker_dim, result.coker_dim, result.index) == (0, 0, 0)
        assert result.index == result.ker_dim - result.coker_dim
