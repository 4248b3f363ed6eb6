"""Kernel detection for exact rectangular truncations, with stabilization.

The analytic index of a Toeplitz operator is dim ker - dim coker.  Both
dimensions are read off finite rectangular truncations: the kernel dimension
from the SVD of the truncated matrix, the cokernel from the same procedure
applied to the adjoint symbol's own truncation (never from transposing a
finite block, which has the wrong shape to be image-exact).

A dimension is only trusted when it stabilizes: the SVD rank deficiency must
agree across increasing truncation sizes, and the candidate kernel vectors at
the largest size must annihilate a strictly larger truncation after zero
extension.  Because the truncations are image-exact, that larger matrix acts
on the candidates exactly as the infinite operator does, so the residual test
separates true kernel vectors from truncation artifacts.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ResidualFailureError, UnstabilizedError

DEFAULT_TOL = 1e-8
DEFAULT_RESIDUAL_TOL = 1e-6
GAP_WARN_RATIO = 1e3


@dataclass(frozen=True)
class KernelReport:
    """Stabilized kernel dimension of one operator truncation family."""

    dim: int
    sizes: tuple[int, ...]
    dims: tuple[int, ...]
    singular_values: np.ndarray
    spectral_gap: float
    residual: float


def _svd_split(matrix: np.ndarray, tol: float):
    """Split the SVD of a truncation into (dim, sigma, kernel_basis, gap).

    dim counts singular values at most tol * sigma_max, plus any columns
    beyond the number of singular values (possible only for wide blocks).
    A zero matrix has every column in the kernel.
    """
    m = np.asarray(matrix, dtype=complex)
    rows, cols = m.shape
    u, sigma, vh = np.linalg.svd(m, full_matrices=True)
    if sigma.size == 0 or sigma[0] == 0.0:
        return cols, sigma, np.eye(cols, dtype=complex), np.inf
    thresh = tol * sigma[0]
    small = sigma <= thresh
    dim = int(np.count_nonzero(small)) + (cols - sigma.size)
    basis = vh.conj().T[:, cols - dim:] if dim > 0 else np.zeros((cols, 0), dtype=complex)
    kept = sigma[~small]
    rejected = sigma[small]
    if dim == 0 or rejected.size == 0 or rejected[0] == 0.0:
        gap = np.inf
    else:
        gap = float(kept[-1] / rejected[0]) if kept.size else np.inf
    return dim, sigma, basis, gap


def kernel_dim(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """SVD kernel dimension of one matrix at relative threshold tol."""
    dim, _, _, _ = _svd_split(matrix, tol)
    return dim


def stabilized_kernel_dim(
    builder: Callable[[int], np.ndarray],
    sizes: Sequence[int],
    tol: float = DEFAULT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
    label: str = "kernel",
) -> KernelReport:
    """Kernel dimension trusted across a family of image-exact truncations.

    builder(n) must return the truncation whose domain is the first n basis
    bands, with the prefix property: the matrix for a larger n contains every
    smaller one as its leading block.  Raises UnstabilizedError when the
    per-size dimensions disagree, ResidualFailureError when a candidate
    kernel vector fails to annihilate the next-larger truncation.
    """
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) < 2 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be at least two strictly increasing truncation sizes")

    dims: list[int] = []
    sigma_top: np.ndarray | None = None
    basis_top: np.ndarray | None = None
    gap_top = np.inf
    for n in sizes:
        dim, sigma, basis, gap = _svd_split(builder(n), tol)
        dims.append(dim)
        sigma_top, basis_top, gap_top = sigma, basis, gap

    if len(set(dims)) != 1:
        raise UnstabilizedError(
            f"{label} dimension does not stabilize across sizes {sizes}: got {dims}")

    dim = dims[-1]
    residual = 0.0
    if dim > 0:
        check = np.asarray(builder(sizes[-1] + 1), dtype=complex)
        padded = np.zeros((check.shape[1], dim), dtype=complex)
        padded[:basis_top.shape[0], :] = basis_top
        image = check @ padded
        residual = float(np.max(np.linalg.norm(image, axis=0)))
        if residual > residual_tol:
            raise ResidualFailureError(
                f"{label} candidates fail exact-operator residual validation: "
                f"residual {residual:.3e} > {residual_tol:.0e} "
                f"(truncation artifact, not a kernel vector)")

    if gap_top < GAP_WARN_RATIO:
        warnings.warn(
            f"{label} spectral gap {gap_top:.2e} below {GAP_WARN_RATIO:.0e}; "
            f"dimension split is poorly separated — consider larger truncations "
            f"or a tighter tolerance",
            RuntimeWarning, stacklevel=2)

    return KernelReport(
        dim=dim,
        sizes=sizes,
        dims=tuple(dims),
        singular_values=sigma_top,
        spectral_gap=gap_top,
        residual=residual,
    )


@dataclass(frozen=True)
class AnalyticIndex:
    """Fredholm index with its stabilized kernel and cokernel evidence."""

    index: int
    ker_dim: int
    coker_dim: int
    sizes: tuple[int, ...]
    ker: KernelReport
    coker: KernelReport


def analytic_index_from_builders(
    ker_builder: Callable[[int], np.ndarray],
    coker_builder: Callable[[int], np.ndarray],
    sizes: Sequence[int],
    tol: float = DEFAULT_TOL,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> AnalyticIndex:
    """Assemble index = dim ker - dim coker from two stabilized truncation families."""
    ker = stabilized_kernel_dim(ker_builder, sizes, tol, residual_tol, label="kernel")
    coker = stabilized_kernel_dim(coker_builder, sizes, tol, residual_tol, label="cokernel")
    return AnalyticIndex(
        index=ker.dim - coker.dim,
        ker_dim=ker.dim,
        coker_dim=coker.dim,
        sizes=tuple(int(n) for n in sizes),
        ker=ker,
        coker=coker,
    )
