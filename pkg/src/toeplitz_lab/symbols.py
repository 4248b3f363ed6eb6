"""Matrix-valued symbols on S1 and S3 and their exact algebra.

Two symbol classes are implemented: Laurent polynomials z -> sum_k c_k z^k
with r x r matrix coefficients (S1), and polynomials in z1, z2, z1bar, z2bar
with matrix coefficients restricted to the unit sphere of C^2 (S3).  Both are
dense in the continuous invertible symbols up to homotopy, and both admit
exact finite truncations of the associated Toeplitz operators downstream.

All symbols are immutable after construction; every operation returns a new
value.  Coefficients are pruned only when exactly zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import SymbolError

MARGIN_THRESHOLD = 1e-6


def _as_coeff(rank: int | None, value) -> np.ndarray:
    m = np.atleast_2d(np.asarray(value, dtype=complex))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"coefficient must be square, got shape {m.shape}")
    if rank is not None and m.shape[0] != rank:
        raise ValueError(f"coefficient rank {m.shape[0]} != symbol rank {rank}")
    if not np.all(np.isfinite(m)):
        raise ValueError("coefficient entries must be finite")
    m = m.copy()
    m.setflags(write=False)
    return m


class LaurentSymbol:
    """Matrix Laurent polynomial sum_k c_k z^k on the unit circle.

    terms maps integer exponents to r x r complex matrices; scalars are
    promoted to 1 x 1.  At least one coefficient must be nonzero.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, terms: Mapping[int, object], rank: int | None = None):
        cleaned: dict[int, np.ndarray] = {}
        for k, value in terms.items():
            k = int(k)
            m = _as_coeff(rank, value)
            if rank is None:
                rank = m.shape[0]
            if np.any(m != 0):
                cleaned[k] = m
        if not cleaned:
            raise ValueError("symbol must have at least one nonzero term")
        self.rank = rank
        self._terms = MappingProxyType(dict(sorted(cleaned.items())))

    @property
    def terms(self) -> Mapping[int, np.ndarray]:
        return self._terms

    @property
    def k_min(self) -> int:
        return min(self._terms)

    @property
    def k_max(self) -> int:
        return max(self._terms)

    @property
    def bandwidth(self) -> int:
        return self.k_max - self.k_min

    def coeff(self, k: int) -> np.ndarray:
        z = np.zeros((self.rank, self.rank), dtype=complex)
        return self._terms.get(k, z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        return (self.rank == other.rank
                and self._terms.keys() == other._terms.keys()
                and all(np.array_equal(self._terms[k], other._terms[k]) for k in self._terms))

    def __repr__(self) -> str:
        return f"LaurentSymbol(rank={self.rank}, window=[{self.k_min},{self.k_max}])"


class S3Symbol:
    """Matrix polynomial in z1, z2, z1bar, z2bar on the unit sphere of C^2.

    terms maps exponent tuples (p, q, s, t) with non-negative entries to
    r x r complex matrices.  Tuples are canonical: at most one term each.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, terms: Mapping[tuple, object], rank: int | None = None):
        cleaned: dict[tuple, np.ndarray] = {}
        for key, value in terms.items():
            p, q, s, t = (int(e) for e in key)
            if min(p, q, s, t) < 0:
                raise ValueError(f"exponents must be non-negative, got {key}")
            m = _as_coeff(rank, value)
            if rank is None:
                rank = m.shape[0]
            if np.any(m != 0):
                cleaned[(p, q, s, t)] = m
        if not cleaned:
            raise ValueError("symbol must have at least one nonzero term")
        self.rank = rank
        self._terms = MappingProxyType(dict(sorted(cleaned.items())))

    @property
    def terms(self) -> Mapping[tuple, np.ndarray]:
        return self._terms

    @property
    def total_degree(self) -> int:
        return max(p + q + s + t for (p, q, s, t) in self._terms)

    @property
    def max_shift(self) -> int:
        """Largest upward total-degree shift of the holomorphic grading."""
        return max(max(p - s + q - t, 0) for (p, q, s, t) in self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, S3Symbol):
            return NotImplemented
        return (self.rank == other.rank
                and self._terms.keys() == other._terms.keys()
                and all(np.array_equal(self._terms[k], other._terms[k]) for k in self._terms))

    def __repr__(self) -> str:
        return f"S3Symbol(rank={self.rank}, degree={self.total_degree}, nterms={len(self._terms)})"


Symbol = LaurentSymbol | S3Symbol


@dataclass(frozen=True)
class HopfPoint:
    """Point of S3 in Hopf coordinates: z1 = cos(theta) e^{i phi1}, z2 = sin(theta) e^{i phi2}."""

    theta: float
    phi1: float
    phi2: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi / 2):
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not (0.0 <= self.phi1 < 2 * np.pi and 0.0 <= self.phi2 < 2 * np.pi):
            raise ValueError("phi angles must lie in [0, 2*pi)")


def laurent_identity(rank: int) -> LaurentSymbol:
    return LaurentSymbol({0: np.eye(rank)})


def s3_identity(rank: int) -> S3Symbol:
    return S3Symbol({(0, 0, 0, 0): np.eye(rank)})


def laurent_constant(matrix) -> LaurentSymbol:
    return LaurentSymbol({0: matrix})


def s3_constant(matrix) -> S3Symbol:
    return S3Symbol({(0, 0, 0, 0): matrix})


def multiply(a: Symbol, b: Symbol) -> Symbol:
    """Pointwise product ab; exact coefficient arithmetic on both manifolds."""
    if type(a) is not type(b):
        raise ValueError("cannot multiply symbols of different manifold kinds")
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    out: dict = {}
    if isinstance(a, LaurentSymbol):
        for j, cj in a.terms.items():
            for l, dl in b.terms.items():
                k = j + l
                prod = cj @ dl
                out[k] = out.get(k, 0) + prod
        return LaurentSymbol(out, rank=a.rank)
    for (p, q, s, t), c in a.terms.items():
        for (P, Q, S, T), d in b.terms.items():
            key = (p + P, q + Q, s + S, t + T)
            out[key] = out.get(key, 0) + c @ d
    return S3Symbol(out, rank=a.rank)


def adjoint(a: Symbol) -> Symbol:
    """Pointwise conjugate transpose: eval(adjoint(a))(x) = eval(a)(x)^dagger."""
    if isinstance(a, LaurentSymbol):
        return LaurentSymbol({-k: c.conj().T for k, c in a.terms.items()}, rank=a.rank)
    return S3Symbol({(s, t, p, q): c.conj().T for (p, q, s, t), c in a.terms.items()},
                    rank=a.rank)


def transpose(a: Symbol) -> Symbol:
    """Pointwise transpose without conjugation: eval(transpose(a))(x) = eval(a)(x)^T."""
    if isinstance(a, LaurentSymbol):
        return LaurentSymbol({k: c.T for k, c in a.terms.items()}, rank=a.rank)
    return S3Symbol({key: c.T for key, c in a.terms.items()}, rank=a.rank)


def direct_sum(a: Symbol, b: Symbol) -> Symbol:
    """Block-diagonal symbol of rank a.rank + b.rank."""
    if type(a) is not type(b):
        raise ValueError("cannot direct-sum symbols of different manifold kinds")
    r, s = a.rank, b.rank
    out: dict = {}
    keys = set(a.terms) | set(b.terms)
    for key in keys:
        m = np.zeros((r + s, r + s), dtype=complex)
        if key in a.terms:
            m[:r, :r] = a.terms[key]
        if key in b.terms:
            m[r:, r:] = b.terms[key]
        out[key] = m
    cls = LaurentSymbol if isinstance(a, LaurentSymbol) else S3Symbol
    return cls(out, rank=r + s)


# -- scalar Laurent arithmetic used by the exact determinant ----------------

def _poly_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, 0.0) + v
    return {k: v for k, v in out.items() if v != 0}


def _poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for j, u in f.items():
        for l, v in g.items():
            out[j + l] = out.get(j + l, 0.0) + u * v
    return {k: v for k, v in out.items() if v != 0}


def _poly_neg(f: dict) -> dict:
    return {k: -v for k, v in f.items()}


def _det_poly(entries: list) -> dict:
    """Exact determinant of a matrix of scalar Laurent polynomials (cofactor expansion)."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    acc: dict = {}
    for i in range(n):
        pivot = entries[i][0]
        if not pivot:
            continue
        minor = [[entries[ii][jj] for jj in range(1, n)] for ii in range(n) if ii != i]
        term = _poly_mul(pivot, _det_poly(minor))
        acc = _poly_add(acc, term if i % 2 == 0 else _poly_neg(term))
    return acc


def det_laurent(a: LaurentSymbol) -> LaurentSymbol:
    """Exact determinant as a rank-1 Laurent symbol (Leibniz over the coefficient ring)."""
    r = a.rank
    entries = [[{} for _ in range(r)] for _ in range(r)]
    for k, c in a.terms.items():
        for i in range(r):
            for j in range(r):
                if c[i, j] != 0:
                    entries[i][j] = _poly_add(entries[i][j], {k: c[i, j]})
    det = _det_poly(entries)
    # exact cancellation of tiny cross terms is impossible to distinguish from
    # data; keep every coefficient that is not exactly zero
    if not det:
        raise ValueError("determinant is identically zero (symbol nowhere invertible)")
    return LaurentSymbol({k: [[v]] for k, v in det.items()}, rank=1)


# -- evaluation --------------------------------------------------------------

def evaluate(a: Symbol, point) -> np.ndarray:
    """Evaluate the symbol at one manifold point.

    S1 symbols take a unit-modulus complex number; S3 symbols take a HopfPoint.
    """
    if isinstance(a, LaurentSymbol):
        z = complex(point)
        out = np.zeros((a.rank, a.rank), dtype=complex)
        for k, c in a.terms.items():
            out += c * z ** k
        return out
    if not isinstance(point, HopfPoint):
        point = HopfPoint(*point)
    ct, st = np.cos(point.theta), np.sin(point.theta)
    out = np.zeros((a.rank, a.rank), dtype=complex)
    for (p, q, s, t), c in a.terms.items():
        radial = ct ** (p + s) * st ** (q + t)
        phase = np.exp(1j * ((p - s) * point.phi1 + (q - t) * point.phi2))
        out += c * (radial * phase)
    return out


def eval_circle(a: LaurentSymbol, z: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on an array of circle points; returns (n, r, r)."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape + (a.rank, a.rank), dtype=complex)
    for k, c in a.terms.items():
        out += (z ** k)[..., None, None] * c
    return out


def eval_hopf_grid(a: S3Symbol, theta: np.ndarray, phi1: np.ndarray, phi2: np.ndarray,
                   partials: bool = False):
    """Vectorized evaluation on the product Hopf grid theta x phi1 x phi2.

    Returns value array of shape (nt, n1, n2, r, r); with partials=True returns
    (value, d_theta, d_phi1, d_phi2) using the exact per-term derivatives.
    """
    theta = np.asarray(theta, dtype=float)
    phi1 = np.asarray(phi1, dtype=float)
    phi2 = np.asarray(phi2, dtype=float)
    ct, st = np.cos(theta), np.sin(theta)
    shape = (theta.size, phi1.size, phi2.size, a.rank, a.rank)
    val = np.zeros(shape, dtype=complex)
    if partials:
        dth = np.zeros(shape, dtype=complex)
        dp1 = np.zeros(shape, dtype=complex)
        dp2 = np.zeros(shape, dtype=complex)
    for (p, q, s, t), c in a.terms.items():
        radial = ct ** (p + s) * st ** (q + t)
        phase = (np.exp(1j * (p - s) * phi1)[:, None]
                 * np.exp(1j * (q - t) * phi2)[None, :])
        base = radial[:, None, None] * phase[None, :, :]
        val += base[..., None, None] * c
        if partials:
            # n * x^(n-1) is taken to be 0 when n = 0: no negative powers appear
            drad = np.zeros_like(radial)
            if p + s > 0:
                drad += (p + s) * ct ** (p + s - 1) * (-st) * st ** (q + t)
            if q + t > 0:
                drad += (q + t) * st ** (q + t - 1) * ct * ct ** (p + s)
            dth += (drad[:, None, None] * phase[None, :, :])[..., None, None] * c
            dp1 += (1j * (p - s)) * base[..., None, None] * c
            dp2 += (1j * (q - t)) * base[..., None, None] * c
    if partials:
        return val, dth, dp1, dp2
    return val


def hopf_partials(a: S3Symbol, point: HopfPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Exact partial derivatives (d_theta a, d_phi1 a, d_phi2 a) at one point."""
    if not isinstance(point, HopfPoint):
        point = HopfPoint(*point)
    _, dth, dp1, dp2 = eval_hopf_grid(
        a, np.array([point.theta]), np.array([point.phi1]), np.array([point.phi2]),
        partials=True)
    return dth[0, 0, 0], dp1[0, 0, 0], dp2[0, 0, 0]


# -- invertibility -----------------------------------------------------------

def _hopf_sample_grid(grid_size: int):
    theta = np.linspace(0.0, np.pi / 2, grid_size)
    phi = np.arange(grid_size) * (2 * np.pi / grid_size)
    return theta, phi, phi


def invertibility_margin(a: Symbol, grid_size: int = 64) -> float:
    """Min of |det(a(x))| over a sample grid: uniform on S1, product Hopf grid on S3.

    Returns 0 or near-0 for symbols that vanish somewhere; callers gate on it.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    if isinstance(a, LaurentSymbol):
        z = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
        vals = eval_circle(a, z)
    else:
        theta, phi1, phi2 = _hopf_sample_grid(grid_size)
        vals = eval_hopf_grid(a, theta, phi1, phi2)
    dets = np.linalg.det(vals.reshape(-1, a.rank, a.rank))
    return float(np.min(np.abs(dets)))


def margin_grid_size(a: Symbol) -> int:
    """Default pre-check grid: oversample the determinant's zero set."""
    if isinstance(a, LaurentSymbol):
        return max(16, 4 * (a.bandwidth + 2))
    return max(16, 4 * (a.total_degree + 2))


def require_invertible(a: Symbol, threshold: float = MARGIN_THRESHOLD,
                       grid_size: int | None = None) -> float:
    """Gate for index pipelines: reject symbols whose determinant gets too small.

    Returns the sampled margin; raises SymbolError below threshold, where the
    symbol is not safely Fredholm and no index claim should be made.
    """
    gs = margin_grid_size(a) if grid_size is None else int(grid_size)
    margin = invertibility_margin(a, gs)
    if margin < threshold:
        raise SymbolError(
            f"symbol is not invertible enough on the manifold: sampled "
            f"|det| margin {margin:.3e} < {threshold:.0e} on a {gs}-point grid")
    return margin


def unitarity_defect(a: Symbol, grid_size: int = 32) -> float:
    """Max over a sample grid of the entrywise deviation of a(x)^dagger a(x) from I."""
    if isinstance(a, LaurentSymbol):
        z = np.exp(2j * np.pi * np.arange(grid_size) / grid_size)
        vals = eval_circle(a, z)
    else:
        theta, phi1, phi2 = _hopf_sample_grid(max(16, grid_size))
        vals = eval_hopf_grid(a, theta, phi1, phi2).reshape(-1, a.rank, a.rank)
    gram = np.conj(np.swapaxes(vals, -1, -2)) @ vals
    return float(np.max(np.abs(gram - np.eye(a.rank))))


def power(a: Symbol, k: int, unitary_tol: float = 1e-10) -> Symbol:
    """Pointwise power a^k.

    Negative powers are defined only for pointwise-unitary symbols, where
    a^-1 = adjoint(a) keeps the result polynomial.
    """
    k = int(k)
    if k < 0:
        defect = unitarity_defect(a)
        if defect > unitary_tol:
            raise ValueError(
                f"negative powers need a pointwise-unitary symbol "
                f"(unitarity defect {defect:.2e} > {unitary_tol:.0e})")
        base = adjoint(a)
        k = -k
    else:
        base = a
    out = laurent_identity(a.rank) if isinstance(a, LaurentSymbol) else s3_identity(a.rank)
    for _ in range(k):
        out = multiply(out, base)
    return out
