"""End-to-end index reports and convergence tables.

An IndexReport carries both sides of the index theorem for one symbol — the
analytic index with its stabilization evidence, the topological index with
its quadrature defects — plus the agreement verdict.  Convergence tables
rerun the Chern quadrature up a resolution ladder and record successive
differences.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .hardy_s1 import analytic_index_s1
from .hardy_s3 import analytic_index_s3
from .symbols import LaurentSymbol, Symbol, require_invertible, unitarity_defect
from .topology import _chern_s1_raw, _chern_s3_raw, topological_index


@dataclass(frozen=True)
class IndexReport:
    """Both routes to the index of one Toeplitz operator, with evidence."""

    manifold: str
    rank: int
    analytic_index: int
    ker_dim: int
    coker_dim: int
    truncation_sizes: tuple[int, ...]
    spectral_gaps: dict
    residual_maxima: dict
    topological_value: complex
    topological_index: int
    agreement: bool
    timings_ms: dict


def compute_index_report(
    symbol: Symbol,
    trunc: int | None = None,
    tol: float = 1e-8,
    residual_tol: float = 1e-6,
    grid: int = 512,
    theta_nodes: int = 24,
    phi_nodes: int = 24,
) -> IndexReport:
    """Run both index pipelines on one symbol and compare them."""
    is_s1 = isinstance(symbol, LaurentSymbol)
    t0 = time.perf_counter()
    if is_s1:
        analytic = analytic_index_s1(symbol, trunc=trunc if trunc else 64,
                                     tol=tol, residual_tol=residual_tol)
    else:
        analytic = analytic_index_s3(symbol, trunc=trunc if trunc else 12,
                                     tol=tol, residual_tol=residual_tol)
    t1 = time.perf_counter()
    chern = topological_index(symbol, grid=grid,
                              theta_nodes=theta_nodes, phi_nodes=phi_nodes)
    t2 = time.perf_counter()
    return IndexReport(
        manifold="S1" if is_s1 else "S3",
        rank=symbol.rank,
        analytic_index=analytic.index,
        ker_dim=analytic.ker_dim,
        coker_dim=analytic.coker_dim,
        truncation_sizes=analytic.sizes,
        spectral_gaps={"kernel": analytic.ker.spectral_gap,
                       "cokernel": analytic.coker.spectral_gap},
        residual_maxima={"kernel": analytic.ker.residual,
                         "cokernel": analytic.coker.residual},
        topological_value=chern.refined,
        topological_index=chern.rounded,
        agreement=analytic.index == chern.rounded,
        timings_ms={"analytic": (t1 - t0) * 1e3, "topological": (t2 - t1) * 1e3},
    )


def _json_real(x: float):
    x = float(x)
    return x if math.isfinite(x) else None


def index_report_to_dict(report: IndexReport) -> dict:
    """JSON-ready document mirroring the report field-for-field (inf -> null)."""
    return {
        "manifold": report.manifold,
        "rank": report.rank,
        "analytic_index": report.analytic_index,
        "ker_dim": report.ker_dim,
        "coker_dim": report.coker_dim,
        "truncation_sizes": list(report.truncation_sizes),
        "spectral_gaps": {k: _json_real(v) for k, v in report.spectral_gaps.items()},
        "residual_maxima": {k: _json_real(v) for k, v in report.residual_maxima.items()},
        "topological_value": [report.topological_value.real, report.topological_value.imag],
        "topological_index": report.topological_index,
        "agreement": report.agreement,
        "timings_ms": {k: round(float(v), 3) for k, v in report.timings_ms.items()},
    }


def index_report_text(report: IndexReport) -> str:
    gaps = ", ".join(f"{k} {v:.3e}" for k, v in report.spectral_gaps.items())
    residuals = ", ".join(f"{k} {v:.3e}" for k, v in report.residual_maxima.items())
    timings = ", ".join(f"{k} {v:.1f} ms" for k, v in report.timings_ms.items())
    tv = report.topological_value
    lines = [
        f"manifold            {report.manifold}, rank {report.rank}",
        f"analytic index      {report.analytic_index}  "
        f"(ker {report.ker_dim}, coker {report.coker_dim})",
        f"truncation sizes    {', '.join(str(n) for n in report.truncation_sizes)}",
        f"spectral gaps       {gaps}",
        f"residual maxima     {residuals}",
        f"topological value   {tv.real:+.12f} {tv.imag:+.3e} i",
        f"topological index   {report.topological_index}",
        f"agreement           {'yes' if report.agreement else 'NO'}",
        f"timings             {timings}",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConvergenceRow:
    size: int
    value: complex
    delta: float | None


def convergence_table(
    symbol: Symbol,
    grid: int = 512,
    theta_nodes: int = 24,
    phi_nodes: int = 24,
    steps: int | None = None,
) -> list[ConvergenceRow]:
    """Chern quadrature up a doubling resolution ladder with successive deltas.

    On S1 the size column is the circle grid (steps defaults to 4); on S3 it
    is the theta node count, with phi nodes doubled in lockstep (steps
    defaults to 3).  Deltas are |value_i - value_{i-1}|, blank on the first row.
    """
    require_invertible(symbol)
    rows: list[ConvergenceRow] = []
    if isinstance(symbol, LaurentSymbol):
        steps = 4 if steps is None else int(steps)
        sizes = [int(grid) * 2 ** i for i in range(steps)]
        values = [_chern_s1_raw(symbol, n) for n in sizes]
    else:
        steps = 3 if steps is None else int(steps)
        unitary = unitarity_defect(symbol) <= 1e-10
        sizes = [int(theta_nodes) * 2 ** i for i in range(steps)]
        values = [_chern_s3_raw(symbol, tn, int(phi_nodes) * 2 ** i, unitary)
                  for i, tn in enumerate(sizes)]
    previous: complex | None = None
    for size, value in zip(sizes, values):
        delta = None if previous is None else float(abs(value - previous))
        rows.append(ConvergenceRow(size=size, value=value, delta=delta))
        previous = value
    return rows


def convergence_to_csv(rows: list[ConvergenceRow]) -> str:
    lines = ["size,value_re,value_im,delta"]
    for row in rows:
        delta = "" if row.delta is None else repr(row.delta)
        lines.append(f"{row.size},{row.value.real!r},{row.value.imag!r},{delta}")
    return "\n".join(lines) + "\n"


def convergence_to_dict(rows: list[ConvergenceRow]) -> dict:
    return {"rows": [{"size": r.size,
                      "value": [r.value.real, r.value.imag],
                      "delta": r.delta} for r in rows]}


def convergence_text(rows: list[ConvergenceRow]) -> str:
    lines = [f"{'size':>8}  {'value':>32}  {'delta':>12}"]
    for row in rows:
        value = f"{row.value.real:+.12f} {row.value.imag:+.2e} i"
        delta = "" if row.delta is None else f"{row.delta:.3e}"
        lines.append(f"{row.size:>8}  {value:>32}  {delta:>12}")
    return "\n".join(lines) + "\n"


def final_delta(rows: list[ConvergenceRow]) -> float:
    if len(rows) < 2 or rows[-1].delta is None:
        raise ValueError("convergence table needs at least two rows")
    deltas = [abs(np.float64(r.delta)) for r in rows[1:]]
    return float(deltas[-1])
