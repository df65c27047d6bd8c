"""Channel capacity of discrete memoryless channels.

Capacity is the maximum of the mutual information between channel input
and output over all input distributions.  It is computed here by the
classical alternating maximization: for the current input distribution r,
each input's relative-entropy score

    D_x = sum_y W[x, y] log2(W[x, y] / (r W)[y])

gives a certified bracket  sum_x r_x D_x  <=  C  <=  max_x D_x,  and the
update r_x <- r_x 2^(D_x) / Z tightens the lower end monotonically.  The
iteration stops when the bracket width falls below the requested
tolerance, so the returned value carries an explicit error bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .core import CommSystem, Distribution, Label, StochasticMatrix
from .measures import symmetric_report

# Optimal-input weights below this are presentation noise and clamped to 0.
WEIGHT_CLAMP = 1e-15


@dataclass(frozen=True)
class CapacityResult:
    """Capacity estimate with its convergence certificate.

    ``capacity`` is the certified lower bound at termination and
    ``gap_bound`` the distance to the matching upper bound, so the true
    capacity lies in ``[capacity, capacity + gap_bound]``.
    """

    capacity: float
    optimal_input: Distribution
    iterations: int
    converged: bool
    gap_bound: float


def _input_scores(w: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Per-input relative entropy D_x between W[x, :] and the output mix."""
    out = r @ w
    mask = w > 0
    ratio = np.ones_like(w)
    np.divide(w, out[None, :], out=ratio, where=mask)
    terms = np.zeros_like(w)
    np.multiply(w, np.log2(ratio, where=mask, out=np.zeros_like(w)), out=terms, where=mask)
    return terms.sum(axis=1)


def _iterates(w: np.ndarray, max_iter: int) -> Iterator[tuple[float, float, np.ndarray]]:
    """Yield (lower, upper, input distribution) for each iteration."""
    n = w.shape[0]
    r = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        scores = _input_scores(w, r)
        lower = float(r @ scores)
        upper = float(scores.max())
        yield max(lower, 0.0), max(upper, 0.0), r
        r = r * np.exp2(scores - scores.max())
        # keep full support so the bracket stays valid and free of 0 * inf
        r = np.maximum(r, 1e-300)
        r = r / r.sum()


def channel_capacity(
    channel: StochasticMatrix, tol: float = 1e-9, max_iter: int = 10000
) -> CapacityResult:
    """Capacity of a channel in bits, certified to within ``tol``.

    Starts from the uniform input distribution.  If ``max_iter`` is
    exhausted before the bracket closes, the best estimate is returned
    with ``converged=False`` and an honest ``gap_bound``.  Channels whose
    optimal input sits on the simplex boundary converge sublinearly, so
    very tight tolerances may need a larger iteration budget.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    lower = upper = 0.0
    r = np.full(channel.n, 1.0 / channel.n)
    iterations = 0
    converged = False
    for lower, upper, r in _iterates(channel.rows, max_iter):
        iterations += 1
        if upper - lower <= tol:
            converged = True
            break
    best = np.where(r < WEIGHT_CLAMP, 0.0, r)
    return CapacityResult(
        capacity=lower,
        optimal_input=Distribution(best, Label.SIGNAL, normalize=True),
        iterations=iterations,
        converged=converged,
        gap_bound=max(upper - lower, 0.0),
    )


@dataclass(frozen=True)
class ChainCheck:
    """Result of checking avg consistent info <= avg mutual info <= capacity."""

    ok: bool
    avg_consistent_info: float
    avg_mutual_info: float
    capacity: float
    tol: float


def verify_chain(system: CommSystem, tol: float = 1e-9) -> ChainCheck:
    """Verify the ordering of the three headline quantities for a system.

    The averaged consistent information can never exceed the averaged
    mutual information, which in turn cannot exceed the capacity of the
    shared channel.  ``tol`` is used both as the capacity certificate
    tolerance and as the slack in the comparisons.
    """
    report = symmetric_report(system)
    cap = channel_capacity(system.channel, tol=tol)
    ok = (
        report.avg_consistent_info <= report.avg_mutual_info + tol
        and report.avg_mutual_info <= cap.capacity + cap.gap_bound + tol
    )
    return ChainCheck(
        ok=ok,
        avg_consistent_info=report.avg_consistent_info,
        avg_mutual_info=report.avg_mutual_info,
        capacity=cap.capacity,
        tol=tol,
    )
