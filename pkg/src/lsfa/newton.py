"""Safeguarded Newton solver for the fixed-barrier subproblem.

Each iteration computes the working index set T from the current point,
solves the reduced symmetric positive-definite system

    H[(ell, s_T), (ell, s_T)] d = [ H[ell, s_~T] s_~T - g_ell ;
                                    H[s_T, s_~T] s_~T - g_{s_T} ]

(the Schur-free back-substitution of the full Newton system, using
d_{s_~T} = -s_{~T}), guards the direction with a descent test and falls back
to a scaled-gradient direction when the test fails, then runs a backtracking
line search.  The update is modified so that the coordinates off T take a
unit step regardless of the accepted alpha, which zeroes them exactly:

    ell(alpha) = ell + alpha d_ell,
    s(alpha)   = s + alpha d_s on T,   0 off T.

Trial points outside the positive-definite cone evaluate to +inf and are
rejected by the same sufficient-decrease inequality as ordinary ascent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InfeasiblePointError, NumericalBreakdownError
from .objective import (
    BarrierObjective,
    Iterate,
    eval_f_at,
    eval_h_tau,
    grad_h_tau,
    hessian_blocks,
)
from .prox import StationarityResidual, complement, stationarity_residual
from .trace import TraceRow


@dataclass
class NewtonParams:
    """Inner-solver parameters.

    gamma is the prox stepsize defining the working set; delta the safeguard
    margin; sigma and beta the sufficient-decrease fraction and backtracking
    ratio; residual_tol the stopping threshold on ||F|| / sqrt(2m).
    """

    gamma: float
    delta: float = 1e-4
    sigma: float = 5e-5
    beta: float = 0.5
    residual_tol: float = 1e-4
    max_inner_iters: int = 200
    max_backtracks: int = 50

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if not 0 < self.sigma < 0.5:
            raise ValueError(f"sigma must be in (0, 1/2), got {self.sigma}")
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if not self.residual_tol > 0:
            raise ValueError(f"residual_tol must be > 0, got {self.residual_tol}")
        if self.max_inner_iters < 1 or self.max_backtracks < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass
class Direction:
    """Search direction; the block off T always equals -s there."""

    d_ell: np.ndarray
    d_s: np.ndarray
    kind: str  # "newton" | "gradient-fallback"


def newton_direction(
    iterate: Iterate,
    T: np.ndarray,
    barrier: BarrierObjective,
    grad: tuple[np.ndarray, np.ndarray] | None = None,
    blocks: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None,
) -> Direction:
    """Solve the reduced Newton system of size m + |T|.

    `grad` and `blocks` may carry precomputed gradient and Hessian blocks.
    The reduced matrix is a principal submatrix of the positive-definite
    Hessian, so the factorization must succeed; failure raises
    NumericalBreakdownError.
    """
    g_ell, g_s = grad if grad is not None else grad_h_tau(iterate, barrier)
    H_ll, H_ls, H_ss = blocks if blocks is not None else hessian_blocks(iterate, barrier)
    m = iterate.basis.m
    Tbar = complement(T, m)
    s_Tbar = iterate.s[Tbar]

    K = np.block(
        [
            [H_ll, H_ls[:, T]],
            [H_ls[:, T].T, H_ss[np.ix_(T, T)]],
        ]
    )
    rhs = np.concatenate(
        [
            H_ls[:, Tbar] @ s_Tbar - g_ell,
            H_ss[np.ix_(T, Tbar)] @ s_Tbar - g_s[T],
        ]
    )
    try:
        cho = scipy.linalg.cho_factor(K, lower=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdownError(
            f"reduced Newton matrix of size {K.shape[0]} is not positive definite: {exc}"
        ) from exc
    sol = scipy.linalg.cho_solve(cho, rhs)

    d_s = np.zeros(m)
    d_s[T] = sol[m:]
    d_s[Tbar] = -s_Tbar
    return Direction(d_ell=sol[:m], d_s=d_s, kind="newton")


def descent_safeguard(
    direction: Direction,
    g_s: np.ndarray,
    s: np.ndarray,
    T: np.ndarray,
    delta: float,
    gamma: float,
) -> bool:
    """True when <g_{s_T}, d_{s_T}> <= -delta ||d_s||^2 + ||s_{~T}||^2 / (4 gamma).

    ||d_s|| is the norm of the full s-block of the direction, including the
    off-T part.
    """
    Tbar = complement(T, len(s))
    lhs = float(g_s[T] @ direction.d_s[T])
    rhs = -delta * float(direction.d_s @ direction.d_s) + float(s[Tbar] @ s[Tbar]) / (4.0 * gamma)
    return lhs <= rhs


def fallback_direction(iterate: Iterate, g_ell: np.ndarray, g_s: np.ndarray, T: np.ndarray) -> Direction:
    """Scaled-gradient direction: -g on (ell, s_T) and -s off T."""
    d_s = -g_s.copy()
    Tbar = complement(T, iterate.basis.m)
    d_s[Tbar] = -iterate.s[Tbar]
    return Direction(d_ell=-g_ell, d_s=d_s, kind="gradient-fallback")


@dataclass
class LineSearchResult:
    alpha: float
    iterate: Iterate | None
    n_backtracks: int
    success: bool


def line_search(
    iterate: Iterate,
    direction: Direction,
    T: np.ndarray,
    barrier: BarrierObjective,
    params: NewtonParams,
    grad: tuple[np.ndarray, np.ndarray] | None = None,
    h_current: float | None = None,
) -> LineSearchResult:
    """Backtracking search over alpha = beta^v with the modified update.

    The sufficient-decrease slope uses the full concatenated gradient and
    direction, including the off-T block that takes a unit step regardless of
    alpha.  Infeasible trial points evaluate to +inf and fail the test.
    """
    g_ell, g_s = grad if grad is not None else grad_h_tau(iterate, barrier)
    h0 = eval_h_tau(iterate, barrier) if h_current is None else h_current
    slope = float(g_ell @ direction.d_ell + g_s @ direction.d_s)
    in_T = np.zeros(iterate.basis.m, dtype=bool)
    in_T[T] = True

    for v in range(params.max_backtracks + 1):
        alpha = params.beta**v
        trial_s = np.where(in_T, iterate.s + alpha * direction.d_s, 0.0)
        trial = Iterate(iterate.ell + alpha * direction.d_ell, trial_s, iterate.basis)
        if eval_h_tau(trial, barrier) <= h0 + params.sigma * alpha * slope:
            return LineSearchResult(alpha=alpha, iterate=trial, n_backtracks=v, success=True)
    return LineSearchResult(alpha=0.0, iterate=None, n_backtracks=params.max_backtracks, success=False)


@dataclass
class InnerSolveResult:
    """Outcome of one fixed-barrier solve."""

    iterate: Iterate
    status: str  # "converged" | "iteration-cap" | "line-search-failure"
    rows: list[TraceRow] = field(default_factory=list)
    n_iters: int = 0
    residual: StationarityResidual | None = None


def solve_tau_min(
    init: Iterate,
    barrier: BarrierObjective,
    params: NewtonParams,
    outer_index: int = 0,
) -> InnerSolveResult:
    """Run the safeguarded Newton iteration until the residual rule fires.

    Stops when ||F|| / sqrt(2m) <= params.residual_tol, the iteration cap is
    hit, or the line search fails.  Each accepted step appends one trace row
    stamped with `outer_index` and the barrier level.
    """
    if not init.is_strictly_feasible:
        raise InfeasiblePointError("inner solve requires a strictly feasible starting point")

    it = init
    g = grad_h_tau(it, barrier)
    res = stationarity_residual(it, barrier, params.gamma, grad=g)
    rows: list[TraceRow] = []
    k = 0
    while True:
        if res.norm_normalized <= params.residual_tol:
            status = "converged"
            break
        if k >= params.max_inner_iters:
            status = "iteration-cap"
            break

        direction = newton_direction(it, res.T, barrier, grad=g)
        if not descent_safeguard(direction, g[1], it.s, res.T, params.delta, params.gamma):
            direction = fallback_direction(it, g[0], g[1], res.T)

        ls = line_search(it, direction, res.T, barrier, params, grad=g)
        if not ls.success:
            status = "line-search-failure"
            break

        it = ls.iterate
        k += 1
        g = grad_h_tau(it, barrier)
        res = stationarity_residual(it, barrier, params.gamma, grad=g)
        rows.append(
            TraceRow(
                outer_iter=outer_index,
                tau=barrier.tau,
                inner_iter=k,
                objective_h_tau=eval_h_tau(it, barrier),
                objective_f=eval_f_at(it, barrier.problem),
                residual_normalized=res.norm_normalized,
                support_size=int(np.count_nonzero(it.s)),
                step_alpha=ls.alpha,
                direction_kind=direction.kind,
                wall_time_ns=time.perf_counter_ns(),
            )
        )

    return InnerSolveResult(iterate=it, status=status, rows=rows, n_iters=k, residual=res)
