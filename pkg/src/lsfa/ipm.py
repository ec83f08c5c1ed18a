"""Outer interior-point loop: geometric barrier decay with warm starts.

The k-th inner solve runs at tau = tau0 * theta^k (computed in closed form so
the schedule is exact), warm-started from the previous inner solution; the
loop ends once tau drops to the termination threshold.  The final interior
iterate is mapped back to matrices, and rank / support are read off with
relative thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasiblePointError
from .newton import InnerSolveResult, NewtonParams, solve_tau_min
from .objective import BarrierObjective, Iterate, ProblemData
from .symbasis import SymmetricBasis
from .trace import TraceRow


@dataclass
class IpmParams:
    """Outer-loop parameters plus the solver weights.

    `newton` defaults to a NewtonParams built from `gamma`; when passed
    explicitly its gamma must agree with the top-level one.
    """

    C: float
    mu: float
    gamma: float
    tau0: float = 0.5
    theta: float = 0.5
    epsilon: float = 1e-6
    newton: NewtonParams | None = None

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError(f"C must be > 0, got {self.C}")
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must be in (0, 1), got {self.theta}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if not self.tau0 > 0:
            raise ValueError(f"tau0 must be > 0, got {self.tau0}")
        if self.newton is None:
            self.newton = NewtonParams(gamma=self.gamma)
        elif self.newton.gamma != self.gamma:
            raise ValueError(
                f"newton.gamma = {self.newton.gamma} disagrees with gamma = {self.gamma}"
            )


@dataclass
class Solution:
    """Solver output: matrices, coordinates, structure estimates, and trace."""

    L_star: np.ndarray
    S_star: np.ndarray
    ell_star: np.ndarray
    s_star: np.ndarray
    rank_estimate: int
    support: np.ndarray  # boolean p x p mask of the nonzero entries of S_star
    traces: list[TraceRow] = field(default_factory=list)
    status: str = "converged"
    n_outer: int = 0
    n_inner_total: int = 0
    final_tau: float = np.nan
    final_residual_normalized: float = np.nan


def default_init(problem: ProblemData) -> tuple[np.ndarray, np.ndarray]:
    """Standard strictly feasible start (L0, S0) = (Sigma_check/2, Sigma_check/2)."""
    half = 0.5 * problem.sigma_check
    return half.copy(), half.copy()


def recover_solution(
    iterate: Iterate,
    eta_rank: float = 1e-6,
    eta_supp: float = 1e-6,
    traces: list[TraceRow] | None = None,
    status: str = "converged",
    n_outer: int = 0,
    final_tau: float = np.nan,
    final_residual_normalized: float = np.nan,
) -> Solution:
    """Map a final iterate to matrices and threshold-based structure estimates.

    rank_estimate counts eigenvalues of L above eta_rank times the largest;
    support marks entries of S above eta_supp times the largest magnitude.
    """
    L, S = iterate.L, iterate.S
    eigs = np.linalg.eigvalsh(L)
    top = float(eigs[-1])
    rank_estimate = int(np.sum(eigs > eta_rank * top)) if top > 0 else 0
    s_max = float(np.max(np.abs(S)))
    support = np.abs(S) > eta_supp * s_max if s_max > 0 else np.zeros_like(S, dtype=bool)
    traces = list(traces) if traces is not None else []
    return Solution(
        L_star=L,
        S_star=S,
        ell_star=iterate.ell.copy(),
        s_star=iterate.s.copy(),
        rank_estimate=rank_estimate,
        support=support,
        traces=traces,
        status=status,
        n_outer=n_outer,
        n_inner_total=len(traces),
        final_tau=final_tau,
        final_residual_normalized=final_residual_normalized,
    )


def ipm_solve(
    problem: ProblemData,
    init: tuple[np.ndarray, np.ndarray],
    params: IpmParams,
    eta_rank: float = 1e-6,
    eta_supp: float = 1e-6,
) -> Solution:
    """Drive the barrier parameter to the threshold, warm-starting each solve.

    A line-search failure in an inner solve aborts the loop and propagates in
    the status together with the partial trace; an inner iteration cap is
    recorded but the outer loop continues.
    """
    basis = SymmetricBasis(problem.p)
    L0, S0 = init
    it = Iterate(basis.mat_to_vec(np.asarray(L0, dtype=float)), basis.mat_to_vec(np.asarray(S0, dtype=float)), basis)
    if not it.is_strictly_feasible:
        raise InfeasiblePointError("initial (L0, S0) must both be strictly positive definite")

    rows: list[TraceRow] = []
    statuses: list[str] = []
    final_tau = np.nan
    final_res = np.nan
    k = 0
    while (tau := params.tau0 * params.theta**k) > params.epsilon:
        result: InnerSolveResult = solve_tau_min(
            it, BarrierObjective(problem, tau), params.newton, outer_index=k
        )
        it = result.iterate
        rows.extend(result.rows)
        statuses.append(result.status)
        final_tau = tau
        final_res = result.residual.norm_normalized
        k += 1
        if result.status == "line-search-failure":
            break

    if "line-search-failure" in statuses:
        status = "line-search-failure"
    elif "iteration-cap" in statuses:
        status = "iteration-cap"
    else:
        status = "converged"

    return recover_solution(
        it,
        eta_rank=eta_rank,
        eta_supp=eta_supp,
        traces=rows,
        status=status,
        n_outer=len(statuses),
        final_tau=final_tau,
        final_residual_normalized=final_res,
    )
