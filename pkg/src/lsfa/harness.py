"""Run configuration, file I/O, and the benchmark pipelines behind the CLI.

File conventions: matrices are dense CSV, row-major, no header, 17
significant digits (lossless for float64); traces carry a header row (see
trace.py); summaries are JSON.  All outputs land in the run directory, taken
from the LSFA_RUN_DIR environment variable unless overridden.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, fields, replace

import numpy as np

from .baseline import BaselineParams, bcd_solve
from .datagen import generate_ground_truth, sample_observations
from .errors import ConfigError, DataError
from .ipm import IpmParams, Solution, default_init, ipm_solve
from .newton import NewtonParams
from .objective import BarrierObjective, Iterate, ProblemData, sample_covariance
from .symbasis import SymmetricBasis
from .trace import write_trace_csv

RUN_DIR_ENV = "LSFA_RUN_DIR"


@dataclass
class RunConfig:
    """Every knob of the pipeline; defaults reproduce the benchmark setup."""

    # synthetic instance
    p: int = 40
    r: int = 5
    n: int = 1200
    density: float = 0.05
    snr: float = 1.0
    seed: int = 7
    # objective weights and solver parameters
    C: float = 0.5
    mu: float = 100.0
    gamma: float = 0.1
    tau0: float = 0.5
    theta: float = 0.5
    eps: float = 1e-6
    delta: float = 1e-4
    sigma: float = 5e-5
    beta: float = 0.5
    residual_tol: float = 1e-4
    max_inner_iters: int = 200
    max_backtracks: int = 50
    eta_rank: float = 1e-6
    eta_supp: float = 1e-6
    # first-order baseline
    bcd_max_iters: int = 20000
    bcd_step_ell: float = 1.0
    # cross-validation
    folds: int = 3
    c_grid: tuple[float, ...] = (0.25, 0.5, 1.0)
    mu_grid: tuple[float, ...] = (30.0, 100.0, 300.0)
    # files
    run_dir: str = ""
    samples_file: str = "samples.csv"
    covariance_file: str | None = None
    trace_out: str = "trace.csv"

    def __post_init__(self):
        if not self.run_dir:
            self.run_dir = os.environ.get(RUN_DIR_ENV, ".")

    def validate(self) -> "RunConfig":
        """Raise ConfigError naming the first offending field."""
        checks = [
            (self.p >= 1, "p must be >= 1"),
            (1 <= self.r < self.p, "r must satisfy 1 <= r < p"),
            (self.n >= 1, "n must be >= 1"),
            (0 < self.density <= 1, "density must be in (0, 1]"),
            (self.snr > 0, "snr must be > 0"),
            (self.C > 0, "C must be > 0"),
            (self.mu > 0, "mu must be > 0"),
            (self.gamma > 0, "gamma must be > 0"),
            (self.tau0 > 0, "tau0 must be > 0"),
            (0 < self.theta < 1, "theta must be in (0, 1)"),
            (self.eps > 0, "eps must be > 0"),
            (self.delta > 0, "delta must be > 0"),
            (0 < self.sigma < 0.5, "sigma must be in (0, 1/2)"),
            (0 < self.beta < 1, "beta must be in (0, 1)"),
            (self.residual_tol > 0, "residual_tol must be > 0"),
            (self.max_inner_iters >= 1, "max_inner_iters must be >= 1"),
            (self.max_backtracks >= 1, "max_backtracks must be >= 1"),
            (self.eta_rank > 0, "eta_rank must be > 0"),
            (self.eta_supp > 0, "eta_supp must be > 0"),
            (self.bcd_max_iters >= 1, "bcd_max_iters must be >= 1"),
            (self.bcd_step_ell > 0, "bcd_step_ell must be > 0"),
            (self.folds >= 2, "folds must be >= 2"),
            (len(self.c_grid) >= 1 and all(c > 0 for c in self.c_grid),
             "c_grid must be non-empty with positive entries"),
            (len(self.mu_grid) >= 1 and all(m > 0 for m in self.mu_grid),
             "mu_grid must be non-empty with positive entries"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        return self

    def newton_params(self) -> NewtonParams:
        return NewtonParams(
            gamma=self.gamma,
            delta=self.delta,
            sigma=self.sigma,
            beta=self.beta,
            residual_tol=self.residual_tol,
            max_inner_iters=self.max_inner_iters,
            max_backtracks=self.max_backtracks,
        )

    def ipm_params(self) -> IpmParams:
        return IpmParams(
            C=self.C,
            mu=self.mu,
            gamma=self.gamma,
            tau0=self.tau0,
            theta=self.theta,
            epsilon=self.eps,
            newton=self.newton_params(),
        )

    def baseline_params(self) -> BaselineParams:
        return BaselineParams(
            gamma=self.gamma,
            step_ell=self.bcd_step_ell,
            residual_tol=self.residual_tol,
            max_iters=self.bcd_max_iters,
            max_backtracks=self.max_backtracks,
        )

    def path(self, name: str) -> str:
        return os.path.join(self.run_dir, name)


def config_from_dict(data: dict) -> RunConfig:
    """Build a RunConfig from a plain dict (e.g. parsed JSON), rejecting unknown keys."""
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    cleaned = dict(data)
    for key in ("c_grid", "mu_grid"):
        if key in cleaned:
            cleaned[key] = tuple(float(x) for x in cleaned[key])
    return RunConfig(**cleaned)


def write_matrix_csv(path, M: np.ndarray) -> None:
    np.savetxt(path, np.atleast_2d(np.asarray(M, dtype=float)), fmt="%.17g", delimiter=",")


def read_matrix_csv(path) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=float))


def _l0_counts(S: np.ndarray, basis: SymmetricBasis) -> dict:
    """Both sparsity counts: matrix entries (off-diagonal counted twice) and coordinates."""
    coords = basis.mat_to_vec(S)
    return {
        "l0_matrix_entries": int(np.count_nonzero(S)),
        "l0_coordinates": int(np.count_nonzero(coords)),
    }


def run_generate(config: RunConfig) -> dict:
    """Draw an instance and write samples plus ground-truth matrices."""
    config.validate()
    truth = generate_ground_truth(config.p, config.r, config.density, config.snr, config.seed)
    samples = sample_observations(truth, config.n, config.seed + 1)
    os.makedirs(config.run_dir, exist_ok=True)
    write_matrix_csv(config.path(config.samples_file), samples)
    write_matrix_csv(config.path("truth_gamma.csv"), truth.Gamma)
    write_matrix_csv(config.path("truth_s.csv"), truth.S_hat)
    write_matrix_csv(config.path("truth_sigma.csv"), truth.Sigma_hat)
    np.savetxt(config.path("truth_support.csv"),
               truth.support_mask.astype(int), fmt="%d", delimiter=",")
    summary = {
        "p": config.p,
        "r": config.r,
        "n": config.n,
        "snr": config.snr,
        "seed": config.seed,
        "samples_file": config.path(config.samples_file),
    }
    print("generated instance:", json.dumps(summary))
    return summary


def load_problem(config: RunConfig) -> ProblemData:
    """Build ProblemData from the configured covariance or samples file."""
    if config.covariance_file is not None:
        sigma = read_matrix_csv(config.path(config.covariance_file))
    else:
        samples = read_matrix_csv(config.path(config.samples_file))
        sigma = sample_covariance(samples)
    try:
        return ProblemData(sigma, C=config.C, mu=config.mu)
    except DataError as exc:
        raise DataError(
            f"sample covariance from {config.samples_file!r} is singular "
            f"(n < p or degenerate data): {exc}"
        ) from exc


def run_solve(config: RunConfig) -> Solution:
    """Full interior-point solve; writes solution matrices and the trace."""
    config.validate()
    problem = load_problem(config)
    solution = ipm_solve(
        problem,
        default_init(problem),
        config.ipm_params(),
        eta_rank=config.eta_rank,
        eta_supp=config.eta_supp,
    )
    os.makedirs(config.run_dir, exist_ok=True)
    write_matrix_csv(config.path("L_star.csv"), solution.L_star)
    write_matrix_csv(config.path("S_star.csv"), solution.S_star)
    write_trace_csv(solution.traces, config.path(config.trace_out))
    basis = SymmetricBasis(problem.p)
    summary = {
        "status": solution.status,
        "outer_solves": solution.n_outer,
        "inner_iterations": solution.n_inner_total,
        "final_tau": solution.final_tau,
        "final_residual_normalized": solution.final_residual_normalized,
        "rank_estimate": solution.rank_estimate,
        **_l0_counts(solution.S_star, basis),
    }
    print("solve summary:", json.dumps(summary))
    return solution


def run_compare(config: RunConfig) -> dict:
    """IPM vs the first-order baseline on the identical instance.

    The baseline solves the fixed-barrier problem at the IPM's final tau from
    the same initialization, so both solvers chase the same stationary points
    and the iteration counts are directly comparable.
    """
    config.validate()
    problem = load_problem(config)
    ipm_solution = ipm_solve(
        problem,
        default_init(problem),
        config.ipm_params(),
        eta_rank=config.eta_rank,
        eta_supp=config.eta_supp,
    )
    basis = SymmetricBasis(problem.p)
    L0, S0 = default_init(problem)
    init = Iterate.from_matrices(L0, S0, basis)
    barrier = BarrierObjective(problem, ipm_solution.final_tau)
    bcd_result = bcd_solve(init, barrier, config.baseline_params())

    os.makedirs(config.run_dir, exist_ok=True)
    write_trace_csv(ipm_solution.traces, config.path("ipm_trace.csv"))
    write_trace_csv(bcd_result.rows, config.path("bcd_trace.csv"))

    bcd_to_tol = next(
        (row.inner_iter for row in bcd_result.rows
         if row.residual_normalized <= config.residual_tol),
        None,
    )
    summary = {
        "baseline_tau": ipm_solution.final_tau,
        "residual_tol": config.residual_tol,
        "note": "baseline solves the fixed-barrier problem at the IPM's final tau "
                "from the same initialization",
        "ipm": {
            "status": ipm_solution.status,
            "outer_solves": ipm_solution.n_outer,
            "total_inner_iterations": ipm_solution.n_inner_total,
            "iterations_to_tol": (
                ipm_solution.n_inner_total if ipm_solution.status == "converged" else None
            ),
            "final_residual_normalized": ipm_solution.final_residual_normalized,
        },
        "bcd": {
            "status": bcd_result.status,
            "iterations": bcd_result.n_iters,
            "iterations_to_tol": bcd_to_tol,
            "final_residual_normalized": bcd_result.residual.norm_normalized,
        },
    }
    with open(config.path("summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
    print("compare summary:", json.dumps(summary))
    return summary


def gaussian_nll(samples: np.ndarray, cov: np.ndarray) -> float:
    """Mean negative log-likelihood of zero-mean Gaussian samples under cov."""
    p = cov.shape[0]
    chol = np.linalg.cholesky(cov)
    logdet = 2.0 * float(np.sum(np.log(np.diag(chol))))
    # y' cov^{-1} y via triangular solve, averaged over rows
    z = np.linalg.solve(chol, samples.T)
    quad = float(np.mean(np.sum(z * z, axis=0)))
    return 0.5 * (quad + logdet + p * math.log(2.0 * math.pi))


def run_cv(config: RunConfig) -> dict:
    """K-fold grid search over (C, mu) scored by held-out Gaussian NLL."""
    config.validate()
    samples = read_matrix_csv(config.path(config.samples_file))
    n = samples.shape[0]
    if n // config.folds < config.p:
        warnings.warn(
            f"fold size {n // config.folds} is below p={config.p}; per-fold sample "
            "covariances may be singular (scoring uses the fitted model only, so "
            "the run proceeds)"
        )
    rng = np.random.default_rng(config.seed)
    order = rng.permutation(n)
    fold_ids = np.array_split(order, config.folds)

    table = []
    for C in config.c_grid:
        for mu in config.mu_grid:
            scores = []
            for k in range(config.folds):
                val_idx = fold_ids[k]
                train_idx = np.concatenate([fold_ids[j] for j in range(config.folds) if j != k])
                try:
                    problem = ProblemData(sample_covariance(samples[train_idx]), C=C, mu=mu)
                    cfg = replace(config, C=C, mu=mu)
                    solution = ipm_solve(
                        problem, default_init(problem), cfg.ipm_params(),
                        eta_rank=config.eta_rank, eta_supp=config.eta_supp,
                    )
                    if solution.status != "converged":
                        # a grid point whose fit aborts or stalls is not a
                        # usable configuration; rank it behind every fit that
                        # completed its barrier schedule
                        scores.append(float("inf"))
                    else:
                        fitted_cov = solution.L_star + solution.S_star
                        scores.append(gaussian_nll(samples[val_idx], fitted_cov))
                except (DataError, np.linalg.LinAlgError):
                    scores.append(float("inf"))
            table.append({"C": C, "mu": mu, "score": float(np.mean(scores))})

    best = min(table, key=lambda row: row["score"])
    os.makedirs(config.run_dir, exist_ok=True)
    with open(config.path("cv_scores.csv"), "w") as fh:
        fh.write("C,mu,score\n")
        for row in table:
            fh.write(f"{row['C']:.17g},{row['mu']:.17g},{row['score']:.17g}\n")
    result = {"best_C": best["C"], "best_mu": best["mu"], "best_score": best["score"],
              "table": table}
    print("cv result:", json.dumps({k: v for k, v in result.items() if k != "table"}))
    return result
