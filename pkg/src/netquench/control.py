"""Gerschgorin-disc node selection and beta tuning.

Every eigenvalue of H = I - diag(mu) + diag(beta*r) A lies in the union of
discs centered at 1 - mu_i with radius beta_i r_i deg(i).  A node whose disc
escapes the unit circle (beta_i r_i deg(i) >= mu_i) is flagged: reducing its
beta until beta_i r_i deg(i) = kappa * mu_i with kappa < 1 pulls every disc
strictly inside, which is sufficient (not necessary) for sigma(H) < 1 and
hence for extinction of the bound dynamics.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dynamics import ConvergenceError, NodeParams, spectral_radius
from .graphs import Graph

DEFAULT_SAFETY = 0.9


@dataclass(frozen=True)
class GerschgorinDisc:
    """Disc for one node: center 1 - mu_i, radius beta_i r_i deg(i)."""

    node: int
    center: float
    radius: float


@dataclass(frozen=True, eq=False)
class SelectionReport:
    """Discs for all nodes, the flagged set {i : margin_i <= 0}, and the
    margins mu_i - beta_i r_i deg(i) (most negative = most critical)."""

    discs: tuple[GerschgorinDisc, ...]
    flagged: frozenset[int]
    margins: np.ndarray


@dataclass(frozen=True)
class ControlPlan:
    """Tuned beta for each flagged node; untouched nodes are absent.  Every
    tuned node satisfies beta' r deg = safety * mu < mu."""

    new_beta: dict[int, float]
    safety: float


@dataclass(frozen=True)
class StabilizationCheck:
    sigma: float
    stable: bool


def compute_discs(g: Graph, params: NodeParams) -> list[GerschgorinDisc]:
    if params.n != g.n:
        raise ValueError("parameter length does not match graph order")
    radii = params.beta * params.r * g.degrees
    return [
        GerschgorinDisc(i, float(1.0 - params.mu[i]), float(radii[i]))
        for i in range(g.n)
    ]


def select_nodes(g: Graph, params: NodeParams) -> SelectionReport:
    """Flag every node violating beta_i r_i deg(i) < mu_i (non-strictly, so
    the boundary case is controlled too)."""
    discs = tuple(compute_discs(g, params))
    margins = params.mu - params.beta * params.r * g.degrees
    margins.flags.writeable = False
    flagged = frozenset(int(i) for i in np.nonzero(margins <= 0.0)[0])
    return SelectionReport(discs, flagged, margins)


def tune_betas(
    g: Graph,
    params: NodeParams,
    report: SelectionReport,
    kappa: float = DEFAULT_SAFETY,
) -> tuple[NodeParams, ControlPlan]:
    """Lower beta on flagged nodes to beta' = kappa * mu / (r * deg), clamped
    so beta never increases.  Returns the tuned params and the plan; with
    kappa < 1 a subsequent select_nodes flags nothing."""
    if not 0.0 < kappa < 1.0:
        raise ValueError(f"safety factor must lie in (0, 1), got {kappa}")
    new_beta = np.array(params.beta)
    plan: dict[int, float] = {}
    for i in sorted(report.flagged):
        scale = float(params.r[i]) * float(g.degrees[i])
        if scale == 0.0:
            # radius 0 < mu_i, so such a node can never be flagged
            raise RuntimeError(
                f"internal consistency: flagged node {i} has r*deg = 0"
            )
        tuned = min(float(params.beta[i]), kappa * float(params.mu[i]) / scale)
        new_beta[i] = tuned
        plan[i] = tuned
    return params.with_beta(new_beta), ControlPlan(plan, kappa)


def verify_stabilization(
    g: Graph, params: NodeParams, tol: float = 1e-12, max_iter: int = 100_000
) -> StabilizationCheck:
    """Recompute sigma(H) for (possibly tuned) params; stable iff sigma < 1.
    Raises ConvergenceError rather than report an untrusted estimate."""
    est = spectral_radius(g, params, tol=tol, max_iter=max_iter)
    if not est.converged:
        raise ConvergenceError(
            f"spectral radius did not converge within {est.iterations} iterations"
        )
    return StabilizationCheck(est.sigma, est.sigma < 1.0)


def write_selection_report(
    report: SelectionReport,
    g: Graph,
    params: NodeParams,
    path,
    header_comment: str | None = None,
) -> None:
    """CSV ``node,degree,mu,beta,r,margin,flagged`` sorted by node."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header_comment is not None:
            fh.write(f"# {header_comment}\n")
        writer = csv.writer(fh)
        writer.writerow(["node", "degree", "mu", "beta", "r", "margin", "flagged"])
        for i in range(g.n):
            writer.writerow(
                [
                    i,
                    int(g.degrees[i]),
                    repr(float(params.mu[i])),
                    repr(float(params.beta[i])),
                    repr(float(params.r[i])),
                    repr(float(report.margins[i])),
                    int(i in report.flagged),
                ]
            )


def write_control_plan(
    plan: ControlPlan,
    original: NodeParams,
    path,
    header_comment: str | None = None,
) -> None:
    """CSV ``node,beta_old,beta_new`` for tuned nodes only, sorted by node."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header_comment is not None:
            fh.write(f"# {header_comment}\n")
        writer = csv.writer(fh)
        writer.writerow(["node", "beta_old", "beta_new"])
        for i in sorted(plan.new_beta):
            writer.writerow([i, repr(float(original.beta[i])), repr(plan.new_beta[i])])
