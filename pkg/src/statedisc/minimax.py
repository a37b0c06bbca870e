"""Worst-case discrimination via multiplicative weights with two-sided certificates.

The prior player runs a no-regret update over the probability simplex while
the measurement player answers each prior with a best-response POVM.  The
averaged responses form the primal candidate (a valid POVM by convexity);
the smallest best-response average over visited priors is the dual
certificate.  With exact best responses the dual upper-bounds the game
value; with pretty-good-measurement responses it can be loose by up to the
measurement's suboptimality, which is surfaced rather than hidden.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    EmptyEnsemble,
    NumericalFailure,
    ValidationError,
)
from .pgm import Povm, _helstrom_elements, _pgm_elements
from .states import DensityMatrix, tensor_power
from . import linalg

_PRIOR_FLOOR = 1e-300


class BestResponse(enum.Enum):
    """Inner maximizer used to answer each prior."""

    PGM = "pgm"
    HELSTROM_IF_N2 = "helstrom_if_n2"


@dataclass(frozen=True)
class MinimaxConfig:
    max_iters: int = 2000
    tol: float = 1e-3
    best_response: BestResponse = BestResponse.PGM

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValidationError("max_iters must be >= 1")
        if self.tol <= 0:
            raise ValidationError("tol must be > 0")


@dataclass(frozen=True)
class MinimaxResult:
    """Certified worst-case discrimination result.

    primal_value is the worst per-state success of the returned POVM (a
    guaranteed achievable value); dual_value upper-bounds the game value up
    to best-response suboptimality.  converged means the gap closed below
    the configured tolerance; non-convergence is reported, not raised.
    """

    povm: Povm
    primal_value: float
    dual_value: float
    iterations: int
    converged: bool

    def __post_init__(self):
        if self.primal_value > self.dual_value + 1e-9:
            raise NumericalFailure(
                f"certificates crossed: primal {self.primal_value:.12g} > "
                f"dual {self.dual_value:.12g} + 1e-9"
            )


def _trace_pair(rho: np.ndarray, m: np.ndarray) -> float:
    return float(np.einsum("ij,ji->", rho, m).real)


def _best_response(mats, priors, mode: BestResponse) -> list[np.ndarray]:
    if mode is BestResponse.HELSTROM_IF_N2 and len(mats) == 2:
        p0 = float(priors[0])
        _, elems = _helstrom_elements(p0, mats[0], 1.0 - p0, mats[1])
        return elems
    return _pgm_elements(mats, priors)


def solve_minimax(
    states: Sequence[DensityMatrix], cfg: MinimaxConfig | None = None
) -> MinimaxResult:
    """Approximate the prior-free game value max_POVM min_i Tr(ρ_i M_i).

    Prior updates are p_i ∝ p_i·exp(-η g_i) with η = √(8 ln N / max_iters)
    and g the current best-response payoffs; the loop stops once the
    primal/dual gap is below cfg.tol or max_iters is reached.
    """
    cfg = cfg or MinimaxConfig()
    states = list(states)
    n = len(states)
    if n == 0:
        raise EmptyEnsemble("need at least one state")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DimensionMismatch(f"states have mixed dimensions {sorted(dims)}")

    eta = math.sqrt(8.0 * math.log(n) / cfg.max_iters) if n > 1 else 0.0
    priors = np.full(n, 1.0 / n)
    mats = [s.mat for s in states]
    running = [np.zeros_like(m) for m in mats]
    dual = math.inf
    best_value = -math.inf
    best_elems: list[np.ndarray] | None = None
    iterations = 0
    converged = False

    for t in range(1, cfg.max_iters + 1):
        iterations = t
        response = _best_response(mats, priors / priors.sum(), cfg.best_response)
        payoffs = np.array([_trace_pair(rho, m) for rho, m in zip(mats, response)])
        dual = min(dual, float(priors @ payoffs))

        for acc, m in zip(running, response):
            acc += m
        candidate = min(_trace_pair(rho, acc) / t for rho, acc in zip(mats, running))
        if candidate > best_value:
            best_value = candidate
            best_elems = [acc / t for acc in running]

        if dual - best_value <= cfg.tol:
            converged = True
            break

        priors = priors * np.exp(-eta * payoffs)
        priors = np.maximum(priors, _PRIOR_FLOOR)
        priors /= priors.sum()

    assert best_elems is not None
    return MinimaxResult(
        povm=Povm(tuple(best_elems)),
        primal_value=best_value,
        dual_value=dual,
        iterations=iterations,
        converged=converged,
    )


def worst_case_povm_exists(
    states: Sequence[DensityMatrix],
    epsilon: float,
    n: int,
    cfg: MinimaxConfig | None = None,
    dim_cap: int = linalg.DIM_CAP,
) -> tuple[bool, MinimaxResult]:
    """Solve the n-copy game and test whether every state succeeds with 1 - epsilon."""
    states = list(states)
    if not states:
        raise EmptyEnsemble("need at least one state")
    d = states[0].dim
    if d**n > dim_cap:
        raise DimensionOverflow(f"dimension {d}^{n} = {d**n} exceeds cap {dim_cap}")
    powers = [tensor_power(s, n, dim_cap=dim_cap) for s in states]
    result = solve_minimax(powers, cfg)
    return result.primal_value >= 1.0 - epsilon, result
