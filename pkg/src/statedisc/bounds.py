"""Copy-count formulas and the exhaustive minimal-copies search."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadEpsilon,
    BadFidelity,
    BadLambda,
    DimensionOverflow,
    EmptyEnsemble,
    ValidationError,
)
from .minimax import BestResponse, MinimaxConfig, MinimaxResult, solve_minimax
from .pgm import bk_lower_bound, pgm, success_report
from .states import DensityMatrix, compressed_powers, uniform_ensemble


class SearchMethod(enum.Enum):
    """Worst-case evaluator used by the copy sweep."""

    PGM_WORST_CASE = "pgm"
    MINIMAX = "minimax"


@dataclass(frozen=True)
class BoundReport:
    """Echo of the two copy-count formulas for one task instance.

    A None bound means it was not computed (inputs absent); lower_degenerate
    marks the λd = 1 case where the lower-bound formula carries no
    information.
    """

    n_upper: int | None = None
    n_lower: int | None = None
    lower_degenerate: bool = False
    N: int | None = None
    F: float | None = None
    epsilon: float | None = None
    eta: float | None = None
    lam: float | None = None
    d: int | None = None


def copies_upper(N: int, F: float, epsilon: float) -> int:
    """Copies sufficient for worst-case error epsilon: ⌈2(log N - log ε)/(-log F)⌉."""
    if N < 2:
        raise ValidationError(f"N must be >= 2, got {N}")
    if not 0.0 < F < 1.0:
        raise BadFidelity(f"F must lie strictly in (0, 1), got {F}")
    if not 0.0 < epsilon < 1.0:
        raise BadEpsilon(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    n = 2.0 * (math.log(N) - math.log(epsilon)) / (-math.log(F))
    return max(1, math.ceil(n))


def copies_lower(N: int, eta: float, lam: float, d: int) -> int | None:
    """Copies necessary for success probability eta, or None when λd = 1.

    Returns max(0, ⌈(log N + log η)/log(λd)⌉); the bound degenerates (None)
    when the largest eigenvalue equals 1/d, i.e. maximally mixed members.
    """
    if N < 2:
        raise ValidationError(f"N must be >= 2, got {N}")
    if not 0.0 < eta <= 1.0:
        raise BadEpsilon(f"eta must lie in (0, 1], got {eta}")
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    if lam < 1.0 / d - 1e-12 or lam > 1.0 + 1e-12:
        raise BadLambda(f"lambda {lam} outside [1/{d}, 1]")
    if lam * d <= 1.0 + 1e-12:
        return None
    return max(0, math.ceil((math.log(N) + math.log(eta)) / math.log(lam * d)))


def bk_success_at(N: int, F: float, n: int) -> float:
    """Guaranteed average success 1 - N·F^(n/2) at n copies; unclamped."""
    if not 0.0 <= F < 1.0:
        raise BadFidelity(f"F must lie in [0, 1), got {F}")
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    return 1.0 - N * F ** (n / 2.0)


@dataclass(frozen=True)
class CopyEvaluation:
    """Worst-case/average success of the chosen method at one copy count."""

    n: int
    worst_case: float
    average: float
    bk_bound: float
    method: SearchMethod
    minimax: MinimaxResult | None = None


# Sweeps run on joint-support-compressed copies: the restriction preserves
# every Tr(ρ_i M_i), so worst-case, average, and fidelity statistics equal
# the uncompressed values while the working dimension tracks the rank of
# the summed tensor power instead of d^n.

def copy_sweep(
    states: Sequence[DensityMatrix],
    n_max: int,
    method: SearchMethod = SearchMethod.MINIMAX,
    cfg: MinimaxConfig | None = None,
    dim_cap: int = linalg.DIM_CAP,
) -> Iterator[CopyEvaluation]:
    """Evaluate discrimination quality at n = 1..n_max copies."""
    states = list(states)
    if not states:
        raise EmptyEnsemble("need at least one state")
    if cfg is None:
        cfg = MinimaxConfig(best_response=BestResponse.HELSTROM_IF_N2)
    for n, family in enumerate(compressed_powers(states, n_max, dim_cap), start=1):
        ensemble = uniform_ensemble(family)
        if method is SearchMethod.PGM_WORST_CASE:
            report = success_report(ensemble, pgm(ensemble))
            yield CopyEvaluation(
                n=n,
                worst_case=report.worst_case,
                average=report.average,
                bk_bound=report.bk_bound,
                method=method,
            )
        else:
            result = solve_minimax(family, cfg)
            report = success_report(ensemble, result.povm)
            yield CopyEvaluation(
                n=n,
                worst_case=result.primal_value,
                average=report.average,
                bk_bound=report.bk_bound,
                method=method,
                minimax=result,
            )


def min_copies_search(
    states: Sequence[DensityMatrix],
    epsilon: float,
    method: SearchMethod = SearchMethod.MINIMAX,
    n_max: int = 12,
    cfg: MinimaxConfig | None = None,
    dim_cap: int = linalg.DIM_CAP,
) -> int | None:
    """First n in 1..n_max whose worst-case success reaches 1 - epsilon.

    Returns None when every tested copy count falls short ("exceeds n_max").
    The PGM variant scores the pretty good measurement under uniform priors;
    MINIMAX scores the certified primal value.
    """
    if not 0.0 < epsilon < 1.0:
        raise BadEpsilon(f"epsilon must lie strictly in (0, 1), got {epsilon}")
    states = list(states)
    if not states:
        raise EmptyEnsemble("need at least one state")
    d = states[0].dim
    if d**n_max > dim_cap:
        raise DimensionOverflow(
            f"dimension {d}^{n_max} = {d**n_max} exceeds cap {dim_cap}"
        )
    for ev in copy_sweep(states, n_max, method=method, cfg=cfg, dim_cap=dim_cap):
        if ev.worst_case >= 1.0 - epsilon:
            return ev.n
    return None
