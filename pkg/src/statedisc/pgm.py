"""POVMs, the pretty good measurement, success statistics, and the two-state oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    BadPriors,
    CountMismatch,
    DimensionMismatch,
    EmptyEnsemble,
    ValidationError,
)
from .states import DensityMatrix, Ensemble, fidelity

_ELEMENT_TOL = 1e-8
_COMPLETE_TOL = 1e-8


@dataclass(frozen=True)
class Povm:
    """List of Hermitian PSD operators summing to identity."""

    elements: tuple[np.ndarray, ...]

    def __post_init__(self):
        elems = tuple(linalg.as_operator(m) for m in self.elements)
        if not elems:
            raise ValidationError("a POVM needs at least one element")
        dim = elems[0].shape[0]
        total = np.zeros((dim, dim), dtype=np.complex128)
        for k, m in enumerate(elems):
            if m.shape[0] != dim:
                raise DimensionMismatch(
                    f"element {k} has dimension {m.shape[0]}, expected {dim}"
                )
            if linalg.frob(m - m.conj().T) > _ELEMENT_TOL:
                raise ValidationError(f"element {k} is not Hermitian")
            if np.linalg.eigvalsh(linalg.hermitize(m))[0] < -_ELEMENT_TOL:
                raise ValidationError(f"element {k} is not PSD")
            m.setflags(write=False)
            total += m
        dev = linalg.frob(total - np.eye(dim))
        if dev > _COMPLETE_TOL:
            raise ValidationError(f"completeness defect |ΣM - I|_F = {dev:.3e}")
        object.__setattr__(self, "elements", elems)

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


@dataclass(frozen=True)
class SuccessReport:
    """Per-state success probabilities of a measurement on an ensemble."""

    per_state: np.ndarray
    average: float
    worst_case: float
    bk_bound: float

    def __post_init__(self):
        p = np.asarray(self.per_state, dtype=np.float64)
        if np.any(p < -1e-8) or np.any(p > 1 + 1e-8):
            raise ValidationError(f"per-state value outside [0,1]: {p}")
        if self.worst_case > self.average + 1e-12:
            raise ValidationError(
                f"worst case {self.worst_case} exceeds average {self.average}"
            )
        p.setflags(write=False)
        object.__setattr__(self, "per_state", p)


def _trace_pair(rho: np.ndarray, m: np.ndarray) -> float:
    return float(np.einsum("ij,ji->", rho, m).real)


def _pgm_elements(mats: Sequence[np.ndarray], priors: np.ndarray) -> list[np.ndarray]:
    # raw computation shared with the minimax inner loop, which cannot
    # afford per-iteration POVM re-validation
    d, n = mats[0].shape[0], len(mats)
    s = np.zeros((d, d), dtype=np.complex128)
    for p, m in zip(priors, mats):
        s += p * m
    r = linalg.inv_sqrt_on_support(s)
    elems = [linalg.hermitize(r @ (p * m) @ r) for p, m in zip(priors, mats)]
    share = linalg.hermitize(np.eye(d) - sum(elems)) / n
    return [m + share for m in elems]


def pgm(e: Ensemble) -> Povm:
    """Pretty good measurement of an ensemble.

    Elements are R·(p_i ρ_i)·R with R the pseudo-inverse square root of the
    prior-weighted state sum; the identity deficiency on the kernel of that
    sum is split uniformly across the N outcomes, so zero-prior states still
    own an outcome slot.
    """
    if e.n_states == 0:
        raise EmptyEnsemble("cannot build a measurement from no states")
    return Povm(tuple(_pgm_elements([s.mat for s in e.states], e.priors)))


def bk_lower_bound(e: Ensemble) -> float:
    """Average-success lower bound 1 - Σ_{i≠j} √(p_i p_j)·√F(ρ_i, ρ_j).

    May be negative (vacuous); returned unclamped.
    """
    total = 0.0
    for i in range(e.n_states):
        for j in range(i + 1, e.n_states):
            w = np.sqrt(e.priors[i] * e.priors[j])
            if w == 0.0:
                continue
            total += 2.0 * w * np.sqrt(fidelity(e.states[i], e.states[j]))
    return 1.0 - total


def success_report(e: Ensemble, m: Povm) -> SuccessReport:
    """Per-state, average, and worst-case success of a POVM on an ensemble."""
    if m.dim != e.dim:
        raise DimensionMismatch(
            f"POVM dimension {m.dim} does not match ensemble dimension {e.dim}"
        )
    if m.n_outcomes != e.n_states:
        raise CountMismatch(
            f"{m.n_outcomes} POVM outcomes for {e.n_states} states"
        )
    per = np.array(
        [_trace_pair(s.mat, el) for s, el in zip(e.states, m.elements)]
    )
    return SuccessReport(
        per_state=per,
        average=float(e.priors @ per),
        worst_case=float(per.min()),
        bk_bound=bk_lower_bound(e),
    )


def _helstrom_elements(
    p0: float, m0: np.ndarray, p1: float, m1: np.ndarray
) -> tuple[float, list[np.ndarray]]:
    diff = p0 * m0 - p1 * m1
    vals, vecs = linalg.herm_eig(diff)
    value = 0.5 * (1.0 + np.abs(vals).sum())
    pos = vecs[:, vals > 0]
    proj = linalg.hermitize(pos @ pos.conj().T)
    return float(value), [proj, np.eye(m0.shape[0]) - proj]


def helstrom(
    p0: float, rho0: DensityMatrix, p1: float, rho1: DensityMatrix
) -> tuple[float, Povm]:
    """Optimal two-state discrimination: value ½(1 + |p₀ρ₀ - p₁ρ₁|₁).

    The POVM projects onto the positive / nonpositive eigenspaces of the
    weighted difference; zero eigenvalues go to outcome 1.
    """
    if p0 < 0 or p1 < 0 or abs(p0 + p1 - 1.0) > 1e-12:
        raise BadPriors(f"priors ({p0}, {p1}) are not a distribution")
    if rho0.dim != rho1.dim:
        raise DimensionMismatch(f"dimensions {rho0.dim} and {rho1.dim} differ")
    value, elems = _helstrom_elements(p0, rho0.mat, p1, rho1.mat)
    return value, Povm(tuple(elems))
