"""Density matrices, ensembles, fidelity, and ensemble statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadPriors,
    BadRank,
    DimensionMismatch,
    DimensionOverflow,
    EmptyEnsemble,
    NotHermitian,
    NotPsd,
    NumericalFailure,
    ParseError,
    TooFewStates,
    ValidationError,
)

_HERM_TOL = 1e-10
_PSD_TOL = 1e-10
_TRACE_TOL = 1e-10
_CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian PSD operator with unit trace."""

    mat: np.ndarray

    def __post_init__(self):
        m = linalg.as_operator(self.mat)
        dev = linalg.frob(m - m.conj().T)
        if dev > _HERM_TOL:
            raise NotHermitian(f"not Hermitian: |ρ-ρ†|_F = {dev:.3e}")
        evals = np.linalg.eigvalsh(linalg.hermitize(m))
        if evals[0] < -_PSD_TOL:
            raise NotPsd(f"not PSD: minimum eigenvalue {evals[0]:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValidationError(f"trace is {tr:.12g}, not 1")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def largest_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(linalg.hermitize(self.mat))[-1])


@dataclass(frozen=True)
class Ensemble:
    """N same-dimension states with a prior probability vector."""

    states: tuple[DensityMatrix, ...]
    priors: np.ndarray

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise EmptyEnsemble("ensemble needs at least one state")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise DimensionMismatch(f"states have mixed dimensions {sorted(dims)}")
        p = np.asarray(self.priors, dtype=np.float64)
        if p.shape != (len(states),):
            raise BadPriors(
                f"priors has {p.size} entries for {len(states)} states"
            )
        if np.any(p < 0):
            raise BadPriors(f"negative prior {p.min():.3e}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise BadPriors(f"priors sum to {p.sum():.15g}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", p)

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def dim(self) -> int:
        return self.states[0].dim


def uniform_ensemble(states: Sequence[DensityMatrix]) -> Ensemble:
    """Ensemble with uniform priors over the given states."""
    n = len(states)
    if n == 0:
        raise EmptyEnsemble("ensemble needs at least one state")
    return Ensemble(tuple(states), np.full(n, 1.0 / n))


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Squared-convention fidelity |√ρ·√σ|₁² in [0, 1]."""
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dimensions {rho.dim} and {sigma.dim} differ")
    raw = linalg.trace_norm(linalg.psd_sqrt(rho.mat) @ linalg.psd_sqrt(sigma.mat)) ** 2
    if raw < -_CLAMP_TOL or raw > 1.0 + _CLAMP_TOL:
        raise NumericalFailure(f"fidelity {raw:.12g} left [0,1] beyond tolerance")
    return min(1.0, max(0.0, raw))


def max_pairwise_fidelity(e: Ensemble) -> float:
    """Largest fidelity over distinct state pairs."""
    if e.n_states < 2:
        raise TooFewStates("need at least two states for a pairwise maximum")
    return max(
        fidelity(e.states[i], e.states[j])
        for i in range(e.n_states)
        for j in range(i + 1, e.n_states)
    )


def max_eigenvalue(e: Ensemble) -> float:
    """Largest eigenvalue over all ensemble members; lies in [1/d, 1]."""
    return max(s.largest_eigenvalue() for s in e.states)


def tensor_power(rho: DensityMatrix, n: int, dim_cap: int = linalg.DIM_CAP) -> DensityMatrix:
    """n-fold Kronecker power of a state."""
    if n < 1:
        raise ValidationError("copy count must be >= 1")
    if rho.dim**n > dim_cap:
        raise DimensionOverflow(
            f"dimension {rho.dim}^{n} = {rho.dim**n} exceeds cap {dim_cap}"
        )
    if n == 1:
        return rho
    out = rho.mat
    for _ in range(n - 1):
        out = linalg.kron(out, rho.mat, dim_cap=dim_cap)
    return _as_density(out)


def _as_density(m: np.ndarray) -> DensityMatrix:
    # tidy accumulated float noise so products of valid states stay valid
    m = linalg.hermitize(m)
    return DensityMatrix(m / m.trace().real)


def random_pure_state(d: int, seed: int) -> DensityMatrix:
    """Haar-random pure state |ψ⟩⟨ψ|; deterministic per seed."""
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v /= np.linalg.norm(v)
    return _as_density(np.outer(v, v.conj()))


def random_density(d: int, rank: int, seed: int) -> DensityMatrix:
    """Normalized Ginibre state G·G†/Tr(G·G†) of the given rank."""
    if not 1 <= rank <= d:
        raise BadRank(f"rank {rank} outside [1, {d}]")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    return _as_density(g @ g.conj().T)


# -- joint-support compression ------------------------------------------------
#
# Restricting a state family to the support of its sum is a unitary
# restriction: every state keeps its spectrum and every POVM on the small
# space extends to the big one (and vice versa) with identical outcome
# probabilities Tr(ρ_i M_i).  Discrimination values computed on the
# restricted family therefore equal the originals.

def joint_support_restrict(
    states: Sequence[DensityMatrix], kernel_tol: float = linalg.KERNEL_TOL
) -> list[DensityMatrix]:
    """Rotate states onto the support of their sum, dropping the common kernel."""
    if not states:
        raise EmptyEnsemble("need at least one state")
    total = sum(s.mat for s in states)
    vals, vecs = linalg.herm_eig(total)
    keep = vals > kernel_tol * vals[-1]
    if np.all(keep):
        return list(states)
    w = vecs[:, keep]
    return [_as_density(w.conj().T @ s.mat @ w) for s in states]


def compressed_powers(
    states: Sequence[DensityMatrix], n_max: int, dim_cap: int = linalg.DIM_CAP
) -> Iterator[list[DensityMatrix]]:
    """Yield joint-support-compressed n-copy families for n = 1..n_max.

    The nominal dimension d^n_max must respect dim_cap even though the
    compressed representation is usually far smaller.
    """
    if not states:
        raise EmptyEnsemble("need at least one state")
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    d = states[0].dim
    if d**n_max > dim_cap:
        raise DimensionOverflow(
            f"dimension {d}^{n_max} = {d**n_max} exceeds cap {dim_cap}"
        )
    base = joint_support_restrict(states)
    cur = base
    yield list(cur)
    for _ in range(n_max - 1):
        cur = joint_support_restrict(
            [_as_density(np.kron(c.mat, b.mat)) for c, b in zip(cur, base)]
        )
        yield list(cur)


# -- JSON wire format ----------------------------------------------------------
#
# {"dim": d, "priors": [p...], "states": [matrix...]} with every matrix an
# array of rows and every entry a 2-array [re, im].

def _entry_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def ensemble_to_json(e: Ensemble) -> dict:
    """Plain-dict form of the shared ensemble JSON format."""
    return {
        "dim": e.dim,
        "priors": [float(p) for p in e.priors],
        "states": [
            [[_entry_to_pair(z) for z in row] for row in s.mat]
            for s in e.states
        ],
    }


def _parse_matrix(obj, dim: int, path: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != dim:
        raise ParseError(f"{path}: expected {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{path}[{i}]: expected {dim} entries")
        for j, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise ParseError(f"{path}[{i}][{j}]: expected a [re, im] pair")
            out[i, j] = complex(entry[0], entry[1])
    return out


def ensemble_from_json(doc) -> Ensemble:
    """Parse the ensemble JSON format, naming the path of any violation."""
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    for key in ("dim", "priors", "states"):
        if key not in doc:
            raise ParseError(f"top level: missing key '{key}'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("dim: expected a positive integer")
    raw_states = doc["states"]
    raw_priors = doc["priors"]
    if not isinstance(raw_states, list) or not raw_states:
        raise ParseError("states: expected a nonempty array")
    if not isinstance(raw_priors, list):
        raise ParseError("priors: expected an array")
    if len(raw_priors) != len(raw_states):
        raise ParseError(
            f"priors: {len(raw_priors)} entries for {len(raw_states)} states"
        )
    states = []
    for i, raw in enumerate(raw_states):
        m = _parse_matrix(raw, dim, f"states[{i}]")
        try:
            states.append(DensityMatrix(m))
        except ValidationError as err:
            raise type(err)(f"states[{i}]: {err}") from err
    try:
        return Ensemble(tuple(states), np.asarray(raw_priors, dtype=np.float64))
    except ValidationError as err:
        raise type(err)(f"priors: {err}") from err


def load_ensemble(path) -> Ensemble:
    """Read an ensemble JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ParseError(f"{path}: invalid JSON ({err})") from err
    return ensemble_from_json(doc)


def save_ensemble(e: Ensemble, path) -> None:
    """Write an ensemble JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ensemble_to_json(e), fh)
        fh.write("\n")
