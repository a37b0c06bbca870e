"""Shared builders for the test suite."""

import numpy as np

from statedisc import DensityMatrix, Ensemble, random_density, random_pure_state


def ginibre(d, rng, cols=None):
    cols = d if cols is None else cols
    return rng.standard_normal((d, cols)) + 1j * rng.standard_normal((d, cols))


def random_hermitian(d, rng):
    g = ginibre(d, rng)
    return g + g.conj().T


def random_psd(d, rng):
    g = ginibre(d, rng)
    return g @ g.conj().T


def random_unitary(d, rng):
    q, r = np.linalg.qr(ginibre(d, rng))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def pure(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))


def ket(d, i) -> np.ndarray:
    v = np.zeros(d, dtype=np.complex128)
    v[i] = 1.0
    return v


def plus_state() -> DensityMatrix:
    return pure([1.0, 1.0])


def maximally_mixed(d) -> DensityMatrix:
    return DensityMatrix(np.eye(d) / d)


def random_state(d, rng) -> DensityMatrix:
    seed = int(rng.integers(0, 2**31))
    if rng.random() < 0.5:
        return random_pure_state(d, seed)
    return random_density(d, int(rng.integers(1, d + 1)), seed)


def random_ensemble(rng, n=None, d=None, uniform=False) -> Ensemble:
    n = n if n is not None else int(rng.integers(2, 6))
    d = d if d is not None else int(rng.integers(2, 5))
    states = tuple(random_state(d, rng) for _ in range(n))
    priors = np.full(n, 1.0 / n) if uniform else rng.dirichlet(np.ones(n))
    priors = priors / priors.sum()
    return Ensemble(states, priors)
