"""Shared helpers: an independent reshape-based partial trace used as the
oracle for the package's mask-decomposition route, plus random-state tools."""

import numpy as np
import pytest

from gge.states import PureState


def brute_reduced(state: PureState, keep) -> np.ndarray:
    """Reduced matrix via reshape/transpose, independent of gge.rdm."""
    q, n = state.local_dim, state.num_sites
    keep0 = [k - 1 for k in keep]
    rest = [i for i in range(n) if i not in keep0]
    t = np.asarray(state.amplitudes).reshape([q] * n)
    m = np.transpose(t, keep0 + rest).reshape(q ** len(keep0), -1)
    return m @ m.conj().T


def brute_subset_entropy(state: PureState, keep) -> float:
    rho = brute_reduced(state, keep)
    p = float(np.real(np.trace(rho @ rho)))
    q, n = state.local_dim, state.num_sites
    d = min(q ** len(keep), q ** (n - len(keep)))
    return d / (d - 1.0) * (1.0 - p)


def seeded_state(num_sites: int, seed: int, local_dim: int = 2) -> PureState:
    rng = np.random.default_rng(seed)
    dim = local_dim**num_sites
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(num_sites, local_dim, z / np.linalg.norm(z))


@pytest.fixture
def rng():
    return np.random.default_rng(20240117)
