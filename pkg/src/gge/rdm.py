"""Partial traces onto site subsets, purities, and linear entropy.

The partial trace is done by keep-mask / trace-mask index decomposition:
basis indices of the kept and traced factors are placed into the full index
with bit shifts (mixed-radix products for local dimension q > 2), the
amplitude vector is gathered into a (kept x traced) matrix M, and the
reduced state is M M^dagger.  No q^N x q^N object is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .states import PureState

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

SiteSubset = tuple[int, ...]


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"entries must be {self.dim}x{self.dim}")
        if np.max(np.abs(m - m.conj().T)) > HERM_TOL:
            raise ValueError("matrix is not Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, not 1")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def check_psd(self, tol: float = PSD_TOL) -> None:
        """Eigenvalue check; separate from construction since it dominates runtime."""
        lo = float(np.linalg.eigvalsh(self.entries)[0])
        if lo < -tol:
            raise ValueError(f"matrix has negative eigenvalue {lo}")


def check_subset(sites: Sequence[int], num_sites: int) -> SiteSubset:
    """Validate a proper, non-empty, strictly increasing site subset."""
    subset = tuple(int(s) for s in sites)
    if not subset:
        raise ValueError("site subset must be non-empty")
    if any(b <= a for a, b in zip(subset, subset[1:])):
        raise ValueError(f"site subset {subset} must be strictly increasing")
    if subset[0] < 1 or subset[-1] > num_sites:
        raise ValueError(f"site subset {subset} out of range 1..{num_sites}")
    if len(subset) >= num_sites:
        raise ValueError("site subset must be a proper subset")
    return subset


def _placed_indices(positions: Sequence[int], num_sites: int, q: int) -> np.ndarray:
    """All base-q numbers over the given site positions, placed into the full index.

    positions are 1-based sites; site j carries weight q**(num_sites - j).
    """
    out = np.zeros(1, dtype=np.int64)
    for site in positions:
        w = q ** (num_sites - site)
        digits = np.arange(q, dtype=np.int64) * w
        out = (out[:, None] + digits[None, :]).reshape(-1)
    return out


def _gram_matrix(state: PureState, keep: SiteSubset) -> np.ndarray:
    """M M^dagger over the kept factor, via the mask decomposition."""
    n, q = state.num_sites, state.local_dim
    traced = tuple(s for s in range(1, n + 1) if s not in set(keep))
    rows = _placed_indices(keep, n, q)
    cols = _placed_indices(traced, n, q)
    m = state.amplitudes[rows[:, None] + cols[None, :]]
    return m @ m.conj().T


def reduce_state(state: PureState, keep: Sequence[int],
                 check_psd: bool = False) -> DensityMatrix:
    """Partial trace of |psi><psi| onto the kept sites."""
    subset = check_subset(keep, state.num_sites)
    rho = DensityMatrix(state.local_dim ** len(subset), _gram_matrix(state, subset))
    if check_psd:
        rho.check_psd()
    return rho


def purity(rho: DensityMatrix | np.ndarray) -> float:
    """Tr(rho^2) as the squared Frobenius norm (rho is Hermitian)."""
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.sum(np.abs(m) ** 2))


def subset_purity(state: PureState, keep: Sequence[int]) -> float:
    """Purity of the reduction onto ``keep`` without materializing it when
    the complement is the smaller factor."""
    subset = check_subset(keep, state.num_sites)
    n_keep = len(subset)
    if n_keep * 2 <= state.num_sites:
        return purity(_gram_matrix(state, subset))
    complement = tuple(s for s in range(1, state.num_sites + 1)
                       if s not in set(subset))
    return purity(_gram_matrix(state, complement))


def linear_entropy(purity_value: float, dim_kept: int, dim_traced: int) -> float:
    """Dimension-normalized linear entropy (d/(d-1))(1 - purity).

    d is the smaller of the kept and traced Hilbert-space dimensions, so a
    one-site-versus-two split of three qubits correctly uses d = 2.
    """
    d = min(int(dim_kept), int(dim_traced))
    if d < 2:
        raise ValueError(f"effective dimension d = {d} must be at least 2")
    value = d / (d - 1.0) * (1.0 - purity_value)
    if -1e-12 <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + 1e-12:
        return 1.0
    return value


def subset_linear_entropy(state: PureState, keep: Sequence[int]) -> float:
    """Linear entropy of one site subset against the rest of the chain."""
    subset = check_subset(keep, state.num_sites)
    q = state.local_dim
    return linear_entropy(subset_purity(state, subset),
                          q ** len(subset),
                          q ** (state.num_sites - len(subset)))
