"""Correlation-function route to purities for qubit states.

Single- and two-site purities are rebuilt from Pauli expectation values,
cross-validating the partial-trace route.  Expectations are evaluated by
index arithmetic on the amplitude vector (an XOR flip mask plus a phase
vector), never by forming a 2^N x 2^N operator, so twenty-qubit states
stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .states import PureState

REAL_TOL = 1e-12
SYM_TOL = 1e-10

_AXES = ("x", "y", "z")


def pauli_expectation(state: PureState, ops: Mapping[int, str]) -> float:
    """<psi| prod_j sigma_j^(a_j) |psi> for the site -> axis map ``ops``."""
    if state.local_dim != 2:
        raise ValueError("Pauli expectations are defined for qubit states only")
    n = state.num_sites
    dim = state.dim
    flip = 0
    index = np.arange(dim)
    phase = np.ones(dim, dtype=complex)
    for site, axis in ops.items():
        if not 1 <= site <= n:
            raise ValueError(f"site {site} out of range 1..{n}")
        if axis not in _AXES:
            raise ValueError(f"unknown Pauli label {axis!r}")
        bit = n - site
        sign = 1.0 - 2.0 * ((index >> bit) & 1)
        if axis == "x":
            flip ^= 1 << bit
        elif axis == "y":
            flip ^= 1 << bit
            phase = phase * (1j * sign)
        else:
            phase = phase * sign
    amp = state.amplitudes
    value = complex(np.vdot(amp[index ^ flip], phase * amp))
    if abs(value.imag) > REAL_TOL:
        raise ValueError(f"expectation has imaginary part {value.imag}")
    return value.real


@dataclass(frozen=True)
class CorrelationSet:
    """One-point and two-point Pauli coefficients of a qubit state.

    ``one_point[j]`` maps axis -> p^a_j and ``two_point[(i, j)]`` maps the
    two-letter label 'ab' -> p^{ab}_{ij}; the identity coefficient is the
    implicit 1.
    """

    num_sites: int
    one_point: dict[int, dict[str, float]]
    two_point: dict[tuple[int, int], dict[str, float]]

    @classmethod
    def from_state(cls, state: PureState,
                   pairs: list[tuple[int, int]] | None = None) -> "CorrelationSet":
        """Contract all one-point values and the requested (default: all) pairs."""
        n = state.num_sites
        one = {j: {a: pauli_expectation(state, {j: a}) for a in _AXES}
               for j in range(1, n + 1)}
        if pairs is None:
            pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        two = {}
        for i, j in pairs:
            if i == j:
                raise ValueError("pair sites must be distinct")
            two[(i, j)] = {a + b: pauli_expectation(state, {i: a, j: b})
                           for a in _AXES for b in _AXES}
        return cls(n, one, two)

    def magnetization_sq(self, tol: float = SYM_TOL) -> float:
        """|M|^2 = N (p_x^2 + p_y^2 + p_z^2) for site-uniform one-point values."""
        mean = {a: np.mean([v[a] for v in self.one_point.values()]) for a in _AXES}
        for j, values in self.one_point.items():
            for a in _AXES:
                if abs(values[a] - mean[a]) > tol:
                    raise ValueError(
                        f"one-point values are not uniform at site {j}, axis {a}")
        return self.num_sites * sum(mean[a] ** 2 for a in _AXES)


def single_site_purity(px: float, py: float, pz: float) -> float:
    """Tr(rho_j^2) from the three one-point coefficients."""
    return 0.5 * (1.0 + px * px + py * py + pz * pz)


def pair_purity(corr: CorrelationSet, i: int, j: int) -> float:
    """Tr(rho_ij^2) as a quarter of the squared coefficient sum."""
    key = (i, j) if (i, j) in corr.two_point else (j, i)
    if key not in corr.two_point:
        raise ValueError(f"no two-point coefficients for pair ({i}, {j})")
    two = corr.two_point[key]
    if len(two) != 9:
        raise ValueError(f"pair ({i}, {j}) is missing coefficients")
    pi, pj = corr.one_point[key[0]], corr.one_point[key[1]]
    total = 1.0
    total += sum(pi[a] ** 2 for a in _AXES)
    total += sum(pj[a] ** 2 for a in _AXES)
    total += sum(v * v for v in two.values())
    return 0.25 * total


def g1_translation(px: float, py: float, pz: float) -> float:
    """Class-1 measure of a translation-symmetric qubit state."""
    return 1.0 - px * px - py * py - pz * pz


def g2_translation(corr: CorrelationSet, gap: int) -> float:
    """Class-2 gap measure of a translation-symmetric qubit state.

    Valid for N >= 4 only: below that the d = min rule changes the
    normalization and this closed form does not apply.  The coefficient
    symmetry p^{ab} = p^{ba} it relies on is asserted, not assumed.
    """
    n = corr.num_sites
    if n <= 3:
        raise ValueError("the translation-symmetric pair form requires N >= 4")
    if not 1 <= gap <= n - 1:
        raise ValueError(f"gap {gap} out of range")
    pair = (1, 1 + gap)
    if pair not in corr.two_point:
        raise ValueError(f"correlation set lacks pair {pair}")
    two = corr.two_point[pair]
    for a in _AXES:
        for b in _AXES:
            if abs(two[a + b] - two[b + a]) > SYM_TOL:
                raise ValueError(
                    f"coefficients are not symmetric: p^{a}{b} != p^{b}{a} "
                    f"({two[a + b]} vs {two[b + a]})")
    one = corr.one_point[1]
    off_diag = two["xy"] ** 2 + two["xz"] ** 2 + two["yz"] ** 2
    diag = two["xx"] ** 2 + two["yy"] ** 2 + two["zz"] ** 2
    point = sum(one[a] ** 2 for a in _AXES)
    return 1.0 - (2.0 / 3.0) * (point + off_diag + 0.5 * diag)
