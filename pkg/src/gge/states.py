"""Exact pure-state vectors on N sites of uniform local dimension q.

Amplitude indexing convention: site 1 is the most significant base-q digit
of the flat index, so a ket written left to right reads off directly as the
digits of its index.  All values are immutable after construction; every
function here is safe to call concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
FILE_NORM_TOL = 1e-9

_SQ2 = math.sqrt(2.0)


class StateFileError(ValueError):
    """Malformed state file or a file whose contents violate an invariant."""


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over ``local_dim ** num_sites`` basis kets."""

    num_sites: int
    local_dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.num_sites < 1:
            raise ValueError("num_sites must be positive")
        if self.local_dim < 2:
            raise ValueError("local_dim must be at least 2")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.local_dim**self.num_sites,):
            raise ValueError(
                f"expected {self.local_dim**self.num_sites} amplitudes, got {amp.shape}"
            )
        norm_sq = float(np.real(np.vdot(amp, amp)))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.local_dim**self.num_sites


@dataclass(frozen=True)
class SitePermutation:
    """Bijection on sites 1..N; ``mapping[j-1]`` is the image of site j."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(m) for m in self.mapping)
        n = len(mapping)
        if sorted(mapping) != list(range(1, n + 1)):
            raise ValueError(f"mapping {mapping} is not a bijection on 1..{n}")
        object.__setattr__(self, "mapping", mapping)

    def inverse(self) -> "SitePermutation":
        inv = [0] * len(self.mapping)
        for j, image in enumerate(self.mapping, start=1):
            inv[image - 1] = j
        return SitePermutation(tuple(inv))

    @classmethod
    def swap(cls, num_sites: int, a: int, b: int) -> "SitePermutation":
        mapping = list(range(1, num_sites + 1))
        mapping[a - 1], mapping[b - 1] = b, a
        return cls(tuple(mapping))


def basis_state(num_sites: int, index: int, local_dim: int = 2) -> PureState:
    amp = np.zeros(local_dim**num_sites, dtype=complex)
    amp[index] = 1.0
    return PureState(num_sites, local_dim, amp)


def _ghz(n: int) -> np.ndarray:
    amp = np.zeros(2**n)
    amp[0] = amp[-1] = 1.0 / _SQ2
    return amp


def _w(n: int) -> np.ndarray:
    amp = np.zeros(2**n)
    for j in range(1, n + 1):
        amp[1 << (n - j)] = 1.0 / math.sqrt(n)
    return amp


def _bell() -> np.ndarray:
    return np.array([1.0, 0.0, 0.0, 1.0]) / _SQ2


def _epr(n: int) -> np.ndarray:
    amp = _bell()
    for _ in range(n // 2 - 1):
        amp = np.kron(amp, _bell())
    return amp


def _from_kets(num_sites: int, terms: dict[str, float]) -> np.ndarray:
    amp = np.zeros(2**num_sites)
    for ket, coeff in terms.items():
        amp[int(ket, 2)] = coeff
    return amp


def _phi2() -> np.ndarray:
    s6 = math.sqrt(6.0)
    return _from_kets(4, {"1111": _SQ2 / s6, "1000": 1 / s6, "0100": 1 / s6,
                          "0010": 1 / s6, "0001": 1 / s6})


def _phi3() -> np.ndarray:
    return _from_kets(4, {"1111": 0.5, "1100": 0.5, "0010": 0.5, "0001": 0.5})


def _chi() -> np.ndarray:
    c = 1.0 / (2.0 * _SQ2)
    return _from_kets(4, {"0000": c, "0011": -c, "0101": -c, "0110": c,
                          "1001": c, "1010": c, "1100": c, "1111": c})


def _g1() -> np.ndarray:
    # Bell pairs on sites (1,3) and (2,4): the site-interleaved twin of EPR2.
    return _from_kets(4, {"0000": 0.5, "0101": 0.5, "1010": 0.5, "1111": 0.5})


def _zhg() -> np.ndarray:
    return _from_kets(6, {"000000": 0.5, "010101": 0.5, "101010": 0.5, "111111": 0.5})


# Families keyed by canonical tag: (needs_n, fixed_n, needs_m)
_FIXED_N4 = {"PHI1", "PHI2", "PHI3", "CHI", "G1", "EPR2"}


def make_named_state(name: str, num_sites: int | None = None,
                     copies: int | None = None) -> PureState:
    """Build one of the named qubit states from exact literals.

    ``num_sites`` is the per-factor site count N for the parametric families
    (GHZ, W, EPR, GHZ_POWER); it must be omitted or match the fixed layout
    for the four-qubit states and for ZHG.  ``copies`` is the tensor-power M
    and only applies to GHZ_POWER (and the fixed M=2 of ZHG).
    """
    tag = name.strip().upper()
    if tag in _FIXED_N4:
        if num_sites not in (None, 4):
            raise ValueError(f"{tag} is a four-qubit state; got N={num_sites}")
        if copies not in (None, 1):
            raise ValueError(f"{tag} does not take a copy count")
        amp = {"PHI1": _ghz(4), "PHI2": _phi2(), "PHI3": _phi3(),
               "CHI": _chi(), "G1": _g1(), "EPR2": _epr(4)}[tag]
        return PureState(4, 2, amp)
    if tag == "ZHG":
        if num_sites not in (None, 3) or copies not in (None, 2):
            raise ValueError("ZHG fixes the N=3, M=2 layout")
        return PureState(6, 2, _zhg())
    if tag in ("GHZ", "W", "EPR", "GHZ_POWER"):
        if num_sites is None:
            raise ValueError(f"{tag} requires a site count N")
        n = int(num_sites)
        if n < 2:
            raise ValueError(f"{tag} requires N >= 2")
        if tag == "EPR":
            if n % 2:
                raise ValueError("EPR requires an even number of sites")
            return PureState(n, 2, _epr(n))
        if tag == "GHZ":
            if copies not in (None, 1):
                raise ValueError("GHZ does not take a copy count; use GHZ_POWER")
            return PureState(n, 2, _ghz(n))
        if tag == "W":
            return PureState(n, 2, _w(n))
        m = 1 if copies is None else int(copies)
        if m < 1:
            raise ValueError("copy count M must be at least 1")
        amp = _ghz(n)
        for _ in range(m - 1):
            amp = np.kron(amp, _ghz(n))
        return PureState(n * m, 2, amp)
    raise ValueError(f"unknown state name {name!r}")


def tensor_product(a: PureState, b: PureState) -> PureState:
    """Join two states; a's sites precede b's in the combined index."""
    if a.local_dim != b.local_dim:
        raise ValueError(
            f"local dimension mismatch: {a.local_dim} vs {b.local_dim}")
    return PureState(a.num_sites + b.num_sites, a.local_dim,
                     np.kron(a.amplitudes, b.amplitudes))


def permute_sites(state: PureState, perm: SitePermutation) -> PureState:
    """Relabel sites so that input site j becomes output site perm(j)."""
    n = state.num_sites
    if len(perm.mapping) != n:
        raise ValueError(f"permutation has length {len(perm.mapping)}, state has {n} sites")
    q = state.local_dim
    src = state.amplitudes.reshape([q] * n)
    # output axis perm(j)-1 carries input axis j-1
    axes = [0] * n
    for j, image in enumerate(perm.mapping, start=1):
        axes[image - 1] = j - 1
    out = np.transpose(src, axes).reshape(-1)
    return PureState(n, q, out)


def apply_local_unitary(state: PureState, site: int, u: np.ndarray) -> PureState:
    """Apply a q x q unitary to one site (used for invariance checks)."""
    q = state.local_dim
    u = np.asarray(u, dtype=complex)
    if u.shape != (q, q):
        raise ValueError(f"unitary must be {q}x{q}")
    if not 1 <= site <= state.num_sites:
        raise ValueError(f"site {site} out of range")
    t = state.amplitudes.reshape([q] * state.num_sites)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [site - 1])), 0, site - 1)
    return PureState(state.num_sites, q, t.reshape(-1))


def random_state(num_sites: int, local_dim: int = 2,
                 rng: np.random.Generator | None = None) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    rng = np.random.default_rng() if rng is None else rng
    dim = local_dim**num_sites
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(num_sites, local_dim, z / np.linalg.norm(z))


def haar_unitary(dim: int, rng: np.random.Generator | None = None) -> np.ndarray:
    rng = np.random.default_rng() if rng is None else rng
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def write_state_file(state: PureState) -> str:
    """Serialize to the versioned JSON state-file schema."""
    doc = {
        "version": 1,
        "num_sites": state.num_sites,
        "local_dim": state.local_dim,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    return json.dumps(doc, indent=1)


def read_state_file(text: str) -> PureState:
    """Parse a state file, rejecting malformed or non-normalized content."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFileError("state file must be a JSON object")
    for key in ("version", "num_sites", "local_dim", "amplitudes"):
        if key not in doc:
            raise StateFileError(f"missing field {key!r}")
    if doc["version"] != 1:
        raise StateFileError(f"unsupported version {doc['version']!r}")
    try:
        num_sites = int(doc["num_sites"])
        local_dim = int(doc["local_dim"])
        pairs = [(float(re), float(im)) for re, im in doc["amplitudes"]]
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"malformed field: {exc}") from exc
    if num_sites < 1 or local_dim < 2:
        raise StateFileError("num_sites must be >= 1 and local_dim >= 2")
    if len(pairs) != local_dim**num_sites:
        raise StateFileError(
            f"expected {local_dim**num_sites} amplitudes, got {len(pairs)}")
    amp = np.array([complex(re, im) for re, im in pairs])
    norm_sq = float(np.real(np.vdot(amp, amp)))
    # reject rather than silently renormalize
    if abs(norm_sq - 1.0) > FILE_NORM_TOL:
        raise StateFileError(f"state file norm |psi|^2 = {norm_sq!r} is not 1")
    try:
        return PureState(num_sites, local_dim, amp)
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc
