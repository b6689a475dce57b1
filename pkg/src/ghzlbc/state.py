"""Generalized GHZ states and density-matrix utilities.

Qubits are numbered 1..N, with qubit 1 occupying the most significant bit
of a computational-basis index, so |i_1 i_2 ... i_N> maps to the integer
sum_j i_j 2^(N-j).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    IndexOutOfRange,
    NormViolation,
    NotXStructured,
    PatternLengthMismatch,
    TooFewQubits,
)

NORM_TOL = 1e-12
XSTRUCT_TOL = 1e-10


@dataclass(frozen=True)
class GhzSpec:
    """A generalized GHZ state  alpha|pattern> + beta|~pattern>.

    ``pattern`` is a '0'/'1' string of length ``n_qubits``; ``~pattern`` is
    its bitwise complement.  Amplitudes may be complex and must satisfy
    |alpha|^2 + |beta|^2 = 1 to within 1e-12.
    """

    n_qubits: int
    alpha: complex
    beta: complex
    pattern: str

    def __post_init__(self) -> None:
        if self.n_qubits < 2:
            raise TooFewQubits(f"need at least 2 qubits, got {self.n_qubits}")
        if len(self.pattern) != self.n_qubits:
            raise PatternLengthMismatch(
                f"pattern {self.pattern!r} has length {len(self.pattern)}, "
                f"expected {self.n_qubits}"
            )
        if set(self.pattern) - {"0", "1"}:
            raise ValueError(f"pattern may contain only '0' and '1': {self.pattern!r}")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise NormViolation(f"|alpha|^2 + |beta|^2 = {norm}, expected 1")

    @property
    def pattern_index(self) -> int:
        """Basis index of |pattern>."""
        return int(self.pattern, 2)

    @property
    def complement_index(self) -> int:
        """Basis index of the complementary branch |~pattern>."""
        return (1 << self.n_qubits) - 1 - self.pattern_index

    @property
    def pair_index(self) -> int:
        """1-based index of the diagonal pair carrying the coherence."""
        return min(self.pattern_index, self.complement_index) + 1

    @property
    def is_symmetric(self) -> bool:
        """True when all pattern bits agree (the |0..0>, |1..1> family)."""
        return self.pattern.count(self.pattern[0]) == self.n_qubits


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Immutable 2^n x 2^n density matrix together with its qubit count."""

    n_qubits: int
    data: np.ndarray

    def __post_init__(self) -> None:
        dim = 1 << self.n_qubits
        arr = np.array(self.data, dtype=np.complex128, order="C", copy=True)
        if arr.shape != (dim, dim):
            raise ValueError(
                f"expected shape {(dim, dim)} for {self.n_qubits} qubits, "
                f"got {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def from_array(cls, arr) -> "DensityMatrix":
        """Wrap a square array whose side is a power of two."""
        arr = np.asarray(arr)
        dim = arr.shape[0]
        n = max(dim.bit_length() - 1, 0)
        if dim < 2 or (1 << n) != dim:
            raise ValueError(f"side {dim} is not a power of two >= 2")
        return cls(n, arr)


@dataclass(frozen=True, eq=False)
class XStateView:
    """Element view of an X-structured density matrix.

    ``a_diag[k]`` is the diagonal read from the top-left corner downward and
    ``b_diag[k]`` the diagonal read from the bottom-right corner upward, for
    k = 0..2^(N-1)-1, so the entries ``a_diag[k]`` and ``b_diag[k]`` sit at
    bit-complementary basis indices.  ``coherence`` is the upper-triangle
    off-diagonal entry of the pair ``pair_index`` (1-based).
    """

    n_qubits: int
    pair_index: int
    a_diag: np.ndarray
    b_diag: np.ndarray
    coherence: complex


def ghz_density(spec: GhzSpec) -> DensityMatrix:
    """Density matrix of the pure state alpha|pattern> + beta|~pattern>."""
    dim = 1 << spec.n_qubits
    x, xc = spec.pattern_index, spec.complement_index
    rho = np.zeros((dim, dim), dtype=np.complex128)
    rho[x, x] = abs(spec.alpha) ** 2
    rho[xc, xc] = abs(spec.beta) ** 2
    rho[x, xc] = spec.alpha * np.conj(spec.beta)
    rho[xc, x] = np.conj(spec.alpha) * spec.beta
    return DensityMatrix(spec.n_qubits, rho)


def xstate_view(rho: DensityMatrix, spec: GhzSpec) -> XStateView:
    """Extract the X-state element labeling of ``rho``.

    The only off-diagonal entries allowed (above 1e-10 in magnitude) are the
    pair linking |pattern> and |~pattern>; anything else raises
    :class:`NotXStructured`.
    """
    if rho.n_qubits != spec.n_qubits:
        raise ValueError(
            f"state has {rho.n_qubits} qubits but spec declares {spec.n_qubits}"
        )
    dim = rho.dim
    x, xc = spec.pattern_index, spec.complement_index
    lo, hi = min(x, xc), max(x, xc)

    stray = np.array(rho.data)
    np.fill_diagonal(stray, 0.0)
    stray[lo, hi] = 0.0
    stray[hi, lo] = 0.0
    worst = np.max(np.abs(stray))
    if worst > XSTRUCT_TOL:
        r, c = np.unravel_index(np.argmax(np.abs(stray)), stray.shape)
        raise NotXStructured(
            f"off-diagonal entry at ({r}, {c}) has magnitude {worst:.3e}"
        )

    half = dim // 2
    diag = np.real(np.diagonal(rho.data))
    a_diag = diag[:half].copy()
    b_diag = diag[::-1][:half].copy()
    a_diag.setflags(write=False)
    b_diag.setflags(write=False)
    return XStateView(
        n_qubits=rho.n_qubits,
        pair_index=lo + 1,
        a_diag=a_diag,
        b_diag=b_diag,
        coherence=complex(rho.data[lo, hi]),
    )


def xstate_to_density(view: XStateView) -> DensityMatrix:
    """Rebuild the density matrix described by an :class:`XStateView`."""
    dim = 1 << view.n_qubits
    rho = np.zeros((dim, dim), dtype=np.complex128)
    half = dim // 2
    idx = np.arange(half)
    rho[idx, idx] = view.a_diag
    rho[dim - 1 - idx, dim - 1 - idx] = view.b_diag
    lo = view.pair_index - 1
    hi = dim - 1 - lo
    rho[lo, hi] = view.coherence
    rho[hi, lo] = np.conj(view.coherence)
    return DensityMatrix(view.n_qubits, rho)


def reduced_state(rho: DensityMatrix, qubit: int) -> np.ndarray:
    """Single-qubit reduced density matrix (2x2), tracing out the rest."""
    if not 1 <= qubit <= rho.n_qubits:
        raise IndexOutOfRange(
            f"qubit {qubit} outside 1..{rho.n_qubits}"
        )
    shift = rho.n_qubits - qubit
    hi = rho.dim >> (shift + 1)
    lo = 1 << shift
    r6 = rho.data.reshape(hi, 2, lo, hi, 2, lo)
    return np.einsum("halhcl->ac", r6)


@dataclass(frozen=True)
class ValidationReport:
    """Numerical health check of a density matrix."""

    hermiticity_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.hermiticity_deviation <= self.tol
            and self.trace_deviation <= self.tol
            and self.min_eigenvalue >= -self.tol
        )


def validate_density(rho: DensityMatrix, tol: float = 1e-10) -> ValidationReport:
    """Report Hermiticity/trace/positivity deviations of ``rho``."""
    mat = rho.data
    herm = float(np.max(np.abs(mat - mat.conj().T)))
    trace = float(abs(np.trace(mat) - 1.0))
    sym = 0.5 * (mat + mat.conj().T)
    min_eig = float(np.linalg.eigvalsh(sym)[0])
    return ValidationReport(herm, trace, min_eig, tol)
