"""Lower bound of concurrence for multiqubit states.

Two routes are implemented.  ``lbc_closed_form`` evaluates the X-state
expression: for each bipartite cut the bound is
2 * max(0, |coherence| - sqrt(a * b)) with (a, b) the diagonal pair singled
out by that cut.  ``lbc_spectral`` is the brute-force route: for every cut
and every pair of SO(d1) x SO(d2) generators (L1, L2) it takes the singular
values s_i of  A = S (L1 (x) L2) S*  (S the Hermitian root of the permuted
state) and accumulates max(0, s_1 - sum_{i>1} s_i)^2.  Totals combine the
cuts as sqrt(sum_P C_P^2 / (2^(N-1) - 1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping

import numpy as np

from . import _backend
from .errors import (
    DimensionTooSmall,
    IndexOutOfRange,
    NumericalFailure,
    QubitCapExceeded,
    TooFewQubits,
)
from .state import DensityMatrix, XStateView

SPECTRAL_CAP_DEFAULT = 6
PSD_SLACK = 1e-10


@dataclass(frozen=True, order=True)
class Bipartition:
    """One unordered split of qubits 1..N into two nonempty blocks.

    ``block`` is the canonical representative: the sorted block containing
    qubit 1.
    """

    n_qubits: int
    block: tuple[int, ...]

    def __post_init__(self) -> None:
        block = tuple(sorted(int(q) for q in self.block))
        object.__setattr__(self, "block", block)
        if len(set(block)) != len(block):
            raise ValueError(f"duplicate qubits in block {block}")
        if not block or block[0] != 1:
            raise ValueError(f"canonical block must contain qubit 1: {block}")
        if any(not 1 <= q <= self.n_qubits for q in block):
            raise IndexOutOfRange(f"block {block} outside 1..{self.n_qubits}")
        if len(block) == self.n_qubits:
            raise ValueError("block must be a proper subset of the qubits")

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(q for q in range(1, self.n_qubits + 1) if q not in self.block)

    @property
    def mask(self) -> int:
        """Bit mask of the block (qubit 1 = most significant bit)."""
        m = 0
        for q in self.block:
            m |= 1 << (self.n_qubits - q)
        return m

    @property
    def label(self) -> str:
        """Compact text form, e.g. '1.3' for block (1, 3)."""
        return ".".join(str(q) for q in self.block)


def bipartitions(n_qubits: int) -> tuple[Bipartition, ...]:
    """All 2^(N-1) - 1 bipartitions, lexicographic by canonical block."""
    if n_qubits < 2:
        raise TooFewQubits(f"need at least 2 qubits, got {n_qubits}")
    rest = range(2, n_qubits + 1)
    blocks = []
    for r in range(0, n_qubits - 1):
        for tail in combinations(rest, r):
            blocks.append((1,) + tail)
    blocks.sort()
    return tuple(Bipartition(n_qubits, b) for b in blocks)


@dataclass(frozen=True)
class SoGeneratorSet:
    """Index pairs (i, j), i < j, of the antisymmetric SO(d) generators.

    Generator k has +1 at (i_k, j_k) and -1 at (j_k, i_k); ``matrix`` builds
    the dense form on demand.
    """

    dim: int
    pairs: tuple[tuple[int, int], ...]

    def matrix(self, k: int) -> np.ndarray:
        i, j = self.pairs[k]
        gen = np.zeros((self.dim, self.dim))
        gen[i, j] = 1.0
        gen[j, i] = -1.0
        return gen

    def __len__(self) -> int:
        return len(self.pairs)


def so_generators(dim: int) -> SoGeneratorSet:
    """The d(d-1)/2 SO(d) generators, pairs in lexicographic order."""
    if dim < 2:
        raise DimensionTooSmall(f"need dimension >= 2, got {dim}")
    return SoGeneratorSet(dim, tuple(combinations(range(dim), 2)))


def xstate_pair_index(partition: Bipartition, pattern_index: int) -> int:
    """1-based diagonal pair index competing with the coherence on this cut.

    Flipping the block's bits of ``pattern_index`` lands on one member of the
    pair; the index returned is min(that, its complement) + 1.
    """
    dim = 1 << partition.n_qubits
    if not 0 <= pattern_index < dim:
        raise IndexOutOfRange(f"pattern index {pattern_index} outside 0..{dim - 1}")
    flipped = pattern_index ^ partition.mask
    return min(flipped, dim - 1 - flipped) + 1


@dataclass(frozen=True, eq=False)
class LbcReport:
    """Result of one lower-bound evaluation.

    ``per_bipartition`` maps each cut to its bipartite concurrence C_P; the
    total is sqrt(sum C_P^2 / (2^(N-1) - 1)).  The spectral route can attach
    ``per_generator_terms``: the nonzero (l1, l2, value) contributions whose
    squares sum to C_P^2.
    """

    total: float
    per_bipartition: Mapping[Bipartition, float]
    method: str
    per_generator_terms: Mapping[Bipartition, tuple[tuple[int, int, float], ...]] | None = None


def _combine(per: dict[Bipartition, float], n_qubits: int, method: str,
             terms=None) -> LbcReport:
    norm = (1 << (n_qubits - 1)) - 1
    total = float(np.sqrt(sum(c * c for c in per.values()) / norm))
    return LbcReport(total=total, per_bipartition=per, method=method,
                     per_generator_terms=terms)


def lbc_closed_form(view: XStateView) -> LbcReport:
    """X-state lower bound from the element view."""
    n = view.n_qubits
    x = view.pair_index - 1
    coh = abs(view.coherence)
    per: dict[Bipartition, float] = {}
    for part in bipartitions(n):
        mp = xstate_pair_index(part, x)
        cross = float(np.sqrt(max(view.a_diag[mp - 1] * view.b_diag[mp - 1], 0.0)))
        per[part] = 2.0 * max(0.0, coh - cross)
    return _combine(per, n, "closed_form")


@lru_cache(maxsize=None)
def _block_permutation(n_qubits: int, block: tuple[int, ...]) -> np.ndarray:
    """Source indices such that rho[ix_(src, src)] reorders the tensor
    factors to (sorted block, then sorted complement)."""
    order = list(block) + [q for q in range(1, n_qubits + 1) if q not in block]
    dim = 1 << n_qubits
    src = np.zeros(dim, dtype=np.intp)
    for new in range(dim):
        old = 0
        for pos, q in enumerate(order):
            if (new >> (n_qubits - 1 - pos)) & 1:
                old |= 1 << (n_qubits - q)
        src[new] = old
    src.setflags(write=False)
    return src


@lru_cache(maxsize=None)
def _pair_columns(d1: int, d2: int):
    """Column quadruples (a, b, c, d) and generator indices for all pairs
    of SO(d1) x SO(d2) generators, l1-major then l2, lexicographic."""
    p1 = list(combinations(range(d1), 2))
    p2 = list(combinations(range(d2), 2))
    cols = np.empty((len(p1) * len(p2), 4), dtype=np.int64)
    l1_idx = np.empty(len(p1) * len(p2), dtype=np.int64)
    l2_idx = np.empty(len(p1) * len(p2), dtype=np.int64)
    row = 0
    for l1, (i1, j1) in enumerate(p1):
        for l2, (i2, j2) in enumerate(p2):
            cols[row] = (i1 * d2 + i2, i1 * d2 + j2, j1 * d2 + i2, j1 * d2 + j2)
            l1_idx[row] = l1
            l2_idx[row] = l2
            row += 1
    for arr in (cols, l1_idx, l2_idx):
        arr.setflags(write=False)
    return cols, l1_idx, l2_idx


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    """Hermitian square root; eigenvalues in [-PSD_SLACK, 0) are clamped."""
    w, v = np.linalg.eigh(mat)
    if w[0] < -PSD_SLACK:
        raise NumericalFailure(f"matrix not positive semidefinite: min eig {w[0]:.3e}")
    w = np.maximum(w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def lbc_spectral(
    rho: DensityMatrix,
    *,
    cap: int = SPECTRAL_CAP_DEFAULT,
    keep_generator_terms: bool = False,
) -> LbcReport:
    """Brute-force lower bound summing all generator-pair contributions.

    Cost grows as 16^N; ``cap`` guards against accidental large runs and
    raises :class:`QubitCapExceeded` beyond it.
    """
    n = rho.n_qubits
    if n < 2:
        raise TooFewQubits(f"need at least 2 qubits, got {n}")
    if n > cap:
        raise QubitCapExceeded(f"{n} qubits exceeds the cap of {cap}")
    per: dict[Bipartition, float] = {}
    terms: dict[Bipartition, tuple[tuple[int, int, float], ...]] = {}
    for part in bipartitions(n):
        src = _block_permutation(n, part.block)
        sub = rho.data[np.ix_(src, src)]
        root = _psd_sqrt(sub)
        d1 = 1 << len(part.block)
        cols, l1_idx, l2_idx = _pair_columns(d1, rho.dim // d1)
        svals = _backend.pair_singular_values(root, cols)
        contrib = np.maximum(0.0, svals[:, 0] - svals[:, 1:].sum(axis=1))
        per[part] = float(np.sqrt(np.sum(contrib * contrib)))
        if keep_generator_terms:
            nz = np.nonzero(contrib)[0]
            terms[part] = tuple(
                (int(l1_idx[i]), int(l2_idx[i]), float(contrib[i])) for i in nz
            )
    return _combine(per, n, "spectral", terms if keep_generator_terms else None)
