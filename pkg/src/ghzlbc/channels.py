"""Single-qubit noise channels and their action on multiqubit states.

Three Kraus channels are provided, each parameterized by a probability
p in [0, 1] (optionally derived from a decay rate and time):

* ``AD`` amplitude damping: |1> decays to |0> with probability p.
* ``D`` depolarizing: the state is replaced by I/2 with probability p.
* ``PD`` phase damping: coherences shrink by (1 - p), populations fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _backend
from .errors import (
    ConfigMismatch,
    NegativeInput,
    ProbabilityOutOfRange,
)
from .state import DensityMatrix

KINDS = ("AD", "D", "PD")

COMPLETENESS_TOL = 1e-14


@dataclass(frozen=True)
class ChannelSpec:
    """A channel kind plus an optional fixed probability or decay rate.

    At most one of ``p`` (fixed probability) and ``gamma`` (decay rate, used
    with a shared time through :func:`p_of_t`) may be set.
    """

    kind: str
    p: float | None = None
    gamma: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}, expected one of {KINDS}")
        if self.p is not None and self.gamma is not None:
            raise ConfigMismatch("give either p or gamma, not both")
        if self.p is not None and not 0.0 <= self.p <= 1.0:
            raise ProbabilityOutOfRange(f"p = {self.p} outside [0, 1]")
        if self.gamma is not None and self.gamma < 0.0:
            raise NegativeInput(f"gamma = {self.gamma} must be nonnegative")


@dataclass(frozen=True, eq=False)
class KrausSet:
    """A complete set of 2x2 Kraus operators."""

    kind: str
    p: float
    operators: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        acc = np.zeros((2, 2), dtype=np.complex128)
        for op in self.operators:
            acc += op.conj().T @ op
        defect = np.max(np.abs(acc - np.eye(2)))
        if defect > COMPLETENESS_TOL:
            raise ValueError(f"Kraus completeness defect {defect:.3e}")

    def as_array(self) -> np.ndarray:
        """Operators stacked into an (n_ops, 2, 2) array."""
        return np.stack(self.operators)


def p_of_t(gamma: float, t: float) -> float:
    """Decay probability p(t) = 1 - exp(-gamma * t)."""
    if gamma < 0.0:
        raise NegativeInput(f"gamma = {gamma} must be nonnegative")
    if t < 0.0:
        raise NegativeInput(f"t = {t} must be nonnegative")
    return 1.0 - math.exp(-gamma * t)


def kraus_ops(spec: ChannelSpec | str, p: float) -> KrausSet:
    """Kraus operators of the channel ``spec`` at probability ``p``."""
    kind = spec.kind if isinstance(spec, ChannelSpec) else spec
    if kind not in KINDS:
        raise ValueError(f"unknown channel kind {kind!r}, expected one of {KINDS}")
    if not 0.0 <= p <= 1.0:
        raise ProbabilityOutOfRange(f"p = {p} outside [0, 1]")
    if kind == "AD":
        ops = (
            np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], dtype=np.complex128),
            np.array([[0.0, math.sqrt(p)], [0.0, 0.0]], dtype=np.complex128),
        )
    elif kind == "D":
        c0 = math.sqrt(1.0 - 0.75 * p)
        c1 = math.sqrt(0.25 * p)
        ops = (
            c0 * np.eye(2, dtype=np.complex128),
            c1 * np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
            c1 * np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
            c1 * np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
        )
    else:  # PD
        ops = (
            math.sqrt(1.0 - 0.5 * p) * np.eye(2, dtype=np.complex128),
            math.sqrt(0.5 * p) * np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
        )
    return KrausSet(kind=kind, p=p, operators=ops)


def apply_local(
    rho: DensityMatrix, qubit: int, spec: ChannelSpec | str, p: float
) -> DensityMatrix:
    """Apply a single-qubit channel to ``qubit`` (1-based) of ``rho``."""
    if not 1 <= qubit <= rho.n_qubits:
        raise ConfigMismatch(f"qubit {qubit} outside 1..{rho.n_qubits}")
    kset = kraus_ops(spec, p)
    shift = rho.n_qubits - qubit
    out = _backend.apply_kraus_single(rho.data, kset.as_array(), shift)
    return DensityMatrix(rho.n_qubits, out)


@dataclass(frozen=True)
class NoiseConfig:
    """Assignment of channels to distinct qubits of an N-qubit register."""

    n_qubits: int
    assignments: tuple[tuple[int, ChannelSpec], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", tuple(
            (int(q), s) for q, s in self.assignments
        ))
        qubits = [q for q, _ in self.assignments]
        if not qubits:
            raise ConfigMismatch("at least one channel assignment required")
        if len(set(qubits)) != len(qubits):
            raise ConfigMismatch(f"duplicate qubit assignments: {sorted(qubits)}")
        for q in qubits:
            if not 1 <= q <= self.n_qubits:
                raise ConfigMismatch(f"qubit {q} outside 1..{self.n_qubits}")

    @property
    def m_channels(self) -> int:
        return len(self.assignments)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q, _ in self.assignments)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(s.kind for _, s in self.assignments)

    @classmethod
    def uniform(
        cls, n_qubits: int, kind: str, qubits: Sequence[int] | None = None
    ) -> "NoiseConfig":
        """Same channel kind on ``qubits`` (default: all of 1..n_qubits)."""
        if qubits is None:
            qubits = range(1, n_qubits + 1)
        return cls(n_qubits, tuple((q, ChannelSpec(kind)) for q in qubits))


def resolve_probabilities(
    config: NoiseConfig,
    probabilities: Sequence[float] | None = None,
    t: float | None = None,
) -> tuple[float, ...]:
    """Per-assignment probabilities from explicit values, a shared time, or
    the fixed parameters stored in the config."""
    if probabilities is not None and t is not None:
        raise ConfigMismatch("give either probabilities or t, not both")
    if probabilities is not None:
        probs = tuple(float(p) for p in probabilities)
        if len(probs) != config.m_channels:
            raise ConfigMismatch(
                f"{len(probs)} probabilities for {config.m_channels} channels"
            )
        return probs
    if t is not None:
        out = []
        for q, s in config.assignments:
            if s.gamma is None:
                raise ConfigMismatch(f"channel on qubit {q} has no gamma; cannot use t")
            out.append(p_of_t(s.gamma, t))
        return tuple(out)
    out = []
    for q, s in config.assignments:
        if s.p is None:
            raise ConfigMismatch(f"channel on qubit {q} has no fixed p")
        out.append(s.p)
    return tuple(out)


def evolve(
    rho0: DensityMatrix,
    config: NoiseConfig,
    probabilities: Sequence[float] | None = None,
    t: float | None = None,
) -> DensityMatrix:
    """Evolve ``rho0`` through every assigned channel.

    The channels act on distinct qubits, so the application order does not
    matter (up to roundoff).
    """
    if rho0.n_qubits != config.n_qubits:
        raise ConfigMismatch(
            f"state has {rho0.n_qubits} qubits, config declares {config.n_qubits}"
        )
    probs = resolve_probabilities(config, probabilities, t)
    rho = rho0
    for (qubit, spec), p in zip(config.assignments, probs):
        rho = apply_local(rho, qubit, spec, p)
    return rho
