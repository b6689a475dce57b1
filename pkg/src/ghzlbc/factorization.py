"""Factorization laws for evolved GHZ states and cross-route verification.

For a GHZ state sent through local channels the lower bound often splits
into (initial bound) x (noise factor).  Two structural conditions make this
exact:

* first kind: every competing diagonal pair has a * b = 0, so the bound is
  2|alpha beta| |D(t)| with D(t) the product of coherence factors;
* second kind: sqrt(a * b) itself factorizes as |alpha beta| F(t) with F
  independent of the amplitudes, giving per-cut terms
  2|alpha beta| max(0, |D(t)| - F_P(t)).

``classify_conditions`` tests these numerically on an evolved state;
``predict_lbc`` evaluates the factorized expressions for the supported
channel scenarios; ``verify`` sweeps a probability grid comparing every
available route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .channels import NoiseConfig, evolve, resolve_probabilities
from .errors import (
    ConfigMismatch,
    DegenerateState,
    UnsupportedScenario,
)
from .lbc import (
    Bipartition,
    LbcReport,
    bipartitions,
    lbc_closed_form,
    lbc_spectral,
    SPECTRAL_CAP_DEFAULT,
)
from .state import DensityMatrix, GhzSpec, ghz_density, xstate_view

FIRST_KIND_TOL = 1e-12
SECOND_KIND_TOL = 1e-10
DEGENERACY_TOL = 1e-14
PROBE_ALPHA_SQ = 0.3

SCENARIOS = ("AD_symmetric_MltN", "AD_asymmetric", "D_MltN", "PD_any", "none")

_COHERENCE_FACTORS = {
    "AD": lambda p: math.sqrt(1.0 - p),
    "D": lambda p: 1.0 - p,
    "PD": lambda p: 1.0 - p,
}


def coherence_factor(
    config: NoiseConfig,
    probabilities: Sequence[float] | None = None,
    t: float | None = None,
) -> float:
    """Product D(t) of the per-channel coherence attenuation factors."""
    probs = resolve_probabilities(config, probabilities, t)
    out = 1.0
    for (_, spec), p in zip(config.assignments, probs):
        out *= _COHERENCE_FACTORS[spec.kind](p)
    return out


@dataclass(frozen=True, eq=False)
class ConditionWitness:
    """Numerical evidence for which factorization condition holds.

    ``violating_pairs`` lists (pair_index, a, b) of the diagonal pairs with
    a * b above the first-kind tolerance; ``decomposition_residual`` is the
    worst |sqrt(a b) - |alpha beta| F| over competing pairs when the
    second-kind test ran (None otherwise).
    """

    kind: str  # "first" | "second" | "none"
    violating_pairs: tuple[tuple[int, float, float], ...]
    decomposition_residual: float | None


def classify_conditions(
    rho_evolved: DensityMatrix,
    spec: GhzSpec,
    config: NoiseConfig,
    probabilities: Sequence[float] | None = None,
    t: float | None = None,
) -> ConditionWitness:
    """Decide which factorization condition the evolved state satisfies.

    The second-kind test re-evolves a probe GHZ state with different
    amplitudes through the same channels, so it needs the channel
    probabilities (explicit, via ``t``, or fixed in ``config``).
    """
    view = xstate_view(rho_evolved, spec)
    m = view.pair_index
    half = 1 << (view.n_qubits - 1)

    violations = []
    for mp in range(1, half + 1):
        if mp == m:
            continue
        a = float(view.a_diag[mp - 1])
        b = float(view.b_diag[mp - 1])
        if a * b > FIRST_KIND_TOL:
            violations.append((mp, a, b))
    if not violations:
        return ConditionWitness("first", (), None)

    weight = abs(spec.alpha * spec.beta)
    if weight < DEGENERACY_TOL:
        raise DegenerateState(
            f"|alpha*beta| = {weight:.3e}; amplitude-independence test undefined"
        )

    probs = resolve_probabilities(config, probabilities, t)
    probe_spec = GhzSpec(
        spec.n_qubits,
        math.sqrt(PROBE_ALPHA_SQ),
        math.sqrt(1.0 - PROBE_ALPHA_SQ),
        spec.pattern,
    )
    probe_view = xstate_view(
        evolve(ghz_density(probe_spec), config, probs), probe_spec
    )
    probe_weight = abs(probe_spec.alpha * probe_spec.beta)

    residual = 0.0
    for mp in range(1, half + 1):
        if mp == m:
            continue
        cross = math.sqrt(max(float(view.a_diag[mp - 1] * view.b_diag[mp - 1]), 0.0))
        probe_cross = math.sqrt(
            max(float(probe_view.a_diag[mp - 1] * probe_view.b_diag[mp - 1]), 0.0)
        )
        residual = max(residual, abs(cross - weight * probe_cross / probe_weight))
    kind = "second" if residual < SECOND_KIND_TOL else "none"
    return ConditionWitness(kind, tuple(violations), residual)


@dataclass(frozen=True, eq=False)
class FactorizationPrediction:
    """Factorized lower-bound value for a supported channel scenario.

    ``q_products`` is only populated in the depolarizing second-kind
    scenario: it maps each cut to its competing product F_P(t).
    """

    scenario: str
    initial_lbc: float
    coherence_factor: float
    q_products: Mapping[Bipartition, float]
    predicted_lbc: float | None


def predict_lbc(
    spec: GhzSpec,
    config: NoiseConfig,
    probabilities: Sequence[float] | None = None,
    t: float | None = None,
) -> FactorizationPrediction:
    """Evaluate the factorized lower bound for the given configuration.

    Supported scenarios: amplitude damping on a symmetric pattern with
    M < N, amplitude damping on an asymmetric pattern (any M), depolarizing
    with M < N, and phase damping unconditionally.  Heterogeneous channel
    mixes return scenario 'none' with no prediction; amplitude damping on a
    symmetric pattern with M = N and depolarizing with M = N raise
    :class:`UnsupportedScenario`.
    """
    if spec.n_qubits != config.n_qubits:
        raise ConfigMismatch(
            f"state has {spec.n_qubits} qubits, config declares {config.n_qubits}"
        )
    probs = resolve_probabilities(config, probabilities, t)
    initial = 2.0 * abs(spec.alpha * spec.beta)
    kinds = set(config.kinds)
    n, m = config.n_qubits, config.m_channels

    if len(kinds) > 1:
        return FactorizationPrediction("none", initial, coherence_factor(config, probs), {}, None)
    kind = next(iter(kinds))
    factor = coherence_factor(config, probs)

    if kind == "PD":
        return FactorizationPrediction("PD_any", initial, factor, {}, initial * abs(factor))
    if kind == "AD":
        if not spec.is_symmetric:
            scenario = "AD_asymmetric"
        elif m < n:
            scenario = "AD_symmetric_MltN"
        else:
            raise UnsupportedScenario(
                "amplitude damping on every qubit of a symmetric pattern does not factorize"
            )
        return FactorizationPrediction(scenario, initial, factor, {}, initial * abs(factor))

    # depolarizing
    if m == n:
        raise UnsupportedScenario("depolarizing on every qubit does not factorize")
    channel_set = set(config.qubits)
    p_by_qubit = {q: p for (q, _), p in zip(config.assignments, probs)}
    q_products: dict[Bipartition, float] = {}
    acc = 0.0
    for part in bipartitions(n):
        block = set(part.block)
        if block <= channel_set:
            flip = block
        elif set(part.complement) <= channel_set:
            flip = set(part.complement)
        else:
            # the cut splits the untouched qubits: the competing diagonals
            # are never populated and the cut contributes the full |D(t)|
            q_products[part] = 0.0
            acc += factor * factor
            continue
        fp = 1.0
        for q in channel_set:
            pq = p_by_qubit[q]
            fp *= 0.5 * pq if q in flip else 1.0 - 0.5 * pq
        q_products[part] = fp
        term = max(0.0, abs(factor) - fp)
        acc += term * term
    norm = (1 << (n - 1)) - 1
    predicted = initial * math.sqrt(acc / norm)
    return FactorizationPrediction("D_MltN", initial, factor, q_products, predicted)


@dataclass(frozen=True, eq=False)
class VerifyPoint:
    """All routes evaluated at one grid point."""

    grid_value: float
    probabilities: tuple[float, ...]
    lbc_direct: float | None
    lbc_spectral: float | None
    lbc_factorized: float | None
    condition: str
    max_deviation: float
    error: str | None = None


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """Route comparison over a probability grid."""

    points: tuple[VerifyPoint, ...]
    max_deviation: float
    condition_histogram: Mapping[str, int]


def _max_pairwise(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    return max(abs(x - y) for i, x in enumerate(values) for y in values[i + 1:])


def verify_point(
    spec: GhzSpec,
    config: NoiseConfig,
    probabilities: Sequence[float],
    *,
    grid_value: float | None = None,
    use_spectral: bool | None = None,
    spectral_cap: int = SPECTRAL_CAP_DEFAULT,
    use_factorized: bool = True,
) -> VerifyPoint:
    """Evaluate every requested route at one set of channel probabilities."""
    probs = resolve_probabilities(config, probabilities)
    if grid_value is None:
        grid_value = probs[0]
    if use_spectral is None:
        use_spectral = spec.n_qubits <= spectral_cap
    rho = evolve(ghz_density(spec), config, probs)
    direct = lbc_closed_form(xstate_view(rho, spec)).total
    spectral = (
        lbc_spectral(rho, cap=spectral_cap).total if use_spectral else None
    )
    factorized = None
    if use_factorized:
        try:
            factorized = predict_lbc(spec, config, probs).predicted_lbc
        except UnsupportedScenario:
            factorized = None
    try:
        condition = classify_conditions(rho, spec, config, probs).kind
    except DegenerateState:
        condition = "degenerate"
    values = [v for v in (direct, spectral, factorized) if v is not None]
    return VerifyPoint(
        grid_value=float(grid_value),
        probabilities=probs,
        lbc_direct=direct,
        lbc_spectral=spectral,
        lbc_factorized=factorized,
        condition=condition,
        max_deviation=_max_pairwise(values),
    )


def verify(
    spec: GhzSpec,
    config: NoiseConfig,
    grid: Sequence[float],
    *,
    spectral_cap: int = SPECTRAL_CAP_DEFAULT,
) -> VerificationReport:
    """Compare all routes at each shared probability in ``grid``.

    Per-point failures are recorded in the report instead of aborting the
    sweep.
    """
    points = []
    histogram: dict[str, int] = {}
    worst = 0.0
    for p in grid:
        probs = (float(p),) * config.m_channels
        try:
            point = verify_point(
                spec, config, probs, grid_value=float(p), spectral_cap=spectral_cap
            )
        except Exception as exc:  # recorded per point
            point = VerifyPoint(
                grid_value=float(p),
                probabilities=probs,
                lbc_direct=None,
                lbc_spectral=None,
                lbc_factorized=None,
                condition="error",
                max_deviation=0.0,
                error=f"{type(exc).__name__}: {exc}",
            )
        points.append(point)
        histogram[point.condition] = histogram.get(point.condition, 0) + 1
        worst = max(worst, point.max_deviation)
    return VerificationReport(tuple(points), worst, histogram)


def death_probability(
    spec: GhzSpec,
    config: NoiseConfig,
    *,
    tol: float = 1e-12,
) -> float:
    """Smallest shared probability at which the closed-form bound hits zero.

    Uses bisection on the closed form; returns 1.0 when the bound survives
    on the whole open interval and only dies at p = 1.
    """

    def bound(p: float) -> float:
        rho = evolve(ghz_density(spec), config, (p,) * config.m_channels)
        return lbc_closed_form(xstate_view(rho, spec)).total

    if bound(0.0) == 0.0:
        return 0.0
    if bound(1.0) > 0.0:
        raise UnsupportedScenario("bound does not vanish anywhere on [0, 1]")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if bound(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return hi
