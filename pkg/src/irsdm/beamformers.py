"""The two secrecy-rate beamforming methods plus benchmark phase settings.

Method one alternates a generalized-eigenvector message beam (max secrecy
rate for fixed phases) with a leakage-ratio phase design.  Method two is
closed form: maximum-ratio transmission for the message, null-space
projection for the artificial noise, phase alignment for the IRS.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelSet, SteeringConfig, steering_vector
from .linalg import (
    dominant_gen_eigvec,
    dominant_gen_eigvec_rank_one,
    null_space_projector,
)
from .metrics import (
    BeamformingSolution,
    PowerBudget,
    effective_channel,
    evaluate,
    _cascade_coefficients,
)

NULL_TOL = 1e-10


@dataclass(frozen=True)
class MaxSrSlnrConfig:
    """Stopping rule and initialization of the alternating method."""

    epsilon: float = 1e-3
    max_iterations: int = 100
    initial_phases: np.ndarray | None = None
    restarts: int = 1

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be > 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass(frozen=True)
class MrtVariant:
    """Direction selector of the maximum-ratio message beam."""

    kind: str
    angle: float | None = None

    _KINDS = ("toward_ab", "toward_sum", "toward_ai", "toward_angle")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown MRT variant {self.kind!r}")
        if self.kind == "toward_angle":
            if self.angle is None or not 0.0 <= self.angle <= np.pi:
                raise ValueError("toward_angle needs an angle in [0, pi]")

    @classmethod
    def toward_ab(cls) -> "MrtVariant":
        return cls("toward_ab")

    @classmethod
    def toward_sum(cls) -> "MrtVariant":
        return cls("toward_sum")

    @classmethod
    def toward_ai(cls) -> "MrtVariant":
        return cls("toward_ai")

    @classmethod
    def toward_angle(cls, angle: float) -> "MrtVariant":
        return cls("toward_angle", angle)


@dataclass(frozen=True)
class FlopCount:
    total: int

    def __post_init__(self):
        if self.total < 0:
            raise ValueError("FLOP count must be nonnegative")


@dataclass
class IterationTrace:
    """Secrecy rate of every iterate of the alternating loop, including the
    initial one; ``secrecy_rate`` on the trace is the keep-best value."""

    secrecy_rates: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    hit_max_iterations: bool = False

    @property
    def best_secrecy_rate(self) -> float:
        return max(self.secrecy_rates)


def an_beamformer(ch: ChannelSet) -> np.ndarray:
    """Noise beam in the null space of the Bob and IRS channels, steered to
    maximize the power reaching Eve through her direct channel."""
    # The IRS link is rank one, so its row space is spanned by the Alice-side
    # departure response; two constraint rows suffice.
    constraints = np.vstack([ch.alice_bob.conj()[None, :], ch.alice_irs_tx.conj()[None, :]])
    projector = null_space_projector(constraints)
    if np.abs(np.trace(projector)) <= NULL_TOL:
        raise ValueError("no AN degrees of freedom")
    projected = projector @ ch.alice_eve
    norm = np.linalg.norm(projected)
    if norm <= NULL_TOL:
        raise ValueError("AN cannot reach Eve")
    return projected / norm


def max_sr_cm(
    ch: ChannelSet,
    phases: np.ndarray,
    an_vector: np.ndarray,
    pw: PowerBudget,
) -> np.ndarray:
    """Unit-norm message beam maximizing (1 + SINR_bob)/(1 + SINR_eve) for
    fixed phases and noise beam; the dominant generalized eigenvector of the
    rank-one-plus-identity pair built from both composite channels."""
    n = ch.alice_elements
    cm_share = pw.cm_share * pw.transmit_power
    an_share = pw.an_share * pw.transmit_power
    h_b1 = effective_channel(
        ch.alice_bob, ch.irs_bob, phases, ch.alice_irs,
        ch.gain_bob, ch.gain_cascade_bob, cm_share,
    )
    h_b2 = effective_channel(
        ch.alice_bob, ch.irs_bob, phases, ch.alice_irs,
        ch.gain_bob, ch.gain_cascade_bob, an_share,
    )
    h_e1 = effective_channel(
        ch.alice_eve, ch.irs_eve, phases, ch.alice_irs,
        ch.gain_eve, ch.gain_cascade_eve, cm_share,
    )
    h_e2 = effective_channel(
        ch.alice_eve, ch.irs_eve, phases, ch.alice_irs,
        ch.gain_eve, ch.gain_cascade_eve, an_share,
    )
    an_at_bob = abs(np.vdot(h_b2, an_vector)) ** 2
    an_at_eve = abs(np.vdot(h_e2, an_vector)) ** 2
    numerator = (an_at_bob + pw.noise_bob) * np.eye(n) + np.outer(h_b1, h_b1.conj())
    denominator = (an_at_eve + pw.noise_eve) * np.eye(n) + np.outer(h_e1, h_e1.conj())
    return dominant_gen_eigvec(numerator, denominator)


def slnr_phase(ch: ChannelSet, cm_vector: np.ndarray, pw: PowerBudget) -> np.ndarray:
    """Unit-modulus phase vector from the leakage-ratio eigenproblem: the
    dominant generalized eigenvector is projected entrywise onto the unit
    circle (the projection is not re-optimized)."""
    cm_vector = np.asarray(cm_vector, dtype=np.complex128)
    e_bob = _cascade_coefficients(ch, cm_vector, ch.irs_bob).conj()
    e_eve = _cascade_coefficients(ch, cm_vector, ch.irs_eve).conj()
    u = dominant_gen_eigvec_rank_one(e_bob, e_eve, pw.noise_eve / ch.irs_elements)
    return np.exp(1j * np.angle(u))


def align_phases_to_direct_path(
    ch: ChannelSet, cm_vector: np.ndarray, phases: np.ndarray
) -> np.ndarray:
    """Rotate the phase vector by the global phase that adds Bob's reflected
    message component coherently to his direct one.  Both the leakage ratio
    and the reflected power are invariant under a global phase, so this picks
    the best member of the optimizer's equivalence class."""
    direct = np.vdot(ch.alice_bob, cm_vector) * np.sqrt(ch.gain_bob)
    reflected = np.sum(phases * _cascade_coefficients(ch, cm_vector, ch.irs_bob))
    reflected *= np.sqrt(ch.gain_cascade_bob)
    if abs(direct) == 0.0 or abs(reflected) == 0.0:
        return phases
    return phases * np.exp(1j * (np.angle(direct) - np.angle(reflected)))


def max_sr_slnr(
    ch: ChannelSet,
    pw: PowerBudget,
    cfg: MaxSrSlnrConfig = MaxSrSlnrConfig(),
    rng: np.random.Generator | None = None,
) -> tuple[BeamformingSolution, IterationTrace]:
    """Alternating optimization of the message beam and the IRS phases.

    Starts from random phases (or ``cfg.initial_phases``) and an MRT warm
    start toward the IRS, stops when the secrecy rate changes by at most
    ``cfg.epsilon`` or the iteration cap is hit, and returns the best iterate
    seen.  With ``cfg.restarts`` > 1 the whole loop reruns from fresh random
    phases and the best run wins.
    """
    if rng is None:
        rng = np.random.default_rng()
    an_vector = an_beamformer(ch)

    best_sol: BeamformingSolution | None = None
    best_trace: IterationTrace | None = None
    for restart in range(cfg.restarts):
        if cfg.initial_phases is not None and restart == 0:
            phases = np.asarray(cfg.initial_phases, dtype=np.complex128).copy()
        else:
            phases = np.exp(2j * np.pi * rng.uniform(size=ch.irs_elements))
        sol, trace = _max_sr_slnr_once(ch, pw, cfg, an_vector, phases)
        if best_trace is None or trace.best_secrecy_rate > best_trace.best_secrecy_rate:
            best_sol, best_trace = sol, trace
    return best_sol, best_trace


def _max_sr_slnr_once(ch, pw, cfg, an_vector, phases):
    cm_vector = ch.alice_irs_tx.copy()
    trace = IterationTrace()

    def record(cm, ph):
        sr = evaluate(ch, BeamformingSolution(cm, an_vector, ph), pw).secrecy_rate
        trace.secrecy_rates.append(sr)
        return sr

    best_sr = record(cm_vector, phases)
    best = (cm_vector, phases)
    previous = best_sr
    for _ in range(cfg.max_iterations):
        cm_vector = max_sr_cm(ch, phases, an_vector, pw)
        phases = slnr_phase(ch, cm_vector, pw)
        phases = align_phases_to_direct_path(ch, cm_vector, phases)
        current = record(cm_vector, phases)
        trace.iterations += 1
        if current > best_sr:
            best_sr = current
            best = (cm_vector, phases)
        if abs(current - previous) <= cfg.epsilon:
            trace.converged = True
            break
        previous = current
    else:
        trace.hit_max_iterations = True
    return BeamformingSolution(best[0], an_vector, best[1]), trace


def mrt_cm(
    ch: ChannelSet,
    variant: MrtVariant = MrtVariant.toward_ai(),
    cfg_alice: SteeringConfig | None = None,
) -> np.ndarray:
    """Maximum-ratio message beam toward the selected channel direction."""
    if cfg_alice is None:
        cfg_alice = ch.alice_array
    if variant.kind == "toward_ab":
        target = ch.alice_bob
    elif variant.kind == "toward_ai":
        target = ch.alice_irs_tx
    elif variant.kind == "toward_sum":
        target = ch.alice_irs_tx + ch.alice_bob
    else:
        target = steering_vector(variant.angle, cfg_alice)
    norm = np.linalg.norm(target)
    if norm <= NULL_TOL:
        raise ValueError("degenerate MRT direction: summed channels cancel")
    return target / norm


def pa_phase(ch: ChannelSet, cm_vector: np.ndarray) -> np.ndarray:
    """Phase-aligned IRS vector: each element cancels the phase of its
    cascaded-channel coefficient, so the reflected sum at Bob is the sum of
    the coefficient magnitudes (exactly optimal for a single cascaded path).
    Zero coefficients get phase 0 by convention."""
    cm_vector = np.asarray(cm_vector, dtype=np.complex128)
    coeff = _cascade_coefficients(ch, cm_vector, ch.irs_bob)
    phases = np.where(np.abs(coeff) > 0.0, np.exp(-1j * np.angle(coeff)), 1.0 + 0.0j)
    return phases


def mrt_nsp_pa(
    ch: ChannelSet,
    pw: PowerBudget,
    variant: MrtVariant = MrtVariant.toward_ai(),
    cfg_alice: SteeringConfig | None = None,
) -> BeamformingSolution:
    """Closed-form method: MRT message beam, null-space noise beam, aligned
    phases, no iteration.  The final global phase of the IRS vector is set so
    the reflected and direct message components add coherently at Bob."""
    cm_vector = mrt_cm(ch, variant, cfg_alice)
    an_vector = an_beamformer(ch)
    phases = pa_phase(ch, cm_vector)
    phases = align_phases_to_direct_path(ch, cm_vector, phases)
    return BeamformingSolution(cm_vector, an_vector, phases)


def benchmark_phase(kind: str, irs_elements: int, seed: int) -> np.ndarray:
    """Benchmark IRS settings: ``no_irs`` disables reflection (all zeros),
    ``random_phase`` draws i.i.d. uniform phases from a seeded generator."""
    if irs_elements < 1:
        raise ValueError("irs_elements must be >= 1")
    if kind == "no_irs":
        return np.zeros(irs_elements, dtype=np.complex128)
    if kind == "random_phase":
        rng = np.random.default_rng(seed)
        return np.exp(2j * np.pi * rng.uniform(size=irs_elements))
    raise ValueError(f"unknown benchmark kind {kind!r}")


def benchmark_solution(
    ch: ChannelSet, kind: str, seed: int = 0
) -> BeamformingSolution:
    """Benchmarks reuse the closed-form MRT/NSP beams and differ only in the
    IRS phases (disabled or random)."""
    return BeamformingSolution(
        mrt_cm(ch, MrtVariant.toward_ai()),
        an_beamformer(ch),
        benchmark_phase(kind, ch.irs_elements, seed),
    )


def flops_max_sr_slnr(na: int, ns: int, d1: int, d2: int) -> FlopCount:
    """Literal evaluation of the alternating method's complexity polynomial;
    d1 and d2 are the iteration counts of the beam and phase updates."""
    if min(na, ns, d1, d2) < 1:
        raise ValueError("all arguments must be >= 1")
    inner = ns**3 + 7 * ns**2 + 8 * na * ns - 2 * ns - 2 + 2 * na**3 + 4 * na**2
    return FlopCount(d1 * (d2 * inner + 2 * na**2 + na - 1))


def flops_mrt_nsp_pa(na: int, ns: int) -> FlopCount:
    """Literal evaluation of the closed-form method's complexity polynomial."""
    if min(na, ns) < 1:
        raise ValueError("all arguments must be >= 1")
    return FlopCount(2 * ns**2 + 2 * na * ns - 2 * ns + 4 * na + 2 * na**2 - 2)
