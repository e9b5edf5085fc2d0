"""SINR, rate, secrecy-rate, SLNR and received-power evaluation.

Conventions: the IRS phase vector stores theta_m = exp(j phi_m) directly,
the reflection matrix is diag(theta), and the composite receive channel of
a user is

    h_eff = sqrt(share * g_direct) * h_direct
          + sqrt(share * g_cascade) * H_ai^H diag(theta)^H h_irs_user

so that |h_eff^H v|^2 is the received power of the beam ``v``.
All powers are linear watts; dBm conversion happens at the config boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet

UNIT_TOL = 1e-10


@dataclass(frozen=True)
class PowerBudget:
    """Transmit power split between message and artificial noise, plus
    receiver noise powers.  Everything in linear units."""

    transmit_power: float
    cm_share: float
    an_share: float
    noise_bob: float
    noise_eve: float

    def __post_init__(self):
        if abs(self.cm_share + self.an_share - 1.0) > 1e-12:
            raise ValueError("cm_share + an_share must equal 1")
        for name in ("transmit_power", "cm_share", "an_share", "noise_bob", "noise_eve"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def make_power_budget(pt_dbm: float, cm_share: float, noise_dbm: float) -> PowerBudget:
    return PowerBudget(
        transmit_power=dbm_to_watts(pt_dbm),
        cm_share=cm_share,
        an_share=1.0 - cm_share,
        noise_bob=dbm_to_watts(noise_dbm),
        noise_eve=dbm_to_watts(noise_dbm),
    )


@dataclass
class BeamformingSolution:
    """Message beam, noise beam (both unit norm) and IRS phase vector.

    Phase entries are unit modulus; all-zero phases encode a disabled IRS.
    """

    cm_vector: np.ndarray
    an_vector: np.ndarray
    irs_phases: np.ndarray

    def __post_init__(self):
        self.cm_vector = np.asarray(self.cm_vector, dtype=np.complex128)
        self.an_vector = np.asarray(self.an_vector, dtype=np.complex128)
        self.irs_phases = np.asarray(self.irs_phases, dtype=np.complex128)
        for name in ("cm_vector", "an_vector"):
            if abs(np.linalg.norm(getattr(self, name)) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} must have unit norm")
        mags = np.abs(self.irs_phases)
        if not (np.all(np.abs(mags - 1.0) <= UNIT_TOL) or np.all(mags <= UNIT_TOL)):
            raise ValueError("irs_phases must be all unit modulus or all zero")


@dataclass(frozen=True)
class SrEvaluation:
    sinr_bob: float
    sinr_eve: float
    rate_bob: float
    rate_eve: float
    secrecy_rate: float


def effective_channel(
    direct: np.ndarray,
    cascade_rx: np.ndarray,
    phases: np.ndarray,
    alice_irs: np.ndarray,
    gain_direct: float,
    gain_cascade: float,
    power_share: float,
) -> np.ndarray:
    """Composite transmit-side channel of one receiver, with power weights."""
    direct = np.asarray(direct, dtype=np.complex128)
    cascade_rx = np.asarray(cascade_rx, dtype=np.complex128)
    phases = np.asarray(phases, dtype=np.complex128)
    alice_irs = np.asarray(alice_irs, dtype=np.complex128)
    if alice_irs.shape != (cascade_rx.size, direct.size):
        raise ValueError(
            f"alice_irs shape {alice_irs.shape} does not match "
            f"cascade length {cascade_rx.size} x direct length {direct.size}"
        )
    if phases.size != cascade_rx.size:
        raise ValueError("phase vector length must match the IRS-side channel")
    reflected = alice_irs.conj().T @ (phases.conj() * cascade_rx)
    return math.sqrt(power_share * gain_direct) * direct + math.sqrt(
        power_share * gain_cascade
    ) * reflected


def _bob_channels(ch: ChannelSet, phases: np.ndarray, pw: PowerBudget):
    cm = effective_channel(
        ch.alice_bob, ch.irs_bob, phases, ch.alice_irs,
        ch.gain_bob, ch.gain_cascade_bob, pw.cm_share * pw.transmit_power,
    )
    an = effective_channel(
        ch.alice_bob, ch.irs_bob, phases, ch.alice_irs,
        ch.gain_bob, ch.gain_cascade_bob, pw.an_share * pw.transmit_power,
    )
    return cm, an


def _eve_channels(ch: ChannelSet, phases: np.ndarray, pw: PowerBudget):
    cm = effective_channel(
        ch.alice_eve, ch.irs_eve, phases, ch.alice_irs,
        ch.gain_eve, ch.gain_cascade_eve, pw.cm_share * pw.transmit_power,
    )
    an = effective_channel(
        ch.alice_eve, ch.irs_eve, phases, ch.alice_irs,
        ch.gain_eve, ch.gain_cascade_eve, pw.an_share * pw.transmit_power,
    )
    return cm, an


def sinr_bob(ch: ChannelSet, sol: BeamformingSolution, pw: PowerBudget) -> float:
    cm, an = _bob_channels(ch, sol.irs_phases, pw)
    signal = abs(np.vdot(cm, sol.cm_vector)) ** 2
    interference = abs(np.vdot(an, sol.an_vector)) ** 2
    return signal / (interference + pw.noise_bob)


def sinr_eve(ch: ChannelSet, sol: BeamformingSolution, pw: PowerBudget) -> float:
    cm, an = _eve_channels(ch, sol.irs_phases, pw)
    signal = abs(np.vdot(cm, sol.cm_vector)) ** 2
    interference = abs(np.vdot(an, sol.an_vector)) ** 2
    return signal / (interference + pw.noise_eve)


def secrecy_rate(gamma_bob: float, gamma_eve: float) -> SrEvaluation:
    """Per-user rates and the clamped secrecy rate, in bits/s/Hz."""
    if gamma_bob < 0.0 or gamma_eve < 0.0:
        raise ValueError("SINR values must be nonnegative")
    rate_bob = math.log2(1.0 + gamma_bob)
    rate_eve = math.log2(1.0 + gamma_eve)
    return SrEvaluation(
        sinr_bob=gamma_bob,
        sinr_eve=gamma_eve,
        rate_bob=rate_bob,
        rate_eve=rate_eve,
        secrecy_rate=max(0.0, rate_bob - rate_eve),
    )


def evaluate(ch: ChannelSet, sol: BeamformingSolution, pw: PowerBudget) -> SrEvaluation:
    return secrecy_rate(sinr_bob(ch, sol, pw), sinr_eve(ch, sol, pw))


def _cascade_coefficients(ch: ChannelSet, cm_vector: np.ndarray, rx: np.ndarray) -> np.ndarray:
    # Scalar reflected sum is sum_m theta_m * coeff_m with these coefficients.
    return rx.conj() * (ch.alice_irs @ cm_vector)


def slnr(ch: ChannelSet, cm_vector: np.ndarray, phases: np.ndarray, pw: PowerBudget) -> float:
    """Ratio of the reflected message power reaching Bob to the reflected
    power leaking to Eve plus the Eve-side noise floor (normalized channels,
    no path-loss weights)."""
    cm_vector = np.asarray(cm_vector, dtype=np.complex128)
    phases = np.asarray(phases, dtype=np.complex128)
    to_bob = np.sum(phases * _cascade_coefficients(ch, cm_vector, ch.irs_bob))
    to_eve = np.sum(phases * _cascade_coefficients(ch, cm_vector, ch.irs_eve))
    return abs(to_bob) ** 2 / (abs(to_eve) ** 2 + pw.noise_eve)


def slnr_quadratic_forms(ch: ChannelSet, cm_vector: np.ndarray, pw: PowerBudget):
    """The Hermitian pair (A, B) with SLNR(theta) = theta^H A theta / theta^H B theta
    for ||theta||^2 = N_s; B carries the noise as (noise/N_s) I."""
    cm_vector = np.asarray(cm_vector, dtype=np.complex128)
    n = ch.irs_elements
    e_bob = _cascade_coefficients(ch, cm_vector, ch.irs_bob).conj()
    e_eve = _cascade_coefficients(ch, cm_vector, ch.irs_eve).conj()
    a = np.outer(e_bob, e_bob.conj())
    b = np.outer(e_eve, e_eve.conj()) + (pw.noise_eve / n) * np.eye(n)
    return a, b


def cascaded_power_bob(
    ch: ChannelSet, cm_vector: np.ndarray, phases: np.ndarray, pw: PowerBudget
) -> float:
    """Message power received at Bob via the reflected path only."""
    cm_vector = np.asarray(cm_vector, dtype=np.complex128)
    phases = np.asarray(phases, dtype=np.complex128)
    reflected = np.sum(phases * _cascade_coefficients(ch, cm_vector, ch.irs_bob))
    return pw.cm_share * pw.transmit_power * ch.gain_cascade_bob * abs(reflected) ** 2
