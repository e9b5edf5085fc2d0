"""Independent brute-force verifiers: slow, simple, and sharing no code with
the modules they check.  Used by the property tests and never by the sweeps.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelSet
from .metrics import BeamformingSolution, PowerBudget

GRID_GUARD = 10**8


@dataclass(frozen=True)
class GridSpec:
    points_per_dimension: int
    dimensions: int

    def __post_init__(self):
        if self.points_per_dimension < 1 or self.dimensions < 1:
            raise ValueError("grid sizes must be >= 1")
        if self.points_per_dimension**self.dimensions > GRID_GUARD:
            raise ValueError("grid larger than the 1e8 evaluation guard")


def grid_max_cascaded_power(
    ch: ChannelSet,
    cm_vector,
    pw: PowerBudget,
    grid: GridSpec,
) -> tuple[np.ndarray, float]:
    """Exhaustive search of the reflected message power at Bob over a phase
    grid; returns the best phase vector and its power."""
    if grid.dimensions != ch.irs_elements or grid.dimensions > 3:
        raise ValueError("grid dimensions must equal the IRS size and be <= 3")
    cm = [complex(v) for v in np.asarray(cm_vector).ravel()]
    # Per-element cascaded coefficient, written out longhand.
    coeff = []
    for m in range(ch.irs_elements):
        forwarded = sum(complex(ch.alice_irs[m, k]) * cm[k] for k in range(len(cm)))
        coeff.append(complex(ch.irs_bob[m]).conjugate() * forwarded)
    weight = pw.cm_share * pw.transmit_power * ch.gain_alice_irs * ch.gain_irs_bob
    angles = [2.0 * math.pi * i / grid.points_per_dimension
              for i in range(grid.points_per_dimension)]
    best_power = -1.0
    best_phases = None
    for combo in itertools.product(angles, repeat=grid.dimensions):
        total = sum(cmath.exp(1j * a) * c for a, c in zip(combo, coeff))
        power = weight * abs(total) ** 2
        if power > best_power:
            best_power = power
            best_phases = combo
    theta = np.array([cmath.exp(1j * a) for a in best_phases])
    return theta, best_power


def sample_max_quotient(a, b, samples: int, seed: int) -> float:
    """Best generalized Rayleigh quotient over seeded random unit vectors."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    best = -math.inf
    chunk = 20000
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        x = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        num = np.einsum("ij,jk,ik->i", x.conj(), a, x).real
        den = np.einsum("ij,jk,ik->i", x.conj(), b, x).real
        best = max(best, float(np.max(num / den)))
        remaining -= m
    return best


def scalar_sinr(
    ch: ChannelSet, sol: BeamformingSolution, pw: PowerBudget, target: str
) -> float:
    """Receive SINR re-derived with scalar loops only: the row channel
    (direct plus reflected) is expanded entry by entry and applied to both
    beams, with no shared code with the metrics module."""
    if target == "bob":
        direct = ch.alice_bob
        via_irs = ch.irs_bob
        g_direct = ch.gain_bob
        g_cascade = ch.gain_alice_irs * ch.gain_irs_bob
        noise = pw.noise_bob
    elif target == "eve":
        direct = ch.alice_eve
        via_irs = ch.irs_eve
        g_direct = ch.gain_eve
        g_cascade = ch.gain_alice_irs * ch.gain_irs_eve
        noise = pw.noise_eve
    else:
        raise ValueError(f"unknown target {target!r}")

    na = ch.alice_elements
    ns = ch.irs_elements
    # Row vector r_k = sqrt(g_d) conj(direct_k) + sqrt(g_c) sum_m conj(via_m) theta_m H_mk
    row = []
    for k in range(na):
        reflected = 0j
        for m in range(ns):
            reflected += (
                complex(via_irs[m]).conjugate()
                * complex(sol.irs_phases[m])
                * complex(ch.alice_irs[m, k])
            )
        row.append(
            math.sqrt(g_direct) * complex(direct[k]).conjugate()
            + math.sqrt(g_cascade) * reflected
        )
    cm_amp = sum(r * complex(sol.cm_vector[k]) for k, r in enumerate(row))
    an_amp = sum(r * complex(sol.an_vector[k]) for k, r in enumerate(row))
    signal = pw.cm_share * pw.transmit_power * abs(cm_amp) ** 2
    interference = pw.an_share * pw.transmit_power * abs(an_amp) ** 2
    return signal / (interference + noise)
