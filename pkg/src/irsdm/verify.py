"""Self-contained oracle-backed verification suite behind the `verify` CLI.

Each check cross-validates a fast implementation against an independent
brute-force oracle on seeded random instances and prints one line per check.
"""

from __future__ import annotations

import numpy as np

from . import oracle
from .beamformers import (
    MaxSrSlnrConfig,
    an_beamformer,
    max_sr_slnr,
    mrt_cm,
    mrt_nsp_pa,
    pa_phase,
)
from .channel import PathLossModel, SteeringConfig, build_channels, reference_geometry
from .linalg import dominant_gen_eigvec, null_space_projector, rayleigh_quotient
from .metrics import evaluate, make_power_budget, sinr_bob, sinr_eve


def _random_hermitian_pair(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = m @ m.conj().T
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    b = m @ m.conj().T + n * np.eye(n)
    return a, b


def _random_channels(rng, na=4, ns=4):
    geom = reference_geometry()
    geom.theta_alice_irs = rng.uniform(0.2, np.pi - 0.2)
    geom.theta_alice_bob = rng.uniform(0.2, np.pi - 0.2)
    geom.theta_alice_eve = rng.uniform(0.2, np.pi - 0.2)
    return build_channels(
        geom, SteeringConfig(na), SteeringConfig(ns), PathLossModel()
    )


def check_projector(rng) -> bool:
    ok = True
    for _ in range(20):
        r, n = int(rng.integers(1, 4)), int(rng.integers(4, 9))
        p = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
        t = null_space_projector(p)
        ok &= np.linalg.norm(t @ p.conj().T) <= 1e-10
        ok &= np.linalg.norm(t @ t - t) <= 1e-10
        ok &= np.linalg.norm(t - t.conj().T) <= 1e-10
    return bool(ok)


def check_gen_eigvec(rng, samples=100_000, instances=20) -> bool:
    ok = True
    for _ in range(instances):
        n = int(rng.integers(2, 9))
        a, b = _random_hermitian_pair(rng, n)
        x = dominant_gen_eigvec(a, b)
        achieved = rayleigh_quotient(a, b, x)
        sampled = oracle.sample_max_quotient(a, b, samples, int(rng.integers(2**31)))
        ok &= sampled <= achieved + 1e-12 * abs(achieved)
    return bool(ok)


def check_pa_grid(rng) -> bool:
    pw = make_power_budget(30.0, 0.8, -40.0)
    ok = True
    for _ in range(3):
        ch = _random_channels(rng, na=3, ns=2)
        cm = mrt_cm(ch)
        pa_power = None
        theta = pa_phase(ch, cm)
        from .metrics import cascaded_power_bob

        pa_power = cascaded_power_bob(ch, cm, theta, pw)
        _, grid_power = oracle.grid_max_cascaded_power(
            ch, cm, pw, oracle.GridSpec(points_per_dimension=360, dimensions=2)
        )
        ok &= grid_power <= pa_power * (1.0 + 1e-9)
    return bool(ok)


def check_scalar_sinr(rng) -> bool:
    pw = make_power_budget(30.0, 0.8, -40.0)
    ok = True
    for _ in range(10):
        ch = _random_channels(rng)
        sol = mrt_nsp_pa(ch, pw)
        for target, fast in (("bob", sinr_bob), ("eve", sinr_eve)):
            slow = oracle.scalar_sinr(ch, sol, pw, target)
            ok &= abs(fast(ch, sol, pw) - slow) <= 1e-10 * max(slow, 1e-30)
    return bool(ok)


def check_nsp_nulling(rng) -> bool:
    ok = True
    for _ in range(10):
        ch = _random_channels(rng, na=8, ns=4)
        v = an_beamformer(ch)
        ok &= abs(np.vdot(ch.alice_bob, v)) <= 1e-10
        ok &= np.linalg.norm(ch.alice_irs @ v) <= 1e-10
    return bool(ok)


def check_keep_best(rng) -> bool:
    ch = build_channels(
        reference_geometry(), SteeringConfig(16), SteeringConfig(64), PathLossModel()
    )
    pw = make_power_budget(30.0, 0.8, -40.0)
    ok = True
    for _ in range(5):
        _, trace = max_sr_slnr(ch, pw, MaxSrSlnrConfig(), np.random.default_rng(rng.integers(2**31)))
        ok &= abs(trace.best_secrecy_rate - max(trace.secrecy_rates)) <= 1e-15
        ok &= trace.best_secrecy_rate >= trace.secrecy_rates[0]
    return bool(ok)


CHECKS = (
    ("null-space projector properties", check_projector),
    ("generalized eigenvector beats random sampling", check_gen_eigvec),
    ("phase alignment beats exhaustive grid", check_pa_grid),
    ("metrics agree with scalar re-derivation", check_scalar_sinr),
    ("noise beam nulls Bob and IRS channels", check_nsp_nulling),
    ("alternating loop keep-best contract", check_keep_best),
)


def run_all(seed: int = 12345) -> bool:
    rng = np.random.default_rng(seed)
    all_ok = True
    for name, fn in CHECKS:
        ok = fn(rng)
        all_ok &= ok
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return bool(all_ok)
