"""Config-driven Monte-Carlo sweep runner with deterministic seeding.

A sweep varies exactly one axis (IRS size, SNR, Alice-Bob distance, or the
message-beam angle), runs every configured method at every axis point for a
number of seeded trials, and aggregates mean/std secrecy rate, iteration
counts and FLOP estimates into CSV rows.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from .beamformers import (
    MaxSrSlnrConfig,
    MrtVariant,
    benchmark_solution,
    flops_max_sr_slnr,
    flops_mrt_nsp_pa,
    max_sr_slnr,
    mrt_nsp_pa,
)
from .channel import (
    NetworkGeometry,
    PathLossModel,
    SteeringConfig,
    build_channels,
    reference_geometry,
)
from .metrics import PowerBudget, evaluate, make_power_budget

AXES = ("ns", "snr_db", "d_ab", "theta_cm_deg")
METHOD_NAMES = ("max-sr-slnr", "mrt-nsp-pa", "random-phase", "no-irs")


@dataclass(frozen=True)
class MethodSpec:
    name: str
    label: str
    variant: str = "toward_ai"
    angle_deg: float | None = None
    irs_elements: int | None = None

    def __post_init__(self):
        if self.name not in METHOD_NAMES:
            raise ValueError(f"unknown method {self.name!r}")


@dataclass
class ExperimentConfig:
    geometry: NetworkGeometry
    alice_elements: int
    irs_elements: int
    spacing_over_wavelength: float
    power_dbm: float
    noise_dbm: float
    cm_share: float
    path_loss: PathLossModel
    epsilon: float
    max_iterations: int
    axis: str
    axis_values: list
    trials: int
    master_seed: int
    methods: list

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}, expected one of {AXES}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not self.axis_values:
            raise ValueError("sweep needs at least one axis value")
        if not self.methods:
            raise ValueError("sweep needs at least one method")


@dataclass(frozen=True)
class SweepRow:
    axis: str
    axis_value: float
    method: str
    mean_sr: float
    std_sr: float
    mean_iters: float
    flops: int


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)


def _axis_values(section: dict) -> list:
    if "values" in section:
        return list(section["values"])
    if "range" in section:
        r = section["range"]
        return list(np.linspace(r["start"], r["stop"], int(r["count"])))
    raise ValueError("sweep section needs either 'values' or 'range'")


def _geometry_from(section: dict) -> NetworkGeometry:
    geom = reference_geometry()
    if not section:
        return geom
    kwargs = {}
    for key in ("alice", "irs", "bob", "eve", "irs_axis"):
        if key in section:
            kwargs[key] = np.asarray(section[key], dtype=float)
        elif key != "irs_axis":
            kwargs[key] = getattr(geom, key)
        else:
            kwargs[key] = geom.irs_axis
    for key in ("theta_alice_irs", "theta_alice_bob", "theta_alice_eve"):
        deg_key = key + "_deg"
        if deg_key in section:
            kwargs[key] = math.radians(section[deg_key])
        else:
            kwargs[key] = getattr(geom, key)
    for key in ("theta_irs_arrival", "theta_irs_bob", "theta_irs_eve"):
        deg_key = key + "_deg"
        if deg_key in section:
            kwargs[key] = math.radians(section[deg_key])
    return NetworkGeometry(**kwargs)


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r") as fh:
        raw = yaml.safe_load(fh)
    arrays = raw.get("arrays", {})
    power = raw.get("power", {})
    pl = raw.get("path_loss", {})
    alg = raw.get("algorithm", {})
    sweep = raw["sweep"]
    methods = []
    for entry in raw["methods"]:
        name = entry["name"]
        methods.append(
            MethodSpec(
                name=name,
                label=entry.get("label", name),
                variant=entry.get("variant", "toward_ai"),
                angle_deg=entry.get("angle_deg"),
                irs_elements=entry.get("irs_elements"),
            )
        )
    return ExperimentConfig(
        geometry=_geometry_from(raw.get("geometry", {})),
        alice_elements=int(arrays.get("alice_elements", 16)),
        irs_elements=int(arrays.get("irs_elements", 128)),
        spacing_over_wavelength=float(arrays.get("spacing_over_wavelength", 0.5)),
        power_dbm=float(power.get("transmit_dbm", 30.0)),
        noise_dbm=float(power.get("noise_dbm", -40.0)),
        cm_share=float(power.get("cm_share", 0.8)),
        path_loss=PathLossModel(
            reference_gain=float(pl.get("reference_gain", 1e-2)),
            exponent=float(pl.get("exponent", 2.0)),
        ),
        epsilon=float(alg.get("epsilon", 1e-3)),
        max_iterations=int(alg.get("max_iterations", 100)),
        axis=sweep["axis"],
        axis_values=_axis_values(sweep),
        trials=int(sweep.get("trials", 100)),
        master_seed=int(sweep.get("master_seed", 0)),
        methods=methods,
    )


def _trial_seed_sequence(master_seed, axis_index, method_index, trial_index):
    # Spawn-key seeding: adding a method or axis point never changes the
    # draws of the existing ones.
    return np.random.SeedSequence(
        entropy=master_seed, spawn_key=(axis_index, method_index, trial_index)
    )


def _scenario(cfg: ExperimentConfig, axis_value: float, method: MethodSpec):
    """Channels, power budget and effective method spec for one grid point."""
    geom = cfg.geometry
    irs_elements = method.irs_elements or cfg.irs_elements
    pt_dbm = cfg.power_dbm
    if cfg.axis == "ns":
        if method.irs_elements is not None:
            raise ValueError("per-method IRS size conflicts with an 'ns' sweep axis")
        irs_elements = int(axis_value)
    elif cfg.axis == "snr_db":
        pt_dbm = cfg.noise_dbm + axis_value
    elif cfg.axis == "d_ab":
        direction = geom.bob - geom.alice
        direction = direction / np.linalg.norm(direction)
        geom = replace(geom, bob=geom.alice + axis_value * direction)
    elif cfg.axis == "theta_cm_deg":
        if method.name == "mrt-nsp-pa":
            method = replace(method, variant="toward_angle", angle_deg=axis_value)
    cfg_alice = SteeringConfig(cfg.alice_elements, cfg.spacing_over_wavelength)
    cfg_irs = SteeringConfig(irs_elements, cfg.spacing_over_wavelength)
    channels = build_channels(geom, cfg_alice, cfg_irs, cfg.path_loss)
    budget = make_power_budget(pt_dbm, cfg.cm_share, cfg.noise_dbm)
    return channels, budget, method


def _variant(method: MethodSpec) -> MrtVariant:
    if method.variant == "toward_angle":
        if method.angle_deg is None:
            raise ValueError("toward_angle needs angle_deg")
        return MrtVariant.toward_angle(math.radians(method.angle_deg))
    return MrtVariant(method.variant)


def _run_point(cfg: ExperimentConfig, axis_index: int, axis_value: float,
               method_index: int, method: MethodSpec) -> SweepRow:
    channels, budget, method = _scenario(cfg, axis_value, method)
    deterministic = method.name in ("mrt-nsp-pa", "no-irs")
    trials = 1 if deterministic else cfg.trials
    rates = np.empty(trials)
    iters = np.empty(trials)
    for t in range(trials):
        seq = _trial_seed_sequence(cfg.master_seed, axis_index, method_index, t)
        if method.name == "max-sr-slnr":
            mcfg = MaxSrSlnrConfig(epsilon=cfg.epsilon, max_iterations=cfg.max_iterations)
            sol, trace = max_sr_slnr(channels, budget, mcfg, np.random.default_rng(seq))
            rates[t] = trace.best_secrecy_rate
            iters[t] = trace.iterations
            continue
        if method.name == "mrt-nsp-pa":
            sol = mrt_nsp_pa(channels, budget, _variant(method))
        elif method.name == "random-phase":
            sol = benchmark_solution(channels, "random_phase", int(seq.generate_state(1)[0]))
        else:
            sol = benchmark_solution(channels, "no_irs")
        rates[t] = evaluate(channels, sol, budget).secrecy_rate
        iters[t] = 1
    mean_iters = float(np.mean(iters))
    if method.name == "max-sr-slnr":
        d = max(1, round(mean_iters))
        flops = flops_max_sr_slnr(channels.alice_elements, channels.irs_elements, d, d).total
    elif method.name == "mrt-nsp-pa":
        flops = flops_mrt_nsp_pa(channels.alice_elements, channels.irs_elements).total
    else:
        flops = 0
    return SweepRow(
        axis=cfg.axis,
        axis_value=float(axis_value),
        method=method.label,
        mean_sr=float(np.mean(rates)),
        std_sr=float(np.std(rates)),
        mean_iters=mean_iters,
        flops=flops,
    )


def run_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepResult:
    """Run the full grid; rows come back ordered by (axis value, method)
    regardless of completion order, so results are reproducible."""
    labels = [m.label for m in cfg.methods]
    if len(set(labels)) != len(labels):
        raise ValueError("method labels must be unique")
    points = [
        (ai, av, mi, m)
        for ai, av in enumerate(cfg.axis_values)
        for mi, m in enumerate(cfg.methods)
    ]
    # Validate every grid point up front so errors surface before any work.
    for _, av, _, m in points:
        _scenario(cfg, av, m)
        if m.name == "mrt-nsp-pa" and cfg.axis != "theta_cm_deg":
            _variant(m)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda p: _run_point(cfg, *p), points))
    else:
        rows = [_run_point(cfg, *p) for p in points]
    return SweepResult(rows=rows)


def emit_csv(result: SweepResult, path: str) -> None:
    """Write the sweep rows with >= 12 significant digits per value."""
    lines = ["axis,axis_value,method,mean_sr,std_sr,mean_iters,flops"]
    for row in result.rows:
        lines.append(
            f"{row.axis},{row.axis_value:.15g},{row.method},"
            f"{row.mean_sr:.15g},{row.std_sr:.15g},{row.mean_iters:.15g},{row.flops}"
        )
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def flops_table(na: int, ns_list: list, d1: int, d2: int) -> SweepResult:
    """FLOP counts of both methods over a list of IRS sizes, in the same row
    schema as the sweeps (secrecy columns zeroed)."""
    rows = []
    for ns in ns_list:
        rows.append(SweepRow("ns", float(ns), "max-sr-slnr", 0.0, 0.0, float(d1),
                             flops_max_sr_slnr(na, ns, d1, d2).total))
        rows.append(SweepRow("ns", float(ns), "mrt-nsp-pa", 0.0, 0.0, 1.0,
                             flops_mrt_nsp_pa(na, ns).total))
    return SweepResult(rows=rows)
