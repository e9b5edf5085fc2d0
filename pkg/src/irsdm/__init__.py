"""Secrecy-rate beamforming for an IRS-and-UAV-aided directional network.

Two transmit designs are provided: an alternating optimizer that pairs a
max-secrecy-rate message beam with a leakage-ratio IRS phase design, and a
closed-form pipeline of maximum-ratio transmission, null-space-projected
artificial noise and phase alignment.  A config-driven sweep CLI reproduces
the qualitative behaviour of both over IRS size, SNR, geometry and beam
direction.
"""

from .beamformers import (
    FlopCount,
    MaxSrSlnrConfig,
    MrtVariant,
    an_beamformer,
    benchmark_phase,
    benchmark_solution,
    flops_max_sr_slnr,
    flops_mrt_nsp_pa,
    max_sr_cm,
    max_sr_slnr,
    mrt_cm,
    mrt_nsp_pa,
    pa_phase,
    slnr_phase,
)
from .channel import (
    ChannelSet,
    NetworkGeometry,
    PathLossModel,
    SteeringConfig,
    build_channels,
    path_loss,
    reference_geometry,
    steering_vector,
)
from .linalg import dominant_gen_eigvec, null_space_projector
from .metrics import (
    BeamformingSolution,
    PowerBudget,
    SrEvaluation,
    cascaded_power_bob,
    effective_channel,
    evaluate,
    make_power_budget,
    secrecy_rate,
    sinr_bob,
    sinr_eve,
    slnr,
)
from .sweep import ExperimentConfig, MethodSpec, emit_csv, load_config, run_sweep

__version__ = "0.1.0"
