"""Deterministic LoS channel construction from network geometry.

All channel vectors are unit-norm uniform-linear-array responses; the
Alice-to-IRS link is the rank-one outer product of the IRS arrival response
and the Alice departure response.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SteeringConfig:
    """Uniform linear array: element count and spacing in wavelengths."""

    element_count: int
    spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        if self.element_count < 1:
            raise ValueError("element_count must be >= 1")
        if self.spacing_over_wavelength <= 0.0:
            raise ValueError("spacing_over_wavelength must be > 0")


@dataclass(frozen=True)
class PathLossModel:
    """Power-law path loss g(d) = reference_gain * d^-exponent (linear units)."""

    reference_gain: float = 1e-2
    exponent: float = 2.0

    def __post_init__(self):
        if self.reference_gain <= 0.0:
            raise ValueError("reference_gain must be > 0")
        if self.exponent < 0.0:
            raise ValueError("exponent must be >= 0")


def steering_vector(theta: float, cfg: SteeringConfig) -> np.ndarray:
    """Unit-norm ULA response toward departure angle ``theta`` (radians).

    Entry n is (1/sqrt(N)) exp(-j 2 pi phi_n) with the symmetric element
    offset phi_n = -(d/lambda) (n - (N+1)/2) cos(theta), n = 1..N.
    """
    if not 0.0 <= theta <= np.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    n = np.arange(1, cfg.element_count + 1)
    phi = -cfg.spacing_over_wavelength * (n - (cfg.element_count + 1) / 2.0) * np.cos(theta)
    return np.exp(-2j * np.pi * phi) / np.sqrt(cfg.element_count)


def path_loss(distance: float, model: PathLossModel) -> float:
    """Linear power gain at ``distance`` meters."""
    if distance <= 0.0:
        raise ValueError(f"distance must be > 0, got {distance}")
    return model.reference_gain * distance ** (-model.exponent)


def _unit(vec: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(vec)
    if nrm == 0.0:
        raise ValueError("coincident positions give an undefined direction")
    return vec / nrm


@dataclass
class NetworkGeometry:
    """Node positions (meters) and the array departure angles (radians).

    Alice-side departure angles are explicit.  The IRS-side angles default to
    None and are then derived from the 3-D coordinates by projecting the
    link direction onto ``irs_axis`` and taking the arccos of the along-axis
    component; set them explicitly to override.
    """

    alice: np.ndarray
    irs: np.ndarray
    bob: np.ndarray
    eve: np.ndarray
    theta_alice_irs: float
    theta_alice_bob: float
    theta_alice_eve: float
    theta_irs_arrival: float | None = None
    theta_irs_bob: float | None = None
    theta_irs_eve: float | None = None
    irs_axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0, 0.0]))

    def __post_init__(self):
        for name in ("alice", "irs", "bob", "eve", "irs_axis"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=float))
        self.irs_axis = _unit(self.irs_axis)
        for name in ("theta_alice_irs", "theta_alice_bob", "theta_alice_eve"):
            ang = getattr(self, name)
            if not 0.0 <= ang <= np.pi:
                raise ValueError(f"{name} must lie in [0, pi], got {ang}")

    def distance(self, a: np.ndarray, b: np.ndarray) -> float:
        d = float(np.linalg.norm(a - b))
        if d <= 0.0:
            raise ValueError("distinct nodes required, got zero distance")
        return d

    def _irs_angle_to(self, target: np.ndarray) -> float:
        direction = _unit(target - self.irs)
        return float(np.arccos(np.clip(direction @ self.irs_axis, -1.0, 1.0)))

    @property
    def irs_arrival_angle(self) -> float:
        if self.theta_irs_arrival is not None:
            return self.theta_irs_arrival
        return self._irs_angle_to(self.alice)

    @property
    def irs_bob_angle(self) -> float:
        if self.theta_irs_bob is not None:
            return self.theta_irs_bob
        return self._irs_angle_to(self.bob)

    @property
    def irs_eve_angle(self) -> float:
        if self.theta_irs_eve is not None:
            return self.theta_irs_eve
        return self._irs_angle_to(self.eve)


def reference_geometry() -> NetworkGeometry:
    """Default simulation scenario: Alice at the origin, IRS hovering on a
    UAV at 3.5 m between Alice and Bob, Eve off to the side beyond Bob."""
    return NetworkGeometry(
        alice=np.array([0.0, 0.0, 0.0]),
        irs=np.array([0.0, 39.9, 3.5]),
        bob=np.array([0.0, 90.0, 0.0]),
        eve=np.array([0.0, 96.6, 29.4]),
        theta_alice_irs=17.0 * np.pi / 36.0,
        theta_alice_bob=np.pi / 2.0,
        theta_alice_eve=7.0 * np.pi / 12.0,
    )


@dataclass
class ChannelSet:
    """All LoS channels plus the linear path-loss gains of the network.

    Vectors are unit norm; ``alice_irs`` is rank one with unit Frobenius
    norm.  ``gain_cascade_bob`` / ``gain_cascade_eve`` are the products of
    the two hop gains of the reflected path.
    """

    alice_bob: np.ndarray
    alice_eve: np.ndarray
    alice_irs: np.ndarray
    irs_bob: np.ndarray
    irs_eve: np.ndarray
    alice_irs_tx: np.ndarray
    irs_arrival: np.ndarray
    gain_bob: float
    gain_eve: float
    gain_alice_irs: float
    gain_irs_bob: float
    gain_irs_eve: float
    alice_array: SteeringConfig
    irs_array: SteeringConfig
    theta_alice_irs: float
    theta_alice_bob: float

    @property
    def gain_cascade_bob(self) -> float:
        return self.gain_alice_irs * self.gain_irs_bob

    @property
    def gain_cascade_eve(self) -> float:
        return self.gain_alice_irs * self.gain_irs_eve

    @property
    def alice_elements(self) -> int:
        return self.alice_array.element_count

    @property
    def irs_elements(self) -> int:
        return self.irs_array.element_count


def build_channels(
    geom: NetworkGeometry,
    cfg_alice: SteeringConfig,
    cfg_irs: SteeringConfig,
    model: PathLossModel,
    irs_aperture_scaling: bool = True,
) -> ChannelSet:
    """Assemble the full channel set for one network snapshot.

    With ``irs_aperture_scaling`` each IRS-side hop gain carries an extra
    factor of the element count: the unit-norm channel convention divides
    every reflected entry by sqrt(N_s) twice, so without this factor the
    reflected power of a physical surface (which grows with its aperture)
    would be independent of the surface size.
    """
    aperture = float(cfg_irs.element_count) if irs_aperture_scaling else 1.0
    arrival = steering_vector(geom.irs_arrival_angle, cfg_irs)
    departure = steering_vector(geom.theta_alice_irs, cfg_alice)
    return ChannelSet(
        alice_bob=steering_vector(geom.theta_alice_bob, cfg_alice),
        alice_eve=steering_vector(geom.theta_alice_eve, cfg_alice),
        alice_irs=np.outer(arrival, departure.conj()),
        irs_bob=steering_vector(geom.irs_bob_angle, cfg_irs),
        irs_eve=steering_vector(geom.irs_eve_angle, cfg_irs),
        alice_irs_tx=departure,
        irs_arrival=arrival,
        gain_bob=path_loss(geom.distance(geom.alice, geom.bob), model),
        gain_eve=path_loss(geom.distance(geom.alice, geom.eve), model),
        gain_alice_irs=aperture * path_loss(geom.distance(geom.alice, geom.irs), model),
        gain_irs_bob=aperture * path_loss(geom.distance(geom.irs, geom.bob), model),
        gain_irs_eve=aperture * path_loss(geom.distance(geom.irs, geom.eve), model),
        alice_array=cfg_alice,
        irs_array=cfg_irs,
        theta_alice_irs=geom.theta_alice_irs,
        theta_alice_bob=geom.theta_alice_bob,
    )
