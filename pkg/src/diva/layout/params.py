"""Layout configuration and state containers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidParameter


@dataclass(frozen=True)
class LayoutParams:
    """Force-simulation tuning knobs.

    Defaults reproduce the reference browser implementation: weak many-body
    repulsion, springs at rest length 30, gentle pull toward the origin,
    Barnes-Hut opening angle 0.9, geometric alpha cooling.
    """

    link_distance: float = 30.0
    charge_strength: float = -30.0
    centering_strength: float = 0.1
    theta: float = 0.9
    max_ticks: int = 300
    alpha_decay: float = 0.0228
    alpha_min: float = 0.001
    velocity_decay: float = 0.6
    # Reserved for optional position jitter; the default pipeline is
    # fully deterministic and never draws from it.
    rng_seed: int = 0

    def validate(self) -> None:
        if self.link_distance <= 0:
            raise InvalidParameter("linkDistance must be > 0", field="linkDistance")
        if self.centering_strength < 0 or self.centering_strength > 1:
            raise InvalidParameter(
                "centeringStrength must lie in [0, 1]", field="centeringStrength"
            )
        # theta = 0 degrades Barnes-Hut to exact pairwise evaluation; still valid.
        if self.theta < 0 or self.theta > 1:
            raise InvalidParameter("theta must lie in [0, 1]", field="theta")
        if self.max_ticks < 1:
            raise InvalidParameter("maxTicks must be >= 1", field="maxTicks")
        if not (0 < self.alpha_decay < 1):
            raise InvalidParameter("alphaDecay must lie in (0, 1)", field="alphaDecay")
        if not (0 < self.alpha_min < 1):
            raise InvalidParameter("alphaMin must lie in (0, 1)", field="alphaMin")
        if not (0 <= self.velocity_decay <= 1):
            raise InvalidParameter(
                "velocityDecay must lie in [0, 1]", field="velocityDecay"
            )
        if not isinstance(self.rng_seed, int) or isinstance(self.rng_seed, bool):
            raise InvalidParameter("rngSeed must be an integer", field="rngSeed")

    def to_dict(self) -> dict:
        return {
            "linkDistance": self.link_distance,
            "chargeStrength": self.charge_strength,
            "centeringStrength": self.centering_strength,
            "theta": self.theta,
            "maxTicks": self.max_ticks,
            "alphaDecay": self.alpha_decay,
            "alphaMin": self.alpha_min,
            "velocityDecay": self.velocity_decay,
            "rngSeed": self.rng_seed,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "LayoutParams":
        mapping = {
            "linkDistance": "link_distance",
            "chargeStrength": "charge_strength",
            "centeringStrength": "centering_strength",
            "theta": "theta",
            "maxTicks": "max_ticks",
            "alphaDecay": "alpha_decay",
            "alphaMin": "alpha_min",
            "velocityDecay": "velocity_decay",
            "rngSeed": "rng_seed",
        }
        kwargs = {}
        for key, value in doc.items():
            if key not in mapping:
                raise InvalidParameter(f"unknown layout parameter {key!r}", field=key)
            kwargs[mapping[key]] = value
        params = cls(**kwargs)
        params.validate()
        return params


@dataclass
class LayoutState:
    """Positions plus the cooling state needed to resume or inspect a run."""

    positions: np.ndarray  # (n, 2) float64
    alpha: float
    iterations_run: int
    converged: bool = False
    params: LayoutParams = field(default_factory=LayoutParams)

    @property
    def n_nodes(self) -> int:
        return int(self.positions.shape[0])
