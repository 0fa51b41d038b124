"""Run-time knobs shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # Orientation of the level-zero (red) order on alcoves.  "calibrated" is
    # the orientation that reproduces every printed table; "flipped" negates
    # it and exists so the startup self-test can demonstrate the calibration
    # actually pins something down.
    level_zero_orientation: str = "calibrated"
    # Default delta-window for truncated character series: powers q^0..q^window.
    delta_window: int = 6
    # Hard cap on reduced-word length for exhaustive 2^l walk enumeration.
    walk_length_bound: int = 22

    def __post_init__(self):
        if self.level_zero_orientation not in ("calibrated", "flipped"):
            raise ValueError(
                f"level_zero_orientation must be 'calibrated' or 'flipped', "
                f"got {self.level_zero_orientation!r}"
            )
        if self.delta_window < 0:
            raise ValueError("delta_window must be >= 0")
        if self.walk_length_bound < 1:
            raise ValueError("walk_length_bound must be >= 1")


DEFAULT_CONFIG = Config()
