"""Experiment configuration: flat key/value files over simulation defaults.

The file format is one `key = value` assignment per line, `#` comments, and
nothing else. Keys mirror the standard simulation-parameter names; unknown
keys are rejected so a typo in a physical constant cannot silently fall back
to a default.
"""

import math
from dataclasses import dataclass, field, fields

from .channel import LedConfig, PhotodiodeConfig, RoomGeometry


class ConfigError(ValueError):
    """Bad key, bad value, or unreadable config file."""


DEFAULT_POWER_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)  # W

# Six-receiver cluster with deliberately similar gains (corner-origin frame).
DEFAULT_FIXED_POSITIONS = (
    (2.5, 5.5, 0.0),
    (4.0, 0.0, 0.0),
    (5.0, 1.0, 0.0),
    (5.0, 5.5, 0.0),
    (5.0, 6.0, 0.0),
    (6.0, 1.0, 0.0),
)


@dataclass
class ExperimentConfig:
    """Physical parameters plus run controls; defaults reproduce the desk-scale
    experiments."""

    room_length: float = 6.0          # m
    room_width: float = 6.0           # m
    room_height: float = 3.0          # m
    led_power: float = 1.0            # W
    semi_angle_deg: float = 60.0      # LED semi-angle at half illuminance
    dc_offset: float = 0.0            # W, brightness bias (no rate effect)
    conversion_efficiency: float = 0.44  # stored only, excluded from SNR
    pd_area: float = 1e-4             # m^2
    pd_responsivity: float = 0.54     # A/W
    fov_deg: float = 60.0             # photodiode field of view
    filter_gain: float = 1.0
    refractive_index: float = 1.5     # concentrator
    noise_power: float = 1e-14        # W

    trials: int = 10000               # Monte Carlo drops per sweep point
    seed: int = 1
    snr_db_min: float = 0.0           # region-map grid, weak-user SNR in dB
    snr_db_max: float = 60.0
    snr_db_step: float = 1.0
    users_min: int = 2                # user-count sweep grid
    users_max: int = 10
    power_grid: tuple[float, ...] = DEFAULT_POWER_GRID
    fixed_positions: tuple[tuple[float, float, float], ...] = DEFAULT_FIXED_POSITIONS

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.snr_db_step <= 0.0 or self.snr_db_max < self.snr_db_min:
            raise ConfigError("SNR grid must be non-empty and ascending")
        if not 1 <= self.users_min <= self.users_max:
            raise ConfigError("user-count grid must satisfy 1 <= min <= max")
        if not self.power_grid or list(self.power_grid) != sorted(self.power_grid):
            raise ConfigError("power_grid must be non-empty and sorted")
        room = self.room()
        for pos in self.fixed_positions:
            if not room.contains_floor_point(pos[0], pos[1]):
                raise ConfigError(f"fixed position {pos} lies outside the room")

    def room(self) -> RoomGeometry:
        return RoomGeometry(self.room_length, self.room_width, self.room_height)

    def led(self) -> LedConfig:
        return LedConfig(
            position=self.room().led_position(),
            transmit_power=self.led_power,
            semi_angle=math.radians(self.semi_angle_deg),
            dc_offset=self.dc_offset,
        )

    def photodiode(self) -> PhotodiodeConfig:
        return PhotodiodeConfig(
            active_area=self.pd_area,
            responsivity=self.pd_responsivity,
            fov=math.radians(self.fov_deg),
            filter_gain=self.filter_gain,
            concentrator_index=self.refractive_index,
            conversion_efficiency=self.conversion_efficiency,
        )

    def snr_db_grid(self) -> tuple[float, ...]:
        out = []
        value = self.snr_db_min
        while value <= self.snr_db_max + 1e-9:
            out.append(round(value, 9))
            value += self.snr_db_step
        return tuple(out)

    def user_counts(self) -> tuple[int, ...]:
        return tuple(range(self.users_min, self.users_max + 1))


def _parse_float(raw: str) -> float:
    return float(raw)


def _parse_int(raw: str) -> int:
    return int(raw, 10)


def _parse_float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


def _parse_positions(raw: str) -> tuple[tuple[float, float, float], ...]:
    """Semicolon-separated x,y,z triplets: '2.5,5.5,0; 4,0,0'."""
    out = []
    for group in raw.split(";"):
        if not group.strip():
            continue
        parts = [float(tok) for tok in group.split(",")]
        if len(parts) != 3:
            raise ValueError(f"position needs 3 coordinates, got {group!r}")
        out.append(tuple(parts))
    return tuple(out)


_PARSERS = {
    "power_grid": _parse_float_list,
    "fixed_positions": _parse_positions,
    "trials": _parse_int,
    "seed": _parse_int,
    "users_min": _parse_int,
    "users_max": _parse_int,
}
_SCALAR_KEYS = {
    f.name for f in fields(ExperimentConfig) if f.name not in _PARSERS
}


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse `key = value` lines into a config; unknown keys are errors."""
    overrides: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key in overrides:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        parser = _PARSERS.get(key, _parse_float if key in _SCALAR_KEYS else None)
        if parser is None:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            overrides[key] = parser(raw)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    try:
        return ExperimentConfig(**overrides)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())
