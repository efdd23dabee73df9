"""Line-of-sight channel gains and SNR for a single-LED indoor optical downlink.

The transmitter is a ceiling-mounted Lambertian LED pointing straight down;
receivers are upward-facing photodiodes on the floor plane, so the irradiance
and incidence angles coincide. Gains include the photodiode responsivity, so
the electrical SNR is simply P_LED * h^2 / sigma^2.
"""

import math
from dataclasses import dataclass

DEFAULT_NOISE_POWER = 1e-14  # W, combined shot + thermal noise


@dataclass(frozen=True)
class RoomGeometry:
    """Rectangular room; origin at a floor corner, z pointing up."""

    length: float = 6.0  # m, x extent
    width: float = 6.0   # m, y extent
    height: float = 3.0  # m, ceiling z

    def __post_init__(self):
        if min(self.length, self.width, self.height) <= 0.0:
            raise ValueError("room dimensions must be positive")

    def led_position(self) -> tuple[float, float, float]:
        """Ceiling center, where the transmitter is mounted."""
        return (0.5 * self.length, 0.5 * self.width, self.height)

    def contains_floor_point(self, x: float, y: float) -> bool:
        return 0.0 <= x <= self.length and 0.0 <= y <= self.width


@dataclass(frozen=True)
class LedConfig:
    """Transmitter parameters."""

    position: tuple[float, float, float] = (3.0, 3.0, 3.0)  # m
    transmit_power: float = 1.0                   # W, P_LED
    semi_angle: float = math.radians(60.0)        # rad, half-illuminance semi-angle
    dc_offset: float = 0.0                        # W, brightness bias; no rate effect

    def __post_init__(self):
        if self.transmit_power <= 0.0:
            raise ValueError("transmit_power must be positive")
        if not 0.0 < self.semi_angle < 0.5 * math.pi:
            raise ValueError("semi_angle must lie in (0, pi/2)")


@dataclass(frozen=True)
class PhotodiodeConfig:
    """Receiver parameters."""

    active_area: float = 1e-4                     # m^2
    responsivity: float = 0.54                    # A/W
    fov: float = math.radians(60.0)               # rad, field of view
    filter_gain: float = 1.0                      # optical filter, dimensionless
    concentrator_index: float = 1.5               # refractive index of concentrator
    conversion_efficiency: float = 0.44           # stored only; SNR uses P*h^2/sigma^2

    def __post_init__(self):
        if self.active_area <= 0.0:
            raise ValueError("active_area must be positive")
        if self.responsivity <= 0.0:
            raise ValueError("responsivity must be positive")
        if not 0.0 < self.fov <= 0.5 * math.pi:
            raise ValueError("fov must lie in (0, pi/2]")
        if self.filter_gain <= 0.0:
            raise ValueError("filter_gain must be positive")
        if self.concentrator_index < 1.0:
            raise ValueError("concentrator_index must be >= 1")


@dataclass(frozen=True)
class UserPosition:
    """Receiver location on the floor plane (z = 0), photodiode facing up."""

    position: tuple[float, float, float]

    def __post_init__(self):
        if self.position[2] != 0.0:
            raise ValueError("receivers sit on the z = 0 plane")

    @classmethod
    def at(cls, x: float, y: float) -> "UserPosition":
        return cls((x, y, 0.0))


@dataclass(frozen=True)
class LinkBudget:
    """One LED-to-photodiode link."""

    channel_gain: float     # dimensionless, includes responsivity
    distance: float         # m
    irradiance_angle: float  # rad, measured at the LED
    incidence_angle: float   # rad, measured at the photodiode
    noise_power: float      # W

    def __post_init__(self):
        if self.channel_gain < 0.0:
            raise ValueError("channel gain cannot be negative")
        if self.noise_power <= 0.0:
            raise ValueError("noise power must be positive")


def lambertian_order(semi_angle: float) -> float:
    """Radiation-lobe exponent m = -1 / log2(cos(semi_angle)).

    A 60 degree semi-angle gives m = 1 (ideal Lambertian source).
    """
    if not 0.0 < semi_angle < 0.5 * math.pi:
        raise ValueError("semi_angle must lie in (0, pi/2)")
    return -1.0 / math.log2(math.cos(semi_angle))


def concentrator_gain(incidence: float, fov: float, concentrator_index: float) -> float:
    """Non-imaging concentrator gain: kappa^2 / sin^2(FOV) inside the FOV, else 0.

    The FOV-based constant is used rather than dividing by sin(incidence),
    which would diverge at normal incidence.
    """
    if not 0.0 <= incidence <= 0.5 * math.pi:
        raise ValueError("incidence must lie in [0, pi/2]")
    if not 0.0 < fov <= 0.5 * math.pi:
        raise ValueError("fov must lie in (0, pi/2]")
    if concentrator_index < 1.0:
        raise ValueError("concentrator_index must be >= 1")
    if incidence > fov:
        return 0.0
    return concentrator_index**2 / math.sin(fov) ** 2


def los_channel_gain(
    led: LedConfig,
    pd: PhotodiodeConfig,
    user: UserPosition,
    noise_power: float = DEFAULT_NOISE_POWER,
) -> LinkBudget:
    """Line-of-sight gain

        h = (m+1) A R / (2 pi d^2) * cos^m(phi) * T_s * T_f * cos(psi)

    for a downward LED and an upward photodiode (phi = psi). Links outside
    the field of view get h = 0, not an error.
    """
    dx = user.position[0] - led.position[0]
    dy = user.position[1] - led.position[1]
    dz = user.position[2] - led.position[2]
    distance = math.sqrt(dx * dx + dy * dy + dz * dz)
    if distance == 0.0:
        raise ValueError("receiver is collocated with the LED")

    # LED axis points down (-z), photodiode axis up (+z): both cosines equal.
    cos_angle = -dz / distance
    angle = math.acos(max(-1.0, min(1.0, cos_angle)))

    if cos_angle <= 0.0 or angle > pd.fov:
        return LinkBudget(0.0, distance, angle, angle, noise_power)

    m = lambertian_order(led.semi_angle)
    t_f = concentrator_gain(angle, pd.fov, pd.concentrator_index)
    gain = (
        (m + 1.0) * pd.active_area * pd.responsivity / (2.0 * math.pi * distance**2)
        * cos_angle**m * pd.filter_gain * t_f * cos_angle
    )
    return LinkBudget(gain, distance, angle, angle, noise_power)


def snr(link: LinkBudget, p_led: float) -> float:
    """Electrical SNR of the link: P_LED * h^2 / sigma^2 (linear)."""
    return p_led * link.channel_gain**2 / link.noise_power


def snr_db(gamma: float) -> float:
    """Linear SNR in dB; -inf for a dead (zero-gain) link."""
    if gamma <= 0.0:
        return float("-inf")
    return 10.0 * math.log10(gamma)
