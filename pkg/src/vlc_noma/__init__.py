"""NOMA-vs-TDMA pairing decisions for indoor visible light downlinks.

Submodules: channel (LoS gains and SNR), rates (pair rates and the decision
gap), region (beneficial-ratio interval solver and oracle), scheduler
(pairing plans and evaluation), config/experiments/cli (reproducible studies).
"""

from .channel import (
    DEFAULT_NOISE_POWER,
    LedConfig,
    LinkBudget,
    PhotodiodeConfig,
    RoomGeometry,
    UserPosition,
    concentrator_gain,
    lambertian_order,
    los_channel_gain,
    snr,
    snr_db,
)
from .config import ConfigError, ExperimentConfig, load_config, parse_config_text
from .rates import (
    CAPACITY_SNR_FACTOR,
    PairState,
    PowerAllocation,
    QuarticCoefficients,
    ftpa_allocation,
    noma_pair_rate,
    quartic_coefficients,
    rate_gap,
    rate_gap_derivative,
    rate_gap_derivative_variant,
    tdma_pair_rate,
)
from .region import (
    InfeasibleSeedError,
    NomaRegion,
    OracleMismatchError,
    RegionCache,
    RegionSolverError,
    ScaSettings,
    ScaTrace,
    feasibility_scan,
    oracle_region,
    region_for_snr,
    sca_solve,
    write_trace_csv,
)
from .scheduler import (
    PairingPlan,
    ScheduleGroup,
    ScheduleOutcome,
    UserChannel,
    UserChannelSet,
    adaptive_pairing,
    evaluate_schedule,
    forced_pairing,
    tdma_plan,
)

__version__ = "0.1.0"
