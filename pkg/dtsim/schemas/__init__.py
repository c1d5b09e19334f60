# schemas/__init__.py

from dtsim.schemas.common import (
    BootstrapMode,
    ControllerMode,
    Direction,
    Rational,
    StrictModel,
    ValidationReport,
    Violation,
)
from dtsim.schemas.processes import (
    ArrivalEntry,
    ArrivalSpec,
    BernoulliRate,
    ChannelEntry,
    ChannelSpec,
    ClearAllService,
    ConstantArrival,
    ConstantRate,
    ConstantService,
    DiscreteRateDistribution,
    ExplicitTraceArrival,
    PeriodicSequenceArrival,
    PoissonArrival,
    ServiceEntry,
    ServiceSpec,
    UniformIntegerService,
)
from dtsim.schemas.policy import (
    GreedyMatchPolicy,
    JSQPolicy,
    LargestBacklogPolicy,
    LCQPolicy,
    MaxWeightMatchPolicy,
    PolicyPair,
    PolicySpec,
    ThresholdSuspendPolicy,
    policy_for,
    policy_label,
)
from dtsim.schemas.scenario import DelayModel, Horizon, Leg, ScenarioConfig, Topology
from dtsim.schemas.validation import (
    arrival_rate_upper_bound,
    build_scenario,
    parse_scenario,
    validate_config,
)
