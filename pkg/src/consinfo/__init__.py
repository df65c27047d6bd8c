"""Consistent information for coder/channel/decoder systems.

Quantifies how much of the mutual information between sent and decoded
referents actually preserves the signal/referent pairing, provides a
certified channel-capacity solver, structural classification of system
configurations, and a seeded evolutionary simulator of code emergence.
"""

from .capacity import CapacityResult, ChainCheck, channel_capacity, verify_chain
from .casestudy import (
    binary_symmetric_channel,
    fully_consistent_system,
    noisy_channel_system,
    referential_loss_system,
    run_case_study,
)
from .core import (
    Agent,
    CommSystem,
    DimensionMismatch,
    Direction,
    Distribution,
    JointMatrix,
    Label,
    NegativeEntry,
    NonStochastic,
    Role,
    StochasticMatrix,
    SumNotOne,
    ValidationError,
    ZeroWorldEvent,
    check_world_coverage,
    compose_end_to_end,
    decoded_distribution,
    has_world_coverage,
    joint_matrix,
    make_agent,
    received_signal_distribution,
    signal_distribution,
    system_end_to_end,
    validate_distribution,
)
from .evolve import (
    EvolutionConfig,
    FitnessKind,
    Population,
    PopulationTooSmall,
    Trajectory,
    agent_fitness,
    clonal_population,
    evolve,
    mutate,
    random_agent,
    random_population,
    random_stochastic_matrix,
)
from .measures import (
    Conditioning,
    InfoReport,
    SymmetricReport,
    conditional_entropy,
    consistent_information,
    directed_report,
    dissipation,
    entropy,
    joint_entropy,
    mutual_information,
    payoff_fraction,
    referential_parameter,
    report_from_joint,
    symmetric_report,
)
from .structure import Classification, Kind, check_full_consistency, classify, is_permutation

__version__ = "0.1.0"
