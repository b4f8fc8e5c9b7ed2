"""Desirability-based uncertainty over finite possibility spaces.

Exact-rational models of sets of desirable gambles: coherence and
natural-extension queries on finitely generated cones, exchangeability
through count-vector representations, observational updating, and
extendability decisions through Bernstein polynomials.

The headline API is re-exported here.  Event-conditioned membership for
plain cones lives at desir.cones.updated_member; the JSON formats are
in desir.io and the command-line front end in desir.cli.
"""

from .bernstein import (
    DEFAULT_CAP,
    BernsteinCone,
    BernsteinPoly,
    ConeVerdict,
    ExpansionVerdict,
    FrequencyVector,
    InfiniteExtensionDecision,
    MemberVerdict,
    avoids_bernstein_nonpositivity,
    bern_multiply,
    bernstein_eval,
    bernstein_natex_member,
    coeff_range,
    degree_raise,
    extend_infinite,
    family_member,
    from_count_gamble,
    from_sequence_gamble,
    has_nonpositive_expansion,
    has_positive_expansion,
    multinomial_lpr,
    updated_frequency_member,
)
from .cones import (
    AvoidanceReport,
    DesirCone,
    IncoherentConeError,
    MemberReport,
    NonPositivityWitness,
    PrevisionValue,
    avoids_nonpositivity,
    is_marginally_desirable,
    lower_prevision,
    membership_report,
    natural_extension_member,
    upper_prevision,
)
from .exchangeability import (
    ExchangeableModel,
    ExtensionDecision,
    LikelihoodWeights,
    enl,
    exchangeable_extension,
    extend_finite,
    likelihood_weights,
    sample_conditioned_gamble,
    update_count_gamble,
    updated_member,
    updated_sample_member,
)
from .gambles import (
    CountSpace,
    Gamble,
    Permutation,
    SequenceSpace,
    atom_members,
    atom_size,
    count_compositions,
    count_representation,
    count_vector,
    cylindrical_extend,
    hypgeo_expectation,
    kernel_basis,
    lift_count_gamble,
    permute_gamble,
    project_ex,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CAP",
    "AvoidanceReport",
    "BernsteinCone",
    "BernsteinPoly",
    "ConeVerdict",
    "CountSpace",
    "DesirCone",
    "ExchangeableModel",
    "ExpansionVerdict",
    "ExtensionDecision",
    "FrequencyVector",
    "Gamble",
    "IncoherentConeError",
    "InfiniteExtensionDecision",
    "LikelihoodWeights",
    "MemberReport",
    "MemberVerdict",
    "NonPositivityWitness",
    "Permutation",
    "PrevisionValue",
    "SequenceSpace",
    "atom_members",
    "atom_size",
    "avoids_bernstein_nonpositivity",
    "avoids_nonpositivity",
    "bern_multiply",
    "bernstein_eval",
    "bernstein_natex_member",
    "coeff_range",
    "count_compositions",
    "count_representation",
    "count_vector",
    "cylindrical_extend",
    "degree_raise",
    "enl",
    "exchangeable_extension",
    "extend_finite",
    "extend_infinite",
    "family_member",
    "from_count_gamble",
    "from_sequence_gamble",
    "has_nonpositive_expansion",
    "has_positive_expansion",
    "hypgeo_expectation",
    "is_marginally_desirable",
    "kernel_basis",
    "lift_count_gamble",
    "likelihood_weights",
    "lower_prevision",
    "membership_report",
    "multinomial_lpr",
    "natural_extension_member",
    "permute_gamble",
    "project_ex",
    "sample_conditioned_gamble",
    "update_count_gamble",
    "updated_frequency_member",
    "updated_member",
    "updated_sample_member",
    "upper_prevision",
]
