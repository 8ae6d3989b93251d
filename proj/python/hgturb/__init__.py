"""Joint Hermite-Gaussian mode detection probabilities of SPDC photon pairs
after propagation through weak atmospheric turbulence."""

from ._core import (
    DerivedConstants,
    DomainError,
    Error,
    NumericalError,
    OpticalConfig,
    cn2_from_rytov,
    default_mode_ordering,
    derive_constants,
    gamma_half,
    hyp2f1_real,
    hyp2f1_terminating,
    joint_probability,
    modes_up_to_order,
    pi_factor,
    pochhammer,
    probability_matrix,
    rytov_variance,
    selection_rule_allowed,
    sweep,
    turbulence_strength,
    vacuum_probability_oracle,
    validate,
)

__all__ = [
    "DerivedConstants",
    "DomainError",
    "Error",
    "NumericalError",
    "OpticalConfig",
    "cn2_from_rytov",
    "default_mode_ordering",
    "derive_constants",
    "gamma_half",
    "hyp2f1_real",
    "hyp2f1_terminating",
    "joint_probability",
    "modes_up_to_order",
    "pi_factor",
    "pochhammer",
    "probability_matrix",
    "rytov_variance",
    "selection_rule_allowed",
    "sweep",
    "turbulence_strength",
    "vacuum_probability_oracle",
    "validate",
]
