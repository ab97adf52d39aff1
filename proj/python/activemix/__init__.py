"""Controllable-interaction active-matter mixing: environment, rewards and
update-matrix spectral analysis, backed by the C++ core."""

from ._activemix import (  # noqa: F401
    ConfigError,
    EnvOptions,
    EpisodeFinished,
    InteractionSet,
    InvalidAction,
    InvalidPolicy,
    MixingEnv,
    NumericalError,
    SimParams,
    combined_reward,
    decode_action,
    encode_action,
    gershgorin_bounds,
    homogeneity_reward,
    log_determinant,
    minimum_image_displacement,
    mixing_reward,
    pair_coefficient,
    policy_action,
    symmetric_eigenvalues,
)

__version__ = "0.1.0"
