"""n-qubit sphere operations and heavy-traffic scaling-limit primitives."""

from ._sphereq import (
    DimensionMismatchError,
    DomainError,
    SingularDenominatorError,
    ZeroVectorError,
    apply_channel,
    channel_gain,
    coeff_map,
    elementwise_combine,
    from_angles,
    geodesic_walk_step,
    ks_critical,
    ks_statistic,
    norm_squared,
    normalize,
    op_combine,
    rbm_samples,
    reindex,
    skorohod_reflect,
    to_angles,
)

__all__ = [
    "DimensionMismatchError",
    "DomainError",
    "SingularDenominatorError",
    "ZeroVectorError",
    "apply_channel",
    "channel_gain",
    "coeff_map",
    "elementwise_combine",
    "from_angles",
    "geodesic_walk_step",
    "ks_critical",
    "ks_statistic",
    "norm_squared",
    "normalize",
    "op_combine",
    "rbm_samples",
    "reindex",
    "skorohod_reflect",
    "to_angles",
]
