"""XZZX surface code simulation toolkit (C++ core with python bindings)."""

from ._core import (  # noqa: F401
    PauliOperator,
    StabilizerCode,
    aspect_ratio_optimum,
    bias_to_channel,
    build_code,
    decode,
    fit_threshold,
    hashing_bound,
    hashing_bound_biased,
    logical_class,
    min_logical_weight,
    rare_event_estimate,
    run_batch,
    syndrome,
    verify,
)

__all__ = [
    "PauliOperator",
    "StabilizerCode",
    "aspect_ratio_optimum",
    "bias_to_channel",
    "build_code",
    "decode",
    "fit_threshold",
    "hashing_bound",
    "hashing_bound_biased",
    "logical_class",
    "min_logical_weight",
    "rare_event_estimate",
    "run_batch",
    "syndrome",
    "verify",
]
