"""Sturmian quasiperiodic waveguides: generator words, transfer matrices, band spectra."""

from ._sturmian import (
    ModelSpec,
    Rational,
    best_rational_approx,
    branch_values,
    bulk_spectrum,
    continued_fraction,
    convergents,
    cutting_sequence,
    half_trace,
    load_model_config,
    parameter_sum,
    passbands,
    rod_half_trace_closed,
    rod_surrogate_Z,
    selfsim,
    to_rational,
    word,
    word_from_terms,
)

__all__ = [
    "ModelSpec",
    "Rational",
    "best_rational_approx",
    "branch_values",
    "bulk_spectrum",
    "continued_fraction",
    "convergents",
    "cutting_sequence",
    "half_trace",
    "load_model_config",
    "parameter_sum",
    "passbands",
    "rod_half_trace_closed",
    "rod_surrogate_Z",
    "selfsim",
    "to_rational",
    "word",
    "word_from_terms",
]
