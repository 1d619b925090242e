"""Continuous-variable entanglement-assisted codes: construction, decoding,
linear-optical compilation and Gaussian simulation."""

from ._core import (
    Code,
    DecodeError,
    DimensionError,
    Error,
    GaussianState,
    NotSymplecticError,
    ParseError,
    VerificationError,
    apply_circuit,
    build_code,
    circuit_action,
    code_from_json,
    compile_encoder,
    condition_on,
    decompose,
    displace,
    encoder_action,
    phase_gate_protocol,
    run_ec_experiment,
    selftest,
    symplectic_gram_schmidt,
    symplectic_product,
    tensor,
)

__all__ = [
    "Code",
    "DecodeError",
    "DimensionError",
    "Error",
    "GaussianState",
    "NotSymplecticError",
    "ParseError",
    "VerificationError",
    "apply_circuit",
    "build_code",
    "circuit_action",
    "code_from_json",
    "compile_encoder",
    "condition_on",
    "decompose",
    "displace",
    "encoder_action",
    "phase_gate_protocol",
    "run_ec_experiment",
    "selftest",
    "symplectic_gram_schmidt",
    "symplectic_product",
    "tensor",
]
