"""Biorthogonal bases, pseudo-fermionic ladders and bicoherent states built
from non-commutative bosons."""

from ._core import (
    NCBosonParams,
    NumericalError,
    ParameterError,
    PositivityError,
    action_checks,
    assemble,
    block_checks,
    build_block_system,
    build_family,
    build_fock_rep,
    deformed_number_operators,
    fixture_formulas,
    fock_expand_oracle,
    gauss_legendre,
    global_resolution_check,
    gram_block,
    nogo_joint_kernel,
    overlap,
    paper_fixture,
    realize_basis_cholesky,
    resolution_of_identity,
    run_cli,
    states_at,
    upper_symbol,
    user_basis,
)

__all__ = [
    "NCBosonParams",
    "NumericalError",
    "ParameterError",
    "PositivityError",
    "action_checks",
    "assemble",
    "block_checks",
    "build_block_system",
    "build_family",
    "build_fock_rep",
    "deformed_number_operators",
    "fixture_formulas",
    "fock_expand_oracle",
    "gauss_legendre",
    "global_resolution_check",
    "gram_block",
    "nogo_joint_kernel",
    "overlap",
    "paper_fixture",
    "realize_basis_cholesky",
    "resolution_of_identity",
    "run_cli",
    "states_at",
    "upper_symbol",
    "user_basis",
]
