"""Explicit finite-dimensional representations of the two-parameter quantum superalgebra U_{p,q}[gl(2/1)]."""

from .atypical import (
    Classification,
    Kind,
    classify,
    invariant_subspace,
    quotient_closed_form,
    quotient_representation,
)
from .basis import (
    GZPattern,
    ModuleBasis,
    Signature,
    enumerate_block,
    highest_weight_pattern,
    index_of,
    local_signatures,
    module_basis,
)
from .qnum import Params, bracket, r_commutator, ratio_pow
from .rep import (
    GENERATORS,
    LValues,
    ReprMatrices,
    basis_transform,
    build_representation,
    composite_odd,
    even_action,
    induced_representation,
    l_values,
    lowering_chain,
    odd_action_E23,
    odd_action_E32,
)
from .verify import VerificationReport, check_classical_limit, check_cyclicity, verify

__all__ = [
    "Classification",
    "GENERATORS",
    "GZPattern",
    "Kind",
    "LValues",
    "ModuleBasis",
    "Params",
    "ReprMatrices",
    "Signature",
    "VerificationReport",
    "basis_transform",
    "bracket",
    "build_representation",
    "check_classical_limit",
    "check_cyclicity",
    "classify",
    "composite_odd",
    "enumerate_block",
    "even_action",
    "highest_weight_pattern",
    "index_of",
    "induced_representation",
    "invariant_subspace",
    "l_values",
    "local_signatures",
    "lowering_chain",
    "module_basis",
    "odd_action_E23",
    "odd_action_E32",
    "quotient_closed_form",
    "quotient_representation",
    "r_commutator",
    "ratio_pow",
    "verify",
]
