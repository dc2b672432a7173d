"""Exact computations on finite structural causal models."""

from ._core import (
    CapacityError,
    Dag,
    Model,
    PositivityError,
    PreconditionError,
    backdoor_criterion,
    check_backdoor_theorem,
    check_consistency,
    check_ffrcistg,
    check_ffrcistg_preserved,
    check_lemmas,
    counterfactual,
    generate,
    is_d_separated,
    joint,
    load_graph,
    load_model,
    parse_graph,
    parse_model,
    query,
)

__all__ = [
    "CapacityError",
    "Dag",
    "Model",
    "PositivityError",
    "PreconditionError",
    "backdoor_criterion",
    "check_backdoor_theorem",
    "check_consistency",
    "check_ffrcistg",
    "check_ffrcistg_preserved",
    "check_lemmas",
    "counterfactual",
    "generate",
    "is_d_separated",
    "joint",
    "load_graph",
    "load_model",
    "parse_graph",
    "parse_model",
    "query",
]
