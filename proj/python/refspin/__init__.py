"""Refined spin-model invariants of symmetric diagrams."""

from ._refspin import (
    Diagram,
    Method,
    RefinedSpinModel,
    RefspinError,
    SpinModel,
    TaitGraph,
    acceptance,
    connected_sum,
    diagram_invariant,
    fixture,
    fixture_names,
    invariant,
    model,
    parse_smg,
    parse_sud,
    partition_function,
    random_equivalent,
    refine,
    spin_model,
    tait_graph,
)

__all__ = [
    "Diagram",
    "Method",
    "RefinedSpinModel",
    "RefspinError",
    "SpinModel",
    "TaitGraph",
    "acceptance",
    "connected_sum",
    "diagram_invariant",
    "fixture",
    "fixture_names",
    "invariant",
    "model",
    "parse_smg",
    "parse_sud",
    "partition_function",
    "random_equivalent",
    "refine",
    "spin_model",
    "tait_graph",
]
