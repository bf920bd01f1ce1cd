"""Matrix elements between multi-species boson coherent states."""

from ._core import (
    FormatError,
    Frame,
    FrameError,
    Operator,
    basis_states,
    collect_partitions,
    count_contributing,
    expectation,
    matrix_element,
    me_oracle,
    random_frame,
    run_cli,
    two_species_closed,
    vibron,
)

__all__ = [
    "FormatError",
    "Frame",
    "FrameError",
    "Operator",
    "basis_states",
    "collect_partitions",
    "count_contributing",
    "expectation",
    "matrix_element",
    "me_oracle",
    "random_frame",
    "run_cli",
    "two_species_closed",
    "vibron",
]
