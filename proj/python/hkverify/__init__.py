"""Exact verification toolkit for hyperkahler cohomology models."""

from ._hk import (
    HkError,
    Model,
    bb_matrix,
    build_model,
    list_suites,
    load_model,
    run_suite,
    so5_dim,
    structure_dim,
    twistor_admissible,
    twistor_connect,
    __version__,
)

__all__ = [
    "HkError",
    "Model",
    "bb_matrix",
    "build_model",
    "list_suites",
    "load_model",
    "run_suite",
    "so5_dim",
    "structure_dim",
    "twistor_admissible",
    "twistor_connect",
    "__version__",
]
