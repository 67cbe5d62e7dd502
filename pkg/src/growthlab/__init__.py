"""Growing-tree simulator for quantum preferential attachment and constant redirection."""

from .growth import (
    AttachEvent,
    ModelParams,
    grow_step,
    grow_to,
    make_rng,
    redirect_cr,
    redirect_qpa,
    run_replica,
    sample_target,
)
from .tree import GrowingTree, new_seed, path, star

__all__ = [
    "AttachEvent",
    "GrowingTree",
    "ModelParams",
    "grow_step",
    "grow_to",
    "make_rng",
    "new_seed",
    "path",
    "redirect_cr",
    "redirect_qpa",
    "run_replica",
    "sample_target",
    "star",
]
__version__ = "0.1.0"
