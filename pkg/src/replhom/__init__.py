"""Exact homological algebra for m-replicated path algebras."""

from .quiver import (Quiver, ReplicationSpec, LVertex, QuiverError, CycleFound,
                     Disconnected, validate_hereditary, grothendieck_rank,
                     replicated_vertex_set, load_quiver, quiver_from_dict,
                     dynkin_type)
from .linalg import QMatrix, NoSolution
from .errors import (ZeroModule, NotSupported, ProjectiveInput, InjectiveInput,
                     IndexOutOfRange, TheoremViolation, ClosureIncomplete,
                     WindowViolation, NoComplementFound, NotInDomain)
from . import arquiver, cluster, layered, linalg, quiver, repa, tilting

__all__ = [
    "Quiver", "ReplicationSpec", "LVertex", "QuiverError", "CycleFound",
    "Disconnected", "validate_hereditary", "grothendieck_rank",
    "replicated_vertex_set", "load_quiver", "quiver_from_dict", "dynkin_type",
    "QMatrix", "NoSolution",
    "ZeroModule", "NotSupported", "ProjectiveInput", "InjectiveInput",
    "IndexOutOfRange", "TheoremViolation", "ClosureIncomplete",
    "WindowViolation", "NoComplementFound", "NotInDomain",
]

__version__ = "0.1.0"
