"""Complete minimal surfaces from Weierstrass data: a genus-one family on the
square torus, a genus-k family on ``w^(k+1) = z^k (z^2 - 1)``, their meshes
and numerical verification."""

from .errors import (
    BranchCutViolation,
    DomainViolation,
    MinsurfError,
    NonConvergent,
    PoleProximity,
    SeamMismatch,
    SingularityOnPath,
)
from .genus1 import Branch, Genus1Params
from .genusk import GenusKParams
from .path_integrate import Quadrature
from .surface import LimitParams, TriangleMesh

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BranchCutViolation",
    "DomainViolation",
    "Genus1Params",
    "GenusKParams",
    "LimitParams",
    "MinsurfError",
    "NonConvergent",
    "PoleProximity",
    "Quadrature",
    "SeamMismatch",
    "SingularityOnPath",
    "TriangleMesh",
]
