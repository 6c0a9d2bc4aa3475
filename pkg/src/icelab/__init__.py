"""Exact computations with τ⁻¹-rigid modules, torsion-free classes and ICE-sequences
over representation-finite bound quiver algebras over F_p."""

from importlib import resources

from .algebra import Algebra, load_algebra, parse_algebra
from .catalog import Catalog, build_catalog
from .errors import (
    AlgebraError,
    AlgebraSyntaxError,
    CapExceeded,
    CertificateError,
    IcelabError,
    ModuleError,
    PreconditionError,
    VerificationError,
)
from .lattice import TorfLattice, enumerate_torf
from .module import Module, Morphism

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path of a bundled example algebra, e.g. ``fixture_path("a2")``."""
    return resources.files("icelab") / "fixtures" / f"{name}.alg"


__all__ = [
    "Algebra",
    "AlgebraError",
    "AlgebraSyntaxError",
    "CapExceeded",
    "Catalog",
    "CertificateError",
    "IcelabError",
    "Module",
    "ModuleError",
    "Morphism",
    "PreconditionError",
    "TorfLattice",
    "VerificationError",
    "build_catalog",
    "enumerate_torf",
    "fixture_path",
    "load_algebra",
    "parse_algebra",
]
