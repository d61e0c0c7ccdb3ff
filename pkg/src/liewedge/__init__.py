"""Exact checks on exterior powers of simple Lie algebras and their parabolic pieces."""

from .chevalley import LieAlgebra, algebra
from .exterior import ExteriorVector, gram, wedge
from .parabolic import build_parabolic, span_V
from .rootsys import RootSystem, build_root_system
from .submodule import Subspace, closure
from .verify import Report, SuiteConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "ExteriorVector",
    "LieAlgebra",
    "Report",
    "RootSystem",
    "Subspace",
    "SuiteConfig",
    "algebra",
    "build_parabolic",
    "build_root_system",
    "closure",
    "gram",
    "run_suite",
    "span_V",
    "wedge",
]
