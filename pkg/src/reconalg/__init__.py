"""Type-D reconstruction algebras: construction and exact verification."""

from __future__ import annotations

from .algebra import ReconstructionAlgebra
from .contfrac import CaseTag, GroupParams, classify
from .quiver import Presentation

__version__ = "0.1.0"

__all__ = ["CaseTag", "GroupParams", "Presentation", "ReconstructionAlgebra", "classify", "__version__"]
