"""Twisted partial actions of finite groups on finite products of matrix blocks.

The package checks the axioms of such actions, builds crossed products,
corestrictions and globalizations, and compares globalizations.
"""

from .action import (PartialIso, TwistedPartialAction, UnverifiedAction, certify,
                     restrict, verify_axioms)
from .groups import FiniteGroup, build_group, cyclic_group
from .report import Check, Report
from .rings import BlockType, ProductRing, RingElement

__all__ = [
    "BlockType", "Check", "FiniteGroup", "PartialIso", "ProductRing", "Report",
    "RingElement", "TwistedPartialAction", "UnverifiedAction", "build_group",
    "certify", "cyclic_group", "restrict", "verify_axioms",
]

__version__ = "0.1.0"
