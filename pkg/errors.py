#!/usr/bin/env python3
"""
Error types for the perforated surfaces toolkit

Every domain failure raised by the toolkit derives from ToolkitError so the
command runner can map it onto an exit status.
"""

from typing import Optional, Tuple
from fractions import Fraction


class ToolkitError(Exception):
    """Base class for all toolkit failures"""


class UsageError(ToolkitError):
    """A command was invoked with arguments that cannot be dispatched"""


class ConfigError(ToolkitError):
    """Settings could not be loaded or failed validation"""

    def __init__(self, message: str, key: Optional[str] = None) -> None:
        super().__init__(message if key is None else f"{key}: {message}")
        self.key = key


class OrdinalError(ToolkitError, ArithmeticError):
    """Ordinal arithmetic outside the supported operations"""


class ParseError(ToolkitError):
    """Syntax error in expression or ordinal text"""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExpressionError(ToolkitError):
    """An end-space expression violates a structural or label invariant"""

    def __init__(self, message: str, path: str = "root") -> None:
        super().__init__(f"{message} (at {path})")
        self.path = path


class DescriptorError(ToolkitError):
    """A surface descriptor is not admissible"""

    def __init__(self, message: str, rule: str) -> None:
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class GeometryError(ToolkitError):
    """Degenerate or inadmissible planar input"""


class LatticeHitError(GeometryError):
    """A path meets a point with both coordinates rational"""

    def __init__(self, message: str, witness: Tuple[Fraction, Fraction]) -> None:
        super().__init__(f"{message}: hits ({witness[0]}, {witness[1]})")
        self.witness = witness


class FractalError(ToolkitError):
    """Invalid fractal point or operation"""


class CoverError(ToolkitError):
    """Group specification or covering graph failure"""
