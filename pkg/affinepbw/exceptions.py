# affinepbw/exceptions.py
"""
Error hierarchy for the engine.

Every error carries a stable ``tag`` so management commands can report a
machine-readable failure without parsing messages.
"""

from __future__ import annotations


class EngineError(ValueError):
    tag = "EngineError"

    def __init__(self, detail: str = "", **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def as_dict(self) -> dict:
        payload = {"error": self.tag, "detail": self.detail}
        if self.context:
            payload["context"] = {key: str(value) for key, value in sorted(self.context.items())}
        return payload


class UnsupportedType(EngineError):
    tag = "UnsupportedType"


class NotRegular(EngineError):
    tag = "NotRegular"


class RootNotInSystem(EngineError):
    tag = "RootNotInSystem"


class SimpleRootNotExtremal(EngineError):
    tag = "SimpleRootNotExtremal"


class NotConvexChain(EngineError):
    tag = "NotConvexChain"


class RootBeyondCutoff(EngineError):
    tag = "RootBeyondCutoff"


class WeightMismatch(EngineError):
    tag = "WeightMismatch"


class ResidueAmbiguity(EngineError):
    tag = "ResidueAmbiguity"


class TriangularityFailure(EngineError):
    tag = "TriangularityFailure"


class EdgeNotRootParallel(EngineError):
    tag = "EdgeNotRootParallel"


class PathAmbiguity(EngineError):
    tag = "PathAmbiguity"


class NotAccessible(EngineError):
    tag = "NotAccessible"


class ParseError(EngineError):
    tag = "ParseError"


class CalibrationFailure(EngineError):
    tag = "CalibrationFailure"


class IndexOutOfRange(EngineError):
    tag = "IndexOutOfRange"
