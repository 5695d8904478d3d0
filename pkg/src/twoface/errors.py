"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TwoFaceError(Exception):
    """Base class for every error raised by this package."""


class GraphError(TwoFaceError):
    """The graph or its rotation system is unusable."""


class MalformedRotation(GraphError):
    pass


class Disconnected(GraphError):
    pass


class EulerViolation(GraphError):
    """The rotation system does not describe a plane embedding."""


class SelfLoop(GraphError):
    pass


class InstanceError(TwoFaceError):
    """The instance violates one of its invariants."""


class SameFace(InstanceError):
    pass


class NegativeLength(InstanceError):
    def __init__(self, arc: int):
        super().__init__(f"arc {arc} has negative length")
        self.arc = arc


class TerminalNotOnFace(InstanceError):
    def __init__(self, index: int, which: str):
        super().__init__(f"terminal {which}_{index} is not incident with face {which}")
        self.index = index
        self.which = which


class BadFaceDesignator(InstanceError):
    pass


class Infeasible(TwoFaceError):
    """No solution exists. ``reason`` is one of ``Order``, ``MaxFlow``, ``Winding``."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class OrderInfeasible(Infeasible):
    def __init__(self, detail: str = ""):
        super().__init__("Order", detail)


class PotentialViolation(TwoFaceError):
    """A length function is negative on some residual arc."""


class NotDisjoint(TwoFaceError):
    """Projected paths share a vertex. Indicates a solver bug."""


class TooLarge(TwoFaceError):
    """Instance exceeds the brute-force size guard."""


class BadParams(TwoFaceError):
    pass


class FormatError(TwoFaceError):
    """An instance or solution document does not match its schema."""
