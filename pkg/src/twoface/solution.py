from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"

TWO_FACE = "two-face"
FIXED_WINDING = "fixed-winding"


@dataclass
class Solution:
    """Paths in the input graph, one per terminal pair, in the caller's order.

    ``paths[i]`` is a list of arc ids from ``s_i`` to ``t_{pairing[i]}``. The
    pairing is the identity except for fixed-winding solves whose winding is
    not congruent to the one the pairs require.
    """

    status: str = OPTIMAL
    reason: str | None = None
    paths: list[list[int]] = field(default_factory=list)
    total_length: int = 0
    pairing: list[int] = field(default_factory=list)
    mode: str = TWO_FACE
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status == OPTIMAL

    @classmethod
    def infeasible(cls, reason: str, **metadata: Any) -> Solution:
        return cls(status=INFEASIBLE, reason=reason, metadata=dict(metadata))
