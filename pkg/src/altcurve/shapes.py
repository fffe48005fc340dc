"""Shape classes shared by the analytic classifier and the numeric oracle."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ShapeKind(str, Enum):
    CONVEX = "Convex"
    SINGLE_INFLECTION = "SingleInflection"
    DOUBLE_INFLECTION = "DoubleInflection"
    CUSP = "Cusp"
    LOOP = "Loop"
    QUADRATIC = "Quadratic"
    ENDPOINT_DEGENERATE = "EndpointDegenerate"
    COLLINEAR = "Collinear"

    @property
    def code(self) -> int:
        return _CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "ShapeKind":
        return LEGEND[int(code)]


# Fixed legend for raster grids and CSV export: code -> kind.
LEGEND: tuple[ShapeKind, ...] = tuple(ShapeKind)
_CODES = {kind: i for i, kind in enumerate(LEGEND)}


@dataclass(frozen=True)
class ShapeClass:
    """A shape kind plus its feature locations.

    ``u`` and ``t`` are paired element-wise (``t = 1 / (1 + u)``).  For
    inflections ``u`` is ascending; for a loop it holds ``(u_p, u_q)`` with
    ``u_p < u_q``.  ``endpoint`` is ``"start"``, ``"end"`` or ``"both"`` for
    :attr:`ShapeKind.ENDPOINT_DEGENERATE`.
    """

    kind: ShapeKind
    u: tuple[float, ...] = ()
    t: tuple[float, ...] = ()
    endpoint: str | None = None

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def code(self) -> int:
        return self.kind.code

    @property
    def inflection_count(self) -> int:
        if self.kind is ShapeKind.SINGLE_INFLECTION:
            return 1
        if self.kind is ShapeKind.DOUBLE_INFLECTION:
            return 2
        return 0

    def __str__(self) -> str:
        return self.name
