"""Exact matrix algebra over nonnegative integer counts extended with INF.

Cells are plain Python integers (unbounded) or the INF sentinel marking node
pairs with no connecting path.  CountMatrix holds arbitrary extended counts;
BinaryMatrix restricts every cell to {0, 1} and converts implicitly toward
counts because it simply is one.  All values are immutable and every
operation is a pure function, so matrices are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InfiniteOperand,
    NegativeResult,
    UndefinedProduct,
)

__all__ = [
    "INF",
    "ExtendedCount",
    "CountMatrix",
    "BinaryMatrix",
    "binarize",
    "hadamard",
    "ew_add",
    "ew_sub",
    "ew_leq",
    "is_zero",
    "mutually_exclusive",
]


class _Unreachable:
    """Sentinel for "no path exists"; orders above every finite count."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INF"

    def __lt__(self, other):
        if other is INF or isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is INF:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is INF:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is INF or isinstance(other, int):
            return True
        return NotImplemented


INF = _Unreachable()

ExtendedCount = int | _Unreachable


@dataclass(frozen=True, eq=False)
class CountMatrix:
    """Square matrix of extended counts; row = source node, column = sink node."""

    cells: tuple[tuple[ExtendedCount, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", rows)
        n = len(rows)
        if n < 1:
            raise ValueError("matrix dimension must be at least 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} cells, expected {n}")
            for j, v in enumerate(row):
                if not self._cell_ok(v):
                    raise ValueError(
                        f"cell ({i}, {j}) = {v!r} is not {self._cell_domain()}"
                    )

    @staticmethod
    def _cell_ok(v) -> bool:
        return v is INF or (type(v) is int and v >= 0)

    @staticmethod
    def _cell_domain() -> str:
        return "a nonnegative integer or INF"

    @property
    def n(self) -> int:
        return len(self.cells)

    def __getitem__(self, key: tuple[int, int]) -> ExtendedCount:
        i, j = key
        return self.cells[i][j]

    def __eq__(self, other):
        # Cell-level equality across CountMatrix and BinaryMatrix.
        if isinstance(other, CountMatrix):
            return self.cells == other.cells
        return NotImplemented

    def __hash__(self):
        return hash(self.cells)

    @classmethod
    def zeros(cls, n: int):
        """All-zero matrix of dimension n."""
        if n < 1:
            raise ValueError("matrix dimension must be at least 1")
        return cls(((0,) * n,) * n)


class BinaryMatrix(CountMatrix):
    """Count matrix whose every cell is 0 or 1."""

    @staticmethod
    def _cell_ok(v) -> bool:
        return type(v) is int and (v == 0 or v == 1)

    @staticmethod
    def _cell_domain() -> str:
        return "0 or 1"


def _same_dimension(x: CountMatrix, y: CountMatrix) -> None:
    if x.n != y.n:
        raise DimensionMismatch(f"{x.n}x{x.n} vs {y.n}x{y.n}")


def binarize(m: CountMatrix) -> BinaryMatrix:
    """1 where the cell is a finite positive count, 0 where it is 0 or INF."""
    return BinaryMatrix(
        tuple(tuple(0 if (v is INF or v == 0) else 1 for v in row) for row in m.cells)
    )


def hadamard(x: CountMatrix, y: CountMatrix) -> CountMatrix:
    """Elementwise product of two matrices of equal dimension.

    INF times a positive count (or INF) stays INF.  INF times 0 has no
    meaningful value and raises UndefinedProduct.  The result is binary
    whenever both operands are binary.
    """
    _same_dimension(x, y)
    rows = []
    for i, (xr, yr) in enumerate(zip(x.cells, y.cells)):
        row = []
        for j, (a, b) in enumerate(zip(xr, yr)):
            if a is INF or b is INF:
                other = b if a is INF else a
                if other == 0:
                    raise UndefinedProduct(f"INF * 0 at cell ({i}, {j})")
                row.append(INF)
            else:
                row.append(a * b)
        rows.append(tuple(row))
    cls = (
        BinaryMatrix
        if isinstance(x, BinaryMatrix) and isinstance(y, BinaryMatrix)
        else CountMatrix
    )
    return cls(tuple(rows))


def ew_add(x: CountMatrix, y: CountMatrix) -> CountMatrix:
    """Elementwise sum; both operands must be finite everywhere."""
    _same_dimension(x, y)
    rows = []
    for i, (xr, yr) in enumerate(zip(x.cells, y.cells)):
        row = []
        for j, (a, b) in enumerate(zip(xr, yr)):
            if a is INF or b is INF:
                raise InfiniteOperand(f"INF operand at cell ({i}, {j})")
            row.append(a + b)
        rows.append(tuple(row))
    return CountMatrix(tuple(rows))


def ew_sub(x: CountMatrix, y: CountMatrix) -> CountMatrix:
    """Elementwise difference x - y.

    Cells where x is INF stay INF (unreachable minus anything finite is
    still unreachable).  A finite cell of x paired with a larger y cell, or
    with an INF y cell, raises NegativeResult; INF - INF raises
    InfiniteOperand.
    """
    _same_dimension(x, y)
    rows = []
    for i, (xr, yr) in enumerate(zip(x.cells, y.cells)):
        row = []
        for j, (a, b) in enumerate(zip(xr, yr)):
            if a is INF:
                if b is INF:
                    raise InfiniteOperand(f"INF - INF at cell ({i}, {j})")
                row.append(INF)
            elif b is INF or b > a:
                raise NegativeResult(f"{a!r} - {b!r} at cell ({i}, {j})")
            else:
                row.append(a - b)
        rows.append(tuple(row))
    return CountMatrix(tuple(rows))


def ew_leq(x: CountMatrix, y: CountMatrix) -> bool:
    """True iff x <= y in every cell, with INF as the maximum value."""
    _same_dimension(x, y)
    for xr, yr in zip(x.cells, y.cells):
        for a, b in zip(xr, yr):
            if not a <= b:
                return False
    return True


def is_zero(x: CountMatrix) -> bool:
    """True iff every cell equals 0 (INF counts as nonzero)."""
    for row in x.cells:
        for v in row:
            if v != 0:
                return False
    return True


def mutually_exclusive(x: CountMatrix, y: CountMatrix) -> bool:
    """True iff the matrices have no co-located nonzero cells.

    INF counts as nonzero.  Whenever hadamard(x, y) is defined, this agrees
    with is_zero(hadamard(x, y)), but it never trips over the INF * 0 case.
    """
    _same_dimension(x, y)
    for xr, yr in zip(x.cells, y.cells):
        for a, b in zip(xr, yr):
            if a != 0 and b != 0:
                return False
    return True
