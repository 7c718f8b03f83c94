"""Dense matrices over exact rationals or binary64, with determinant and solve.

Exact mode uses fraction-free (Bareiss) elimination for determinants and
ordinary Gaussian elimination for solves; both are exact over Fraction.
Float mode uses partial-pivot LU with a configurable singularity tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from .errors import DimensionMismatch, NotSquare, Singular

Scalar = Union[Fraction, float, int]

#: |pivot| <= FLOAT_TOL * max row norm declares a float matrix singular.
FLOAT_TOL = 1e-12


@dataclass
class Matrix:
    """Dense row-major matrix."""

    rows: int
    cols: int
    data: List[List[Scalar]]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        data = [list(r) for r in rows]
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionMismatch("ragged rows")
        return cls(rows=len(data), cols=ncols, data=data)

    @classmethod
    def identity(cls, n: int, exact: bool = True) -> "Matrix":
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        return cls(n, n, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def matvec(self, x: Sequence[Scalar]) -> List[Scalar]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector length {len(x)} != cols {self.cols}")
        return [sum(a * b for a, b in zip(row, x)) for row in self.data]

    def is_exact(self) -> bool:
        return not any(isinstance(v, float) for row in self.data for v in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)


def det(m: Matrix, tol: float = FLOAT_TOL) -> Scalar:
    """Determinant: Bareiss in exact mode, LU pivot product in float mode.

    The empty 0x0 matrix has determinant 1.
    """
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols}")
    if m.rows == 0:
        return Fraction(1) if m.is_exact() else 1.0
    if m.is_exact():
        return _det_bareiss(m)
    return _det_float(m, tol)


def _det_bareiss(m: Matrix) -> Fraction:
    n = m.rows
    a = [[Fraction(v) for v in row] for row in m.data]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _det_float(m: Matrix, tol: float) -> float:
    n = m.rows
    a = [[float(v) for v in row] for row in m.data]
    scale = max(max(abs(v) for v in row) for row in a)
    scale = max(scale, 1.0)
    result = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if abs(a[p][k]) <= tol * scale:
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return result


def solve(m: Matrix, rhs: Sequence[Scalar], tol: float = FLOAT_TOL) -> List[Scalar]:
    """Solve m x = rhs; exact in rational mode.

    Raises Singular (carrying the determinant value) when no unique
    solution exists.
    """
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols}")
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"rhs length {len(rhs)} != {m.rows}")
    n = m.rows
    if n == 0:
        return []
    if m.is_exact():
        a = [[Fraction(v) for v in row] + [Fraction(b)]
             for row, b in zip(m.data, rhs)]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                raise Singular(Fraction(0))
            a[k], a[piv] = a[piv], a[k]
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    f = a[i][k] / a[k][k]
                    for j in range(k, n + 1):
                        a[i][j] -= f * a[k][j]
        x: List[Scalar] = [Fraction(0)] * n
        for k in range(n - 1, -1, -1):
            s = a[k][n] - sum(a[k][j] * x[j] for j in range(k + 1, n))
            x[k] = s / a[k][k]
        return x

    a = [[float(v) for v in row] + [float(b)] for row, b in zip(m.data, rhs)]
    scale = max(max(abs(v) for v in row[:n]) for row in a)
    scale = max(scale, 1.0)
    for k in range(n):
        piv = max(range(k, n), key=lambda i: abs(a[i][k]))
        if abs(a[piv][k]) <= tol * scale:
            raise Singular(_det_float(m, tol))
        a[k], a[piv] = a[piv], a[k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n + 1):
                a[i][j] -= f * a[k][j]
    xs = [0.0] * n
    for k in range(n - 1, -1, -1):
        s = a[k][n] - sum(a[k][j] * xs[j] for j in range(k + 1, n))
        xs[k] = s / a[k][k]
    return xs


def format_scalar(v: Scalar) -> Union[str, float]:
    """Rationals serialize as "p/q" (or "p" when q = 1); floats stay floats."""
    if isinstance(v, float):
        return v
    f = Fraction(v)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Exact parse of "p/q", integer, or decimal strings like "2.2" -> 11/5."""
    return Fraction(str(text))
