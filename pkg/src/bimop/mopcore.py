"""Polynomials, moment matrices, normality tests and Type I/II solvers.

Bivariate polynomials are dense coefficient sequences indexed by Cantor
position: coeffs[z] multiplies x^t y^s with pair(t, s) = z.  Inner products
are bilinear extensions through moments; quadrature is never used, so
unbounded supports are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import multiindex as mi
from .errors import (
    DimensionMismatch,
    EmptyIndex,
    NotNormal,
    NoWeightEvaluator,
    Singular,
)
from .linalg import Matrix, Scalar, det, format_scalar, solve
from .measures import MeasureSystem, UniMeasureSystem

#: Float-mode normality is indeterminate when |det| / hadamard_bound falls
#: inside this band; below it the index is declared non-normal, above normal.
FLOAT_DET_LOW = 1e-12
FLOAT_DET_HIGH = 1e-6


def _trim(coeffs: List[Scalar]) -> Tuple[Scalar, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class BiPoly:
    """Bivariate polynomial, dense by Cantor position."""

    coeffs: Tuple[Scalar, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Scalar]) -> "BiPoly":
        return cls(_trim(list(coeffs)))

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls(())

    @classmethod
    def one(cls) -> "BiPoly":
        return cls((Fraction(1),))

    @classmethod
    def monomial(cls, t: int, s: int, c: Scalar = Fraction(1)) -> "BiPoly":
        z = mi.pair(t, s)
        return cls.from_coeffs([0] * z + [c])

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs)

    @property
    def top_position(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading monomial")
        return len(self.coeffs) - 1

    @property
    def mdeg(self) -> Tuple[int, int]:
        return mi.unpair(self.top_position)

    @property
    def deg(self) -> int:
        t, s = self.mdeg
        return t + s

    def __getitem__(self, z: int) -> Scalar:
        return self.coeffs[z] if z < len(self.coeffs) else 0

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly.from_coeffs([self[z] + other[z] for z in range(n)])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly.from_coeffs([self[z] - other[z] for z in range(n)])

    def __neg__(self) -> "BiPoly":
        return BiPoly(tuple(-c for c in self.coeffs))

    def scale(self, c: Scalar) -> "BiPoly":
        return BiPoly.from_coeffs([c * v for v in self.coeffs])

    def mul_x(self) -> "BiPoly":
        """Multiply by x: position z = pair(t, s) maps to shift_x(t, s)."""
        return self._shift(mi.shift_x)

    def mul_y(self) -> "BiPoly":
        """Multiply by y: position z = pair(t, s) maps to shift_y(t, s)."""
        return self._shift(mi.shift_y)

    def _shift(self, shift) -> "BiPoly":
        if not self.coeffs:
            return BiPoly.zero()
        top = shift(*mi.unpair(len(self.coeffs) - 1))
        out: List[Scalar] = [0] * (top + 1)
        for z, c in enumerate(self.coeffs):
            if c != 0:
                out[shift(*mi.unpair(z))] = c
        return BiPoly.from_coeffs(out)

    def eval(self, x: Scalar, y: Scalar) -> Scalar:
        total: Scalar = 0
        for z, c in enumerate(self.coeffs):
            if c != 0:
                t, s = mi.unpair(z)
                total += c * x ** t * y ** s
        return total

    def allclose(self, other: "BiPoly", tol: float = 1e-9) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        scale = max([1.0] + [abs(float(self[z])) for z in range(n)])
        return all(abs(float(self[z]) - float(other[z])) <= tol * scale for z in range(n))

    def terms(self) -> List[Tuple[int, int, Scalar]]:
        """Nonzero (t, s, coefficient) triples, descending Cantor position."""
        out = []
        for z in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[z] != 0:
                t, s = mi.unpair(z)
                out.append((t, s, self.coeffs[z]))
        return out

    def pretty(self) -> str:
        """Render as sorted monomial string like "x^2*y - 3/2*x + 1"."""
        if not self.coeffs or self.is_zero():
            return "0"
        parts = []
        for t, s, c in self.terms():
            mono = "*".join(p for p in (_power("x", t), _power("y", s)) if p)
            cstr = str(format_scalar(c if c > 0 else -c))
            if mono and cstr == "1":
                body = mono
            elif mono:
                body = f"{cstr}*{mono}"
            else:
                body = cstr
            parts.append(("- " if c < 0 else "+ ") + body)
        first = parts[0][2:] if parts[0].startswith("+ ") else "-" + parts[0][2:]
        return " ".join([first] + parts[1:])


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients by ascending power."""

    coeffs: Tuple[Scalar, ...]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Scalar]) -> "UniPoly":
        return cls(_trim(list(coeffs)))

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if k < len(self.coeffs) else 0

    @property
    def deg(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def eval(self, x: Scalar) -> Scalar:
        total: Scalar = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total


@dataclass(frozen=True)
class TypeISet:
    """The r Type I polynomials (A_{n,1}, ..., A_{n,r}) of one multi-index."""

    polys: Tuple[BiPoly, ...]


@dataclass
class MomentMatrix:
    """Block matrix M_n with block j holding n_j columns."""

    index: Tuple[int, ...]
    matrix: Matrix
    _det: Optional[Scalar] = None

    @property
    def det(self) -> Scalar:
        if self._det is None:
            self._det = det(self.matrix)
        return self._det


@dataclass(frozen=True)
class Normality:
    """Normality verdict; normal is None when float mode cannot decide."""

    normal: Optional[bool]
    det: Scalar


def moment_matrix(sys: MeasureSystem, n: Sequence[int]) -> MomentMatrix:
    """Assemble M_n: entry (k, l) of block j is m^{(j)}_{unpair(k)+unpair(l)}."""
    if len(n) != sys.r:
        raise DimensionMismatch(f"index length {len(n)} != r = {sys.r}")
    size = sum(n)
    rows = [[sys.zero()] * size for _ in range(size)]
    col = 0
    for j, nj in enumerate(n, start=1):
        for l in range(nj):
            lt, ls = mi.unpair(l)
            for k in range(size):
                kt, ks = mi.unpair(k)
                rows[k][col] = sys.moment(j, kt + lt, ks + ls)
            col += 1
    return MomentMatrix(index=tuple(n), matrix=Matrix.from_rows(rows) if size
                        else Matrix(0, 0, []))


def normality(sys: MeasureSystem, n: Sequence[int]) -> Normality:
    """Normality of n: det(M_n) != 0.

    The 0x0 matrix has det 1, so the zero index is vacuously normal.  In
    float mode the verdict is indeterminate (None) when |det| falls between
    FLOAT_DET_LOW and FLOAT_DET_HIGH times the Hadamard bound of the matrix.
    """
    mm = moment_matrix(sys, n)
    d = det(mm.matrix, tol=sys.tol)
    if sys.exact:
        return Normality(normal=(d != 0), det=d)
    bound = 1.0
    for row in mm.matrix.data:
        bound *= max(1.0, sum(float(v) * float(v) for v in row) ** 0.5)
    if abs(d) <= FLOAT_DET_LOW * bound:
        return Normality(normal=False, det=d)
    if abs(d) < FLOAT_DET_HIGH * bound:
        return Normality(normal=None, det=d)
    return Normality(normal=True, det=d)


def is_normal(sys: MeasureSystem, n: Sequence[int]) -> bool:
    v = normality(sys, n)
    return bool(v.normal)


def type2(sys: MeasureSystem, n: Sequence[int]) -> BiPoly:
    """Monic bivariate Type II polynomial of the multi-index n.

    Solves M_n^t c = -b for the lower coefficients; the leading coefficient
    sits at position |n|.
    """
    key = tuple(n)
    try:
        return sys._type2_cache[key]
    except KeyError:
        pass
    size = sum(n)
    if size == 0:
        poly = BiPoly((sys.one(),))
        sys._type2_cache[key] = poly
        return poly
    mm = moment_matrix(sys, n)
    nt, ns = mi.unpair(size)
    rhs = []
    for j, nj in enumerate(n, start=1):
        for l in range(nj):
            lt, ls = mi.unpair(l)
            rhs.append(-sys.moment(j, nt + lt, ns + ls))
    try:
        c = solve(mm.matrix.transpose(), rhs, tol=sys.tol)
    except Singular as exc:
        raise NotNormal(key, exc.det) from None
    poly = BiPoly(tuple(c) + (sys.one(),))
    sys._type2_cache[key] = poly
    return poly


def type1(sys: MeasureSystem, n: Sequence[int]) -> TypeISet:
    """The r bivariate Type I polynomials of the multi-index n.

    Solves M_n c = (0, ..., 0, 1)^t; block j of the solution holds the
    coefficients of A_{n,j} at positions 0..n_j - 1.  Components with
    n_j = 0 yield the zero polynomial.
    """
    key = tuple(n)
    try:
        return sys._type1_cache[key]
    except KeyError:
        pass
    size = sum(n)
    if size == 0:
        raise EmptyIndex("Type I polynomials are undefined for the zero index")
    mm = moment_matrix(sys, n)
    rhs = [sys.zero()] * (size - 1) + [sys.one()]
    try:
        c = solve(mm.matrix, rhs, tol=sys.tol)
    except Singular as exc:
        raise NotNormal(key, exc.det) from None
    polys = []
    offset = 0
    for nj in n:
        polys.append(BiPoly.from_coeffs(c[offset:offset + nj]))
        offset += nj
    result = TypeISet(polys=tuple(polys))
    sys._type1_cache[key] = result
    return result


def inner(sys: MeasureSystem, j: int, p: BiPoly, q: BiPoly) -> Scalar:
    """Moment-bilinear inner product <p, q>_j (no quadrature)."""
    total = sys.zero()
    for u, cu in enumerate(p.coeffs):
        if cu == 0:
            continue
        ut, us = mi.unpair(u)
        for v, cv in enumerate(q.coeffs):
            if cv == 0:
                continue
            vt, vs = mi.unpair(v)
            total += cu * cv * sys.moment(j, ut + vt, us + vs)
    return total


def type1_pairing(sys: MeasureSystem, p: BiPoly, m: Sequence[int]) -> Scalar:
    """Biorthogonality pairing <p, Q_m> = sum_j <p, A_{m,j}>_j.

    Computed purely from moments; weights are never evaluated.
    """
    aset = type1(sys, m)
    total = sys.zero()
    for j, a in enumerate(aset.polys, start=1):
        total += inner(sys, j, p, a)
    return total


def eval_q(sys: MeasureSystem, aset: TypeISet, x: float, y: float) -> float:
    """Pointwise Type I function value sum_j A_j(x, y) w_j(x, y).

    Requires every measure to carry a weight evaluator; the result is a
    float even for exact systems, since weights are transcendental.
    """
    if any(not m.has_weight for m in sys.measures):
        raise NoWeightEvaluator("every measure needs a pointwise weight")
    total = 0.0
    for measure, a in zip(sys.measures, aset.polys):
        total += float(a.eval(x, y)) * measure.weight(x, y)
    return total


def uni_moment_matrix(sys1d: UniMeasureSystem, n: Sequence[int]) -> Matrix:
    """Univariate block matrix: block j has rows m^{(j)}_{k+l}, k < n_j."""
    if len(n) != sys1d.r:
        raise DimensionMismatch(f"index length {len(n)} != r = {sys1d.r}")
    size = sum(n)
    rows = []
    for j, nj in enumerate(n, start=1):
        for k in range(nj):
            rows.append([sys1d.moment(j, k + l) for l in range(size)])
    return Matrix.from_rows(rows) if size else Matrix(0, 0, [])


def uni_type2(sys1d: UniMeasureSystem, n: Sequence[int]) -> UniPoly:
    """Monic univariate Type II polynomial of degree |n|."""
    key = tuple(n)
    try:
        return sys1d._type2_cache[key]
    except KeyError:
        pass
    size = sum(n)
    one = Fraction(1) if sys1d.exact else 1.0
    if size == 0:
        poly = UniPoly((one,))
        sys1d._type2_cache[key] = poly
        return poly
    m = uni_moment_matrix(sys1d, n)
    rhs = []
    for j, nj in enumerate(n, start=1):
        for k in range(nj):
            rhs.append(-sys1d.moment(j, size + k))
    try:
        c = solve(m, rhs, tol=sys1d.tol)
    except Singular as exc:
        raise NotNormal(key, exc.det) from None
    poly = UniPoly(tuple(c) + (one,))
    sys1d._type2_cache[key] = poly
    return poly


def uni_type1(sys1d: UniMeasureSystem, n: Sequence[int]) -> Tuple[UniPoly, ...]:
    """Univariate Type I polynomials (A_{n,1}, ..., A_{n,r})."""
    key = tuple(n)
    try:
        return sys1d._type1_cache[key]
    except KeyError:
        pass
    size = sum(n)
    if size == 0:
        raise EmptyIndex("Type I polynomials are undefined for the zero index")
    m = uni_moment_matrix(sys1d, n)
    zero = Fraction(0) if sys1d.exact else 0.0
    one = Fraction(1) if sys1d.exact else 1.0
    rhs = [zero] * (size - 1) + [one]
    try:
        c = solve(m.transpose(), rhs, tol=sys1d.tol)
    except Singular as exc:
        raise NotNormal(key, exc.det) from None
    polys = []
    offset = 0
    for nj in n:
        polys.append(UniPoly.from_coeffs(c[offset:offset + nj]))
        offset += nj
    result = tuple(polys)
    sys1d._type1_cache[key] = result
    return result


def uni_normality(sys1d: UniMeasureSystem, n: Sequence[int]) -> Normality:
    d = det(uni_moment_matrix(sys1d, n), tol=sys1d.tol)
    if sys1d.exact:
        return Normality(normal=(d != 0), det=d)
    return Normality(normal=(abs(d) > sys1d.tol), det=d)


def poly_to_json(p: Union[BiPoly, UniPoly]) -> dict:
    """Polynomial JSON form, terms sorted by descending Cantor position."""
    if isinstance(p, UniPoly):
        terms = [{"k": k, "c": format_scalar(c)}
                 for k in range(len(p.coeffs) - 1, -1, -1)
                 if (c := p.coeffs[k]) != 0]
        return {"terms": terms}
    return {"terms": [{"t": t, "s": s, "c": format_scalar(c)} for t, s, c in p.terms()]}
