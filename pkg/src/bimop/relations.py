"""Structural theorems as executable checks: biorthogonality, polynomial
vectors, and the nearest-neighbour recurrences.

Recurrences are verified, never used as constructors: every polynomial on a
path is solved from its moment matrix, the recurrence coefficients are
computed as biorthogonality pairings, and the residual of the claimed
identity is compared to zero coefficientwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import multiindex as mi
from .errors import ChainInvalid, EmptyIndex, IndexTooSmall, PathInvalid
from .linalg import Matrix, Scalar, format_scalar
from .measures import MeasureSystem
from .mopcore import BiPoly, inner, type1, type1_pairing, type2

#: Residual tolerance for float-mode verdicts, relative to the largest
#: coefficient involved.
FLOAT_RESIDUAL_TOL = 1e-9


def _is_zero(sys: MeasureSystem, value, scale=1, tol: float = FLOAT_RESIDUAL_TOL) -> bool:
    if sys.exact:
        return value == 0
    return abs(float(value)) <= tol * max(1.0, abs(float(scale)))


def _poly_zero(sys: MeasureSystem, p: BiPoly, scale=1, tol: float = FLOAT_RESIDUAL_TOL) -> bool:
    return all(_is_zero(sys, c, scale, tol) for c in p.coeffs)


@dataclass(frozen=True)
class BiorthResult:
    """One pairing <P_n, Q_m> with the branch of the biorthogonality law."""

    value: Scalar
    expected: Optional[int]
    label: str

    @property
    def matches(self) -> Optional[bool]:
        if self.expected is None:
            return None
        return self.value == self.expected


def biorth(sys: MeasureSystem, n: Sequence[int], m: Sequence[int]) -> BiorthResult:
    """Pairing <P_n, Q_m> plus the predicted case of the biorthogonality law."""
    n, m = tuple(n), tuple(m)
    value = type1_pairing(sys, type2(sys, n), m)
    if mi.leq(m, n):
        return BiorthResult(value, 0, "m<=n")
    if sum(n) <= sum(m) - 2:
        return BiorthResult(value, 0, "|n|<=|m|-2")
    if sum(n) == sum(m) - 1:
        return BiorthResult(value, 1, "|n|=|m|-1")
    return BiorthResult(value, None, "unconstrained")


@dataclass(frozen=True)
class BiorthMatrixResult:
    matrix: Matrix
    case: str
    matches: Optional[bool]


def biorth_matrix(sys: MeasureSystem,
                  chain_n: Sequence[Sequence[int]],
                  chain_m: Sequence[Sequence[int]]) -> BiorthMatrixResult:
    """The (d+1) x (h+1) pairing matrix of two chains with its pattern verdict."""
    chain_n = [tuple(c) for c in chain_n]
    chain_m = [tuple(c) for c in chain_m]
    d, h = len(chain_n) - 1, len(chain_m) - 1
    if not mi.validate_chain(chain_n, d):
        raise ChainInvalid(f"first chain is not a valid degree-{d} chain")
    if not mi.validate_chain(chain_m, h):
        raise ChainInvalid(f"second chain is not a valid degree-{h} chain")
    data = [[type1_pairing(sys, type2(sys, n), m) for m in chain_m] for n in chain_n]
    b = Matrix.from_rows(data)

    expected = None
    if mi.leq(chain_m[-1], chain_n[0]):
        case = "zero (m_h <= n_0)"
        expected = [[0] * (h + 1) for _ in range(d + 1)]
    elif chain_m == chain_n:
        case = "shifted identity"
        expected = [[1 if i == k + 1 else 0 for i in range(d + 1)] for k in range(d + 1)]
    elif h == d + 1:
        case = "unit bottom-left"
        expected = [[1 if (k, i) == (d, 0) else 0 for i in range(h + 1)] for k in range(d + 1)]
    elif h >= d + 2:
        case = "zero (h >= d+2)"
        expected = [[0] * (h + 1) for _ in range(d + 1)]
    else:
        case = "unconstrained"

    matches = None
    if expected is not None:
        matches = all(_is_zero(sys, data[k][i] - expected[k][i])
                      for k in range(d + 1) for i in range(h + 1))
    return BiorthMatrixResult(matrix=b, case=case, matches=matches)


@dataclass(frozen=True)
class MOPV:
    """Type II polynomial vector of one total degree with its index chain."""

    degree: int
    chain: Tuple[Tuple[int, ...], ...]
    polys: Tuple[BiPoly, ...]
    pattern_ok: bool

    def g_matrix(self, k: int) -> Matrix:
        """Coefficient matrix on the monomials of total degree k."""
        base = k * (k + 1) // 2
        return Matrix.from_rows([[p[base + m] for m in range(k + 1)] for p in self.polys])


@dataclass(frozen=True)
class TypeIMOPV:
    """Per-measure stacks of Type I polynomials along one index chain."""

    degree: int
    chain: Tuple[Tuple[int, ...], ...]
    rows: Tuple[Tuple[BiPoly, ...], ...]  # rows[j-1][k] = A_{n_k, j}
    pattern_ok: bool


def assemble_type2_vector(sys: MeasureSystem, chain: Sequence[Sequence[int]]) -> MOPV:
    """Solve the chain's Type II polynomials and verify the Gram pattern.

    Row k of the Gram matrix against the ordered monomials must open with
    n_{k,j} zeros for measure j.
    """
    chain = [tuple(c) for c in chain]
    d = len(chain) - 1
    if not mi.validate_chain(chain, d):
        raise ChainInvalid(f"not a valid degree-{d} chain")
    polys = tuple(type2(sys, n) for n in chain)
    ok = True
    for n, p in zip(chain, polys):
        for j, nj in enumerate(n, start=1):
            for l in range(nj):
                if not _is_zero(sys, inner(sys, j, p, BiPoly.monomial(*mi.unpair(l)))):
                    ok = False
    return MOPV(degree=d, chain=tuple(chain), polys=polys, pattern_ok=ok)


def assemble_type1_vectors(sys: MeasureSystem, chain: Sequence[Sequence[int]]) -> TypeIMOPV:
    """Solve the chain's Type I sets and verify the 0...0,1 row pattern."""
    chain = [tuple(c) for c in chain]
    d = len(chain) - 1
    if not mi.validate_chain(chain, d):
        raise ChainInvalid(f"not a valid degree-{d} chain")
    sets = [type1(sys, n) for n in chain]
    r = sys.r
    ok = True
    for n, aset in zip(chain, sets):
        size = sum(n)
        for l in range(size):
            total = sum(inner(sys, j, a, BiPoly.monomial(*mi.unpair(l)))
                        for j, a in enumerate(aset.polys, start=1))
            want = 1 if l == size - 1 else 0
            if not _is_zero(sys, total - want):
                ok = False
    rows = tuple(tuple(sets[k].polys[j] for k in range(d + 1)) for j in range(r))
    return TypeIMOPV(degree=d, chain=tuple(chain), rows=rows, pattern_ok=ok)


@dataclass
class NNRReport:
    """Outcome of one recurrence check.

    coefficients holds (modulus, value) pairs; for the vector variants the
    per-degree matrices live in `matrices` instead and `residual` is the
    list of row residual polynomials.
    """

    variant: str
    path: mi.Path
    holds: bool
    coefficients: List[Tuple[int, Scalar]] = field(default_factory=list)
    residual: object = None
    vanishing_ok: Optional[bool] = None
    low_unit_ok: Optional[bool] = None
    matrices: Optional[Dict[int, Matrix]] = None

    def to_json(self) -> dict:
        doc = {
            "variant": self.variant,
            "holds": self.holds,
            "path": [list(step) for step in self.path.steps],
            "coefficients": [{"modulus": k, "value": format_scalar(v)}
                             for k, v in self.coefficients],
        }
        if isinstance(self.residual, BiPoly):
            doc["residual"] = "0" if self.residual.is_zero() else self.residual.pretty()
        elif isinstance(self.residual, (list, tuple)):
            doc["residual"] = ["0" if p.is_zero() else p.pretty() for p in self.residual]
        if self.vanishing_ok is not None:
            doc["vanishing_ok"] = self.vanishing_ok
        if self.low_unit_ok is not None:
            doc["low_unit_ok"] = self.low_unit_ok
        if self.matrices is not None:
            doc["matrices"] = {str(h): [[format_scalar(v) for v in row] for row in m.data]
                               for h, m in self.matrices.items()}
        return doc


def _as_path(path) -> mi.Path:
    if isinstance(path, mi.Path):
        return path
    return mi.Path(tuple(tuple(step) for step in path))


def nnr_type2(sys: MeasureSystem, n: Sequence[int], axis: str,
              path=None, w: Optional[Sequence[int]] = None,
              tol: float = FLOAT_RESIDUAL_TOL) -> NNRReport:
    """Check x*P_n (or y*P_n) against its nearest-neighbour expansion.

    Coefficients are the pairings <axis * P_n, Q_{m_{i+1}}>; the residual is
    axis*P_n - P_w - sum a_i P_{m_i}, compared to zero coefficientwise.
    Requires every n_j >= d_n + 1 so that v = n - (d_n + 1) stays natural.
    """
    if axis not in ("x", "y"):
        raise PathInvalid(f"axis must be 'x' or 'y', got {axis!r}")
    n = tuple(n)
    r = len(n)
    p = mi.params(n)
    d = p.degree
    if any(nj < d + 1 for nj in n):
        raise IndexTooSmall(f"need n_j >= d_n + 1 = {d + 1} for all components of {n}")
    v = tuple(nj - d - 1 for nj in n)
    bump = d + 1 if axis == "x" else d + 2
    top = p.modulus + bump
    if path is None:
        if w is None:
            w = (n[0] + bump,) + n[1:]
        path = mi.canonical_path([v, n, tuple(w)])
    else:
        path = _as_path(path)
    if not path.is_valid():
        raise PathInvalid("not a neighbour path")
    if path.start_modulus > sum(v) or path.end_modulus < top:
        raise PathInvalid(f"path must span moduli {sum(v)}..{top}")
    if path.at_modulus(sum(v)) != v:
        raise PathInvalid(f"path entry of modulus {sum(v)} must be v = {v}")
    if path.at_modulus(p.modulus) != n:
        raise PathInvalid(f"path entry of modulus {p.modulus} must be {n}")
    w_top = path.at_modulus(top)
    if w is not None and tuple(w) != w_top:
        raise PathInvalid(f"path entry of modulus {top} is {w_top}, expected {tuple(w)}")
    if not mi.leq(n, w_top):
        raise PathInvalid(f"w = {w_top} must dominate n componentwise")

    pn = type2(sys, n)
    xp = pn.mul_x() if axis == "x" else pn.mul_y()
    scale = max(abs(float(c)) for c in xp.coeffs)
    coefficients = []
    residual = xp - type2(sys, w_top)
    for i in range(path.start_modulus, top):
        a = type1_pairing(sys, xp, path.at_modulus(i + 1))
        coefficients.append((i, a))
        if a != 0:
            residual = residual - type2(sys, path.at_modulus(i)).scale(a)
    vanish_below = p.modulus - (d + 1) * r
    vanishing_ok = all(_is_zero(sys, a, scale, tol)
                       for i, a in coefficients if i < vanish_below)
    holds = _poly_zero(sys, residual, scale, tol) and vanishing_ok
    return NNRReport(variant=f"{axis}P", path=path, holds=holds,
                     coefficients=coefficients, residual=residual,
                     vanishing_ok=vanishing_ok)


def _default_descent(n: Tuple[int, ...], drop: int) -> Tuple[int, ...]:
    # Deterministic index of modulus |n| - drop below n: shrink the last
    # components first (mirror of canonical_path's ascent order).
    low = list(n)
    for j in range(len(low) - 1, -1, -1):
        take = min(low[j], drop)
        low[j] -= take
        drop -= take
    return tuple(low)


def nnr_type1(sys: MeasureSystem, n: Sequence[int], axis: str,
              path=None, tol: float = FLOAT_RESIDUAL_TOL) -> NNRReport:
    """Check x*Q_n (or y*Q_n) against its nearest-neighbour expansion.

    Verifies the per-measure coefficient identity
    axis*A_{n,j} = sum a_k A_{m_k,j}, which is stronger than the summed
    function identity.  low_unit_ok reports whether the coefficient at the
    lowest modulus of the expansion is exactly 1; that claim only follows
    from the orthogonality conditions when the remainder k_n is >= 1 for
    axis x and >= 2 for axis y, so it does not gate `holds`.  The low term
    is dropped entirely when the low index is the zero index (Q there is 0).
    """
    if axis not in ("x", "y"):
        raise PathInvalid(f"axis must be 'x' or 'y', got {axis!r}")
    n = tuple(n)
    r = len(n)
    p = mi.params(n)
    d = p.degree
    if p.modulus == 0:
        raise EmptyIndex("Type I is undefined for the zero index")
    low_mod = p.modulus - d if axis == "x" else p.modulus - d - 1
    if low_mod < 0:
        raise IndexTooSmall(f"modulus {p.modulus} too small for axis {axis}")
    bump = d + 1 if axis == "x" else d + 2
    top = p.modulus + bump * r
    end = tuple(nj + bump for nj in n)
    if path is None:
        low = _default_descent(n, p.modulus - low_mod)
        path = mi.canonical_path([low, n, end])
    else:
        path = _as_path(path)
    if not path.is_valid():
        raise PathInvalid("not a neighbour path")
    if path.start_modulus > low_mod or path.end_modulus < top:
        raise PathInvalid(f"path must span moduli {low_mod}..{top}")
    if path.at_modulus(p.modulus) != n:
        raise PathInvalid(f"path entry of modulus {p.modulus} must be {n}")
    if path.at_modulus(top) != end:
        raise PathInvalid(f"path entry of modulus {top} must be {end}")

    # Extend below the theorem's range down to the zero index; the extension
    # only feeds the vanishing and unit-coefficient checks, whose values are
    # path-independent.
    steps = path.steps
    if path.start_modulus > 0:
        ext = mi.canonical_path([(0,) * r, steps[0]]).steps[:-1]
        steps = ext + steps
    full = mi.Path(steps)

    a_n = type1(sys, n).polys
    mul = (lambda q: q.mul_x()) if axis == "x" else (lambda q: q.mul_y())
    xa = [mul(a) for a in a_n]
    scale = max([1.0] + [abs(float(c)) for a in xa for c in a.coeffs])

    coefficients = []
    for k in range(1, top + 1):
        pk = type2(sys, full.at_modulus(k - 1))
        value = sys.zero()
        for j in range(1, r + 1):
            value += inner(sys, j, xa[j - 1], pk)
        coefficients.append((k, value))
    by_mod = dict(coefficients)

    vanishing_ok = all(_is_zero(sys, by_mod[k], scale, tol) for k in range(1, low_mod))
    low_unit_ok = None
    if low_mod >= 1:
        low_unit_ok = _is_zero(sys, by_mod[low_mod] - 1, scale, tol)

    # Residual of the expansion with the computed coefficients, measure by
    # measure; the unit-low-coefficient claim is reported separately because
    # it needs the remainder k_n >= 1 (axis x) or >= 2 (axis y) to follow
    # from the orthogonality conditions.
    residuals = []
    for j in range(1, r + 1):
        res = xa[j - 1]
        for k in range(1, top + 1):
            a = by_mod[k]
            if a != 0:
                res = res - type1(sys, full.at_modulus(k)).polys[j - 1].scale(a)
        residuals.append(res)

    holds = (all(_poly_zero(sys, rj, scale, tol) for rj in residuals)
             and vanishing_ok)
    return NNRReport(variant=f"{axis}Q", path=full, holds=holds,
                     coefficients=coefficients, residual=residuals,
                     vanishing_ok=vanishing_ok, low_unit_ok=low_unit_ok)


def default_vector_chains(chain: Sequence[Sequence[int]]):
    """Deterministic lower (degrees 0..d-1) and upper (degree d+1) chains."""
    chain = [tuple(c) for c in chain]
    d = len(chain) - 1
    r = len(chain[0])
    n0, nd = chain[0], chain[-1]
    u = tuple(c - (d + 1) for c in n0)
    waypoints = [(0,) * r]
    if all(c >= 0 for c in u):
        waypoints.append(u)
    waypoints.append(n0)
    ascent = mi.canonical_path(waypoints).steps[:-1]
    lower = [list(ascent[h * (h + 1) // 2: h * (h + 1) // 2 + h + 1]) for h in range(d)]
    top = (nd[0] + d + 2,) + nd[1:]
    upper = list(mi.canonical_path([nd, top]).steps[1:])
    return lower, upper


def nnr_vector(sys: MeasureSystem, chain: Sequence[Sequence[int]], axis: str,
               lower=None, upper=None,
               tol: float = FLOAT_RESIDUAL_TOL) -> NNRReport:
    """Vector nearest-neighbour check for one degree-d polynomial vector.

    Stacks the scalar expansions of axis*P_{n_k} into matrices A_h and
    verifies both the residual and the forced leading selection matrix
    (identity columns into the degree d+1 vector).
    """
    if axis not in ("x", "y"):
        raise PathInvalid(f"axis must be 'x' or 'y', got {axis!r}")
    chain = [tuple(c) for c in chain]
    d = len(chain) - 1
    if not mi.validate_chain(chain, d):
        raise ChainInvalid(f"not a valid degree-{d} chain")
    r = len(chain[0])
    if lower is None or upper is None:
        dflt_lower, dflt_upper = default_vector_chains(chain)
        lower = dflt_lower if lower is None else lower
        upper = dflt_upper if upper is None else upper
    lower = [[tuple(x) for x in ch] for ch in lower]
    upper = [tuple(x) for x in upper]
    if len(lower) != d:
        raise ChainInvalid(f"need lower chains for degrees 0..{d - 1}")
    for h, ch in enumerate(lower):
        if not mi.validate_chain(ch, h):
            raise ChainInvalid(f"lower chain {h} is not a valid degree-{h} chain")
    if not mi.validate_chain(upper, d + 1):
        raise ChainInvalid(f"upper chain is not a valid degree-{d + 1} chain")
    steps = tuple(x for ch in lower for x in ch) + tuple(chain) + tuple(upper)
    gpath = mi.Path(steps)
    if not gpath.is_valid():
        raise ChainInvalid("chains do not concatenate into a neighbour path")

    n0 = chain[0]
    cutoff = sum(n0) - (d + 1) * r
    kk = max((h for h in range(d) if h * (h + 1) // 2 < cutoff), default=0)
    u = tuple(c - (d + 1) for c in n0)
    if cutoff > 0 and all(c >= 0 for c in u) and gpath.at_modulus(sum(u)) != u:
        raise ChainInvalid(f"required waypoint {u} missing from the path")

    zero = sys.zero()
    bump = d + 1 if axis == "x" else d + 2
    base = (d + 1) * (d + 2) // 2
    gtop = sum(chain[-1]) + bump
    amats = {h: [[zero] * (h + 1) for _ in range(d + 1)] for h in range(d + 2)}
    residuals = []
    # Row k must hit entry row_top - base of the degree d+1 vector with a
    # unit coefficient and nothing above it; entries below it are genuine
    # expansion data and are reported, not forced to zero.
    leading_ok = True
    scale = 1.0
    for k, nk in enumerate(chain):
        pk = type2(sys, nk)
        xp = pk.mul_x() if axis == "x" else pk.mul_y()
        scale = max(scale, max(abs(float(c)) for c in xp.coeffs))
        row_top = sum(nk) + bump
        res = xp - type2(sys, gpath.at_modulus(row_top))
        amats[d + 1][k][row_top - base] = sys.one()
        for i in range(gpath.start_modulus, gtop):
            if i == row_top:
                continue
            a = type1_pairing(sys, xp, gpath.at_modulus(i + 1))
            lt, ls = mi.unpair(i)
            amats[lt + ls][k][ls] = a
            if i > row_top and not _is_zero(sys, a, scale, tol):
                leading_ok = False
            if a != 0:
                res = res - type2(sys, gpath.at_modulus(i)).scale(a)
        residuals.append(res)

    vanishing_ok = all(_is_zero(sys, v, scale, tol)
                       for h in range(max(kk - 1, 0))
                       for row in amats[h] for v in row)
    holds = (leading_ok and vanishing_ok
             and all(_poly_zero(sys, res, scale, tol) for res in residuals))
    matrices = {h: Matrix.from_rows(amats[h]) for h in range(d + 2)}
    return NNRReport(variant=f"vector-{axis}", path=gpath, holds=holds,
                     residual=residuals, vanishing_ok=vanishing_ok,
                     low_unit_ok=leading_ok, matrices=matrices)
