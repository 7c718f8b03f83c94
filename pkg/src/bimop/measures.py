"""Moment providers: built-in univariate families, tensor products, raw tables.

Built-in families store moments relative to m_0 (the Gamma(alpha+1) factor of
the Laguerre family is divided out), which keeps every moment rational for
rational exponents.  Type II polynomials are invariant under per-measure
scaling and Type I polynomials scale by the inverse factor, so nothing of
substance depends on this normalization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .errors import (
    IndexOutOfRange,
    NegativeAlpha,
    SchemaError,
    TableExhausted,
)
from .linalg import FLOAT_TOL, parse_scalar

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT64 = "float64"


class Laguerre:
    """Laguerre-type weight x^alpha e^{-x} on [0, inf), alpha >= 0 rational.

    Relative moments m_k = prod_{i=1..k} (alpha + i), so m_0 = 1.
    """

    def __init__(self, alpha):
        alpha = Fraction(alpha)
        if alpha < 0:
            raise NegativeAlpha(f"laguerre alpha must be >= 0, got {alpha}")
        self.alpha = alpha

    def moment(self, k: int) -> Fraction:
        m = Fraction(1)
        for i in range(1, k + 1):
            m *= self.alpha + i
        return m

    def weight(self, x: float) -> float:
        return x ** float(self.alpha) * math.exp(-x)


class Jacobi:
    """Jacobi-type weight x^a on [0, 1], a > -1 rational.

    Moments normalized to m_0 = 1: m_k = (a + 1) / (a + k + 1).
    """

    def __init__(self, a):
        a = Fraction(a)
        if a <= -1:
            raise NegativeAlpha(f"jacobi exponent must be > -1, got {a}")
        self.a = a

    def moment(self, k: int) -> Fraction:
        return (self.a + 1) / (self.a + k + 1)

    def weight(self, x: float) -> float:
        if not 0.0 <= x <= 1.0:
            return 0.0
        return x ** float(self.a)


class MomentTable:
    """Explicit univariate moment sequence; no pointwise weight."""

    def __init__(self, moments: Sequence):
        self.moments = [Fraction(m) for m in moments]

    def moment(self, k: int) -> Fraction:
        if k >= len(self.moments):
            raise TableExhausted(f"moment table of length {len(self.moments)} has no order {k}")
        return self.moments[k]

    weight = None


UnivariateFamily = Union[Laguerre, Jacobi, MomentTable]


class TensorMeasure:
    """Bivariate measure with factoring moments m_{(t,s)} = m^x_t * m^y_s."""

    def __init__(self, x: UnivariateFamily, y: UnivariateFamily):
        self.x = x
        self.y = y

    def moment(self, t: int, s: int) -> Fraction:
        return self.x.moment(t) * self.y.moment(s)

    @property
    def has_weight(self) -> bool:
        return self.x.weight is not None and self.y.weight is not None

    def weight(self, x: float, y: float) -> float:
        return self.x.weight(x) * self.y.weight(y)


class TableMeasure:
    """Bivariate measure given by a raw (t, s) -> moment map."""

    def __init__(self, moments: Dict[Tuple[int, int], Fraction]):
        self.moments = {k: Fraction(v) for k, v in moments.items()}

    def moment(self, t: int, s: int) -> Fraction:
        try:
            return self.moments[(t, s)]
        except KeyError:
            raise TableExhausted(f"no moment for (t, s) = ({t}, {s})") from None

    has_weight = False

    def weight(self, x, y):
        raise TableExhausted("table measures carry no weight")


BivariateMeasure = Union[TensorMeasure, TableMeasure]


@dataclass
class MeasureSystem:
    """A system of r bivariate measures sharing one scalar mode.

    Moments are cached; solver results are cached by the mopcore module in
    the private dicts below (the system is otherwise immutable).
    """

    measures: Tuple[BivariateMeasure, ...]
    mode: str = EXACT
    tol: float = FLOAT_TOL
    _moment_cache: dict = field(default_factory=dict, repr=False)
    _type2_cache: dict = field(default_factory=dict, repr=False)
    _type1_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.measures:
            raise SchemaError("$.measures", "at least one measure required")
        if self.mode not in (EXACT, FLOAT64):
            raise SchemaError("$.scalar", f"unknown scalar mode {self.mode!r}")

    @property
    def r(self) -> int:
        return len(self.measures)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def moment(self, j: int, t: int, s: int) -> Scalar:
        """Moment m^{(j)}_{(t,s)}; j is 1-based."""
        if not 1 <= j <= self.r:
            raise IndexOutOfRange(f"measure index {j} not in 1..{self.r}")
        key = (j, t, s)
        try:
            return self._moment_cache[key]
        except KeyError:
            value = self.measures[j - 1].moment(t, s)
            if not self.exact:
                value = float(value)
            self._moment_cache[key] = value
            return value


@dataclass
class UniMeasureSystem:
    """A system of r univariate measures, used by the product construction."""

    families: Tuple[UnivariateFamily, ...]
    mode: str = EXACT
    tol: float = FLOAT_TOL
    _moment_cache: dict = field(default_factory=dict, repr=False)
    _type2_cache: dict = field(default_factory=dict, repr=False)
    _type1_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.families:
            raise SchemaError("$.measures", "at least one measure required")

    @property
    def r(self) -> int:
        return len(self.families)

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def moment(self, j: int, k: int) -> Scalar:
        if not 1 <= j <= self.r:
            raise IndexOutOfRange(f"measure index {j} not in 1..{self.r}")
        key = (j, k)
        try:
            return self._moment_cache[key]
        except KeyError:
            value = self.families[j - 1].moment(k)
            if not self.exact:
                value = float(value)
            self._moment_cache[key] = value
            return value


def _parse_family(obj, path: str) -> UnivariateFamily:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    family = obj.get("family")
    if family == "laguerre":
        if "alpha" not in obj:
            raise SchemaError(path + ".alpha", "missing")
        return Laguerre(_parse_exponent(obj["alpha"], path + ".alpha"))
    if family == "jacobi":
        if "a" not in obj:
            raise SchemaError(path + ".a", "missing")
        return Jacobi(_parse_exponent(obj["a"], path + ".a"))
    if family == "table":
        moments = obj.get("moments")
        if not isinstance(moments, list) or not moments:
            raise SchemaError(path + ".moments", "expected a non-empty list")
        return MomentTable([_parse_exponent(m, f"{path}.moments[{i}]")
                            for i, m in enumerate(moments)])
    raise SchemaError(path + ".family", f"unknown family {family!r}")


def _parse_exponent(value, path: str) -> Fraction:
    # Decimal strings convert exactly ("3.4" -> 17/5); binary float parse
    # is deliberately rejected for exponents.
    if isinstance(value, float):
        raise SchemaError(path, "give exponents as strings or integers, not floats")
    try:
        return parse_scalar(value)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(path, f"not a rational literal: {value!r}") from None


def _parse_measure(obj, path: str) -> BivariateMeasure:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    kind = obj.get("kind")
    if kind == "tensor":
        if "x" not in obj or "y" not in obj:
            raise SchemaError(path, "tensor measure needs 'x' and 'y'")
        return TensorMeasure(_parse_family(obj["x"], path + ".x"),
                             _parse_family(obj["y"], path + ".y"))
    if kind == "table":
        entries = obj.get("moments")
        if not isinstance(entries, list) or not entries:
            raise SchemaError(path + ".moments", "expected a non-empty list")
        table = {}
        for i, e in enumerate(entries):
            epath = f"{path}.moments[{i}]"
            if not isinstance(e, dict) or not {"t", "s", "value"} <= set(e):
                raise SchemaError(epath, "expected {t, s, value}")
            if not isinstance(e["t"], int) or not isinstance(e["s"], int):
                raise SchemaError(epath, "t and s must be naturals")
            table[(e["t"], e["s"])] = _parse_exponent(e["value"], epath + ".value")
        return TableMeasure(table)
    raise SchemaError(path + ".kind", f"unknown measure kind {kind!r}")


def parse_config(text: str) -> MeasureSystem:
    """Build a MeasureSystem from a JSON config document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    mode = doc.get("scalar", EXACT)
    if mode not in (EXACT, FLOAT64):
        raise SchemaError("$.scalar", f"expected 'exact' or 'float64', got {mode!r}")
    measures = doc.get("measures")
    if not isinstance(measures, list) or not measures:
        raise SchemaError("$.measures", "expected a non-empty list")
    parsed = tuple(_parse_measure(m, f"$.measures[{i}]") for i, m in enumerate(measures))
    return MeasureSystem(measures=parsed, mode=mode)


def parse_uni_config(doc, path: str = "$", mode: str = EXACT) -> UniMeasureSystem:
    """Build a univariate system from a list of family objects."""
    if not isinstance(doc, list) or not doc:
        raise SchemaError(path, "expected a non-empty list of families")
    families = tuple(_parse_family(f, f"{path}[{i}]") for i, f in enumerate(doc))
    return UniMeasureSystem(families=families, mode=mode)
