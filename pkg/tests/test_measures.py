"""Moment providers: built-in families, tables, tensors, and config parsing."""

from fractions import Fraction as F

import pytest

from bimop import (
    IndexOutOfRange,
    Jacobi,
    Laguerre,
    MeasureSystem,
    MomentTable,
    NegativeAlpha,
    SchemaError,
    TableExhausted,
    TableMeasure,
    TensorMeasure,
    parse_config,
    parse_uni_config,
)


def test_laguerre_relative_moments():
    # m_k = prod_{i=1..k}(alpha + i), normalized so m_0 = 1
    lag = Laguerre(F(1))
    assert [lag.moment(k) for k in range(4)] == [1, 2, 6, 24]
    lag = Laguerre(F(11, 5))
    assert lag.moment(1) == F(16, 5)
    assert lag.moment(2) == F(16, 5) * F(21, 5)


def test_laguerre_rejects_negative_alpha():
    with pytest.raises(NegativeAlpha):
        Laguerre(F(-1, 2))


def test_laguerre_weight():
    lag = Laguerre(F(1))
    assert lag.weight(2.0) == pytest.approx(2.0 * pow(2.718281828459045, -2.0))


def test_jacobi_moments():
    # on [0, 1] with weight x^a: m_k = (a+1)/(a+k+1)
    jac = Jacobi(F(0))
    assert [jac.moment(k) for k in range(4)] == [1, F(1, 2), F(1, 3), F(1, 4)]
    jac = Jacobi(F(1, 2))
    assert jac.moment(1) == F(3, 5)


def test_jacobi_rejects_small_a():
    with pytest.raises(NegativeAlpha):
        Jacobi(F(-3, 2))


def test_moment_table_exhaustion():
    tab = MomentTable([F(1), F(2)])
    assert tab.moment(1) == 2
    with pytest.raises(TableExhausted):
        tab.moment(2)


def test_tensor_measure_factors():
    t = TensorMeasure(Laguerre(F(1)), Laguerre(F(2)))
    assert t.moment(2, 1) == Laguerre(F(1)).moment(2) * Laguerre(F(2)).moment(1)
    assert t.has_weight
    assert t.weight(1.0, 1.0) == pytest.approx(
        Laguerre(F(1)).weight(1.0) * Laguerre(F(2)).weight(1.0))


def test_table_measure():
    t = TableMeasure({(0, 0): F(1), (1, 0): F(3)})
    assert t.moment(1, 0) == 3
    with pytest.raises(TableExhausted):
        t.moment(0, 1)
    assert not t.has_weight


def test_system_moment_lookup_and_cache(duo):
    assert duo.r == 2
    v = duo.moment(1, 2, 1)
    assert v == Laguerre(F(1)).moment(2) * Laguerre(F(23, 10)).moment(1)
    assert duo.moment(1, 2, 1) is duo._moment_cache[(1, 2, 1)]
    with pytest.raises(IndexOutOfRange):
        duo.moment(3, 0, 0)
    with pytest.raises(IndexOutOfRange):
        duo.moment(0, 0, 0)


def test_float_mode_moments():
    sys_ = MeasureSystem(
        measures=(TensorMeasure(Laguerre(F(1)), Laguerre(F(1))),), mode="float64")
    assert isinstance(sys_.moment(1, 1, 1), float)
    assert not sys_.exact


def test_parse_config_roundtrip():
    text = """
    {"scalar": "exact", "measures": [
      {"kind": "tensor",
       "x": {"family": "laguerre", "alpha": 1},
       "y": {"family": "laguerre", "alpha": "2.3"}},
      {"kind": "table", "moments": [{"t": 0, "s": 0, "value": 1}]}
    ]}
    """
    sys_ = parse_config(text)
    assert sys_.r == 2
    assert sys_.moment(1, 0, 1) == Laguerre(F(23, 10)).moment(1)
    assert sys_.moment(2, 0, 0) == 1


def test_parse_config_rejects_float_exponent():
    text = '{"measures": [{"kind": "tensor", "x": {"family": "laguerre", "alpha": 2.2}, "y": {"family": "laguerre", "alpha": 1}}]}'
    with pytest.raises(SchemaError) as err:
        parse_config(text)
    assert err.value.path == "$.measures[0].x.alpha"


def test_parse_config_error_paths():
    with pytest.raises(SchemaError) as err:
        parse_config("not json")
    assert err.value.path == "$"
    with pytest.raises(SchemaError) as err:
        parse_config('{"measures": []}')
    assert err.value.path == "$.measures"
    with pytest.raises(SchemaError) as err:
        parse_config('{"measures": [{"kind": "mystery"}]}')
    assert err.value.path == "$.measures[0].kind"


def test_parse_uni_config():
    sys_ = parse_uni_config([{"family": "laguerre", "alpha": 1},
                             {"family": "jacobi", "a": "0.5"}])
    assert sys_.r == 2
    assert sys_.moment(2, 1) == F(3, 5)
    with pytest.raises(SchemaError):
        parse_uni_config([])
