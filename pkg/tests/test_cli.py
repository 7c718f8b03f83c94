"""Command-line interface: exit codes, JSON output, determinism."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from bimop.cli import EXIT_FAILED, EXIT_INVALID, EXIT_NOT_NORMAL, EXIT_OK, run

DUO_CONFIG = {
    "scalar": "exact",
    "measures": [
        {"kind": "tensor", "x": {"family": "laguerre", "alpha": 1},
         "y": {"family": "laguerre", "alpha": "2.3"}},
        {"kind": "tensor", "x": {"family": "laguerre", "alpha": "2.2"},
         "y": {"family": "laguerre", "alpha": "3.4"}},
    ],
}

QUAD_CONFIG = {
    "scalar": "exact",
    "measures": [
        {"kind": "tensor", "x": {"family": "laguerre", "alpha": a},
         "y": {"family": "laguerre", "alpha": b}}
        for a in (1, "2.2") for b in ("2.3", "3.4")
    ],
}

PRODUCT_CONFIG = {
    "scalar": "exact",
    "x": [{"family": "laguerre", "alpha": 1},
          {"family": "laguerre", "alpha": "2.2"}],
    "y": [{"family": "laguerre", "alpha": "2.3"},
          {"family": "laguerre", "alpha": "3.4"}],
}


@pytest.fixture(scope="module")
def configs(tmp_path_factory):
    root = tmp_path_factory.mktemp("configs")
    paths = {}
    for name, doc in [("duo", DUO_CONFIG), ("quad", QUAD_CONFIG),
                      ("product", PRODUCT_CONFIG)]:
        path = root / f"{name}.json"
        path.write_text(json.dumps(doc))
        paths[name] = str(path)
    return paths


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


def test_pair_unpair_params():
    code, out, _ = invoke(["pair", "1", "2"])
    assert code == EXIT_OK
    assert json.loads(out) == {"pi": 8}

    code, out, _ = invoke(["unpair", "8"])
    assert code == EXIT_OK
    assert json.loads(out) == {"t": 1, "s": 2}

    code, out, _ = invoke(["params", "--index", "6,2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc == {"modulus": 8, "multidegree": [1, 2], "degree": 3,
                   "remainder": 2}


def test_normal_exit_codes(configs):
    code, out, _ = invoke(["normal", "--config", configs["quad"],
                           "--index", "4,3,3,2"])
    assert code == EXIT_OK
    assert json.loads(out)["normal"] is True

    code, out, _ = invoke(["normal", "--config", configs["quad"],
                           "--index", "3,3,3,3"])
    assert code == EXIT_NOT_NORMAL
    assert json.loads(out) == {"normal": False, "det": "0"}


def test_type2_pretty(configs):
    code, out, _ = invoke(["type2", "--config", configs["duo"],
                           "--index", "1,0", "--pretty"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["terms"][0] == {"t": 1, "s": 0, "c": "1"}
    assert doc["pretty"].startswith("x ")


def test_type2_not_normal_diagnostic(configs):
    code, out, err = invoke(["type2", "--config", configs["quad"],
                             "--index", "3,3,3,3"])
    assert code == EXIT_NOT_NORMAL
    assert out == ""
    assert json.loads(err)["det"] == "0"


def test_type1_shapes(configs):
    code, out, _ = invoke(["type1", "--config", configs["duo"],
                           "--index", "1,2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["polys"]) == 2


def test_biorth(configs):
    code, out, _ = invoke(["biorth", "--config", configs["duo"],
                           "--n", "2,2", "--m", "2,3"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["value"] == "1"
    assert doc["matches"] is True


def test_nnr_holds(configs):
    code, out, _ = invoke(["nnr", "--config", configs["duo"],
                           "--index", "6,8", "--axis", "x"])
    assert code == EXIT_OK
    assert json.loads(out)["holds"] is True


def test_nnr_q_holds(configs):
    code, out, _ = invoke(["nnr-q", "--config", configs["duo"],
                           "--index", "2,2", "--axis", "x"])
    assert code == EXIT_OK
    assert json.loads(out)["holds"] is True


def test_vector_holds(configs):
    code, out, _ = invoke(["vector", "--config", configs["duo"],
                           "--chain", "1,2;1,3;2,3", "--axis", "y"])
    assert code == EXIT_OK
    assert json.loads(out)["holds"] is True


def test_product(configs):
    code, out, _ = invoke(["product", "--config", configs["product"],
                           "--n", "0,1", "--m", "1,0"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["tilde_v"] == [2, 0, 4, 1]
    assert doc["v"] == [2, 0, 1, 1]
    assert doc["match"] is True
    assert doc["poly"]["terms"][0] == {"t": 1, "s": 1, "c": "1"}


def test_product_explicit_v(configs):
    code, out, _ = invoke(["product", "--config", configs["product"],
                           "--n", "0,1", "--m", "1,0", "--v", "1,0,2,1"])
    assert code == EXIT_OK
    assert json.loads(out)["v"] == [1, 0, 2, 1]


def test_check_battery(configs):
    code, out, _ = invoke(["check", "--config", configs["duo"]])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["ok"] is True
    names = {c["name"] for c in doc["checks"]}
    assert "pairing-roundtrip" in names
    assert "type2-orthogonality" in names
    assert "biorthogonality-grid" in names


def test_deterministic_output(configs):
    runs = [invoke(["type2", "--config", configs["duo"], "--index", "2,3"])
            for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [invoke(["check", "--config", configs["duo"]]) for _ in range(2)]
    assert runs[0] == runs[1]


def test_schema_error_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"scalar": "exact", "measures": [
        {"kind": "tensor", "x": {"family": "laguerre"},
         "y": {"family": "laguerre", "alpha": 1}}]}))
    code, out, err = invoke(["normal", "--config", str(bad),
                             "--index", "1,0"])
    assert code == EXIT_INVALID
    assert out == ""
    assert json.loads(err)["kind"] == "SchemaError"


def test_missing_config_file():
    code, _, err = invoke(["normal", "--config", "/nonexistent/cfg.json",
                           "--index", "1,0"])
    assert code == EXIT_INVALID
    assert "error" in json.loads(err)


def test_bad_index_text(configs):
    code, _, err = invoke(["normal", "--config", configs["duo"],
                           "--index", "1,x"])
    assert code == EXIT_INVALID
    assert json.loads(err)["kind"] == "SchemaError"


def test_float_mode(configs):
    code, out, _ = invoke(["normal", "--config", configs["duo"],
                           "--float", "--index", "2,2"])
    assert code == EXIT_OK
    assert json.loads(out)["normal"] is True
