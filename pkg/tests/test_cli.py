import io
import json
import subprocess
import sys

import numpy as np
import pytest

from rankrange import AffineSpace, Mat, make_field
from rankrange.cli import run
from rankrange.matrix import write_text


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None), err.getvalue()


def test_bounds_small_field_example():
    code, payload, _ = call("bounds", "--family", "range-mxn", "--m", "3", "--n", "3", "--s", "2", "--r", "2")
    assert code == 0 and payload == 3


def test_bounds_pair_family():
    code, payload, _ = call("bounds", "--family", "westwick", "--m", "3", "--n", "5", "--r", "2")
    assert code == 0 and payload == [4, 5]


def test_bounds_invalid_params():
    code, payload, err = call("bounds", "--family", "range-mxn", "--m", "3", "--n", "3", "--s", "3", "--r", "2")
    assert code == 2 and payload["kind"] == "InvalidParams" and err


def test_verify_range():
    code, payload, _ = call("verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5")
    assert code == 0
    assert payload["dimension"] == 7
    assert payload["profile"]["min_rank"] == 1 and payload["profile"]["max_rank"] == 2
    assert payload["elements_scanned"] == 78125


def test_verify_echelon_constant():
    code, payload, _ = call("verify", "--family", "echelon-constant", "--m", "3", "--n", "4", "--r", "2", "--p", "5")
    assert code == 0 and payload["passed"] and payload["dimension"] == 5


def test_verify_counterexample_needs_no_field():
    code, payload, _ = call("verify", "--family", "counterexample-f3")
    assert code == 0 and payload["dimension"] == 4


def test_verify_requires_field():
    code, payload, err = call("verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2")
    assert code == 2 and "p" in err


def test_verify_budget_exceeded():
    code, payload, _ = call(
        "verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5", "--budget", "100"
    )
    assert code == 3 and payload["kind"] == "BudgetExceeded" and payload["cost"] == 78125


def test_global_flags_before_subcommand():
    code, payload, _ = call(
        "--budget", "100", "verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5"
    )
    assert code == 3


def test_composite_modulus():
    code, payload, _ = call("verify", "--family", "range-mxn", "--m", "2", "--n", "2", "--s", "1", "--r", "1", "--p", "6")
    assert code == 2 and payload["kind"] == "CompositeModulus"


def test_search_negative_example():
    code, payload, _ = call("search", "--m", "2", "--n", "2", "--s", "1", "--r", "1", "--p", "5", "--dim", "2", "--exhaustive")
    assert code == 1 and payload["found"] is False
    assert payload["cost"]["candidates"] > 0


def test_search_max_dim():
    code, payload, _ = call("search", "--m", "2", "--n", "2", "--s", "2", "--r", "2", "--p", "5")
    assert code == 0 and payload["max_dim"] == 1 and payload["witness"]["p"] == 5


def test_search_random_requires_seed():
    code, payload, err = call("search", "--m", "2", "--n", "2", "--s", "1", "--r", "1", "--p", "5", "--dim", "1", "--samples", "10")
    assert code == 2 and "seed" in err


def test_search_random_and_exhaustive_conflict():
    code, *_ = call(
        "search", "--m", "2", "--n", "2", "--s", "1", "--r", "1", "--p", "5", "--dim", "1",
        "--samples", "10", "--seed", "1", "--exhaustive",
    )
    assert code == 2


def test_search_random_is_deterministic():
    argv = ["search", "--m", "2", "--n", "3", "--s", "1", "--r", "2", "--p", "3", "--dim", "3", "--samples", "50", "--seed", "9"]
    a, b = call(*argv), call(*argv)
    assert a == b and a[1]["seed"] == 9 and a[1]["mode"] == "random"


def test_search_budget():
    code, payload, _ = call("search", "--m", "3", "--n", "3", "--s", "2", "--r", "2", "--p", "3", "--dim", "4")
    assert code == 3 and payload["cost"] > payload["budget"]


def test_search_skew_invalid():
    code, payload, _ = call("search", "--m", "4", "--n", "4", "--s", "1", "--r", "2", "--p", "5", "--dim", "1", "--skew")
    assert code == 2 and payload["kind"] == "InvalidParams"


def test_construct_scan_round_trip(tmp_path):
    f = tmp_path / "space.json"
    code, built, _ = call("construct", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5", "--out", str(f))
    assert code == 0 and built["dimension"] == 7
    code, scanned, _ = call("scan", "--in", str(f))
    code_v, verified, _ = call("verify", "--family", "range-mxn", "--m", "3", "--n", "4", "--s", "1", "--r", "2", "--p", "5")
    assert code == code_v == 0
    assert scanned["dimension"] == verified["dimension"]
    assert scanned["histogram"] == verified["profile"]["histogram"]
    _, threaded, _ = call("scan", "--in", str(f), "--threads", "3")
    assert threaded == scanned


def test_scan_missing_file(tmp_path):
    code, payload, err = call("scan", "--in", str(tmp_path / "nope.json"))
    assert code == 2 and payload["kind"] == "FileNotFoundError"


def test_scan_malformed_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    code, payload, _ = call("scan", "--in", str(f))
    assert code == 2 and "error" in payload


def test_normal_form(tmp_path):
    F = make_field(7)
    f = tmp_path / "m.txt"
    write_text(Mat([[0, 3, 1], [4, 0, 2], [6, 5, 0]], F), f)
    code, payload, _ = call("normal-form", "--in", str(f))
    assert code == 0 and payload["r"] == 2 and payload["matches_normal_form"] is True
    assert payload["H"].splitlines()[0] == "3 3 7"


def test_normal_form_not_skew(tmp_path):
    F = make_field(7)
    f = tmp_path / "m.txt"
    write_text(Mat([[1, 0], [0, 1]], F), f)
    code, payload, _ = call("normal-form", "--in", str(f))
    assert code == 2 and payload["kind"] == "NotSkew"


def _dump(tmp_path, S, name="s.json"):
    f = tmp_path / name
    f.write_text(S.to_json())
    return str(f)


def test_pivot(tmp_path):
    F = make_field(5)
    S = AffineSpace(Mat([[1, 0, 0], [0, 0, 0]], F), [Mat([[4, 1, 0], [0, 0, 1]], F)])
    code, payload, _ = call("pivot", "--in", _dump(tmp_path, S))
    assert code == 0 and payload["P"] == [1, 2] and payload["all_echelon"] is True
    w = np.array(payload["witness"])
    assert w[0, 0] and w[1, 2]


def test_pivot_field_too_small(tmp_path):
    F = make_field(2)
    S = AffineSpace(Mat([[1, 0, 0], [0, 0, 0]], F), [Mat([[0, 1, 1], [0, 0, 1]], F), Mat([[1, 0, 1], [0, 0, 0]], F)])
    code, payload, _ = call("pivot", "--in", _dump(tmp_path, S))
    assert code == 1 and payload["witness"] is None and "error" in payload


def test_code_params(tmp_path):
    f = tmp_path / "c.json"
    call("construct", "--family", "counterexample-f3", "--out", str(f))
    code, payload, _ = call("code-params", "--in", str(f))
    assert code == 0 and payload["min_distance"] == 1 and payload["cardinality"] == 81
    assert payload["element_profile"]["histogram"] == {"2": 81}
    assert payload["singleton_ok"] is True


def test_code_params_degenerate(tmp_path):
    F = make_field(3)
    code, payload, _ = call("code-params", "--in", _dump(tmp_path, AffineSpace(Mat([[1]], F))))
    assert code == 0 and payload["degenerate"] is True and payload["singleton_ok"] is None


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("bounds", "--family", "range-mxn", "--bogus", "1")[0] == 2
    assert call("construct", "--family", "westwick")[0] == 2
    assert call("--help")[0] == 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rankrange", "bounds", "--family", "ant-range", "--n", "4", "--s", "2", "--r", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == 2


def test_pivot_rejects_non_echelon_space(tmp_path):
    F = make_field(5)
    S = AffineSpace(Mat([[0, 0], [0, 1]], F), [Mat([[1, 0], [0, 0]], F)])
    code, payload, _ = call("pivot", "--in", _dump(tmp_path, S))
    assert code == 1 and payload["all_echelon"] is False and payload["witness"] is None
