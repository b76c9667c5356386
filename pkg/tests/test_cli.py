import json

import pytest

from embtrees.cli import main


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = main(list(argv) + ["--out", str(out)])
    return code, out.read_text()


def header_config(text):
    first = text.splitlines()[0]
    assert first.startswith("# ")
    return json.loads(first[2:])


def test_verify_small(tmp_path):
    code, text = run(tmp_path, "verify", "--family", "pm1", "--order", "10",
                     "--jmax", "3", "--oracle-max", "2", "--skip-numeric")
    assert code == 0
    assert "FAIL" not in text
    assert "config-hash" in text
    assert header_config(text)["order"] == 10


def test_verify_is_byte_deterministic(tmp_path):
    args = ("verify", "--family", "zpm1", "--order", "8", "--jmax", "2",
            "--oracle-max", "0", "--skip-numeric")
    _, a = run(tmp_path, *args)
    _, b = run(tmp_path, *args)
    assert a == b


def test_series_dump(tmp_path):
    code, text = run(tmp_path, "series", "--family", "pm1", "--order", "6",
                     "--jmax", "2")
    assert code == 0
    body = json.loads("\n".join(text.splitlines()[2:]))
    t0 = body["series"]["T_j"]["0"]["coeffs"]
    assert [c["num"] for c in t0] == ["1", "1", "3", "12", "56", "288", "1584"]


def test_series_max_moment(tmp_path):
    code, text = run(tmp_path, "series", "--family", "pm1",
                     "--max-moment", "1:2", "--max-moment", "1:4")
    assert code == 0
    rows = [line.split(",") for line in text.splitlines()[3:]]
    assert rows[0] == ["1", "2", "3/4"]


def test_oracle_cmd(tmp_path):
    code, text = run(tmp_path, "oracle", "--family", "binary", "--n", "5",
                     "--check")
    assert code == 0
    body = json.loads("\n".join(text.splitlines()[2:]))
    assert body["total"] == 42


def test_sample_deterministic(tmp_path):
    args = ("sample", "--family", "pm1", "--n", "64", "--reps", "6",
            "--seed", "9", "--obs", "max,occ0,tail0")
    _, a = run(tmp_path, *args)
    _, b = run(tmp_path, *args)
    assert a == b
    lines = a.splitlines()
    assert lines[2] == "replicate,max,max_scaled,occ0,occ0_scaled,tail0,tail0_scaled"
    assert len(lines) == 3 + 6


def test_sample_config_file(tmp_path):
    cfg = {"family": "zpm1", "n": 32, "replicates": 3, "seed": 5,
           "observables": ["max"], "lambdas": [0.5]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, text = run(tmp_path, "sample", "--config", str(path))
    assert code == 0
    assert "occ@0.5" in text.splitlines()[2]


def test_sample_histogram(tmp_path):
    code, text = run(tmp_path, "sample", "--family", "pm1", "--n", "128",
                     "--reps", "4", "--seed", "1", "--hist-bins", "11")
    assert code == 0
    lines = text.splitlines()
    assert lines[2] == "position,mean_mass"
    assert len(lines) == 3 + 11


def test_limit_multi_curve(tmp_path):
    code, text = run(tmp_path, "limit", "--curve", "G,f", "--grid", "0.5:1:0.5")
    assert code == 0
    assert text.splitlines()[2] == "lambda,G,f"


def test_limit_moments(tmp_path):
    code, text = run(tmp_path, "limit", "--moments", "N", "--kmax", "3")
    assert code == 0
    rows = [line.split(",") for line in text.splitlines()[3:]]
    assert float(rows[0][1]) == pytest.approx(2.1696136, abs=1e-6)
    assert float(rows[2][1]) == pytest.approx(14.474876, abs=1e-5)


def test_limit_curve_monotone(tmp_path):
    code, text = run(tmp_path, "limit", "--curve", "meanYplus",
                     "--grid", "0:2:0.5")
    vals = [float(line.split(",")[1]) for line in text.splitlines()[3:]]
    assert code == 0
    assert vals[0] == 0.5
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_limit_ise_density_tagged(tmp_path):
    code, text = run(tmp_path, "limit", "--ise", "density-conjecture",
                     "--grid", "0:1:0.5")
    assert code == 0
    for line in text.splitlines()[3:]:
        assert line.endswith(",conjecture")


def test_limit_requires_a_task(tmp_path):
    assert main(["limit", "--out", str(tmp_path / "x")]) == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as err:
        main(["sample", "--family", "hexagonal"])
    assert err.value.code == 2
