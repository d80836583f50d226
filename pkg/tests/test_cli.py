import json

import pytest

from shimura4 import cli


def run(capsys, args):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_full_run_passes(capsys):
    code, out, _ = run(capsys, [])
    assert code == 0
    assert out.strip().endswith("0 failed")
    assert "[FAIL]" not in out


def test_full_run_flag_inventory(capsys):
    code, out, _ = run(capsys, ["--json"])
    assert code == 0
    doc = json.loads(out)
    flagged = [c["id"] for s in doc["suites"] for c in s["checks"]
               if c["status"] == "flagged"]
    assert flagged == [
        "plane-at-1-first-component-display",
        "ramification-degree-at-1",
        "plane-family-discriminant",
    ]
    assert all(c["status"] in ("pass", "flagged")
               for s in doc["suites"] for c in s["checks"])


def test_json_is_deterministic(capsys):
    _, out1, _ = run(capsys, ["--json"])
    _, out2, _ = run(capsys, ["--json"])
    assert out1 == out2


def test_suite_selection(capsys):
    code, out, _ = run(capsys, ["hypergeometric", "--json"])
    assert code == 0
    doc = json.loads(out)
    assert [s["name"] for s in doc["suites"]] == ["hypergeometric"]
    ids = {c["id"] for c in doc["suites"][0]["checks"]}
    assert "stabilizer-7" in ids and "full-sum-9" in ids


def test_all_suites_present(capsys):
    _, out, _ = run(capsys, ["--json"])
    doc = json.loads(out)
    assert [s["name"] for s in doc["suites"]] == [
        "disc7", "reductions7", "reductions9", "arakelov",
        "quaternion", "triangle", "hypergeometric", "cm-tables"]


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-suite"])
    assert exc.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0


def test_svg_output(tmp_path, capsys):
    target = tmp_path / "disk.svg"
    code, out, _ = run(capsys, ["triangle", "--svg", str(target)])
    assert code == 0
    data = target.read_text(encoding="utf-8")
    assert data.startswith("<svg")
    assert 'viewBox="-1.05 -1.05 2.1 2.1"' in data
    assert "svg-written" in out


def test_depth_flag_uses_frozen_counts(capsys):
    code, out, _ = run(capsys, ["triangle", "--depth", "5", "--json"])
    assert code == 0
    doc = json.loads(out)
    ids = {c["id"]: c for s in doc["suites"] for c in s["checks"]}
    # depth 5 frozen for (2,3,7) only; (2,3,9) falls back to a sanity check
    assert ids["tile-count-2-3-7-depth-5"]["expected"] == "88"
    assert ids["tile-count-2-3-9-depth-5"]["expected"] == "positive tile count"


def test_corrupted_data_dir_fails(tmp_path, capsys):
    import shutil
    from shimura4.cmtables import data_file_name
    from importlib import resources
    for n in (7, 9):
        src = resources.files("shimura4").joinpath("data", data_file_name(n))
        (tmp_path / data_file_name(n)).write_bytes(src.read_bytes())
    # corrupt one factorization digit in the x9 table
    p9 = tmp_path / "cm_x9.tsv"
    p9.write_text(p9.read_text(encoding="utf-8").replace("3^8*71^4", "3^8*73^4"),
                  encoding="utf-8")
    code, out, _ = run(capsys, ["cm-tables", "--data-dir", str(tmp_path)])
    assert code == 1
    assert "row-consistency-x9" in out
    assert "[FAIL]" in out


def test_internal_error_exit_code(monkeypatch, capsys):
    def boom(opts):
        raise RuntimeError("synthetic")
    monkeypatch.setitem(cli.SUITES, "disc7", boom)
    code, _, err = run(capsys, ["disc7"])
    assert code == 3
    assert "internal error" in err
