import json

import pytest

from rackforge.cli import main
from rackforge.rack import FiniteRack, class_rack


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out), err


def strip_clock(report):
    report = dict(report)
    report.pop("wall_clock_seconds")
    return report


def test_classify_json_report():
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["classify", "--p", "13", "--m", "13", "--json"])
    assert code == 0
    report = json.loads(buf.getvalue())
    assert report["schema"] == 1
    assert report["command"] == "classify"
    assert report["config"] == {"p": 13, "m": 13}
    assert report["result"] == {
        "p": 13,
        "m": 13,
        "verdict": "TypeD",
        "reason": {"cyclotomic": [[3, 3]]},
    }
    assert isinstance(report["wall_clock_seconds"], float)


def test_classify_human_output(capsys):
    code, out, _ = run_cli(capsys, "classify", "--p", "13", "--m", "13")
    assert code == 0
    assert "TypeD" in out
    code, out, _ = run_cli(capsys, "classify", "--p", "7", "--m", "7")
    assert code == 0
    assert "NotTypeD" in out


def test_classify_domain_error_exit(capsys):
    code, _, err = run_cli(capsys, "classify", "--p", "4", "--m", "4")
    assert code == 1
    assert "error:" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["classify", "--p", "13"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 64


def test_witness_exit_codes(capsys):
    code, report, _ = run_json(capsys, "witness", "--p", "7", "--m", "8", "--json")
    assert code == 0
    assert report["result"]["status"] == "witness"
    code, report, _ = run_json(
        capsys, "witness", "--p", "5", "--m", "5", "--strategy", "random", "--budget", "50", "--json"
    )
    assert code == 2
    assert report["result"]["status"] == "exhausted"
    code, report, _ = run_json(
        capsys, "witness", "--p", "5", "--m", "5", "--strategy", "exhaustive", "--json"
    )
    assert code == 0
    assert report["result"]["status"] == "absence"
    assert report["result"]["pairs_tested"] == 12


def test_witness_reports_are_byte_identical_minus_clock(capsys):
    args = ("witness", "--p", "7", "--m", "8", "--strategy", "exhaustive", "--json")
    _, first, _ = run_json(capsys, *args)
    _, second, _ = run_json(capsys, *args)
    assert strip_clock(first) == strip_clock(second)
    _, threaded, _ = run_json(capsys, *args, "--threads", "4")
    config_free = {k: v for k, v in strip_clock(first).items() if k != "config"}
    threaded_free = {k: v for k, v in strip_clock(threaded).items() if k != "config"}
    assert config_free == threaded_free


def test_witness_cache_roundtrip(tmp_path, capsys):
    cache = tmp_path / "witness.json"
    args = ("witness", "--p", "7", "--m", "8", "--cache", str(cache), "--json")
    code, first, _ = run_json(capsys, *args)
    assert code == 0
    stored = json.loads(cache.read_text())
    assert stored["schema"] == 1
    assert len(stored["entries"]) == 1
    (key,) = stored["entries"]
    assert key == "p=7,m=8,strategy=subgroup,seed=0"
    code, second, _ = run_json(capsys, *args)
    assert code == 0
    assert strip_clock(second)["result"] == strip_clock(first)["result"]


def test_census_json(capsys):
    code, report, _ = run_json(capsys, "census", "--p", "5", "--m", "5", "--json")
    assert code == 0
    result = report["result"]
    assert result["exhaustive"] is True
    assert result["pairs"] == 12
    sizes = {row["closure_size"]: row["count"] for row in result["rows"]}
    assert sizes == {1: 1, 2: 1, 12: 10}


def test_census_human_table(capsys):
    code, out, _ = run_cli(capsys, "census", "--p", "5", "--m", "5")
    assert code == 0
    assert "closure" in out
    assert "xiii" in out


def test_fw_identify_command(capsys):
    code, report, _ = run_json(
        capsys,
        "fw-identify",
        "--sigma",
        "(1 2 3 4 5)",
        "--tau",
        "(1 3 5 2 4)",
        "--json",
    )
    assert code == 0
    assert report["result"]["tag"] == "i"
    assert report["result"]["order"] == 5
    code, report, _ = run_json(
        capsys,
        "fw-identify",
        "--sigma",
        "(1 2 3 4 5)",
        "--tau",
        "(6 7 8 9 10)",
        "--degree",
        "10",
        "--json",
    )
    assert code == 0
    assert report["result"]["tag"] == "ii"


def test_fw_identify_rejects_non_cycle(capsys):
    code, _, err = run_cli(capsys, "fw-identify", "--sigma", "(1 2 3 4)", "--tau", "(1 2 3 4)")
    assert code == 1
    assert "error:" in err


def test_primes_command(capsys):
    code, report, _ = run_json(capsys, "primes", "--below", "400", "--json")
    assert code == 0
    assert report["result"]["primes"] == [3, 5, 7, 13, 17, 31, 73, 127, 257, 307]
    by_p = {p: forms for p, forms in report["result"]["decompositions"]}
    assert by_p[31] == [[2, 5], [5, 3]]


def test_construct_class_rack_and_cohomology(tmp_path, capsys):
    out_path = tmp_path / "rack.json"
    code, _, _ = run_cli(
        capsys, "construct", "class-rack", "--p", "5", "--m", "5", "--out", str(out_path)
    )
    assert code == 0
    data = json.loads(out_path.read_text())
    rack = FiniteRack.from_json_dict(data)
    assert rack.table == class_rack(5, 5).table
    code, report, _ = run_json(capsys, "cohomology", "--rack", str(out_path), "--json")
    assert code == 0
    assert report["result"]["free_rank"] == 1
    assert report["result"]["torsion"] == [10]
    assert report["result"]["pretty"] == "k^× × G_10"


def test_cohomology_from_class_parameters(capsys):
    code, report, _ = run_json(capsys, "cohomology", "--p", "5", "--m", "5", "--json")
    assert code == 0
    assert report["result"]["pretty"] == "k^× × G_10"


def test_construct_requires_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "class-rack", "--p", "5"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["construct", "subrack", "--p", "7", "--m", "7"])
    assert info.value.code == 64


def test_construct_subrack_rejects_foreign_tau(tmp_path, capsys):
    code, _, err = run_cli(
        capsys,
        "construct",
        "subrack",
        "--p",
        "5",
        "--m",
        "5",
        "--tau",
        "(1 2 3 4 6)",
        "--out",
        str(tmp_path / "x.json"),
    )
    assert code == 1
    assert "error:" in err


def test_construct_psl_and_frobenius_reports(capsys):
    code, report, _ = run_json(capsys, "construct", "psl", "--k", "3", "--r", "2", "--json")
    assert code == 0
    assert report["result"]["order"] == 168
    assert report["result"]["degree"] == 7
    assert report["result"]["generators"]
    code, report, _ = run_json(capsys, "construct", "frobenius", "--h", "3", "--json")
    assert code == 0
    assert report["result"]["order"] == 56
    assert report["result"]["degree"] == 8


def test_verify_all_subset(capsys):
    code, out, err = run_cli(capsys, "verify-all", "--criteria", "1,2", "--json")
    assert code == 0
    report = json.loads(out)
    results = report["result"]["criteria"]
    assert [entry["number"] for entry in results] == [1, 2]
    assert all(entry["passed"] for entry in results)


def test_verify_all_rejects_unknown_criterion(capsys):
    code, _, err = run_cli(capsys, "verify-all", "--criteria", "99")
    assert code == 1
    assert "error:" in err


def test_version_flag():
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
