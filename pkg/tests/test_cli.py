"""Command-line surface: exit codes, report formats, determinism.

Exit code contract: 0 all checks pass, 2 a check failed, 64 usage,
65 capacity, 66 malformed data.  Reports are integer-valued throughout,
so repeated runs must be byte identical.
"""

import json

import pytest

from grlat.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_monoid_free_group(capsys):
    code, out, _ = run(["monoid", "9"], capsys)
    assert code == 0
    assert "results.verdict\tFREE" in out
    assert "verdict\tpass" in out


def test_monoid_not_free_group(capsys):
    code, out, _ = run(["monoid", "3,6"], capsys)
    assert code == 0
    assert "results.verdict\tNOT-FREE" in out
    assert "verdict\tpass" in out


def test_monoid_json_roundtrip(capsys):
    code, out, _ = run(["monoid", "9", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "monoid"
    assert report["results"]["verdict"] == "FREE"
    assert report["verdict"] == "pass"
    assert report["config"]["bound"] == 3
    assert report["config"]["bound_reduced"] == 0


def test_bad_group_spec(capsys):
    code, _, err = run(["monoid", "abc"], capsys)
    assert code == 64 and "usage error" in err
    code, _, err = run(["monoid", "0"], capsys)
    assert code == 64


def test_argparse_errors_use_usage_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--p", "3"])  # missing --r
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 64


def test_verify_default_checks_cyclic(capsys):
    code, out, _ = run(["verify", "9"], capsys)
    assert code == 0
    assert "verdict\tpass" in out
    # cyclic prime-power group: every check applies by default
    assert "config.checks\ttate,kernel,ext,triviality,unit" in out


def test_verify_default_checks_mixed(capsys):
    code, out, _ = run(["verify", "3,3", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    checks = report["config"]["checks"].split(",")
    assert "kernel" not in checks  # needs a cyclic group
    assert "tate" in checks and "triviality" in checks
    assert report["verdict"] == "pass"


def test_verify_unknown_check(capsys):
    code, _, err = run(["verify", "9", "--checks", "bogus"], capsys)
    assert code == 64 and "usage error" in err


def test_verify_inapplicable_check(capsys):
    code, _, err = run(["verify", "3,3", "--checks", "kernel"], capsys)
    assert code == 64


def test_verify_propfree_alias(capsys):
    code_alias, out_alias, _ = run(["verify", "9", "--checks", "propfree"], capsys)
    code_plain, out_plain, _ = run(["verify", "9", "--checks", "triviality"], capsys)
    assert code_alias == code_plain == 0
    assert out_alias == out_plain
    assert "config.checks\ttriviality" in out_alias


def test_verify_byte_identical_repeat(capsys):
    first = run(["verify", "9"], capsys)
    second = run(["verify", "9"], capsys)
    assert first == second
    jfirst = run(["verify", "9", "--json"], capsys)
    jsecond = run(["verify", "9", "--json"], capsys)
    assert jfirst == jsecond


def test_spectrum_report(capsys):
    code, out, _ = run(
        ["spectrum", "--p", "3", "--r", "2", "--samples", "12", "--seed", "7", "--json"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["passes"]["oracle_identity"] == 12
    assert report["results"]["passes"]["claims"] == 12
    assert all(t % 2 == 0 or t > 6 for t in report["results"]["attained"])


def test_spectrum_usage_errors(capsys):
    code, _, err = run(["spectrum", "--p", "4", "--r", "2"], capsys)
    assert code == 64 and "usage error" in err
    code, _, _ = run(["spectrum", "--p", "3", "--r", "0"], capsys)
    assert code == 64


def test_ingest_bundled_table(capsys):
    code, out, _ = run(["ingest", "@bundled", "--p", "3", "--r", "2"], capsys)
    assert code == 0
    assert "results.attained\t2,4,6,7,8,9,10,11" in out
    assert "verdict\tpass" in out


def write_table(tmp_path, rows, header="q,field_tag,ord_value"):
    path = tmp_path / "table.csv"
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
    return str(path)


def test_ingest_data_errors(tmp_path, capsys):
    bad_header = write_table(tmp_path, ["19,-4,2"], header="q,tag,ord")
    code, _, err = run(["ingest", bad_header, "--p", "3", "--r", "2"], capsys)
    assert code == 66 and "row 0" in err

    non_integer = write_table(tmp_path, ["x,-4,2"])
    code, _, err = run(["ingest", non_integer, "--p", "3", "--r", "2"], capsys)
    assert code == 66 and "row 1" in err

    composite = write_table(tmp_path, ["19,-4,2", "21,-4,2"])
    code, _, err = run(["ingest", composite, "--p", "3", "--r", "2"], capsys)
    assert code == 66 and "row 2" in err

    negative = write_table(tmp_path, ["19,-4,-2"])
    code, _, err = run(["ingest", negative, "--p", "3", "--r", "2"], capsys)
    assert code == 66

    missing = str(tmp_path / "absent.csv")
    code, _, err = run(["ingest", missing, "--p", "3", "--r", "2"], capsys)
    assert code == 66


def test_ingest_check_failures(tmp_path, capsys):
    # ord 5 is odd and below the tail, so membership fails
    odd = write_table(tmp_path, ["19,-4,5"])
    code, out, _ = run(["ingest", odd, "--p", "3", "--r", "2"], capsys)
    assert code == 2
    assert "fail:membership" in out

    # 17 = 8 mod 9 breaks the congruence
    wrong_class = write_table(tmp_path, ["17,-4,2"])
    code, out, _ = run(["ingest", wrong_class, "--p", "3", "--r", "2"], capsys)
    assert code == 2
    assert "fail:congruence" in out


def test_ingest_passing_table(tmp_path, capsys):
    good = write_table(tmp_path, ["19,-4,2", "37,-8,4", "109,-20,9"])
    code, out, _ = run(["ingest", good, "--p", "3", "--r", "2"], capsys)
    assert code == 0
    assert "results.rowcount\t3" in out
    assert "results.attained\t2,4,9" in out
