import json

import pytest

from latcensus.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_both_matches_example(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--n", "2", "--V", "4", "--mode", "cyclic", "--method", "both"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == "14" and doc["oracle_count"] == "14"
    assert "prediction" in doc and "ratio" in doc


def test_count_all_trivial(capsys):
    code, out, _ = run_cli(capsys, "count", "--n", "2", "--V", "1", "--mode", "all")
    assert code == 0
    assert json.loads(out)["count"] == "1"


def test_count_rank_mode_both(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--n", "2", "--V", "4", "--mode", "rank", "--rank", "2",
        "--method", "both",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == "1" and doc["oracle_count"] == "1"


def test_count_usage_errors(capsys):
    code, _, err = run_cli(capsys, "count", "--n", "1", "--V", "4", "--mode", "cyclic")
    assert code == 64 and "--mode" in err
    code, _, err = run_cli(
        capsys, "count", "--n", "2", "--V", "4", "--mode", "rank", "--method", "formula"
    )
    assert code == 64
    with pytest.raises(SystemExit) as exc:
        main(["count", "--n", "2"])  # missing --V
    assert exc.value.code == 64


def test_count_csv_ladder(capsys):
    code, out, _ = run_cli(
        capsys, "count", "--n", "2", "--V", "40", "--format", "csv", "--ladder", "4"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "V,count,prediction,ratio"
    assert len(lines) == 5
    assert lines[1].split(",")[0] == "10"


def test_constants_theta(capsys):
    code, out, _ = run_cli(capsys, "constants", "--name", "theta")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "theta"
    assert doc["value"].startswith("1.94359")
    assert float(doc["err"]) <= 1e-10
    assert doc["prime_cutoff"] is None


def test_constants_underscore_alias(capsys):
    code, out, _ = run_cli(capsys, "constants", "--name", "rho_n", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "rho-n"
    assert doc["prime_cutoff"] is not None


def test_constants_density(capsys):
    code, out, _ = run_cli(capsys, "constants", "--name", "density-cocyclic")
    assert code == 0
    assert json.loads(out)["value"].startswith("0.8469")


def test_constants_unknown_name(capsys):
    code, _, err = run_cli(capsys, "constants", "--name", "bogus")
    assert code == 64 and "unknown constant" in err


def test_sample_deterministic_and_valid(capsys):
    code, out1, _ = run_cli(
        capsys, "sample", "--n", "2", "--q", "2", "--seed", "1", "--count", "3"
    )
    assert code == 0
    code, out2, _ = run_cli(
        capsys, "sample", "--n", "2", "--q", "2", "--seed", "1", "--count", "3"
    )
    assert out1 == out2
    allowed = {((1, 0), (0, 2)), ((1, 1), (0, 2)), ((2, 0), (0, 1))}
    for line in out1.strip().splitlines():
        doc = json.loads(line)
        assert tuple(map(tuple, doc["rows"])) in allowed


def test_sample_identity_for_q1(capsys):
    code, out, _ = run_cli(capsys, "sample", "--n", "4", "--q", "1", "--count", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"] == [[1 if i == j else 0 for j in range(4)] for i in range(4)]


def test_sample_random_seed_goes_to_stderr(capsys):
    code, out, err = run_cli(capsys, "sample", "--n", "2", "--q", "3", "--count", "1")
    assert code == 0
    assert "seed:" in err
    json.loads(out)


def test_enumerate(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--n", "2", "--q", "2")
    assert code == 0
    rows = [json.loads(line)["rows"] for line in out.strip().splitlines()]
    assert rows == [[[1, 0], [0, 2]], [[1, 1], [0, 2]], [[2, 0], [0, 1]]]
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--q", "4", "--count-only")
    assert code == 0
    assert json.loads(out)["count"] == "35"


def test_enumerate_cap_exit_code(capsys):
    code, _, err = run_cli(capsys, "enumerate", "--n", "4", "--q", "60", "--cap", "10")
    assert code == 2 and "cap" in err.lower()


def test_clmass_exact(capsys):
    code, out, _ = run_cli(capsys, "clmass", "--V", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["total_mass"] == {
        "value": "2.5", "err": "0", "exact": True, "fraction": "5/2",
    }
    code, out, _ = run_cli(capsys, "clmass", "--V", "4", "--predicate", "cyclic")
    doc = json.loads(out)
    assert doc["predicate_mass"]["fraction"] == "3/1"  # 1 + 1 + 1/2 + 1/2


def test_groups_dump(capsys):
    code, out, _ = run_cli(capsys, "groups", "--V", "4", "--dump")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "order,decomposition,aut_order,rank"
    assert len(lines) == 6  # header + 5 census rows
    assert lines[-1] == "4,2*2,6,2"


def test_groups_summary(capsys):
    code, out, _ = run_cli(capsys, "groups", "--V", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["classes"] == "11" and doc["cyclic_classes"] == "8"


def test_json_outputs_round_trip(capsys):
    for argv in (
        ["count", "--n", "2", "--V", "6"],
        ["constants", "--name", "rho"],
        ["clmass", "--V", "5"],
        ["groups", "--V", "6"],
    ):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        line = out.strip()
        assert json.dumps(json.loads(line)) == line


def test_verify_sampler_suite(capsys):
    code, out, err = run_cli(capsys, "verify", "--suite", "sampler")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    assert "lattice.sampler-uniformity" in doc["passed"]
    assert "running" in err


def test_verify_failure_exits_one_with_identifier(capsys, monkeypatch):
    import latcensus.verifysuite as vs

    def boom():
        vs._fail("demo.failing-check", "synthetic failure")

    monkeypatch.setitem(vs.CHECKS, "demo.failing-check", ("sampler", boom))
    code, out, _ = run_cli(capsys, "verify", "--suite", "sampler")
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False and doc["failed"] == "demo.failing-check"


def test_count_cap_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "count", "--n", "2", "--V", "100000", "--mode", "cyclic",
        "--method", "bruteforce",
    )
    assert code == 2 and "cap" in err


def test_determinism_across_runs(capsys):
    outs = set()
    for _ in range(2):
        _, out, _ = run_cli(capsys, "count", "--n", "3", "--V", "50", "--method", "both")
        outs.add(out)
    assert len(outs) == 1
