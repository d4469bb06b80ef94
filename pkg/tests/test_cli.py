import json

import pytest

from wreathdc.cli import main


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WREATHDC_CACHE", str(tmp_path / "cache"))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_ball_example15(capsys, tmp_path):
    code, out = run(capsys, "ball", "--preset", "example15", "--n", "3", "--out", str(tmp_path))
    assert code == 0
    assert out.out.splitlines()[-1] == "3\t99"
    assert (tmp_path / "growth.csv").exists()
    assert list((tmp_path / "cache").iterdir())


def test_ball_lamplighter(capsys, tmp_path):
    code, out = run(capsys, "ball", "--n", "2", "--out", str(tmp_path))
    assert code == 0 and out.out.splitlines()[-1] == "2\t10"


def test_ball_trivial_group(capsys, tmp_path):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"shape": "direct", "H": {"kind": "cyclic", "m": 1},
                               "generators": []}))
    code, out = run(capsys, "ball", "--group", str(cfg), "--n", "4", "--out", str(tmp_path))
    assert code == 0
    assert [line.split("\t")[1] for line in out.out.splitlines()] == ["1"] * 5


def test_ball_cap(capsys, tmp_path):
    code, out = run(capsys, "ball", "--n", "20", "--element-cap", "500", "--out", str(tmp_path))
    assert code == 3 and "last completed radius: 8" in out.err


def test_group_file_with_gens(capsys, tmp_path):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"kind": "cyclic", "m": 2}))
    code, out = run(capsys, "ball", "--group", str(cfg), "--gens", "a@4 t^-3", "t^-2", "a@0",
                    "--n", "1", "--out", str(tmp_path))
    assert code == 0 and out.out.splitlines()[-1] == "1\t6"


def test_itinerary_command(capsys):
    code, out = run(capsys, "itinerary", "--preset", "paper-S5", "2,5,1,4,4,5,4,5,4")
    assert code == 0
    assert "a@-1 a@1 a@2 a@6 t^3" in out.out
    assert "maxit    5" in out.out and "minit    -3" in out.out


def test_nf_command(capsys):
    code, out = run(capsys, "nf", "a@-1 a@1")
    assert code == 0 and "length       6" in out.out


@pytest.mark.parametrize("suite", ["nf", "lemma34", "lemma25"])
def test_verify_passes(capsys, tmp_path, suite):
    code, out = run(capsys, "verify", suite, "--preset", "lamplighter5", "--n", "8",
                    "--out", str(tmp_path))
    assert code == 0, out.out
    report = json.loads((tmp_path / f"verify-{suite}.json").read_text())
    assert report["failure_count"] == 0 and report["lemma"] == suite


def test_verify_empty_flow_fails(capsys, tmp_path):
    code, out = run(capsys, "verify", "lemma34", "--n", "8", "--out", str(tmp_path))
    assert code == 1 and out.out.startswith("FAIL")


def test_verify_identity_u(capsys, tmp_path):
    code, out = run(capsys, "verify", "lemma37", "--u", "1", "--n", "6", "--out", str(tmp_path))
    assert code == 2 and "identity" in out.err


def test_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "lemma99"])
    assert exc.value.code == 2


def test_analyze_dc_s3(capsys, tmp_path):
    cfg = tmp_path / "s3.json"
    H = {"kind": "table", "elements": ["012", "021", "102", "120", "201", "210"],
         "table": [[0, 1, 2, 3, 4, 5], [1, 0, 4, 5, 2, 3], [2, 3, 0, 1, 5, 4],
                   [3, 2, 5, 4, 0, 1], [4, 5, 1, 0, 3, 2], [5, 4, 3, 2, 1, 0]],
         "generators": ["102", "120"]}
    cfg.write_text(json.dumps({"shape": "direct", "H": H, "generators": ["102", "120"]}))
    code, out = run(capsys, "analyze", "dc", "--group", str(cfg), "--n", "3", "--out", str(tmp_path))
    assert code == 0
    last = (tmp_path / "dc.csv").read_text().splitlines()[-1]
    assert last.endswith(",0.5")


def test_analyze_density_example15(capsys, tmp_path):
    code, out = run(capsys, "analyze", "density", "--preset", "example15", "--n", "6",
                    "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "density.csv").read_text().splitlines()[-1] == "6,2901,1457,0.502240606687"


def test_analyze_asymptotics(capsys, tmp_path):
    code, out = run(capsys, "analyze", "asymptotics", "--alpha", "1", "--out", str(tmp_path))
    assert code == 0 and out.out.strip() == "limit 4"


def test_analyze_partition(capsys, tmp_path):
    code, _ = run(capsys, "analyze", "partition", "--n", "6", "--out", str(tmp_path))
    header = (tmp_path / "partition.csv").read_text().splitlines()[0]
    assert code == 0 and header == "n,ball_size,N_count,R_q,R_q_flat,R_q_f,q_n"


def test_analyze_dc_budget(capsys, tmp_path):
    code, out = run(capsys, "analyze", "dc", "--n", "8", "--n-min", "4", "--pair-budget",
                    "100000", "--out", str(tmp_path))
    assert code == 1 and "radius 7" in out.err


def test_export_is_deterministic(capsys, tmp_path):
    run(capsys, "export", "--n", "5", "--out", str(tmp_path / "a"))
    run(capsys, "export", "--n", "5", "--out", str(tmp_path / "b"))
    for name in ("ball.csv", "generators.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_preset_conflicts_with_group(capsys, tmp_path):
    code, out = run(capsys, "ball", "--preset", "lamplighter", "--gens", "t")
    assert code == 2
