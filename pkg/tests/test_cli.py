import json

import pytest

from qthook.cli import main


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_hook_exact(capsys):
    code, out, _ = run_cli(["verify", "hook", "--family", "shifted",
                            "--alpha", "2,1", "--degree", "3",
                            "--mode", "exact"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["result"] == "pass"
    assert report["schemaVersion"] == 1
    assert report["check"] == "hook" and report["D"] == 3


def test_verify_hook_eval_seeded(capsys):
    argv = ["verify", "hook", "--family", "bird", "--alpha", "2,1",
            "--beta", "2,1", "--f", "1", "--degree", "3", "--mode", "eval",
            "--points", "3", "--seed", "42"]
    code, out1, _ = run_cli(argv, capsys)
    assert code == 0
    code, out2, _ = run_cli(argv, capsys)
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("elapsedMs"), d2.pop("elapsedMs")
    assert d1 == d2  # byte-identical modulo timing


def test_verify_hook_usage_error(capsys):
    code, _, err = run_cli(["verify", "hook", "--family", "bird",
                            "--alpha", "2", "--beta", "2,1", "--f", "1",
                            "--degree", "3"], capsys)
    assert code == 2
    assert "length 2" in err


def test_verify_identity(capsys):
    code, out, _ = run_cli(["verify", "identity", "--name", "gasper",
                            "--trials", "10", "--seed", "7"], capsys)
    assert code == 0
    assert json.loads(out)["result"] == "pass"
    code, out, _ = run_cli(["verify", "identity", "--name", "lemma"], capsys)
    assert code == 0


def test_verify_identity_unknown(capsys):
    code, _, err = run_cli(["verify", "identity", "--name", "nonsuch"], capsys)
    assert code == 2


def test_show_poset_dot(capsys):
    code, out, _ = run_cli(["show", "poset", "--family", "banner",
                            "--alpha", "9,6,3,2", "--f", "2",
                            "--format", "dot"], capsys)
    assert code == 0
    assert out.startswith("digraph hasse")
    # 22 vertices in this banner
    assert out.count("label=") == 22
    assert '(4,3):zm1' in out


def test_show_poset_json(capsys):
    code, out, _ = run_cli(["show", "poset", "--family", "bird",
                            "--alpha", "4,3", "--beta", "3,2", "--f", "2",
                            "--format", "json"], capsys)
    assert code == 0
    d = json.loads(out)
    assert d["dComplete"] is True
    assert d["hookAgreement"] is True
    assert len(d["elements"]) == 14
    assert any(iv["k"] == 3 for iv in d["dkIntervals"])


def test_show_hooks(capsys):
    code, out, _ = run_cli(["show", "hooks", "--family", "shifted",
                            "--alpha", "2,1"], capsys)
    assert code == 0
    d = json.loads(out)
    assert len(d["hooks"]) == 3 and d["agreement"] is True


def test_show_missing_family(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["show", "poset", "--format", "json"])
    assert exc.value.code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, _ = run_cli(["verify", "hook", "--family", "shifted",
                          "--alpha", "1", "--degree", "4",
                          "--mode", "eval", "--points", "2",
                          "--seed", "5", "--out", str(path)], capsys)
    assert code == 0
    report = json.loads(path.read_text())
    assert report["result"] == "pass"
    assert len(report["points"]) == 2


@pytest.mark.slow
def test_verify_all_desk_profile(capsys):
    code, out, err = run_cli(["verify", "all", "--profile", "desk",
                              "--seed", "0"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "pass"
    # all hook instances plus every named identity
    assert len(payload["checks"]) == len(suites_all_expected())
    assert "PASS" in err


def suites_all_expected():
    from qthook.suites import DESK_HOOKS, IDENTITY_NAMES

    return DESK_HOOKS + [(n,) for n in IDENTITY_NAMES]
