import json

import pytest

from concat_reach_core import cli
from concat_reach_core.analysis import ReachReport
from concat_reach_core.certificates import CompletenessVerdict
from concat_reach_core.witnesses import SWEEP_COLUMNS, FamilyReport

LOOP = "dfa L\nstates 1\nalphabet a b\nfinal 1\na: id\nb: id\n"
WIDE_LOOP = "dfa W\nstates 1\nalphabet a b c\nfinal 1\na: id\nb: id\nc: id\n"
CROSSING = "dfa X\nstates 3\nalphabet a b\nfinal 3\na: [2,2,1]\nb: [3,3,1]\n"
CROSSING_CERT = "focus 1'\nbase {1}\ntarget {1..n}\nentry 2: a\nentry 3: b\n"
WRONG_CERT = "focus 1'\nbase {1}\ntarget {1..n}\nentry 2: a\nentry 3: a\n"
OFF_ALPHABET_CERT = "focus 1'\nbase {1}\ntarget {1..n}\nentry 2: a\nentry 3: cb\n"


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def _write(directory, name, text):
    path = directory / name
    path.write_text(text, encoding="utf8")
    return str(path)


def _operands(files):
    return ["--A", files["A"], "--B", files["B"]]


def test_analyze(maslov_files, capsys):
    assert cli.run(["analyze", *_operands(maslov_files)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "reachable\t20" in out
    assert "classes\t20" in out
    assert "bound\t20" in out
    assert "mode\trestricted" in out
    assert "focus 3'\t4" in out


def test_analyze_json(maslov_files, capsys):
    assert cli.run(["analyze", "--json", *_operands(maslov_files)]) == 0
    report = ReachReport.from_dict(json.loads(capsys.readouterr().out))
    assert report.reachable_count == 20
    assert len(report.states) == 20


def test_analyze_mode_override(maslov_files, capsys):
    assert cli.run(["analyze", *_operands(maslov_files), "--mode", "unrestricted"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "bound\t28" in out


def test_build_concat(maslov_files, capsys):
    assert cli.run(["build-concat", *_operands(maslov_files), "--emit", "dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph {")
    assert cli.run(["build-concat", *_operands(maslov_files)]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 21


def test_check_cert(maslov_files, capsys):
    argv = ["check-cert", *_operands(maslov_files), "--cert", maslov_files["cert"]]
    assert cli.run(argv + ["--order-oracle", "--synthesize", "{2,3}"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "complete\tyes" in out
    assert "via\tcor-complete-form-3" in out
    assert "order\t1 2 3" in out
    assert "oracle agrees\tyes" in out
    assert "word\taaabaaab" in out
    assert "reaches\t(1',{2,3})" in out


def test_check_cert_json(maslov_files, capsys):
    argv = ["check-cert", "--json", *_operands(maslov_files), "--cert", maslov_files["cert"]]
    assert cli.run(argv) == 0
    document = json.loads(capsys.readouterr().out)
    verdict = CompletenessVerdict.from_dict(document["verdict"])
    assert verdict.holds
    assert verdict.to_dict() == document["verdict"]


def test_check_cert_off_shared_alphabet(tmp_path, capsys):
    files = {
        "A": _write(tmp_path, "wide.dfa", WIDE_LOOP),
        "B": _write(tmp_path, "crossing.dfa", CROSSING),
    }
    cert = _write(tmp_path, "off.cert", OFF_ALPHABET_CERT)
    assert cli.run(["check-cert", *_operands(files), "--cert", cert]) == 1
    captured = capsys.readouterr()
    assert "complete\tno" in captured.out.splitlines()
    assert "shared alphabet" in captured.err


def test_decide_complete(maslov_files, tmp_path, capsys):
    assert cli.run(["decide-complete", *_operands(maslov_files), "--cert", maslov_files["cert"]]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:3] == ["1 before 2", "1 before 3", "2 before 3"]
    assert "via\tdecided" in out

    files = {
        "A": _write(tmp_path, "loop.dfa", LOOP),
        "B": _write(tmp_path, "crossing.dfa", CROSSING),
    }
    cert = _write(tmp_path, "crossing.cert", CROSSING_CERT)
    assert cli.run(["decide-complete", *_operands(files), "--cert", cert]) == 1
    out = capsys.readouterr().out.splitlines()
    assert "complete\tno" in out
    assert "cycle\t3 -> 2 -> 3" in out


def test_decide_complete_rejects_invalid_entries(tmp_path, capsys):
    files = {
        "A": _write(tmp_path, "loop.dfa", LOOP),
        "B": _write(tmp_path, "crossing.dfa", CROSSING),
    }
    cert = _write(tmp_path, "wrong.cert", WRONG_CERT)
    argv = ["decide-complete", *_operands(files), "--cert", cert]
    assert cli.run(argv) == 1
    captured = capsys.readouterr()
    out = captured.out.splitlines()
    assert "complete\tno" in out
    assert not any("before" in line for line in out)
    assert "entry 3: word a reaches (1',{1,2})" in captured.err

    assert cli.run(argv + ["--json"]) == 1
    document = json.loads(capsys.readouterr().out)
    assert document["edges"] == []
    assert not document["verdict"]["complete"]
    assert len(document["diagnostics"]) == 1


def test_synthesize(maslov_files, capsys):
    argv = ["synthesize", *_operands(maslov_files), "--cert", maslov_files["cert"]]
    assert cli.run(argv + ["--set", "{2,3}", "--bfs"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "word\taaabaaab" in out
    assert "reaches\t(1',{2,3})" in out
    assert "from_initial_reaches\t(1',{2,3})" in out
    assert any(line.startswith("bfs\t") for line in out)


def test_synthesize_outside_the_target(maslov_files, capsys):
    argv = ["synthesize", *_operands(maslov_files), "--cert", maslov_files["cert"]]
    assert cli.run(argv + ["--set", "{4}"]) == 2


def test_verify_family(capsys):
    assert cli.run(["verify-family", "--name", "reg-mas70", "--m", "3", "--n", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "match\t20/20 yes" in out
    assert "cert-via\tcor-complete-form-3" in out
    assert "verified\tyes" in out
    assert not any(line.startswith("erratum") for line in out)


def test_verify_family_erratum(capsys):
    assert cli.run(["verify-family", "--name", "suffixfree-hasa09", "--m", "4", "--n", "4"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "formula\t13" in out
    assert "classes\t11" in out
    assert "expected classes\t11" in out
    assert any(line.startswith("erratum\t") for line in out)
    assert "verified\tyes" in out


def test_verify_family_json(capsys):
    assert cli.run(["verify-family", "--json", "--name", "reg-brz13", "--m", "3", "--n", "4"]) == 0
    document = json.loads(capsys.readouterr().out)
    report = FamilyReport.from_dict(document)
    assert report.to_dict() == document
    assert report.matches


def test_verify_family_constraint(capsys):
    assert cli.run(["verify-family", "--name", "nonret-brda17", "--m", "3", "--n", "3"]) == 2
    assert "requires m >= 4" in capsys.readouterr().err


def test_sweep(capsys):
    argv = ["sweep", "--m", "2..3", "--n", "3", "--name", "reg-mas70", "--workers", "1"]
    assert cli.run(argv) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "\t".join(SWEEP_COLUMNS)
    assert out[1:] == ["reg-mas70\t3\t3\t20\t20\tyes\t20\tcor-complete-form-3"]


def test_enumerate(maslov_files, capsys):
    assert cli.run(["enumerate", *_operands(maslov_files), "--k", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[-1] == "equal\tyes"


def test_enumerate_single_state_loops(tmp_path, capsys):
    one = "dfa U\nstates 1\nalphabet a\nfinal 1\na: id\n"
    files = {"A": _write(tmp_path, "u.dfa", one), "B": _write(tmp_path, "v.dfa", one)}
    assert cli.run(["enumerate", *_operands(files), "--k", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["dfa\t3\tε a aa", "nfa\t3\tε a aa", "direct\t3\tε a aa", "equal\tyes"]


def test_enumerate_limit(maslov_files, tmp_path, capsys):
    assert cli.run(["enumerate", *_operands(maslov_files), "--k", "13"]) == 2
    assert "enumeration limit" in capsys.readouterr().err

    env_file = _write(tmp_path, "limits.env", "CONCAT_REACH_MAX_ENUMERATE=4\n")
    argv = ["enumerate", "--env-file", env_file, *_operands(maslov_files), "--k", "5"]
    assert cli.run(argv) == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["analyze", "--A", "a.dfa"],
        ["verify-family", "--name", "reg-nothing", "--m", "3", "--n", "3"],
        ["sweep", "--m", "x..y", "--n", "3"],
        ["analyze", "--A", "missing.dfa", "--B", "missing.dfa"],
    ],
)
def test_usage_errors(argv):
    assert cli.run(argv) == 2


def test_parse_errors_exit_2(tmp_path, capsys):
    files = {
        "A": _write(tmp_path, "bad.dfa", "dfa Z\nstates 2\nalphabet a\na: (1,3)\n"),
        "B": _write(tmp_path, "loop.dfa", LOOP),
    }
    assert cli.run(["analyze", *_operands(files)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_help_exits_cleanly(capsys):
    assert cli.run(["--help"]) == 0
    assert "verify-family" in capsys.readouterr().out
