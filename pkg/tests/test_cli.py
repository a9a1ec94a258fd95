import json
from pathlib import Path

import pytest

from chargemeas.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from chargemeas.measurability import PROPERTIES

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

# one character per property in PROPERTIES order: 1 holds, 0 fails, - input error
VERDICTS = {
    "fix1": "11111111111",
    "fix2": "00100000000",
    "fix2-short": "00100000000",
    "fix3": "11111011111",
    "fix4": "00011-11110",
    "fix5": "00100-00000",
    "fix6": "11111-11111",
    "fix7-atom": "001000-----",
    "product": "111111-----",
}
CODES = {"1": EXIT_OK, "0": EXIT_FAIL, "-": EXIT_INPUT}


def inst(name: str) -> str:
    return str(INSTANCES / f"{name}.inst")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_every_instance_file_is_pinned():
    names = {p.stem for p in INSTANCES.glob("*.inst")} - {"bad-weight"}
    assert names == set(VERDICTS)


@pytest.mark.parametrize("name", sorted(VERDICTS))
def test_pinned_verdicts(capsys, name):
    got = ""
    for prop in PROPERTIES:
        code, _, _ = run(capsys, "--machine", "decide", prop, inst(name))
        got += {v: k for k, v in CODES.items()}[code]
    assert got == VERDICTS[name]


def test_decide_fix2_t2_reports_infimum(capsys):
    code, out, _ = run(capsys, "decide", "t2", inst("fix2"))
    assert code == EXIT_FAIL
    assert "infimum      2" in out
    assert "r=1/2" in out


def test_machine_flag_before_or_after_subcommand(capsys):
    _, before, _ = run(capsys, "--machine", "decide", "t2", inst("fix2"))
    _, after, _ = run(capsys, "decide", "t2", inst("fix2"), "--machine")
    assert before == after
    rec = records(before)[0]
    assert rec["holds"] is False and rec["infimum"] == "2"


def test_output_is_byte_stable(capsys):
    outs = {run(capsys, "--machine", "search", "C3", "--max-points", "1")[1] for _ in range(2)}
    assert len(outs) == 1


def test_certify_replays(capsys):
    code, out, _ = run(capsys, "--machine", "certify", "base", inst("fix6"))
    rec = records(out)[0]
    assert code == EXIT_OK and rec["replay"] == "ok" and rec["cutoff"] == 16


def test_phi_progression(capsys):
    code, out, _ = run(capsys, "--machine", "phi", inst("fix4"))
    assert code == EXIT_OK
    rec = records(out)[0]
    assert rec["progression"] == {"start": "0", "step": "1", "value": "1"}
    assert rec["support"] == {} and rec["infinite"] == []


def test_phi_needs_real_codomain(capsys):
    code, _, err = run(capsys, "phi", inst("fix7-atom"))
    assert code == EXIT_INPUT and "rational line" in err


def test_complete(capsys):
    code, out, _ = run(capsys, "--machine", "complete", inst("fix3"), "[a]")
    rec = records(out)[0]
    assert code == EXIT_OK and rec["in_completion"] and not rec["in_field"]
    code, out, _ = run(capsys, "--machine", "complete", inst("fix2"), "[b]")
    rec = records(out)[0]
    assert code == EXIT_FAIL and rec["sandwich"]["gap"] == "2"
    code, out, _ = run(capsys, "--machine", "complete", inst("fix4"), "residues", "2", "[0]", "from", "0")
    assert code == EXIT_FAIL
    # mass at infinity keeps the evens out of the completion
    code, out, _ = run(capsys, "--machine", "complete", inst("fix6"), "residues", "2", "[0]", "from", "0")
    assert code == EXIT_FAIL and records(out)[0]["sandwich"]["gap"] == "1"
    code, out, _ = run(capsys, "--machine", "complete", inst("fix6"), "cofinite", "[0]")
    assert code == EXIT_OK and records(out)[0]["charge"] == "1"


def test_input_errors(capsys):
    code, _, err = run(capsys, "decide", "t2", inst("bad-weight"))
    assert code == EXIT_INPUT and "line 4" in err
    assert run(capsys, "decide", "nonsense", inst("fix1"))[0] == EXIT_INPUT
    assert run(capsys, "decide", "t2", "no/such/file.inst")[0] == EXIT_INPUT
    assert run(capsys, "complete", inst("fix2"), "[z]")[0] == EXIT_INPUT
    assert run(capsys, "suite", "S42", "--max-points", "1")[0] == EXIT_INPUT
    assert run(capsys, "frobnicate")[0] == EXIT_INPUT


def test_machine_errors_are_json(capsys):
    code, out, _ = run(capsys, "--machine", "decide", "nonsense", inst("fix1"))
    assert code == EXIT_INPUT and records(out)[0]["error"] == "input"


def test_cap(capsys, tmp_path):
    # thirteen singleton generators give 2^13 field sets, above the cap
    pts = [f"p{i}" for i in range(13)]
    path = tmp_path / "big.inst"
    path.write_text("[space]\nkind = finite\n"
                    f"points = [{', '.join(pts)}]\n"
                    f"generators = [{', '.join(f'[{p}]' for p in pts)}]\n"
                    "\n[codomain]\nkind = rational-line\n\n[function]\n"
                    + "".join(f"{p} = 0\n" for p in pts))
    code, _, err = run(capsys, "decide", "t2", str(path))
    assert code == EXIT_CAP, err
    assert run(capsys, "suite", "S1", "--max-points", "6")[0] == EXIT_CAP


def test_suite_command(capsys):
    code, out, _ = run(capsys, "--machine", "suite", "S1", "--max-points", "2", "--no-fincof")
    rec = records(out)[0]
    assert code == EXIT_OK and rec["passed"] and rec["checked"] > 0 and "wall" not in rec
    code, out, _ = run(capsys, "--machine", "--timing", "suite", "s1", "--max-points", "1")
    assert "wall" in records(out)[0]


def test_search_command(capsys):
    code, out, _ = run(capsys, "--machine", "search", "C1", "--max-points", "2")
    rec = records(out)[0]
    assert code == EXIT_OK and rec["witness"] == "FIX3" and rec["facts"] == {"complete": False}
