import subprocess
import sys
from pathlib import Path

import pytest

from omegagroups import fileformat as ff
from omegagroups.cli import main
from omegagroups.internal import InternalGroupoid

FIX = Path(__file__).parent / "fixtures"
VALID, BROKEN, MALFORMED = FIX / "valid", FIX / "broken", FIX / "malformed"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_check_clean(capsys):
    code, out, _ = run(capsys, "check", VALID / "z6ring.og")
    assert code == 0 and "OK" in out


def test_check_broken_has_witness(capsys):
    code, out, _ = run(capsys, "check", BROKEN / "broken.og", "--format", "machine")
    assert code == 1
    assert "status=fail" in out
    assert any(line.startswith("witness section=axiom_c") for line in out.splitlines())


def test_cover_emits_two_objects(capsys, tmp_path):
    code, out, err = run(capsys, "cover", VALID / "c4.ig", "--subobject", "0,2")
    assert code == 0
    p = ff.parse(out)
    assert isinstance(p.source, InternalGroupoid) and p.source.gpd.n_objects == 2
    assert "objects=2" in err

    target = tmp_path / "cover.gm"
    code, out, _ = run(capsys, "cover", VALID / "c4.ig", "--subobject", "0,2", "-o", target)
    assert code == 0 and ff.load(target).source.gpd.n_objects == 2


def test_cover_non_subobject(capsys):
    code, out, _ = run(capsys, "cover", VALID / "one_object_f4.ig", "--subobject", "0,1")
    assert code == 1 and "verification" in out


def test_cover_bad_list(capsys):
    code, *_ = run(capsys, "cover", VALID / "c4.ig", "--subobject", "0,x")
    assert code == 2


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate", "x")[0] == 2


def test_missing_file(capsys):
    assert run(capsys, "check", FIX / "nope.og")[0] == 2


def test_wrong_kind(capsys):
    assert run(capsys, "eta", VALID / "z6ring.og")[0] == 2


def test_interchange_failure_exit(capsys):
    code, out, _ = run(capsys, "check", BROKEN / "z4ring_one_object.ig")
    assert code == 1 and "interchange[mul]" in out


def test_delta_eta_pipeline(capsys, tmp_path):
    xm = tmp_path / "x.xm"
    assert run(capsys, "delta", VALID / "eta_z3_z2_inversion.ig", "-o", xm)[0] == 0
    ig = tmp_path / "g.ig"
    assert run(capsys, "eta", xm, "-o", ig)[0] == 0
    assert run(capsys, "roundtrip", xm)[0] == 0
    assert run(capsys, "roundtrip", ig)[0] == 0
    assert run(capsys, "check", ig)[0] == 0


def test_semidirect(capsys):
    code, out, err = run(capsys, "semidirect", VALID / "z2.og", VALID / "z3.og", VALID / "inversion_z2_z3.act")
    assert code == 0 and ff.parse(out).order == 6


def test_semidirect_mismatch(capsys):
    code, *_ = run(capsys, "semidirect", VALID / "z3.og", VALID / "z2.og", VALID / "inversion_z2_z3.act")
    assert code == 2


def test_classify_and_subobjects(capsys):
    code, out, _ = run(capsys, "classify", VALID / "one_object_f4.ig", "--format", "machine")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("subgroup ")]
    assert len(lines) == 5 and sum("liftable=yes" in l for l in lines) == 2
    code, out, _ = run(capsys, "subobjects", VALID / "z6ring.og")
    assert code == 0 and "count: 4" in out


def test_identities_flag(capsys, tmp_path):
    ids = tmp_path / "comm.txt"
    ids.write_text("(+ a b) = (+ b a)\n")
    assert run(capsys, "check", VALID / "c5.og", "--identities", ids)[0] == 0
    code, out, _ = run(capsys, "check", VALID / "s3.og", "--identities", ids)
    assert code == 1 and "(+ a b) = (+ b a)" in out
    ids.write_text("(+ a b\n")
    assert run(capsys, "check", VALID / "c5.og", "--identities", ids)[0] == 2


def test_max_witnesses(capsys):
    _, out, _ = run(capsys, "check", BROKEN / "z4ring_one_object.ig", "--format", "machine", "--max-witnesses", "3")
    assert sum(l.startswith("witness ") for l in out.splitlines()) == 3


def test_machine_output_deterministic(capsys):
    first = run(capsys, "check", BROKEN / "broken.og", "--format", "machine")
    second = run(capsys, "check", BROKEN / "broken.og", "--format", "machine")
    assert first == second
    assert first[1].splitlines()[0] == "command=check"
    assert first[1].splitlines()[-1] == "exit=1"


@pytest.mark.parametrize("path", sorted(MALFORMED.iterdir()), ids=lambda p: p.name)
def test_malformed_exit_2(capsys, path):
    assert run(capsys, "check", path)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "omegagroups", "check", str(VALID / "z6ring.og")], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "OK" in proc.stdout
