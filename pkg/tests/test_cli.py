import json
import subprocess
import sys

import pytest

from hgs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_a4(capsys):
    code, out, _ = run(capsys, "count", "A4", "A4", "--format", "json")
    assert code == 0 and json.loads(out) == [{"G": "A4", "N": "A4", "e": 10}]


def test_count_all_csv(capsys):
    code, out, _ = run(capsys, "count", "C4", "all", "--format", "csv")
    assert out.splitlines() == ["G,N,e", "C4,C4,1", "C4,C2xC2,1"]
    code, out, _ = run(capsys, "count", "C2xC2", "C4", "--format", "json")
    assert json.loads(out)[0]["e"] == 3


def test_count_order_mismatch(capsys):
    code, _, err = run(capsys, "count", "C4", "C6")
    assert code == 2 and len(err.strip().splitlines()) == 1


def test_bad_spec(capsys):
    code, _, err = run(capsys, "enumerate", "X9")
    assert code == 2 and err.startswith("hgs:")


def test_cap_exit(capsys):
    code, _, err = run(capsys, "count", "C5", "C5", "--max-hol-order", "4")
    assert code == 3 and "max-hol-order" in err


def test_enumerate_rows(capsys):
    code, out, _ = run(capsys, "enumerate", "S3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and sorted(d["type"] for d in data) == ["C6", "C6", "C6", "S3", "S3"]
    _, out, _ = run(capsys, "enumerate", "C6", "--format", "json", "--via", "both")
    assert len(json.loads(out)) == 3
    _, out, _ = run(capsys, "enumerate", "C1", "--format", "csv")
    assert len(out.splitlines()) == 2


def test_induced(capsys):
    code, out, _ = run(capsys, "induced", "A4", "--format", "json", "--jobs", "1")
    data = json.loads(out)
    assert len(data) == 4 and {d["type"] for d in data} == {"C2xC2xC3"}
    code, out, err = run(capsys, "induced", "Q8")
    assert code == 0 and "no semidirect decomposition" in err


def test_json_is_stable(capsys):
    _, a, _ = run(capsys, "induced", "D8", "--format", "json", "--jobs", "1")
    _, b, _ = run(capsys, "induced", "D8", "--format", "json", "--jobs", "2")
    assert a == b


def test_classify_and_restrict_through_files(capsys, tmp_path):
    _, out, _ = run(capsys, "enumerate", "C6", "--format", "json", "--no-classify")
    items = json.loads(out)
    path = tmp_path / "c6.json"
    path.write_text(json.dumps(items))
    code, out, _ = run(capsys, "classify", "--structure", str(path), "--format", "json")
    flags = [d["flags"] for d in json.loads(out)]
    assert code == 0 and sum(f["split_abstract"] for f in flags) == 1 and sum(f["induced"] for f in flags) == 1
    classical = next(d for d in items if d["flags"]["classical"])
    one = tmp_path / "one.json"
    one.write_text(json.dumps(classical))
    order3 = next(c for c in classical["N"] if c.count(" ") == 4 and c.count("(") == 2)
    code, out, _ = run(capsys, "restrict", "--structure", str(one), "--subgroup", order3, "--format", "json")
    info = json.loads(out)
    assert code == 0 and info["type"] == "C3" and len(info["Gp"]) == 3
    code, _, _ = run(capsys, "restrict", "--structure", str(path), "--subgroup", order3)
    assert code == 2


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--structure", str(tmp_path / "nope.json"))
    assert code == 2 and err


def test_group_info(capsys):
    code, out, _ = run(capsys, "group", "S3", "--format", "json")
    info = json.loads(out)
    assert code == 0 and info["order"] == 6 and info["type"] == "S3" and info["subgroups"] == 6


def test_verify_paper_filters(capsys):
    code, out, _ = run(capsys, "verify-paper", "--filter", "4.1", "--format", "json")
    assert code == 0 and all(r["status"] == "PASS" for r in json.loads(out))
    code, _, _ = run(capsys, "verify-paper", "--filter", "nonexistent")
    assert code == 2


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as e:
        main(["count", "A4", "A4", "--bogus"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hgs", "count", "C4", "C4", "--format", "csv"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.splitlines()[1] == "C4,C4,1"
