import json
from pathlib import Path

import pytest

from segal_lab.cli import RunConfig, UsageError, main
from segal_lab.corpus import corpus_dir

CORPUS = corpus_dir()
SMALL = ["--mtrunc", "3", "--ntrunc", "3"]


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_classify_iso_interval_counts(capsys):
    code, doc = run_json(capsys, "classify", str(CORPUS / "I1.cat"), "--mtrunc", "2", "--ntrunc", "3")
    assert code == 0
    assert [doc["result"]["counts"][f"0,{n}"] for n in range(4)] == [2, 4, 8, 16]
    assert doc["schema"] == 1 and doc["result"]["object"]["schema"] == 1


def test_ho_recovers_input(capsys):
    code, doc = run_json(capsys, "ho", "--classify", str(CORPUS / "two.cat"), *SMALL)
    assert code == 0
    assert doc["passed"]
    assert len(doc["result"]["objects"]) == 3


def test_discnerve_of_iso_interval_incomplete(capsys):
    code, doc = run_json(capsys, "complete-check", "--discnerve", str(CORPUS / "I1.cat"), *SMALL)
    assert doc["result"]["outcome"] == "no"
    assert code == 1  # default expectation is yes
    code, _ = run_json(capsys, "complete-check", "--discnerve", "I1", "--expect", "no", *SMALL)
    assert code == 0


def test_corpus_names_resolve(capsys):
    code, doc = run_json(capsys, "nerve", "one", "--mtrunc", "3")
    assert code == 0
    assert doc["result"]["counts"] == {"0": 2, "1": 3, "2": 4, "3": 5}


def test_classification_needs_weq(capsys, tmp_path):
    p = tmp_path / "c.cat"
    p.write_text("objects: x y\narrow: f x y\nweq: f\n")
    code, doc = run_json(capsys, "classification", str(p), "--mtrunc", "2", "--ntrunc", "2")
    assert code == 0
    assert doc["result"]["counts"]["0,1"] == 3
    p.write_text("objects: x y\narrow: f x y\n")
    assert main(["classification", str(p)]) == 2


def test_segal_check_passes(capsys):
    code, doc = run_json(capsys, "segal-check", "two", *SMALL)
    assert code == 0
    assert all(v["status"] == "exact-iso" for v in doc["result"]["maps"].values())


def test_hoequiv_lists_edges(capsys):
    code, doc = run_json(capsys, "hoequiv", "one", *SMALL)
    assert code == 0
    assert sorted(r["hoequiv"] for r in doc["result"]["edges"]) == ["no", "yes", "yes"]


def test_dk_check_functors(capsys):
    code, doc = run_json(capsys, "dk-check", "point_to_I1", "point_to_one", "--mtrunc", "3",
                         "--ntrunc", "2")
    assert code == 0
    assert {r["functor"]: r["dk"] for r in doc["result"]} == {"point_to_I1": "yes",
                                                              "point_to_one": "no"}


def test_dk_check_inclusion(capsys):
    code, doc = run_json(capsys, "dk-check", "inclusion", "I1", "--mtrunc", "3", "--ntrunc", "2")
    assert code == 0 and doc["result"]["outcome"] == "yes"


def test_covers_prism_filtration(capsys):
    code, doc = run_json(capsys, "covers", "3")
    assert code == 0 and doc["result"]["count"] == 5
    code, _ = run_json(capsys, "prism", "2")
    assert code == 0
    code, doc = run_json(capsys, "filtration", "3")
    assert code == 0 and len(doc["checks"]) == 2


def test_completion_command(capsys):
    code, doc = run_json(capsys, "completion", "one")
    assert code == 0
    assert doc["result"]["truncation"] == [2, 2]


def test_text_output(capsys):
    assert main(["prism", "1"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] prism n=1" in out


def test_verify_suite_subset(capsys):
    code = main(["verify-suite", "--only", "3", "8", "--mtrunc", "2", "--ntrunc", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[0].startswith("[PASS]  3.") and out[1].startswith("[PASS]  8.")
    assert out[-1] == "overall: PASS"


def test_verify_suite_is_deterministic(capsys):
    docs = []
    for _ in range(2):
        code, doc = run_json(capsys, "verify-suite", "--only", "2", "3", "--mtrunc", "2", "--ntrunc", "2")
        assert code == 0
        for rec in doc["checks"]:
            rec.pop("seconds", None)
        doc.pop("seconds")
        for crit in doc["result"]:
            crit.pop("seconds")
            for rec in crit["checks"]:
                rec.pop("seconds", None)
        docs.append(doc)
    assert docs[0] == docs[1]
    assert all(rec["anchor"] for rec in docs[0]["checks"])


@pytest.mark.parametrize("argv,msg", [
    (["nerve", "/no/such/file.cat"], "file not found"),
    (["covers", "x"], "usage error"),
    (["nerve", "one", "--mtrunc", "1"], "usage error"),
    (["dk-check", "nonexistent"], "usage error"),
    (["covers", "9"], "invalid input"),
])
def test_errors_exit_two(capsys, argv, msg):
    assert main(argv) == 2
    assert msg in capsys.readouterr().err


def test_parse_error_exit_two(capsys, tmp_path):
    p = tmp_path / "bad.cat"
    p.write_text("objects: x y\narrow: f x y\narrow: g y x\n")
    assert main(["nerve", str(p)]) == 2
    assert "parse error" in capsys.readouterr().err


def test_bound_exceeded_exit_two(capsys, monkeypatch):
    from segal_lab import cli
    from segal_lab.fincat import functor_category, iso_interval_category

    def too_big(cfg, report):
        i2 = iso_interval_category(2)[0]
        functor_category(i2, i2, bound=cfg.bound_functors)

    monkeypatch.setitem(cli.HANDLERS, "ho", too_big)
    assert main(["ho", "one", "--bound-functors", "3"]) == 2
    assert "bound exceeded" in capsys.readouterr().err


def test_unknown_command():
    assert main(["frobnicate"]) == 2


def test_corpus_env_override(capsys, tmp_path, monkeypatch):
    (tmp_path / "tiny.cat").write_text("objects: p\n")
    monkeypatch.setenv("SEGAL_LAB_CORPUS", str(tmp_path))
    code, doc = run_json(capsys, "nerve", "tiny", "--mtrunc", "2")
    assert code == 0 and doc["result"]["counts"] == {"0": 1, "1": 1, "2": 1}


def test_runconfig_validation():
    with pytest.raises(UsageError):
        RunConfig("nerve", m_trunc=1).validate()
    with pytest.raises(UsageError):
        RunConfig("nerve", bound_functors=0).validate()
    RunConfig("nerve").validate()
