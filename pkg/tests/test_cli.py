"""The command-line surface, driven through main()."""

import json

import pytest

from matchdecomp.cli import main

from conftest import (
    GOLDEN_ORDERS_F1,
    GOLDEN_ORDERS_F2,
    LAM_FIRM,
    LAM_WORKER,
    MU_FIRM,
    REFERENCE_PATH,
    TABLE_BOTH_FAIL,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def last_json(out: str) -> dict:
    # trace lines may precede the final report; the report is the last
    # pretty-printed object, which starts at the last unindented "{"
    start = out.rindex("\n{") + 1 if "\n{" in out else 0
    return json.loads(out[start:])


@pytest.fixture()
def bad_axiom_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {
                "workers": ["v", "w"],
                "firms": [
                    {
                        "id": "A",
                        "choice": {
                            "kind": "table",
                            "payload": [
                                [[], []],
                                [["v"], []],
                                [["w"], ["w"]],
                                [["v", "w"], ["v"]],
                            ],
                        },
                    }
                ],
                "worker_prefs": {"v": ["A"], "w": ["A"]},
            }
        )
    )
    assert TABLE_BOTH_FAIL == (0, 0, 2, 1)  # the file above, as masks
    return str(path)


class TestValidate:
    def test_reference_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate", REFERENCE_PATH)
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        for firm in report["firms"]:
            assert firm["path_independence"]["passed"]
            assert firm["law_of_aggregate_demand"]["passed"]

    def test_axiom_failure_exits_2_with_witness(self, capsys, bad_axiom_file):
        code, out, _ = run_cli(capsys, "validate", bad_axiom_file)
        assert code == 2
        report = json.loads(out)
        assert report["ok"] is False
        assert report["firms"][0]["path_independence"]["witness"]

    def test_malformed_json_exits_1(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        code, _, err = run_cli(capsys, "validate", str(path))
        assert code == 1
        assert "error" in json.loads(err)

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "validate", str(tmp_path / "nowhere.json"))
        assert code == 1
        assert "error" in json.loads(err)


class TestDecompose:
    def test_explicit_indexing_is_verbatim(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", REFERENCE_PATH)
        assert code == 0
        report = json.loads(out)
        by_id = {f["id"]: f for f in report["firms"]}
        assert by_id["f1"]["indexing"] == "explicit"
        assert by_id["f1"]["orders"] == GOLDEN_ORDERS_F1
        assert by_id["f2"]["orders"] == GOLDEN_ORDERS_F2

    def test_without_indexing_same_sets_lexicographic(self, capsys, tmp_path):
        data = json.load(open(REFERENCE_PATH, encoding="utf-8"))
        del data["copy_indexing"]
        path = tmp_path / "noindex.json"
        path.write_text(json.dumps(data))
        code, out, _ = run_cli(capsys, "decompose", str(path))
        assert code == 0
        report = json.loads(out)
        by_id = {f["id"]: f for f in report["firms"]}
        assert by_id["f2"]["indexing"] == "lexicographic"
        assert sorted(by_id["f1"]["orders"]) == sorted(GOLDEN_ORDERS_F1)
        assert sorted(by_id["f2"]["orders"]) == sorted(GOLDEN_ORDERS_F2)
        assert by_id["f2"]["orders"] == sorted(by_id["f2"]["orders"])


class TestSolve:
    def test_copies_with_trace(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", REFERENCE_PATH, "--proposing", "copies", "--trace"
        )
        assert code == 0
        lines = out.strip().splitlines()
        stages = [json.loads(line) for line in lines if line.startswith('{"')]
        assert [s["stage"] for s in stages] == [1, 2]
        final = last_json(out)
        assert final["stages"] == 2
        held = {c: w for c, w in final["matching"]["by_copy"].items() if w}
        assert held == LAM_FIRM

    def test_firms_is_a_synonym_for_copies(self, capsys):
        code, out, _ = run_cli(capsys, "solve", REFERENCE_PATH, "--proposing", "firms")
        assert code == 0
        assert last_json(out)["proposing"] == "copies"

    def test_workers_proposing(self, capsys):
        code, out, _ = run_cli(capsys, "solve", REFERENCE_PATH, "--proposing", "workers")
        assert code == 0
        final = last_json(out)
        held = {c: w for c, w in final["matching"]["by_copy"].items() if w}
        assert held == LAM_WORKER

    def test_no_release_abort_is_a_clean_exit_3(self, capsys, tmp_path):
        # this generated market ends copy-envious when copies never let a
        # hire go; the post-assertion failure must come out as a JSON
        # error with the verification exit code, not a traceback
        path = tmp_path / "m.json"
        code, out, _ = run_cli(
            capsys, "gen", "--workers", "4", "--firms", "2", "--max-orders", "2",
            "--density", "0.8", "--seed", "12", "--out", str(path),
        )
        assert code == 0
        code, out, err = run_cli(
            capsys, "solve", str(path), "--proposing", "workers", "--no-release"
        )
        assert code == 3
        assert "unstable" in json.loads(err)["error"]
        code, out, _ = run_cli(capsys, "solve", str(path), "--proposing", "workers")
        assert code == 0


class TestEnumerate:
    @pytest.mark.parametrize(
        "concept,count",
        [("stable", 4), ("copy-stable", 4), ("stable-star", 4), ("classical", 1)],
    )
    def test_counts(self, capsys, concept, count):
        code, out, _ = run_cli(
            capsys, "enumerate", REFERENCE_PATH, "--concept", concept
        )
        assert code == 0
        report = json.loads(out)
        assert report["count"] == count

    def test_stable_star_is_reported_as_copy_stable(self, capsys):
        _, out, _ = run_cli(
            capsys, "enumerate", REFERENCE_PATH, "--concept", "stable-star"
        )
        assert json.loads(out)["concept"] == "copy-stable"

    def test_unpruned_agrees(self, capsys):
        _, fast, _ = run_cli(capsys, "enumerate", REFERENCE_PATH, "--concept", "copy-stable")
        _, slow, _ = run_cli(
            capsys, "enumerate", REFERENCE_PATH, "--concept", "copy-stable", "--unpruned"
        )
        assert fast == slow

    def test_stable_set_contents(self, capsys):
        _, out, _ = run_cli(capsys, "enumerate", REFERENCE_PATH, "--concept", "stable")
        report = json.loads(out)
        hires = [
            {f: sorted(ws) for f, ws in m["by_firm"].items() if ws}
            for m in report["matchings"]
        ]
        assert hires[0] == MU_FIRM


class TestVerify:
    def test_reference_verifies(self, capsys):
        code, out, _ = run_cli(capsys, "verify", REFERENCE_PATH)
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert report["correspondence"]["stable_count"] == 4
        assert len(report["correspondence"]["pairs"]) == 4
        assert report["count_invariance"]["verdict"] == "pass"
        assert report["count_invariance"]["copies_filled_per_matching"] == [[2, 2]] * 4


class TestCheck:
    def test_stable_matching_accepted(self, capsys, tmp_path):
        path = tmp_path / "matching.json"
        path.write_text(json.dumps(MU_FIRM))
        code, out, _ = run_cli(capsys, "check", REFERENCE_PATH, str(path))
        assert code == 0
        assert json.loads(out) == {"stable": True}

    def test_blocked_matching_exits_3(self, capsys, tmp_path):
        path = tmp_path / "matching.json"
        path.write_text(json.dumps({"f1": ["w1", "w4"]}))
        code, out, _ = run_cli(capsys, "check", REFERENCE_PATH, str(path))
        assert code == 3
        report = json.loads(out)
        assert report["stable"] is False
        assert report["case"] == "firm-block"


class TestGen:
    def test_gen_writes_a_loadable_market(self, capsys, tmp_path):
        out_path = tmp_path / "market.json"
        code, _, _ = run_cli(
            capsys, "gen", "--workers", "3", "--firms", "2", "--seed", "7",
            "--out", str(out_path),
        )
        assert code == 0
        code, out, _ = run_cli(capsys, "validate", str(out_path))
        assert code == 0

    def test_gen_to_stdout_is_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "gen", "--workers", "3", "--firms", "2", "--seed", "1")
        _, second, _ = run_cli(capsys, "gen", "--workers", "3", "--firms", "2", "--seed", "1")
        assert first == second
        json.loads(first)

    def test_jmax_spelling_is_accepted(self, capsys):
        _, a, _ = run_cli(
            capsys, "gen", "--workers", "3", "--firms", "1", "--jmax", "2", "--seed", "4"
        )
        _, b, _ = run_cli(
            capsys, "gen", "--workers", "3", "--firms", "1", "--max-orders", "2", "--seed", "4"
        )
        assert a == b


class TestCaps:
    def test_cap_override_via_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("MATCHDECOMP_MAX_WORKERS", "2")
        code, _, err = run_cli(capsys, "validate", REFERENCE_PATH)
        assert code == 4
        assert "error" in json.loads(err)
