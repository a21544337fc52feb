import json

import pytest

from condlogic import cli
from condlogic.algebra import algebra_to_json, complex_algebra
from condlogic.frames import frame_from_json, frame_to_json
from condlogic.generate import random_full_frame

from conftest import full_frame, general_frame, m


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def one_world_files(tmp_path, single):
    frame = full_frame(single)
    frame_path = write(tmp_path / "frame.json", frame_to_json(frame))
    val_path = write(tmp_path / "val.json", {"p": [0], "q": []})
    return frame_path, val_path


class TestParseCommand:
    def test_reprints(self, capsys):
        code, out, _ = run(capsys, "parse", "p ~> (q & r)")
        assert code == 0 and out.strip() == "p ~> q & r"

    def test_json_envelope(self, capsys):
        code, out, _ = run(capsys, "--json", "parse", "p ~> p")
        obj = json.loads(out)
        assert obj["tool"] == "clc" and obj["command"] == "parse"
        assert obj["result"]["letters"] == ["p"]
        assert "version" in obj and "seed" in obj and "inputs" in obj

    def test_parse_error_is_usage_error(self, capsys):
        code, _, err = run(capsys, "parse", "p @ q")
        assert code == 2 and "error" in err

    def test_language_flag(self, capsys):
        code, out, _ = run(capsys, "parse", "--language", "modal", "[]q")
        assert code == 0 and out.strip() == "[]q"


class TestMcCommand:
    def test_refutes_mpp_on_countermodel(self, capsys, one_world_files):
        frame_path, val_path = one_world_files
        code, out, _ = run(capsys, "mc", "--frame", frame_path, "--val", val_path,
                           "--formula", "(p ~> q) -> (p -> q)", "--world", "0")
        assert code == 1

    def test_holds_without_world_means_every_world(self, capsys, one_world_files):
        frame_path, val_path = one_world_files
        code, _, _ = run(capsys, "mc", "--frame", frame_path, "--val", val_path,
                         "--formula", "p ~> true")
        assert code == 0

    def test_bad_valuation_rejected(self, capsys, tmp_path, chain2):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(chain2)))
        val_path = write(tmp_path / "v.json", {"p": [0]})  # not an upset
        code, _, err = run(capsys, "mc", "--frame", frame_path, "--val", val_path,
                           "--formula", "p")
        assert code == 2 and "error" in err


class TestValidCommand:
    def test_countermodel_report_shape(self, capsys, tmp_path, single):
        frame_path = write(tmp_path / "f1.json", frame_to_json(full_frame(single)))
        code, out, _ = run(capsys, "--json", "valid", "--frame", frame_path,
                           "--formula", "(p ~> q) -> (p -> q)")
        assert code == 1
        obj = json.loads(out)
        cm = obj["result"]["countermodel"]
        assert cm == {"valuation": {"p": [0], "q": []}, "world": 0}

    def test_valid_formula(self, capsys, tmp_path, single):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(single)))
        code, out, _ = run(capsys, "valid", "--frame", frame_path,
                           "--formula", "p ~> true")
        assert code == 0 and out.strip() == "valid"

    def test_countermodel_feeds_back_into_mc(self, capsys, tmp_path, single):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(single)))
        out_path = tmp_path / "cm.json"
        code, out, _ = run(capsys, "--json", "valid", "--frame", frame_path,
                           "--formula", "(p ~> q) -> (p -> q)",
                           "--out", str(out_path))
        world = json.loads(out)["result"]["countermodel"]["world"]
        code2, _, _ = run(capsys, "mc", "--frame", frame_path,
                          "--val", str(out_path),
                          "--formula", "(p ~> q) -> (p -> q)",
                          "--world", str(world))
        assert code2 == 1  # independent confirmation of the refutation

    def test_budget_flag(self, capsys, tmp_path, chain2):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(chain2)))
        code, _, err = run(capsys, "valid", "--frame", frame_path,
                           "--formula", "p ~> q", "--budget", "3")
        assert code == 2 and "budget" in err


class TestCorrespondCommand:
    def test_holds(self, capsys, tmp_path, anti2):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(anti2)))
        code, _, _ = run(capsys, "correspond", "--frame", frame_path, "--axiom", "id")
        assert code == 0

    def test_violation_reports_witness(self, capsys, tmp_path, single):
        f = full_frame(single, {0: (m(0),)})
        frame_path = write(tmp_path / "f.json", frame_to_json(f))
        code, out, _ = run(capsys, "--json", "correspond", "--frame", frame_path,
                           "--axiom", "id")
        assert code == 1
        witness = json.loads(out)["result"]["witness"]
        assert witness == {"a": [], "b": None, "world": 0}


class TestVerifyCorrespondenceCommand:
    def test_exhaustive_two_worlds(self, capsys):
        code, out, _ = run(capsys, "--json", "verify-correspondence",
                           "--axiom", "expl", "--max-worlds", "2")
        assert code == 0
        assert json.loads(out)["result"]["exhaustive_frames"] == 68302

    def test_id_equivalence_holds_on_every_frame(self, capsys):
        code, _, _ = run(capsys, "verify-correspondence", "--axiom", "id",
                         "--max-worlds", "2")
        assert code == 0

    def test_infeasible_is_usage_error(self, capsys):
        code, _, err = run(capsys, "verify-correspondence", "--axiom", "id",
                           "--max-worlds", "4")
        assert code == 2 and "sampling" in err


class TestFillinCommand:
    def test_writes_full_frame(self, capsys, tmp_path, anti2):
        g = general_frame(anti2, (0, m(0, 1)),
                          {0: (0, 0), m(0, 1): (m(0), m(1))})
        frame_path = write(tmp_path / "g.json", frame_to_json(g))
        out_path = tmp_path / "filled.json"
        code, _, _ = run(capsys, "fillin", "--frame", frame_path,
                         "--kind", "empty", "--out", str(out_path))
        assert code == 0
        filled = frame_from_json(json.loads(out_path.read_text()))
        assert filled.is_full

    def test_squeeze_precondition_violation_is_usage_error(self, capsys, tmp_path, anti2):
        # both empty-set rows nonempty: closure still holds, id-corr fails
        g = general_frame(anti2, (0, m(0, 1)),
                          {0: (m(0), m(1)), m(0, 1): (0, 0)})
        frame_path = write(tmp_path / "g.json", frame_to_json(g))
        code, _, err = run(capsys, "fillin", "--frame", frame_path,
                           "--kind", "squeeze", "--out", str(tmp_path / "x.json"))
        assert code == 2 and "squeeze" in err


class TestPersistCommand:
    def test_persistent_pair(self, capsys):
        code, out, _ = run(capsys, "--json", "persist", "--axiom", "id",
                           "--fillin", "empty", "--samples", "25", "--seed", "1")
        assert code == 0
        assert json.loads(out)["result"]["failures"] == 0

    def test_refuted_pair_with_expect_fail(self, capsys):
        code, out, _ = run(capsys, "--json", "persist", "--axiom", "mp",
                           "--fillin", "empty", "--samples", "200", "--seed", "1",
                           "--expect", "fail")
        assert code == 0
        assert json.loads(out)["result"]["counterexample"] is not None

    def test_byte_identical_reports(self, capsys):
        args = ("--json", "persist", "--axiom", "unit", "--fillin", "union",
                "--samples", "20", "--seed", "9")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_jobs_flag_keeps_output(self, capsys):
        base = ("persist", "--axiom", "cs", "--fillin", "principal",
                "--samples", "16", "--seed", "3")
        _, out1, _ = run(capsys, "--json", *base)
        _, out2, _ = run(capsys, "--json", "--jobs", "2", *base)
        assert out1 == out2


class TestDualizeAndRoundtrip:
    def test_dualize_then_roundtrip(self, capsys, tmp_path, rng):
        f = random_full_frame(rng, 2, strong=True)
        alg = complex_algebra(f)
        alg_path = write(tmp_path / "alg.json", algebra_to_json(alg))
        out_path = tmp_path / "dual.json"
        code, _, _ = run(capsys, "dualize", "--algebra", alg_path,
                         "--out", str(out_path))
        assert code == 0
        code2, _, _ = run(capsys, "roundtrip", "--frame", str(out_path))
        assert code2 == 0
        code3, _, _ = run(capsys, "roundtrip", "--algebra", alg_path)
        assert code3 == 0

    def test_roundtrip_needs_exactly_one_input(self, capsys):
        code, _, err = run(capsys, "roundtrip")
        assert code == 2


class TestTranslateCommand:
    def test_gmt_example(self, capsys):
        code, out, _ = run(capsys, "translate", "--mode", "gmt", "[]q")
        assert code == 0 and out.strip() == "[I][M][I]q"

    def test_p_mode_with_letter(self, capsys):
        code, out, _ = run(capsys, "translate", "--mode", "p", "--letter", "s",
                           "q -> []q")
        assert code == 0 and out.strip() == "q -> s ~> q"


class TestSearchCommand:
    def test_found_countermodel_roundtrips_through_mc(self, capsys, tmp_path):
        outdir = tmp_path / "cm"
        code, _, _ = run(capsys, "search", "--logic", "ICK",
                         "--refute", "(p ~> q) -> (p -> q)",
                         "--max-worlds", "2", "--out", str(outdir))
        assert code == 1
        code2, _, _ = run(capsys, "mc", "--frame", str(outdir / "frame.json"),
                          "--val", str(outdir / "valuation.json"),
                          "--formula", "(p ~> q) -> (p -> q)", "--world", "0")
        assert code2 == 1

    def test_exhausted_is_exit_zero(self, capsys):
        code, out, _ = run(capsys, "--json", "search", "--logic", "ICK",
                           "--refute", "p -> p", "--max-worlds", "2")
        assert code == 0
        assert json.loads(out)["result"]["found"] is False


class TestDeterminism:
    def test_search_reports_are_byte_identical(self, capsys):
        args = ("--json", "search", "--logic", "HLCflat",
                "--refute", "(p -> q) -> (p ~> q)", "--max-worlds", "2",
                "--seed", "0")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_reports_embed_version_seed_and_digests(self, capsys, tmp_path, single):
        frame_path = write(tmp_path / "f.json", frame_to_json(full_frame(single)))
        _, out, _ = run(capsys, "--json", "mc", "--frame", frame_path,
                        "--val", write(tmp_path / "v.json", {"p": [0]}),
                        "--formula", "p ~> true")
        obj = json.loads(out)
        assert obj["version"]
        assert "sha256" in obj["inputs"]["frame"]

    def test_missing_file_is_usage_error(self, capsys):
        code, _, err = run(capsys, "mc", "--frame", "/nonexistent.json",
                           "--val", "/nonexistent2.json", "--formula", "p")
        assert code == 2
