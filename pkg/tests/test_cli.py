import json
from pathlib import Path

import pytest

from gecclean.cli import main

DATA = Path(__file__).parent / "data"

TWO_GROUP_TSV = "abcd\tabcf\nabcd\tab\npq\tpqr\n"


def write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


class TestClean:
    def test_two_group_fixture(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        out = tmp_path / "out.tsv"
        assert main(["clean", str(corpus), "-o", str(out), "--strategy", "lev_sim"]) == 0
        assert out.read_text(encoding="utf-8") == "abcd\tabcf\npq\tpqr\n"

    def test_unknown_strategy_lists_valid_names(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        with pytest.raises(SystemExit) as excinfo:
            main(["clean", str(corpus), "-o", str(tmp_path / "x"), "--strategy", "bogus"])
        assert excinfo.value.code != 0
        message = capsys.readouterr().err
        for name in (
            "lev_sim", "lev_dis", "jac_sim", "jac_dis", "edi_least", "edi_most", "random",
        ):
            assert name in message

    def test_meta_sidecar_written(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        out = tmp_path / "out.tsv"
        main(["clean", str(corpus), "-o", str(out), "--strategy", "random", "--seed", "7"])
        meta = json.loads((tmp_path / "out.tsv.meta.json").read_text(encoding="utf-8"))
        assert meta["tool"] == "gecclean"
        assert meta["command"] == "clean"
        assert meta["config"]["seed"] == 7
        assert meta["config"]["strategy"] == "random"

    def test_rerun_is_bit_exact(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV * 50)
        out = tmp_path / "out.tsv"
        main(["clean", str(corpus), "-o", str(out), "--strategy", "random"])
        first = out.read_bytes()
        meta_first = (tmp_path / "out.tsv.meta.json").read_bytes()
        out.unlink()
        main(["clean", str(corpus), "-o", str(out), "--strategy", "random"])
        assert out.read_bytes() == first
        assert (tmp_path / "out.tsv.meta.json").read_bytes() == meta_first

    def test_drop_correct(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", "aa\taa\nbb\tbc\n")
        out = tmp_path / "out.tsv"
        main(["clean", str(corpus), "-o", str(out), "--strategy", "lev_sim", "--drop-correct"])
        assert out.read_text(encoding="utf-8") == "bb\tbc\n"

    def test_malformed_input_fails_with_line_number(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", "ok\tfine\nbroken\n")
        out = tmp_path / "out.tsv"
        code = main(["clean", str(corpus), "-o", str(out), "--strategy", "lev_sim"])
        assert code == 1
        assert "line 2" in capsys.readouterr().err


class TestStats:
    def test_multi_target_lines_flag(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", "s\tt1\tt2\n")
        assert main(["stats", str(corpus), "--multi-target-lines", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["overall"]["samples"] == 2

    def test_golden_text_output(self, tmp_path):
        out = tmp_path / "report.txt"
        assert main(["stats", str(DATA / "stats_fixture.tsv"), "-o", str(out)]) == 0
        golden = (DATA / "stats_golden.txt").read_text(encoding="utf-8")
        assert out.read_text(encoding="utf-8") == golden


class TestM2Pipeline:
    def test_to_m2_then_score_self_is_perfect(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        cleaned = tmp_path / "clean.tsv"
        main(["clean", str(corpus), "-o", str(cleaned), "--strategy", "lev_sim"])
        gold = tmp_path / "gold.m2"
        assert main(["to-m2", str(cleaned), "-o", str(gold)]) == 0
        hyp = write(tmp_path / "hyp.txt", "abcf\npqr\n")
        assert main(["score", "--gold", str(gold), "--hyp", str(hyp), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["precision"] == 1.0
        assert payload["recall"] == 1.0
        assert payload["f0.5"] == 1.0

    def test_apply_m2_recovers_targets(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        gold = tmp_path / "gold.m2"
        main(["to-m2", str(corpus), "-o", str(gold)])
        restored = tmp_path / "restored.txt"
        assert main(["apply-m2", str(gold), "-o", str(restored)]) == 0
        # One line per annotation, in group / annotator order.
        assert restored.read_text(encoding="utf-8") == "abcf\nab\npqr\n"

    def test_multi_annotator_m2_from_multi_target_group(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        gold = tmp_path / "gold.m2"
        main(["to-m2", str(corpus), "-o", str(gold)])
        text = gold.read_text(encoding="utf-8")
        assert text.count("S ") == 2
        assert "|||1\n" in text  # second annotator present

    def test_score_against_most_favorable_annotator(self, tmp_path, capsys):
        corpus = write(
            tmp_path / "in.tsv",
            "我能胜任这此职务\t我能胜任这职务。\n我能胜任这此职务\t我能胜任此职务。\n",
        )
        gold = tmp_path / "gold.m2"
        main(["to-m2", str(corpus), "-o", str(gold)])
        hyp = write(tmp_path / "hyp.txt", "我能胜任此职务。\n")
        assert main(["score", "--gold", str(gold), "--hyp", str(hyp), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["f0.5"] == 1.0

    def test_hypothesis_count_mismatch(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        gold = tmp_path / "gold.m2"
        main(["to-m2", str(corpus), "-o", str(gold)])
        hyp = write(tmp_path / "hyp.txt", "abcf\n")
        assert main(["score", "--gold", str(gold), "--hyp", str(hyp)]) == 1
        assert "hypothesis" in capsys.readouterr().err

    def test_score_output_file_and_sidecar(self, tmp_path):
        corpus = write(tmp_path / "in.tsv", TWO_GROUP_TSV)
        gold = tmp_path / "gold.m2"
        main(["to-m2", str(corpus), "-o", str(gold)])
        hyp = write(tmp_path / "hyp.txt", "abcf\npqr\n")
        report = tmp_path / "report.txt"
        assert main(["score", "--gold", str(gold), "--hyp", str(hyp), "-o", str(report)]) == 0
        assert "f0.5       1.0000" in report.read_text(encoding="utf-8")
        meta = json.loads((tmp_path / "report.txt.meta.json").read_text(encoding="utf-8"))
        assert meta["command"] == "score"


class TestAblate:
    def test_one_tsv_per_n(self, tmp_path):
        lines = []
        for i in range(5):
            for j in range(3):
                lines.append(f"s{i}\tt{i}.{j}")
        corpus = write(tmp_path / "in.tsv", "\n".join(lines) + "\n")
        prefix = tmp_path / "ablation"
        code = main(
            [
                "ablate", str(corpus), "-o", str(prefix),
                "--k-min", "3", "--n-values", "1,2,3",
            ]
        )
        assert code == 0
        for n in (1, 2, 3):
            path = Path(f"{prefix}.n{n}.tsv")
            assert path.exists()
            assert len(path.read_text(encoding="utf-8").splitlines()) == 5 * n

    def test_n_above_k_min_fails(self, tmp_path, capsys):
        corpus = write(tmp_path / "in.tsv", "s\ta\ns\tb\n")
        code = main(
            [
                "ablate", str(corpus), "-o", str(tmp_path / "x"),
                "--k-min", "2", "--n-values", "3",
            ]
        )
        assert code == 1
        assert "k_min" in capsys.readouterr().err


class TestThreads:
    def test_thread_count_does_not_change_bytes(self, tmp_path):
        lines = [f"src{i:04d}x\tsrc{i:04d}y\nsrc{i:04d}x\tsrc{i:04d}z" for i in range(300)]
        corpus = write(tmp_path / "in.tsv", "\n".join(lines) + "\n")
        outputs = []
        for threads in ("1", "3"):
            out = tmp_path / f"out{threads}.tsv"
            main(
                [
                    "clean", str(corpus), "-o", str(out),
                    "--strategy", "random", "--threads", threads,
                ]
            )
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
