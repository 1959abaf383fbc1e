import pytest

from fmnec import read_candidates_tsv
from fmnec.cli import main

from helpers import write_xor_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    train = root / "train.txt"
    test = root / "test.txt"
    next_id = write_xor_corpus(train, copies=40, noise=0.1, seed=7)
    write_xor_corpus(test, copies=10, noise=0.1, seed=8, start_id=next_id)
    return train, test


@pytest.fixture(scope="module")
def pipeline(corpus, tmp_path_factory):
    """prepare + train once; reused by the read-only command tests."""
    train, test = corpus
    out = tmp_path_factory.mktemp("pipeline")
    prepared = out / "prepared"
    modeldir = out / "model"
    assert main([
        "prepare", "--train", str(train), "--test", str(test), "--out", str(prepared),
    ]) == 0
    assert main([
        "train", "--candidates", str(prepared / "train.candidates.tsv"),
        "--k", "2", "--epochs", "15", "--lr", "0.02", "--reg-w", "0.001",
        "--reg-v", "0.001", "--seed", "3", "--out", str(modeldir),
    ]) == 0
    return {
        "prepared": prepared,
        "model": modeldir / "ova_model.txt",
        "space": modeldir / "feature_space.txt",
        "test_candidates": prepared / "test.candidates.tsv",
    }


class TestPrepare:
    def test_writes_candidates_files(self, pipeline):
        prepared = pipeline["prepared"]
        assert (prepared / "train.candidates.tsv").is_file()
        assert (prepared / "test.candidates.tsv").is_file()
        train_cands = read_candidates_tsv(prepared / "train.candidates.tsv")
        assert {c.gold_tag for c in train_cands} == {"PER", "O"}

    def test_unknown_filter_keeps_fresh_surfaces(self, pipeline):
        # every synthetic surface is unique, so nothing is filtered
        test_cands = read_candidates_tsv(pipeline["test_candidates"])
        assert len(test_cands) == 40

    def test_prints_stats_table(self, corpus, tmp_path, capsys):
        train, _ = corpus
        assert main(["prepare", "--train", str(train), "--out", str(tmp_path / "p")]) == 0
        out = capsys.readouterr().out
        assert "tag" in out and "training" in out
        assert "PER" in out and "O" in out


class TestStats:
    def test_prints_counts(self, pipeline, capsys):
        path = pipeline["prepared"] / "train.candidates.tsv"
        assert main(["stats", str(path)]) == 0
        assert "PER" in capsys.readouterr().out


class TestTrainCommand:
    def test_wrote_model_and_space(self, pipeline):
        assert pipeline["model"].is_file()
        assert pipeline["space"].is_file()
        assert pipeline["model"].read_text().startswith("FMOVA v1\n")

    def test_k0_writes_empty_factor_rows(self, corpus, tmp_path):
        train, _ = corpus
        prepared = tmp_path / "p"
        assert main(["prepare", "--train", str(train), "--out", str(prepared)]) == 0
        out = tmp_path / "m"
        assert main([
            "train", "--candidates", str(prepared / "train.candidates.tsv"),
            "--k", "0", "--epochs", "2", "--out", str(out),
        ]) == 0
        lines = (out / "ova_model.txt").read_text().splitlines()
        n_features, k = lines[4].split()  # dimension line of the first member block
        assert k == "0"
        # the V block is n empty lines right after the w line
        v_block = lines[7 : 7 + int(n_features)]
        assert v_block and all(line == "" for line in v_block)

    def test_logs_epoch_losses(self, pipeline, caplog):
        # training happened in the fixture; re-run two epochs to observe logs
        import logging

        with caplog.at_level(logging.INFO, logger="fmnec"):
            out = pipeline["prepared"].parent / "logged"
            assert main([
                "train", "--candidates", str(pipeline["prepared"] / "train.candidates.tsv"),
                "--k", "0", "--epochs", "2", "--out", str(out),
            ]) == 0
        messages = [r.message for r in caplog.records if "mean loss" in r.message]
        assert any("epoch 1" in m for m in messages)
        assert any("epoch 2" in m for m in messages)


class TestPredictCommand:
    def test_predictions_file(self, pipeline, tmp_path):
        out = tmp_path / "pred.tsv"
        assert main([
            "predict", "--model", str(pipeline["model"]), "--space", str(pipeline["space"]),
            "--candidates", str(pipeline["test_candidates"]), "--out", str(out),
        ]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# pred\tgold\tO\tPER"
        body = [line.split("\t") for line in lines[1:]]
        assert len(body) == 40
        assert all(row[0] in ("O", "PER") for row in body)


class TestPredictWithoutGold:
    def test_untagged_candidates_are_fine(self, pipeline, tmp_path):
        # strip the gold column: prediction must not require it
        stripped = tmp_path / "untagged.tsv"
        rows = pipeline["test_candidates"].read_text().splitlines()
        stripped.write_text("".join("\t".join(["", *row.split("\t")[1:]]) + "\n" for row in rows))
        out = tmp_path / "pred.tsv"
        assert main([
            "predict", "--model", str(pipeline["model"]), "--space", str(pipeline["space"]),
            "--candidates", str(stripped), "--out", str(out),
        ]) == 0
        body = [line.split("\t") for line in out.read_text().splitlines()[1:]]
        assert all(row[1] == "" for row in body)  # gold column stays empty

    def test_eval_requires_gold(self, pipeline, tmp_path):
        stripped = tmp_path / "untagged.tsv"
        rows = pipeline["test_candidates"].read_text().splitlines()
        stripped.write_text("".join("\t".join(["", *row.split("\t")[1:]]) + "\n" for row in rows))
        assert main([
            "eval", "--model", str(pipeline["model"]), "--space", str(pipeline["space"]),
            "--candidates", str(stripped), "--out", str(tmp_path / "e"),
        ]) == 2


class TestEvalCommand:
    def test_report_files(self, pipeline, tmp_path, capsys):
        out = tmp_path / "eval"
        assert main([
            "eval", "--model", str(pipeline["model"]), "--space", str(pipeline["space"]),
            "--candidates", str(pipeline["test_candidates"]),
            "--pr-curves", "--out", str(out),
        ]) == 0
        for name in ("report.txt", "report.tsv", "confusion.tsv", "pr_PER.tsv"):
            assert (out / name).is_file(), name
        stdout = capsys.readouterr().out
        assert "micro" in stdout
        tsv = (out / "report.tsv").read_text().splitlines()
        assert tsv[0] == "tag\tprecision\trecall\tf1"
        assert tsv[-1].startswith("micro\t")


class TestSweepAndCurves:
    def test_sweep_k(self, pipeline, tmp_path, capsys):
        out = tmp_path / "sweep.tsv"
        assert main([
            "sweep-k", "--train", str(pipeline["prepared"] / "train.candidates.tsv"),
            "--dev", str(pipeline["test_candidates"]),
            "--k-values", "0,2", "--epochs", "10", "--lr", "0.02", "--out", str(out),
        ]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "k\tmicro_f1"
        assert [line.split("\t")[0] for line in lines[1:]] == ["0", "2"]
        assert "k=0" in capsys.readouterr().out

    def test_pr_curve_command(self, pipeline, tmp_path):
        out = tmp_path / "curves"
        assert main([
            "pr-curve", "--model", str(pipeline["model"]), "--space", str(pipeline["space"]),
            "--candidates", str(pipeline["test_candidates"]), "--out", str(out),
        ]) == 0
        lines = (out / "pr_PER.tsv").read_text().splitlines()
        assert lines[0] == "recall\tprecision"
        assert len(lines) == 41  # one point per ranked candidate


class TestExitCodes:
    def test_missing_input_is_config_error(self, tmp_path):
        assert main(["train", "--candidates", str(tmp_path / "nope.tsv"),
                     "--out", str(tmp_path / "m")]) == 1

    def test_corrupt_candidates_is_data_error(self, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("only\ttwo\n")
        assert main(["train", "--candidates", str(bad), "--out", str(tmp_path / "m")]) == 2

    def test_unknown_flag_is_usage_error(self):
        assert main(["train", "--nonsense"]) == 1

    def test_missing_subcommand_is_usage_error(self):
        assert main([]) == 1

    def test_bad_k_values_is_config_error(self, pipeline, tmp_path):
        assert main([
            "sweep-k", "--train", str(pipeline["prepared"] / "train.candidates.tsv"),
            "--dev", str(pipeline["test_candidates"]),
            "--k-values", "a,b", "--out", str(tmp_path / "s.tsv"),
        ]) == 1

    def test_model_space_mismatch_is_config_error(self, pipeline, tmp_path):
        space = tmp_path / "space.txt"
        space.write_text("dummy\n")  # one feature, model expects more
        assert main([
            "eval", "--model", str(pipeline["model"]), "--space", str(space),
            "--candidates", str(pipeline["test_candidates"]), "--out", str(tmp_path / "e"),
        ]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "prepare" in capsys.readouterr().out

    def test_invalid_lr_is_usage_or_config_error(self, pipeline, tmp_path):
        code = main([
            "train", "--candidates", str(pipeline["prepared"] / "train.candidates.tsv"),
            "--lr", "0", "--out", str(tmp_path / "m"),
        ])
        assert code == 1
