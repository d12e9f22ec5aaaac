import json

import pytest

from whitmin.cli import EXIT_DATA, EXIT_MODEL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    """Pre-generated dataset and trained model shared by the CLI tests."""
    d = tmp_path_factory.mktemp("cli")
    train = str(d / "train.tsv")
    test = str(d / "test.tsv")
    model = str(d / "model.json")
    assert main(["generate", "--kind", "D", "--max-len", "60", "--per-len", "4",
                 "--seed", "11", "-o", train]) == EXIT_OK
    assert main(["generate", "--kind", "Se", "--max-len", "60", "--per-len", "4",
                 "--seed", "12", "-o", test]) == EXIT_OK
    assert main(["train", "--features", "f6", "--train", train,
                 "-o", model]) == EXIT_OK
    return {"dir": d, "train": train, "test": test, "model": model}


@pytest.fixture(scope="module")
def cluster_data(tmp_path_factory):
    """Larger dataset: the 10% estimation sample must populate all four pure
    sets."""
    path = str(tmp_path_factory.mktemp("cluster") / "data.tsv")
    assert main(["generate", "--kind", "D", "--max-len", "200", "--per-len", "5",
                 "--seed", "21", "-o", path]) == EXIT_OK
    return path


class TestUsageErrors:
    def test_no_command(self, capsys):
        with pytest.raises(SystemExit) as e:
            main([])
        assert e.value.code == EXIT_USAGE

    def test_unknown_command(self):
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == EXIT_USAGE

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as e:
            main(["generate", "--kind", "D", "-o", "x.tsv"])  # no --seed
        assert e.value.code == EXIT_USAGE

    def test_bad_choice(self):
        with pytest.raises(SystemExit) as e:
            main(["generate", "--kind", "Q", "--seed", "1", "-o", "x.tsv"])
        assert e.value.code == EXIT_USAGE


class TestGenerate:
    def test_writes_tsv(self, workdir):
        text = open(workdir["train"]).read()
        assert text.startswith("# word\tlabel\tlength\n")
        assert len(text.splitlines()) == 1 + 60 * 4

    def test_deterministic(self, workdir, tmp_path, capsys):
        out = str(tmp_path / "again.tsv")
        assert main(["generate", "--kind", "D", "--max-len", "60", "--per-len",
                     "4", "--seed", "11", "-o", out]) == EXIT_OK
        assert open(out, "rb").read() == open(workdir["train"], "rb").read()


class TestTrainEvaluate:
    def test_model_file_is_json(self, workdir):
        doc = json.loads(open(workdir["model"]).read())
        assert doc["schema_version"] == 1
        assert doc["method"] == "regression"

    def test_evaluate_reports_strata(self, workdir, capsys):
        assert main(["evaluate", "--model", workdir["model"],
                     "--test", workdir["test"]]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("stratum,n,accuracy")
        assert "|w|>4," in out

    def test_evaluate_writes_histogram(self, workdir, tmp_path, capsys):
        hist = str(tmp_path / "hist.csv")
        assert main(["evaluate", "--model", workdir["model"], "--test",
                     workdir["test"], "--hist-out", hist]) == EXIT_OK
        assert open(hist).read().startswith("bin_center,")

    def test_missing_dataset_is_data_error(self, workdir, capsys):
        with pytest.raises(SystemExit) as e:
            main(["evaluate", "--model", workdir["model"],
                  "--test", "/nonexistent.tsv"])
        assert e.value.code == EXIT_DATA

    def test_corrupt_model_is_model_error(self, workdir, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema_version": 99}')
        with pytest.raises(SystemExit) as e:
            main(["evaluate", "--model", str(bad), "--test", workdir["test"]])
        assert e.value.code == EXIT_MODEL

    def test_malformed_tsv_is_data_error(self, workdir, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("abab\tnonsense\t4\n")
        with pytest.raises(SystemExit) as e:
            main(["evaluate", "--model", workdir["model"], "--test", str(bad)])
        assert e.value.code == EXIT_DATA


class TestSelectFeatures:
    def test_prints_patterns(self, workdir, capsys):
        assert main(["select-features", "--pool", "1-1",
                     "--train", workdir["train"], "--val", workdir["test"],
                     "--max-features", "3"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert 1 <= len(out.splitlines()) <= 3


class TestCluster:
    def test_summary_and_centers(self, cluster_data, tmp_path, capsys):
        centers = str(tmp_path / "centers.json")
        code = main(["cluster", "--data", cluster_data, "--seed", "5",
                     "--centers-out", centers])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("cluster,size,move,")

    def test_k_must_be_4(self, workdir, capsys):
        assert main(["cluster", "--data", workdir["train"], "--k", "3"]) == EXIT_USAGE


class TestWordCommands:
    def test_minimize(self, capsys):
        assert main(["minimize", "--word", "abab"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "4 -> 2" in out

    def test_minimize_unreduced_input_ok(self, capsys):
        # free and cyclic reduction happen before minimization
        assert main(["minimize", "--word", "aAbabA"]) == EXIT_OK

    def test_minimize_invalid_word(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["minimize", "--word", "ab!"])
        assert e.value.code == EXIT_DATA

    def test_predict_reducer_missing_centers(self, capsys):
        assert main(["predict-reducer", "--word", "abab",
                     "--centers", "/nonexistent.json"]) == EXIT_DATA

    def test_predict_reducer_end_to_end(self, cluster_data, tmp_path, capsys):
        centers = str(tmp_path / "centers.json")
        main(["cluster", "--data", cluster_data, "--seed", "5",
              "--centers-out", centers])
        capsys.readouterr()
        code = main(["predict-reducer", "--word", "abab", "--centers", centers])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "predicted move:" in out or "already minimal" in out
