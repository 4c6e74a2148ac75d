"""Exercises every subcommand through main(argv); the serve test boots a
real server in a subprocess."""
import json
import socket
import subprocess
import sys
import time
import urllib.request

import pytest

from konum_guard.cli import EXIT_ERROR, EXIT_OK, EXIT_SHARING, main
from konum_guard.dataset import (CSV_HEADER, dump_corpus, synthesize_corpus)
from konum_guard.features import FeatureVector
from konum_guard.tree import load_tree, paper_reference_tree, predict, save_tree

SMALL_CORPUS = [
    '{"text": "Eve gidiyorum", "label": 1}',
    '{"text": "Bugün hava güzel", "label": 0}',
    '{"text": "Annemlere geldik", "label": 1}',
    '{"text": "Kitap okuyorum", "label": 0}',
]


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(SMALL_CORPUS) + "\n", encoding="utf-8")
    return path


class TestExtract:
    def test_csv_on_stdout(self, corpus_file, capsys):
        assert main(["extract", "--corpus", str(corpus_file)]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 5
        assert lines[1] == "0,0,1,0,0,1,1"

    def test_empty_corpus_header_only(self, tmp_path, capsys):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("", encoding="utf-8")
        assert main(["extract", "--corpus", str(empty)]) == EXIT_OK
        assert capsys.readouterr().out == CSV_HEADER + "\n"

    def test_malformed_corpus_fails(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"text": "a"}\n', encoding="utf-8")
        assert main(["extract", "--corpus", str(bad)]) == EXIT_ERROR
        assert "label" in capsys.readouterr().err

    def test_missing_gazetteer_names_file(self, corpus_file, tmp_path, capsys):
        gazdir = tmp_path / "lists"
        gazdir.mkdir()
        for name in ("special_words", "verbs", "venues"):
            (gazdir / f"{name}.txt").write_text("ev\n", encoding="utf-8")
        code = main(["extract", "--corpus", str(corpus_file),
                     "--gazetteers", str(gazdir)])
        assert code == EXIT_ERROR
        assert "cities.txt" in capsys.readouterr().err


class TestTrain:
    def test_writes_model_and_prints_tree(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.jsonl"
        corpus.write_text(dump_corpus(synthesize_corpus(200, 0.0, seed=3)),
                          encoding="utf-8")
        model = tmp_path / "model.txt"
        code = main(["train", "--corpus", str(corpus), "--out", str(model)])
        assert code == EXIT_OK
        assert "feature" in capsys.readouterr().out
        trained = load_tree(model)
        reference = paper_reference_tree()
        # noiseless corpus: the trained tree matches the deployed logic
        for code_ in range(64):
            fv = FeatureVector.from_bits((code_ >> k) & 1 for k in range(6))
            assert predict(trained, fv)[0] == predict(reference, fv)[0]

    def test_single_class_corpus_gives_single_leaf(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.jsonl"
        corpus.write_text('{"text": "Kitap okuyorum", "label": 0}\n' * 3,
                          encoding="utf-8")
        model = tmp_path / "model.txt"
        assert main(["train", "--corpus", str(corpus), "--out", str(model)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == ": 0 (3.0/0.0)"

    def test_empty_corpus_fails(self, tmp_path, capsys):
        corpus = tmp_path / "empty.jsonl"
        corpus.write_text("", encoding="utf-8")
        assert main(["train", "--corpus", str(corpus)]) == EXIT_ERROR

    def test_unwritable_model_path_fails(self, corpus_file, tmp_path, capsys):
        out = tmp_path / "missing-dir" / "model.txt"
        code = main(["train", "--corpus", str(corpus_file), "--out", str(out)])
        assert code == EXIT_ERROR


class TestPredict:
    def test_location_sharing_exits_2(self, capsys):
        code = main(["predict", "Eve gidiyorum", "--paper-tree"])
        assert code == EXIT_SHARING
        out = capsys.readouterr().out
        assert "label: 1" in out
        assert "feature3=1" in out
        assert "feature4 = 0" in out  # the path through the tree

    def test_clean_text_exits_0(self, capsys):
        code = main(["predict", "Bugün hava güzel", "--paper-tree"])
        assert code == EXIT_OK
        assert "label: 0" in capsys.readouterr().out

    def test_missing_model_exits_1(self, tmp_path, capsys):
        code = main(["predict", "Eve gidiyorum",
                     "--model", str(tmp_path / "none.txt")])
        assert code == EXIT_ERROR

    def test_corrupt_model_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("not a tree\n", encoding="utf-8")
        code = main(["predict", "Eve gidiyorum", "--model", str(bad)])
        assert code == EXIT_ERROR

    def test_saved_model_used(self, tmp_path, capsys):
        path = tmp_path / "model.txt"
        save_tree(paper_reference_tree(), path)
        code = main(["predict", "Annemlere geldik", "--model", str(path)])
        assert code == EXIT_SHARING

    def test_model_flag_required(self, capsys):
        with pytest.raises(SystemExit):
            main(["predict", "Eve gidiyorum"])


class TestEval:
    def test_cv_table_and_json(self, tmp_path, corpus_file, capsys):
        out = tmp_path / "report.json"
        code = main(["eval", "--corpus", str(corpus_file),
                     "--folds", "2", "--out", str(out)])
        assert code == EXIT_OK
        assert "Correctly Classified Instances" in capsys.readouterr().out
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert doc["protocol"] == "cv-2"
        assert doc["seed"] == 1

    def test_split_reports_test_size(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.jsonl"
        corpus.write_text(dump_corpus(synthesize_corpus(500, 0.1, seed=1)),
                          encoding="utf-8")
        out = tmp_path / "report.json"
        code = main(["eval", "--corpus", str(corpus), "--split", "66",
                     "--out", str(out)])
        assert code == EXIT_OK
        assert "170" in capsys.readouterr().out

    def test_folds_one_is_usage_error(self, corpus_file, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--corpus", str(corpus_file), "--folds", "1",
                  "--out", str(tmp_path / "r.json")])
        assert exc.value.code == 2

    def test_folds_and_split_conflict(self, corpus_file, capsys):
        with pytest.raises(SystemExit):
            main(["eval", "--corpus", str(corpus_file),
                  "--folds", "10", "--split", "66"])


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


class TestServe:
    def test_busy_port_refused(self, capsys):
        with socket.socket() as blocker:
            blocker.bind(("127.0.0.1", 0))
            port = blocker.getsockname()[1]
            code = main(["serve", "--paper-tree", "--port", str(port)])
        assert code == EXIT_ERROR
        assert "port" in capsys.readouterr().err

    def test_bad_model_refused(self, tmp_path, capsys):
        code = main(["serve", "--model", str(tmp_path / "none.txt"),
                     "--port", str(free_port())])
        assert code == EXIT_ERROR

    def test_live_server_answers(self):
        port = free_port()
        proc = subprocess.Popen(
            [sys.executable, "-m", "konum_guard.cli", "serve",
             "--paper-tree", "--port", str(port)],
            stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
        try:
            base = f"http://127.0.0.1:{port}"
            deadline = time.monotonic() + 15
            health = None
            while time.monotonic() < deadline:
                try:
                    with urllib.request.urlopen(f"{base}/api/health", timeout=2) as resp:
                        health = json.loads(resp.read())
                    break
                except OSError:
                    time.sleep(0.2)
            assert health is not None, "server never came up"
            assert health["model"]["leaves"] == 6

            body = json.dumps({"text": "Eve gidiyorum"}).encode()
            req = urllib.request.Request(
                f"{base}/api/classify", data=body,
                headers={"Content-Type": "application/json"})
            with urllib.request.urlopen(req, timeout=5) as resp:
                verdict = json.loads(resp.read())
            assert verdict["label"] == 1
            assert verdict["warning"] == "Konum paylasiyor olabilirsiniz!"
        finally:
            proc.terminate()
            proc.wait(timeout=10)
