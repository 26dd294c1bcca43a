import csv
import hashlib
import json

import pytest

import synthetic
from readlab.annotations import save_annotations
from readlab.cli import main
from readlab.features import extract_dataset
from readlab.ml import stratified_folds
from readlab.tables import write_features_csv


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


class TestExtract:
    def test_t1_shape(self, small_annotation_file, shared_data_dir, tmp_path):
        out = tmp_path / "features.csv"
        code = main([
            "extract",
            "--annotations", str(small_annotation_file),
            "--lexicons", str(shared_data_dir / "lexicons"),
            "--lda-models", str(shared_data_dir / "lda"),
            "--set", "T1",
            "--out", str(out),
        ])
        assert code == 0
        rows = read_csv(out)
        assert len(rows) == 1 + 3
        assert len(rows[0]) == 2 + 255
        assert rows[0][:2] == ["doc_id", "label"]

    def test_h1_shape(self, small_annotation_file, shared_data_dir, tmp_path):
        out = tmp_path / "features.csv"
        code = main([
            "extract",
            "--annotations", str(small_annotation_file),
            "--lda-models", str(shared_data_dir / "lda"),
            "--set", "H1",
            "--out", str(out),
        ])
        assert code == 0
        rows = read_csv(out)
        assert len(rows[0]) == 2 + 76

    def test_unknown_set_is_usage_error(self, small_annotation_file, tmp_path, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main([
                "extract",
                "--annotations", str(small_annotation_file),
                "--set", "NOPE",
                "--out", str(tmp_path / "x.csv"),
            ])
        assert excinfo.value.code == 2
        assert "NOPE" in capsys.readouterr().err

    def test_missing_models_is_runtime_error(self, small_annotation_file, tmp_path, capsys):
        code = main([
            "extract",
            "--annotations", str(small_annotation_file),
            "--set", "T1",
            "--out", str(tmp_path / "x.csv"),
        ])
        assert code == 1
        assert "topic-model" in capsys.readouterr().err

    def test_jobs_does_not_change_output(self, small_annotation_file, shared_data_dir, tmp_path):
        outs = []
        for jobs in ("1", "2"):
            out = tmp_path / f"f{jobs}.csv"
            assert main([
                "extract",
                "--annotations", str(small_annotation_file),
                "--lexicons", str(shared_data_dir / "lexicons"),
                "--lda-models", str(shared_data_dir / "lda"),
                "--set", "T1",
                "--jobs", jobs,
                "--out", str(out),
            ]) == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_set_without_adsem_needs_no_models(self, small_annotation_file, tmp_path):
        out = tmp_path / "p3.csv"
        code = main([
            "extract",
            "--annotations", str(small_annotation_file),
            "--set", "P3",
            "--out", str(out),
        ])
        assert code == 0
        assert len(read_csv(out)[0]) == 2 + 132


class TestLdaTrain:
    @pytest.fixture
    def corpus_file(self, tmp_path):
        path = tmp_path / "corpus.txt"
        lines = [
            "goal match team score league",
            "oven flour butter recipe dough",
            "goal team score coach match",
            "butter dough spice oven recipe",
        ]
        path.write_text("\n".join(lines), encoding="utf-8")
        return path

    def test_trained_model_loads(self, corpus_file, tmp_path):
        from readlab.topics import LdaModel

        out = tmp_path / "model.json"
        code = main([
            "lda-train", "--corpus", str(corpus_file),
            "--topics", "50", "--passes", "2", "--out", str(out),
        ])
        assert code == 0
        model = LdaModel.load(out)
        assert model.n_topics == 50

    def test_same_seed_same_hash(self, corpus_file, tmp_path):
        digests = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            assert main([
                "lda-train", "--corpus", str(corpus_file),
                "--topics", "10", "--passes", "1", "--seed", "42", "--out", str(out),
            ]) == 0
            digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
        assert digests[0] == digests[1]

    def test_k_of_one_is_usage_error(self, corpus_file, tmp_path):
        with pytest.raises(SystemExit) as excinfo:
            main([
                "lda-train", "--corpus", str(corpus_file),
                "--topics", "1", "--out", str(tmp_path / "m.json"),
            ])
        assert excinfo.value.code == 2


@pytest.fixture(scope="module")
def eval_features_csv(tmp_path_factory):
    dataset = synthetic.generate_corpus(n_per_class=12, seed=1)
    features = extract_dataset(dataset, "T2")
    path = tmp_path_factory.mktemp("eval") / "features.csv"
    labels = {d.doc_id: d.label for d in dataset.documents}
    from readlab import registry

    write_features_csv(path, features, labels, registry.resolve_set("T2"))
    return path, dataset


class TestEvaluate:
    def test_report_shape(self, eval_features_csv, tmp_path):
        features_path, _ = eval_features_csv
        report_path = tmp_path / "report.json"
        code = main([
            "evaluate", "--features", str(features_path),
            "--model", "logreg", "--folds", "5", "--seed", "3",
            "--report", str(report_path),
        ])
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert set(payload) == {"accuracy", "f1", "precision", "recall", "qwk"}
        for metric in payload.values():
            assert set(metric) == {"folds", "mean"}
            assert len(metric["folds"]) == 5

    def test_deterministic_under_seed(self, eval_features_csv, tmp_path):
        features_path, _ = eval_features_csv
        outputs = []
        for name in ("r1.json", "r2.json"):
            path = tmp_path / name
            assert main([
                "evaluate", "--features", str(features_path),
                "--model", "rf", "--n-trees", "12", "--seed", "9",
                "--report", str(path),
            ]) == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_soft_labels_hybrid_mode(self, eval_features_csv, tmp_path):
        features_path, dataset = eval_features_csv
        folds = stratified_folds([d.label for d in dataset.documents], k=5, seed=3)
        soft_path = tmp_path / "soft.csv"
        synthetic.write_soft_csv(soft_path, dataset, folds, "oracle")
        report_path = tmp_path / "report.json"
        code = main([
            "evaluate", "--features", str(features_path),
            "--soft-labels", str(soft_path),
            "--model", "logreg", "--c", "10.0", "--penalty", "l2",
            "--folds", "5", "--seed", "3",
            "--report", str(report_path),
        ])
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert payload["accuracy"]["mean"] == 1.0

    def test_small_class_fold_error_surfaces(self, tmp_path):
        from conftest import make_labeled_dataset
        from readlab import registry

        dataset = make_labeled_dataset({0: 12, 1: 9})
        features = extract_dataset(dataset, "T2")
        path = tmp_path / "tiny.csv"
        write_features_csv(path, features, {d.doc_id: d.label for d in dataset.documents},
                           registry.resolve_set("T2"))
        code = main([
            "evaluate", "--features", str(path), "--folds", "5",
            "--report", str(tmp_path / "r.json"),
        ])
        assert code == 1


class TestCurve:
    def test_small_curve(self, eval_features_csv, tmp_path):
        features_path, _ = eval_features_csv
        out = tmp_path / "curve.csv"
        code = main([
            "curve", "--features", str(features_path),
            "--sizes", "6:24:6", "--seed", "1",
            "--out", str(out),
        ])
        assert code == 0
        rows = read_csv(out)
        assert len(rows) == 1 + 4  # header + 4 sizes
        assert rows[1][0] == "6"

    def test_size_exceeding_pool_errors(self, eval_features_csv, tmp_path, capsys):
        features_path, _ = eval_features_csv
        code = main([
            "curve", "--features", str(features_path),
            "--sizes", "500:500:1",
            "--out", str(tmp_path / "c.csv"),
        ])
        assert code == 1
        assert "pool" in capsys.readouterr().err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
