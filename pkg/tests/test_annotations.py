import json

import pytest

from readlab.annotations import (
    AnnotationError,
    dataset_from_mapping,
    dataset_to_mapping,
    downsample,
    load_annotations,
    load_stopwords,
    preprocess_for_lda,
    preprocess_tokens,
    save_annotations,
)

from conftest import make_doc, make_labeled_dataset


class TestLoading:
    def test_minimal_file(self, annotation_file):
        dataset = load_annotations(annotation_file)
        assert len(dataset.documents) == 1
        assert dataset.class_count == 2
        assert dataset.documents[0].sentences[0].tokens[0].text == "Hi"

    def test_duplicate_doc_id_rejected(self, minimal_annotation_payload, tmp_path):
        payload = minimal_annotation_payload
        payload["documents"].append(dict(payload["documents"][0]))
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(AnnotationError, match="duplicate doc_id 'a'"):
            load_annotations(path)

    def test_mention_span_out_of_bounds(self, minimal_annotation_payload):
        payload = minimal_annotation_payload
        payload["documents"][0]["mentions"] = [
            {"entity_id": "e1", "sentence_index": 0, "token_span": [0, 5], "role": "S"}
        ]
        with pytest.raises(AnnotationError, match="'e1'.*token_span"):
            dataset_from_mapping(payload)

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n "class_count": 2,\n oops\n}', encoding="utf-8")
        with pytest.raises(AnnotationError, match="line 3"):
            load_annotations(path)

    def test_bad_label_names_doc(self, minimal_annotation_payload):
        minimal_annotation_payload["documents"][0]["label"] = 7
        with pytest.raises(AnnotationError, match="document 'a'.*label 7"):
            dataset_from_mapping(minimal_annotation_payload)

    def test_bad_upos_rejected(self, minimal_annotation_payload):
        minimal_annotation_payload["documents"][0]["sentences"][0]["tokens"][0]["upos"] = "NN"
        with pytest.raises(AnnotationError, match="upos"):
            dataset_from_mapping(minimal_annotation_payload)

    def test_bad_role_rejected(self, minimal_annotation_payload):
        minimal_annotation_payload["documents"][0]["mentions"] = [
            {"entity_id": "e1", "sentence_index": 0, "token_span": [0, 1], "role": "Q"}
        ]
        with pytest.raises(AnnotationError, match="role"):
            dataset_from_mapping(minimal_annotation_payload)

    def test_leaf_token_mismatch_warns_not_fails(self, minimal_annotation_payload):
        minimal_annotation_payload["documents"][0]["sentences"][0]["tree"] = "(S (X a) (X b))"
        with pytest.warns(UserWarning, match="2 leaves but 1 tokens"):
            dataset = dataset_from_mapping(minimal_annotation_payload)
        assert len(dataset.documents) == 1

    def test_round_trip_identity(self, minimal_annotation_payload, tmp_path):
        dataset = dataset_from_mapping(minimal_annotation_payload)
        path = tmp_path / "again.json"
        save_annotations(dataset, path)
        again = load_annotations(path)
        assert dataset_to_mapping(again) == dataset_to_mapping(dataset)


@pytest.fixture(scope="module")
def stopwords():
    return load_stopwords()


class TestPreprocess:
    def test_default_list_is_179_words(self, stopwords):
        assert len(stopwords) == 179

    def test_empty_doc(self, stopwords):
        assert preprocess_tokens([], stopwords) == []

    def test_short_sentence(self, stopwords):
        doc = make_doc([["Christmas", "is", "good", "."]])
        assert preprocess_for_lda(doc, stopwords) == ["christmas", "good"]

    def test_abbreviation_collapses_below_length_rule(self, stopwords):
        doc = make_doc([["The", "U.S.", "is", "big", "!"]])
        assert preprocess_for_lda(doc, stopwords) == ["big"]

    def test_idempotent(self, stopwords):
        doc = make_doc([["Christmas", "trees", "sparkle", "during", "December", "nights"]])
        once = preprocess_for_lda(doc, stopwords)
        assert preprocess_tokens(once, stopwords) == once


class TestDownsample:
    def test_balances_counts(self):
        dataset = make_labeled_dataset({0: 10, 1: 5})
        out = downsample(dataset, per_class=5, seed=1)
        counts = {cls: len(docs) for cls, docs in out.by_class().items()}
        assert counts == {0: 5, 1: 5}

    def test_class_too_small_names_class(self):
        dataset = make_labeled_dataset({0: 10, 1: 3})
        with pytest.raises(AnnotationError, match="'1' has 3"):
            downsample(dataset, per_class=5, seed=1)

    def test_deterministic_under_seed(self):
        dataset = make_labeled_dataset({0: 30, 1: 30})
        ids_a = [d.doc_id for d in downsample(dataset, 10, seed=7).documents]
        ids_b = [d.doc_id for d in downsample(dataset, 10, seed=7).documents]
        ids_c = [d.doc_id for d in downsample(dataset, 10, seed=8).documents]
        assert ids_a == ids_b
        assert ids_a != ids_c

    def test_five_by_625_shape(self):
        dataset = make_labeled_dataset({c: 640 for c in range(5)})
        out = downsample(dataset, per_class=625, seed=0)
        assert len(out.documents) == 5 * 625
        assert all(len(v) == 625 for v in out.by_class().values())

    def test_five_by_60_shape(self):
        dataset = make_labeled_dataset({c: 75 for c in range(5)})
        out = downsample(dataset, per_class=60, seed=0)
        assert len(out.documents) == 5 * 60
