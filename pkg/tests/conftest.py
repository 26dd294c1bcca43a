import json

import pytest

from readlab.annotations import (
    AnnotatedDocument,
    Dataset,
    EntityMention,
    Sentence,
    Token,
)
from readlab.trees import parse_bracketed

# UPOS guesses for quick fixture construction only.
_DEFAULT_UPOS = {
    "the": "DET", "a": "DET", "an": "DET",
    "is": "AUX", "was": "AUX", "are": "AUX",
    "and": "CCONJ", "but": "CCONJ",
    "because": "SCONJ", "while": "SCONJ",
    "runs": "VERB", "chased": "VERB", "sees": "VERB", "ate": "VERB",
    "in": "ADP", "on": "ADP", "of": "ADP",
    ".": "PUNCT", ",": "PUNCT", "!": "PUNCT", "?": "PUNCT",
}


def make_token(spec: str) -> Token:
    """'text' or 'text/UPOS' or 'text/UPOS/lemma'."""
    parts = spec.split("/")
    text = parts[0]
    upos = parts[1] if len(parts) > 1 else _DEFAULT_UPOS.get(text.lower(), "NOUN")
    lemma = parts[2] if len(parts) > 2 else text.lower()
    return Token(text=text, lemma=lemma, upos=upos, is_stop=text.lower() in _DEFAULT_UPOS)


def make_sentence(token_specs: list[str], tree: str | None = None) -> Sentence:
    tokens = tuple(make_token(s) for s in token_specs)
    if tree is None:
        leaves = " ".join(t.text.replace("(", "-LRB-").replace(")", "-RRB-") for t in tokens)
        tree = f"(S {leaves})"
    return Sentence(tokens=tokens, tree=parse_bracketed(tree))


def make_doc(
    sentences: list[list[str]] | list[Sentence],
    doc_id: str = "d0",
    label: int | None = None,
    mentions: list[tuple[str, int, tuple[int, int], str]] = (),
    trees: list[str] | None = None,
) -> AnnotatedDocument:
    built = []
    for i, s in enumerate(sentences):
        if isinstance(s, Sentence):
            built.append(s)
        else:
            built.append(make_sentence(s, trees[i] if trees else None))
    ments = tuple(EntityMention(e, si, span, role) for e, si, span, role in mentions)
    return AnnotatedDocument(
        doc_id=doc_id,
        label=label,
        raw_text=" ".join(" ".join(t.text for t in s.tokens) for s in built),
        sentences=tuple(built),
        mentions=ments,
    )


@pytest.fixture
def minimal_annotation_payload():
    return {
        "class_count": 2,
        "class_names": ["easy", "hard"],
        "documents": [
            {
                "doc_id": "a",
                "label": 0,
                "raw_text": "Hi.",
                "sentences": [
                    {
                        "tokens": [
                            {"text": "Hi", "lemma": "hi", "upos": "INTJ", "is_stop": False},
                        ],
                        "tree": "(S (INTJ Hi))",
                    }
                ],
                "mentions": [],
            }
        ],
    }


@pytest.fixture
def annotation_file(tmp_path, minimal_annotation_payload):
    path = tmp_path / "annotations.json"
    path.write_text(json.dumps(minimal_annotation_payload), encoding="utf-8")
    return path


def make_labeled_dataset(per_class: dict[int, int], class_count: int | None = None) -> Dataset:
    """Tiny dataset with the requested number of documents per class."""
    docs = []
    for cls, count in per_class.items():
        for i in range(count):
            docs.append(make_doc([["word", "one"]], doc_id=f"c{cls}_{i}", label=cls))
    k = class_count if class_count is not None else max(per_class) + 1
    return Dataset(documents=docs, class_count=k)


@pytest.fixture(scope="session")
def shared_data_dir(tmp_path_factory):
    """On-disk data root: lexicons plus the 12 topic models, as the CLI and
    service expect to find them."""
    from readlab.features.adsem import MODEL_FAMILIES, TOPIC_SIZES
    from readlab.topics import TrainingConfig, train_lda

    root = tmp_path_factory.mktemp("readlab-data")
    lexicons = root / "lexicons"
    lexicons.mkdir()
    lexicons.joinpath("aoa.csv").write_text(
        "word,aoa_kuperman_word,aoa_kuperman_lemma,aoa_bird_lemma,aoa_bristol_lemma,aoa_cortese_lemma\n"
        "dog,4.0,4.0,4.2,4.1,4.3\n"
        "cat,3.5,3.5,3.6,3.4,3.7\n"
        "runs,3.6,3.5,,,\n"
        "christmas,5.2,5.2,,,\n",
        encoding="utf-8",
    )
    lexicons.joinpath("subtlex.csv").write_text(
        "Word,FREQcount,CDcount,FREQlow,CDlow,SUBTLWF,Lg10WF,SUBTLCD,Lg10CD\n"
        "the,1501908,8388,1339811,8388,29449.18,6.1766,100,3.9237\n"
        "dog,30000,4000,29000,3900,588.2,4.47,47.7,3.6\n"
        "cat,25000,3500,24000,3400,490.2,4.39,41.7,3.54\n",
        encoding="utf-8",
    )

    corpus = [
        ["christmas", "holiday", "gift", "snow", "tree", "december"] * 4,
        ["stipulation", "dismiss", "case", "court", "executed", "motion"] * 4,
        ["goal", "match", "team", "score", "league", "referee"] * 4,
        ["dog", "cat", "animal", "tail", "paw", "fur"] * 4,
    ]
    lda_dir = root / "lda"
    lda_dir.mkdir()
    config = TrainingConfig(batch_size=8, passes=1)
    for fi, family in enumerate(MODEL_FAMILIES):
        for si, size in enumerate(TOPIC_SIZES):
            model = train_lda(corpus, size, config, seed=fi * 4 + si)
            model.save(lda_dir / f"{family}{size}.json")
    return root


@pytest.fixture(scope="session")
def small_annotation_file(tmp_path_factory):
    """Three labeled documents with mentions and real parse trees."""
    from readlab.annotations import save_annotations

    trees = [
        "(S (NP (DT The) (NN dog)) (VP (VBZ runs)) (. .))",
        "(S (NP (DT The) (NN cat)) (VP (VBZ sees) (NP (DT the) (NN dog))) (. .))",
        "(S (NP (NNP Christmas)) (VP (VBZ is) (ADJP (JJ good))) (. .))",
    ]
    docs = [
        make_doc(
            [["The/DET", "dog/NOUN", "runs/VERB", "./PUNCT"]],
            doc_id="doc-a", label=0, trees=[trees[0]],
            mentions=[("dog", 0, (1, 2), "S")],
        ),
        make_doc(
            [["The/DET", "cat/NOUN", "sees/VERB", "the/DET", "dog/NOUN", "./PUNCT"]],
            doc_id="doc-b", label=1, trees=[trees[1]],
            mentions=[("cat", 0, (1, 2), "S"), ("dog", 0, (4, 5), "O")],
        ),
        make_doc(
            [["Christmas/PROPN", "is/AUX", "good/ADJ", "./PUNCT"]],
            doc_id="doc-c", label=1, trees=[trees[2]],
        ),
    ]
    dataset = Dataset(documents=docs, class_count=2, class_names=["easy", "hard"])
    path = tmp_path_factory.mktemp("annotations") / "small.json"
    save_annotations(dataset, path)
    return path
