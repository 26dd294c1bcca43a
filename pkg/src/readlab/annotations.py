"""Annotated-document data model, JSON (de)serialization, and corpus utilities.

Annotation is produced by an external exporter and ingested here; nothing in
this package runs a tagger or parser. The JSON layout is::

    {"class_count": K, "class_names": [...], "documents": [
        {"doc_id": ..., "label": int|null, "raw_text": ...,
         "sentences": [{"tokens": [{"text","lemma","upos","is_stop"}],
                        "tree": "(S ...)"}],
         "mentions": [{"entity_id", "sentence_index", "token_span": [s, e],
                       "role": "S"|"O"|"X"}]}
    ]}
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .trees import ConstituencyTree, TreeParseError, parse_bracketed

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

MENTION_ROLES = frozenset({"S", "O", "X"})


class AnnotationError(ValueError):
    """Malformed or schema-violating annotation input."""


@dataclass(frozen=True)
class Token:
    text: str
    lemma: str
    upos: str
    is_stop: bool = False


@dataclass(frozen=True)
class EntityMention:
    entity_id: str
    sentence_index: int
    token_span: tuple[int, int]  # [start, end)
    role: str


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    tree: ConstituencyTree


@dataclass(frozen=True)
class AnnotatedDocument:
    doc_id: str
    label: int | None
    raw_text: str
    sentences: tuple[Sentence, ...]
    mentions: tuple[EntityMention, ...] = ()

    @property
    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    def all_tokens(self):
        for sentence in self.sentences:
            yield from sentence.tokens


@dataclass
class Dataset:
    documents: list[AnnotatedDocument]
    class_count: int
    class_names: list[str] = field(default_factory=list)

    def labeled(self) -> list[AnnotatedDocument]:
        return [d for d in self.documents if d.label is not None]

    def by_class(self) -> dict[int, list[AnnotatedDocument]]:
        groups: dict[int, list[AnnotatedDocument]] = {}
        for doc in self.labeled():
            groups.setdefault(doc.label, []).append(doc)
        return groups


def _require(obj: dict, key: str, ctx: str):
    if key not in obj:
        raise AnnotationError(f"{ctx}: missing field {key!r}")
    return obj[key]


def _parse_token(raw: dict, ctx: str) -> Token:
    text = _require(raw, "text", ctx)
    if not isinstance(text, str) or not text:
        raise AnnotationError(f"{ctx}: token text must be a non-empty string")
    upos = _require(raw, "upos", ctx)
    if upos not in UPOS_TAGS:
        raise AnnotationError(f"{ctx}: unknown upos tag {upos!r}")
    return Token(
        text=text,
        lemma=str(raw.get("lemma", text)),
        upos=upos,
        is_stop=bool(raw.get("is_stop", False)),
    )


def _parse_document(raw: dict, class_count: int) -> AnnotatedDocument:
    doc_id = str(_require(raw, "doc_id", "document"))
    ctx = f"document {doc_id!r}"
    label = raw.get("label")
    if label is not None:
        label = int(label)
        if not 0 <= label < class_count:
            raise AnnotationError(f"{ctx}: label {label} outside 0..{class_count - 1}")

    sentences = []
    for si, sraw in enumerate(_require(raw, "sentences", ctx)):
        sctx = f"{ctx} sentence {si}"
        tokens = tuple(_parse_token(t, sctx) for t in _require(sraw, "tokens", sctx))
        try:
            tree = parse_bracketed(_require(sraw, "tree", sctx))
        except TreeParseError as exc:
            raise AnnotationError(f"{sctx}: bad tree: {exc}") from exc
        n_leaves = len(tree.leaves())
        if n_leaves != len(tokens):
            # Constituency parsers and taggers tokenize differently in the
            # wild; tree-side features use the tree's own leaves.
            warnings.warn(
                f"{sctx}: tree has {n_leaves} leaves but {len(tokens)} tokens",
                stacklevel=3,
            )
        sentences.append(Sentence(tokens=tokens, tree=tree))

    mentions = []
    for mi, mraw in enumerate(raw.get("mentions", [])):
        mctx = f"{ctx} mention {mi}"
        entity_id = str(_require(mraw, "entity_id", mctx))
        sent_idx = int(_require(mraw, "sentence_index", mctx))
        if not 0 <= sent_idx < len(sentences):
            raise AnnotationError(f"{mctx} ({entity_id!r}): sentence_index {sent_idx} out of range")
        span = _require(mraw, "token_span", mctx)
        if len(span) != 2:
            raise AnnotationError(f"{mctx} ({entity_id!r}): token_span must be [start, end)")
        start, end = int(span[0]), int(span[1])
        n_tok = len(sentences[sent_idx].tokens)
        if not (0 <= start < end <= n_tok):
            raise AnnotationError(
                f"{mctx} ({entity_id!r}): token_span [{start}, {end}) outside sentence of {n_tok} tokens"
            )
        role = _require(mraw, "role", mctx)
        if role not in MENTION_ROLES:
            raise AnnotationError(f"{mctx} ({entity_id!r}): role must be one of S/O/X, got {role!r}")
        mentions.append(EntityMention(entity_id, sent_idx, (start, end), role))

    return AnnotatedDocument(
        doc_id=doc_id,
        label=label,
        raw_text=str(raw.get("raw_text", "")),
        sentences=tuple(sentences),
        mentions=tuple(mentions),
    )


def dataset_from_mapping(payload: dict) -> Dataset:
    """Build and validate a Dataset from an already-parsed JSON object."""
    class_count = int(_require(payload, "class_count", "header"))
    if class_count < 2:
        raise AnnotationError(f"class_count must be >= 2, got {class_count}")
    class_names = [str(n) for n in payload.get("class_names", [])]
    documents = []
    seen: set[str] = set()
    for raw in _require(payload, "documents", "header"):
        doc = _parse_document(raw, class_count)
        if doc.doc_id in seen:
            raise AnnotationError(f"duplicate doc_id {doc.doc_id!r}")
        seen.add(doc.doc_id)
        documents.append(doc)
    return Dataset(documents=documents, class_count=class_count, class_names=class_names)


def load_annotations(path: str | Path) -> Dataset:
    """Load an annotation JSON file into a validated Dataset."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AnnotationError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return dataset_from_mapping(payload)


def dataset_to_mapping(dataset: Dataset) -> dict:
    return {
        "class_count": dataset.class_count,
        "class_names": list(dataset.class_names),
        "documents": [
            {
                "doc_id": d.doc_id,
                "label": d.label,
                "raw_text": d.raw_text,
                "sentences": [
                    {
                        "tokens": [
                            {"text": t.text, "lemma": t.lemma, "upos": t.upos, "is_stop": t.is_stop}
                            for t in s.tokens
                        ],
                        "tree": s.tree.to_bracketed(),
                    }
                    for s in d.sentences
                ],
                "mentions": [
                    {
                        "entity_id": m.entity_id,
                        "sentence_index": m.sentence_index,
                        "token_span": list(m.token_span),
                        "role": m.role,
                    }
                    for m in d.mentions
                ],
            }
            for d in dataset.documents
        ],
    }


def save_annotations(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dataset_to_mapping(dataset), indent=1), encoding="utf-8")


# ---------------------------------------------------------------------------
# Topic-model preprocessing

_NON_ALNUM = re.compile(r"[^A-Za-z0-9]+")


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Stopword list, one word per line; defaults to the vendored English list."""
    if path is None:
        text = resources.files("readlab.data").joinpath("stopwords_english.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def preprocess_tokens(tokens, stopwords: frozenset[str]) -> list[str]:
    """Clean a token stream for topic modeling.

    Steps, in order: strip non-alphanumeric characters, drop tokens shorter
    than 3 characters, lowercase, drop stopwords. Empty output is fine.
    """
    out = []
    for token in tokens:
        cleaned = _NON_ALNUM.sub("", token)
        if len(cleaned) < 3:
            continue
        cleaned = cleaned.lower()
        if cleaned in stopwords:
            continue
        out.append(cleaned)
    return out


def preprocess_for_lda(doc: AnnotatedDocument, stopwords: frozenset[str]) -> list[str]:
    return preprocess_tokens((t.text for t in doc.all_tokens()), stopwords)


# ---------------------------------------------------------------------------
# Class balancing

def downsample(dataset: Dataset, per_class: int, seed: int) -> Dataset:
    """Keep exactly ``per_class`` uniformly sampled documents per class.

    Deterministic for a given (dataset, per_class, seed); document order in
    the result follows the original dataset order.
    """
    if per_class <= 0:
        raise ValueError(f"per_class must be positive, got {per_class}")
    groups = dataset.by_class()
    for cls in range(dataset.class_count):
        size = len(groups.get(cls, []))
        if size < per_class:
            name = dataset.class_names[cls] if cls < len(dataset.class_names) else str(cls)
            raise AnnotationError(
                f"class {name!r} has {size} documents, fewer than per_class={per_class}"
            )
    rng = np.random.default_rng(seed)
    keep: set[str] = set()
    for cls in sorted(groups):
        docs = groups[cls]
        chosen = rng.choice(len(docs), size=per_class, replace=False)
        keep.update(docs[i].doc_id for i in chosen)
    selected = [d for d in dataset.documents if d.doc_id in keep]
    return Dataset(documents=selected, class_count=dataset.class_count,
                   class_names=list(dataset.class_names))
