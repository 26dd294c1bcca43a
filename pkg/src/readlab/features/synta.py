"""Syntactic features: phrasal counts, parse-tree shape, POS-tag counts.

Phrasal categories come from Penn-style constituent labels (NP, VP, SBAR, PP,
ADJP, ADVP); POS categories from the Universal POS inventory. Cross ratios
with an empty denominator are 0 by convention.
"""

from __future__ import annotations

from ..annotations import AnnotatedDocument

# (code abbreviation, constituent label)
PHRASE_CATEGORIES = [
    ("No", "NP"),
    ("Ve", "VP"),
    ("Su", "SBAR"),  # subordinate clause
    ("Pr", "PP"),
    ("Aj", "ADJP"),
    ("Av", "ADVP"),
]
_PHRASE_STEM = {"No": "NoPhr", "Ve": "VePhr", "Su": "SuPhr", "Pr": "PrPhr",
                "Aj": "AjPhr", "Av": "AvPhr"}
_PHRASE_RATIO_ORDER = {
    "No": ["Ve", "Su", "Pr", "Aj", "Av"],
    "Ve": ["No", "Su", "Pr", "Aj", "Av"],
    "Su": ["No", "Ve", "Pr", "Aj", "Av"],
    "Pr": ["No", "Ve", "Su", "Aj", "Av"],
    "Aj": ["No", "Ve", "Su", "Pr", "Av"],
    "Av": ["No", "Ve", "Su", "Pr", "Aj"],
}

POS_CATEGORIES = [
    ("No", "NOUN"),
    ("Ve", "VERB"),
    ("Aj", "ADJ"),
    ("Av", "ADV"),
    ("Su", "SCONJ"),
    ("Co", "CCONJ"),
]
_POS_RATIO_ORDER = {
    "No": ["Aj", "Ve", "Av", "Su", "Co"],
    "Ve": ["Aj", "No", "Av", "Su", "Co"],
    "Aj": ["No", "Ve", "Av", "Su", "Co"],
    "Av": ["Aj", "No", "Ve", "Su", "Co"],
    "Su": ["Aj", "No", "Ve", "Av", "Co"],
    "Co": ["Aj", "No", "Ve", "Av", "Su"],
}

CONTENT_UPOS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV"})
# Function words: everything else except punctuation-like tags.
_NON_WORD_UPOS = frozenset({"PUNCT", "SYM", "X"})


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


def extract_phrf(doc: AnnotatedDocument) -> dict[str, float]:
    """48 phrasal features: per category, total / per-sentence / per-token
    counts plus ratios against the five other categories."""
    counts = {abbr: 0 for abbr, _ in PHRASE_CATEGORIES}
    label_to_abbr = {label: abbr for abbr, label in PHRASE_CATEGORIES}
    for sentence in doc.sentences:
        for label, n in sentence.tree.count_labels().items():
            abbr = label_to_abbr.get(label)
            if abbr is not None:
                counts[abbr] += n
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    out: dict[str, float] = {}
    for abbr, _ in PHRASE_CATEGORIES:
        stem = _PHRASE_STEM[abbr]
        total = counts[abbr]
        out[f"to_{stem}_C"] = float(total)
        out[f"as_{stem}_C"] = _ratio(total, n_sent)
        out[f"at_{stem}_C"] = _ratio(total, n_tok)
        for other in _PHRASE_RATIO_ORDER[abbr]:
            out[f"ra_{abbr}{other}P_C"] = _ratio(total, counts[other])
    return out


def extract_trsf(doc: AnnotatedDocument) -> dict[str, float]:
    """Tree-shape features: summed tree height and flattened-tree length
    (all nodes, interior labels plus leaves), each totaled and averaged."""
    height_total = sum(s.tree.height() for s in doc.sentences)
    flat_total = sum(s.tree.node_count() for s in doc.sentences)
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    return {
        "to_TreeH_C": float(height_total),
        "as_TreeH_C": _ratio(height_total, n_sent),
        "at_TreeH_C": _ratio(height_total, n_tok),
        "to_FTree_C": float(flat_total),
        "as_FTree_C": _ratio(flat_total, n_sent),
        "at_FTree_C": _ratio(flat_total, n_tok),
    }


def extract_posf(doc: AnnotatedDocument) -> dict[str, float]:
    """55 POS features: six tag categories with totals, averages, and cross
    ratios, plus content-word and function-word counts and their ratio."""
    counts = {abbr: 0 for abbr, _ in POS_CATEGORIES}
    tag_to_abbr = {tag: abbr for abbr, tag in POS_CATEGORIES}
    content = function = 0
    for token in doc.all_tokens():
        abbr = tag_to_abbr.get(token.upos)
        if abbr is not None:
            counts[abbr] += 1
        if token.upos in CONTENT_UPOS:
            content += 1
        elif token.upos not in _NON_WORD_UPOS:
            function += 1
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    out: dict[str, float] = {}
    for abbr, _ in POS_CATEGORIES:
        total = counts[abbr]
        out[f"to_{abbr}Tag_C"] = float(total)
        out[f"as_{abbr}Tag_C"] = _ratio(total, n_sent)
        out[f"at_{abbr}Tag_C"] = _ratio(total, n_tok)
        for other in _POS_RATIO_ORDER[abbr]:
            out[f"ra_{abbr}{other}T_C"] = _ratio(total, counts[other])
    out["to_ContW_C"] = float(content)
    out["as_ContW_C"] = _ratio(content, n_sent)
    out["at_ContW_C"] = _ratio(content, n_tok)
    out["to_FuncW_C"] = float(function)
    out["as_FuncW_C"] = _ratio(function, n_sent)
    out["at_FuncW_C"] = _ratio(function, n_tok)
    out["ra_CoFuW_C"] = _ratio(content, function)
    return out


def extract_synta(doc: AnnotatedDocument) -> dict[str, float]:
    out = extract_phrf(doc)
    out.update(extract_trsf(doc))
    out.update(extract_posf(doc))
    return out
