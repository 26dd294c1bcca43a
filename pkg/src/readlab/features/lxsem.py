"""Lexico-semantic features: POS variation ratios, type-token ratios (with
MTLD), age-of-acquisition sums, and SubtlexUS word-familiarity sums.

Type counting is case-insensitive on surface forms. The TTR token stream is
the raw token sequence minus punctuation. Words missing from a lexicon
contribute 0 to the sums while staying in the denominators, so per-token
averages remain comparable across documents.
"""

from __future__ import annotations

import math
import warnings

from ..annotations import AnnotatedDocument
from ..lexicons import SUBTLEX_FIELD_STEMS, AoaLexicon, SubtlexLexicon, lookup

MTLD_TTR_THRESHOLD = 0.72

_VAR_POS = [("No", "NOUN"), ("Ve", "VERB"), ("Aj", "ADJ"), ("Av", "ADV")]


def _ratio(a: float, b: float) -> float:
    return a / b if b else 0.0


def extract_varf(doc: AnnotatedDocument) -> dict[str, float]:
    """Simple (u/t), squared (u^2/t), and corrected (u/sqrt(2t)) variation for
    nouns, verbs, adjectives, and adverbs."""
    out: dict[str, float] = {}
    for abbr, tag in _VAR_POS:
        forms = [t.text.casefold() for t in doc.all_tokens() if t.upos == tag]
        total = len(forms)
        unique = len(set(forms))
        out[f"Simp{abbr}V_S"] = _ratio(unique, total)
        out[f"Squa{abbr}V_S"] = _ratio(unique * unique, total)
        out[f"Corr{abbr}V_S"] = unique / math.sqrt(2 * total) if total else 0.0
    return out


def mtld(tokens: list[str], threshold: float = MTLD_TTR_THRESHOLD) -> float:
    """Measure of textual lexical diversity, bidirectional variant.

    Walk the stream counting full factors (segments whose running TTR falls
    below the threshold) plus an end-of-text partial factor weighted by
    (1 - TTR) / (1 - threshold); the measure is tokens over factors, averaged
    over the forward and reversed streams.
    """
    if not tokens:
        return 0.0

    def one_direction(stream: list[str]) -> float:
        factors = 0.0
        types: set[str] = set()
        token_count = 0
        ttr = 1.0
        for token in stream:
            token_count += 1
            types.add(token)
            ttr = len(types) / token_count
            if ttr < threshold:
                factors += 1.0
                types.clear()
                token_count = 0
                ttr = 1.0
        if token_count > 0:
            factors += (1.0 - ttr) / (1.0 - threshold)
        if factors == 0.0:
            return 0.0
        return len(stream) / factors

    forward = one_direction(tokens)
    backward = one_direction(tokens[::-1])
    if forward == 0.0 or backward == 0.0:
        warnings.warn("degenerate token stream for MTLD (no factor completed)")
        return 0.0
    return (forward + backward) / 2.0


def extract_ttrf(doc: AnnotatedDocument) -> dict[str, float]:
    tokens = [t.text.casefold() for t in doc.all_tokens() if t.upos != "PUNCT"]
    total = len(tokens)
    out = {"SimpTTR_S": 0.0, "CorrTTR_S": 0.0, "BiLoTTR_S": 0.0,
           "UberTTR_S": 0.0, "MTLDTTR_S": 0.0}
    if total == 0:
        return out
    unique = len(set(tokens))
    out["SimpTTR_S"] = unique / total
    out["CorrTTR_S"] = unique / math.sqrt(2 * total)
    out["BiLoTTR_S"] = math.log(unique) / math.log(total) if total > 1 else 0.0
    if unique < total:  # log(t/u) = 0 when every token is unique
        out["UberTTR_S"] = math.log(unique) ** 2 / math.log(total / unique)
    out["MTLDTTR_S"] = mtld(tokens)
    return out


def extract_psyf(doc: AnnotatedDocument, aoa: AoaLexicon) -> dict[str, float]:
    """Age-of-acquisition sums for five norm families, each as total,
    per-sentence, and per-token values."""
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    out: dict[str, float] = {}
    for stem, table in aoa.tables().items():
        uses_lemma = stem.endswith("L")
        total = 0.0
        for token in doc.all_tokens():
            value = lookup(table, token.lemma if uses_lemma else token.text)
            if value is not None:
                total += value
        out[f"to_{stem}_C"] = total
        out[f"as_{stem}_C"] = _ratio(total, n_sent)
        out[f"at_{stem}_C"] = _ratio(total, n_tok)
    return out


def extract_worf(doc: AnnotatedDocument, subtlex: SubtlexLexicon) -> dict[str, float]:
    """SubtlexUS familiarity sums: eight database fields as total,
    per-sentence, and per-token values."""
    n_sent = doc.sentence_count
    n_tok = doc.token_count
    totals = {column: 0.0 for column in SUBTLEX_FIELD_STEMS}
    for token in doc.all_tokens():
        record = subtlex.entries.get(token.text.casefold())
        if record is None:
            continue
        for column in totals:
            totals[column] += record[column]
    out: dict[str, float] = {}
    for column, stem in SUBTLEX_FIELD_STEMS.items():
        total = totals[column]
        out[f"to_{stem}_C"] = total
        out[f"as_{stem}_C"] = _ratio(total, n_sent)
        out[f"at_{stem}_C"] = _ratio(total, n_tok)
    return out


def extract_lxsem(doc: AnnotatedDocument, aoa: AoaLexicon, subtlex: SubtlexLexicon) -> dict[str, float]:
    out = extract_varf(doc)
    out.update(extract_ttrf(doc))
    out.update(extract_psyf(doc, aoa))
    out.update(extract_worf(doc, subtlex))
    return out
