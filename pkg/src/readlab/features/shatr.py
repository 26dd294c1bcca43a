"""Shallow surface features and the six traditional readability formulas.

Every formula leans on the syllable counter, so its heuristic is pinned here:
count maximal vowel groups (y vocalic), subtract a silent final e unless it
closes a consonant-"le" ending, floor at one. Characters mean letters only;
tokens with no letters contribute neither syllables nor characters, and are
excluded from the easy/hard word splits.
"""

from __future__ import annotations

import math

from ..annotations import AnnotatedDocument

_VOWELS = frozenset("aeiouy")


def count_syllables(word: str) -> int:
    letters = [c for c in word.lower() if c.isalpha()]
    if not letters:
        return 1
    groups = 0
    previous_vowel = False
    for ch in letters:
        is_vowel = ch in _VOWELS
        if is_vowel and not previous_vowel:
            groups += 1
        previous_vowel = is_vowel
    if letters[-1] == "e":
        consonant_le = (
            len(letters) >= 3 and letters[-2] == "l" and letters[-3] not in _VOWELS
        )
        if not consonant_le:
            groups -= 1
    return max(groups, 1)


def _letter_count(word: str) -> int:
    return sum(1 for c in word if c.isalpha())


def _doc_counts(doc: AnnotatedDocument):
    n_tok = doc.token_count
    n_sent = doc.sentence_count
    letters = 0
    syllables = 0
    polysyllabic = 0
    lettered_words = 0
    for token in doc.all_tokens():
        n_letters = _letter_count(token.text)
        letters += n_letters
        if n_letters == 0:
            continue
        lettered_words += 1
        y = count_syllables(token.text)
        syllables += y
        if y >= 3:
            polysyllabic += 1
    return n_tok, n_sent, letters, syllables, polysyllabic, lettered_words


def extract_shaf(doc: AnnotatedDocument) -> dict[str, float]:
    n_tok, n_sent, letters, syllables, _, _ = _doc_counts(doc)
    out = {
        "TokSenM_S": float(n_tok * n_sent),
        "TokSenS_S": math.sqrt(n_tok * n_sent),
        "TokSenL_S": 0.0,
        "as_Token_C": n_tok / n_sent if n_sent else 0.0,
        "as_Sylla_C": syllables / n_sent if n_sent else 0.0,
        "at_Sylla_C": syllables / n_tok if n_tok else 0.0,
        "as_Chara_C": letters / n_sent if n_sent else 0.0,
        "at_Chara_C": letters / n_tok if n_tok else 0.0,
    }
    if n_sent > 1 and n_tok >= 1:  # ln(1) = 0 denominator guard
        out["TokSenL_S"] = math.log(n_tok) / math.log(n_sent)
    return out


def extract_traf(doc: AnnotatedDocument) -> dict[str, float]:
    """Flesch-Kincaid grade, automated readability, Gunning fog, SMOG,
    Coleman-Liau, and Linsear Write, in their usual constant forms."""
    n_tok, n_sent, letters, syllables, poly, lettered = _doc_counts(doc)
    out = {code: 0.0 for code in
           ("SmogInd_S", "ColeLia_S", "Gunning_S", "AutoRea_S", "FleschG_S", "LinseaW_S")}
    if n_tok == 0 or n_sent == 0:
        return out
    tokens_per_sentence = n_tok / n_sent
    out["FleschG_S"] = 0.39 * tokens_per_sentence + 11.8 * (syllables / n_tok) - 15.59
    out["AutoRea_S"] = 4.71 * (letters / n_tok) + 0.5 * tokens_per_sentence - 21.43
    out["Gunning_S"] = 0.4 * (tokens_per_sentence + 100.0 * (poly / n_tok))
    out["SmogInd_S"] = 3.1291 + 1.0430 * math.sqrt(30.0 * poly / n_sent)
    out["ColeLia_S"] = (
        0.0588 * (100.0 * letters / n_tok) - 0.296 * (100.0 * n_sent / n_tok) - 15.8
    )
    easy = lettered - poly
    score = (easy + 3.0 * poly) / n_sent
    out["LinseaW_S"] = score / 2.0 if score > 20.0 else score / 2.0 - 1.0
    return out


def extract_shatr(doc: AnnotatedDocument) -> dict[str, float]:
    out = extract_shaf(doc)
    out.update(extract_traf(doc))
    return out
