"""Word databases behind the psycholinguistic and word-familiarity features.

Two CSV-shipped lexicons: age-of-acquisition norms (one word column plus four
lemma-norm columns) and the SubtlexUS frequency database (eight statistics per
word). Keys are casefolded at load; lookups are exact matches, no stemming.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path


class LexiconError(ValueError):
    pass


AOA_COLUMNS = (
    "word",
    "aoa_kuperman_word",
    "aoa_kuperman_lemma",
    "aoa_bird_lemma",
    "aoa_bristol_lemma",
    "aoa_cortese_lemma",
)

SUBTLEX_COLUMNS = (
    "Word", "FREQcount", "CDcount", "FREQlow", "CDlow",
    "SUBTLWF", "Lg10WF", "SUBTLCD", "Lg10CD",
)

# SubtlexUS column -> feature-code stem used by the WorF subgroup.
SUBTLEX_FIELD_STEMS = {
    "FREQcount": "SbFrQ",
    "CDcount": "SbCDC",
    "FREQlow": "SbFrL",
    "CDlow": "SbCDL",
    "SUBTLWF": "SbSBW",
    "Lg10WF": "SbL1W",
    "SUBTLCD": "SbSBC",
    "Lg10CD": "SbL1C",
}


@dataclass
class AoaLexicon:
    word_aoa: dict[str, float] = field(default_factory=dict)
    lemma_aoa_kuperman: dict[str, float] = field(default_factory=dict)
    lemma_aoa_bird: dict[str, float] = field(default_factory=dict)
    lemma_aoa_bristol: dict[str, float] = field(default_factory=dict)
    lemma_aoa_cortese: dict[str, float] = field(default_factory=dict)

    def tables(self) -> dict[str, dict[str, float]]:
        return {
            "AAKuW": self.word_aoa,
            "AAKuL": self.lemma_aoa_kuperman,
            "AABiL": self.lemma_aoa_bird,
            "AABrL": self.lemma_aoa_bristol,
            "AACoL": self.lemma_aoa_cortese,
        }


@dataclass
class SubtlexLexicon:
    # word -> 8-field record keyed by SubtlexUS column name
    entries: dict[str, dict[str, float]] = field(default_factory=dict)


def lookup(table: dict[str, float], key: str) -> float | None:
    """Casefolded exact-match lookup; absent keys return None."""
    return table.get(key.casefold())


def _parse_cell(value: str, column: str, row_number: int, path) -> float:
    try:
        parsed = float(value)
    except ValueError as exc:
        raise LexiconError(
            f"{path}: row {row_number}: cannot parse {column}={value!r} as a number"
        ) from exc
    if not parsed >= 0 or parsed != parsed:
        raise LexiconError(f"{path}: row {row_number}: {column} must be finite and >= 0")
    return parsed


def _open_reader(path: Path, expected: tuple[str, ...]):
    fh = path.open("r", encoding="utf-8", newline="")
    reader = csv.DictReader(fh)
    missing = [c for c in expected if c not in (reader.fieldnames or [])]
    if missing:
        fh.close()
        raise LexiconError(f"{path}: missing column(s) {', '.join(missing)}")
    return fh, reader


def load_aoa(path: str | Path) -> AoaLexicon:
    path = Path(path)
    fh, reader = _open_reader(path, AOA_COLUMNS)
    lex = AoaLexicon()
    targets = {
        "aoa_kuperman_word": lex.word_aoa,
        "aoa_kuperman_lemma": lex.lemma_aoa_kuperman,
        "aoa_bird_lemma": lex.lemma_aoa_bird,
        "aoa_bristol_lemma": lex.lemma_aoa_bristol,
        "aoa_cortese_lemma": lex.lemma_aoa_cortese,
    }
    with fh:
        for row_number, row in enumerate(reader, start=2):
            key = (row["word"] or "").casefold()
            if not key:
                continue
            for column, table in targets.items():
                cell = (row[column] or "").strip()
                if not cell:
                    continue  # blank = norm absent for this word
                if key in table:
                    warnings.warn(f"{path}: duplicate entry {key!r} in {column}; last row wins")
                table[key] = _parse_cell(cell, column, row_number, path)
    return lex


def load_subtlex(path: str | Path) -> SubtlexLexicon:
    path = Path(path)
    fh, reader = _open_reader(path, SUBTLEX_COLUMNS)
    lex = SubtlexLexicon()
    with fh:
        for row_number, row in enumerate(reader, start=2):
            key = (row["Word"] or "").casefold()
            if not key:
                continue
            if key in lex.entries:
                warnings.warn(f"{path}: duplicate entry {key!r}; last row wins")
            lex.entries[key] = {
                column: _parse_cell((row[column] or "").strip() or "0", column, row_number, path)
                for column in SUBTLEX_COLUMNS[1:]
            }
    return lex
