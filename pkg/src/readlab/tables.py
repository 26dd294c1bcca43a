"""CSV/JSON interchange for feature vectors, soft labels, and reports."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .annotations import AnnotatedDocument, Dataset
from .features import FeatureVector
from .ml.metrics import EvaluationReport
from .registry import all_codes


class TableError(ValueError):
    pass


def write_features_csv(
    path: str | Path,
    feature_vectors: list[FeatureVector],
    labels: dict[str, int | None],
    codes: list[str],
) -> None:
    """Rows are doc_id,label,<codes...>; empty label cell means unlabeled."""
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_id", "label", *codes])
        for fv in feature_vectors:
            label = labels.get(fv.doc_id)
            writer.writerow([
                fv.doc_id,
                "" if label is None else label,
                *(repr(fv.values[code]) for code in codes),
            ])


@dataclass
class FeatureTable:
    doc_ids: list[str]
    labels: list[int | None]
    codes: list[str]
    vectors: list[FeatureVector]

    def n_classes(self) -> int:
        present = [l for l in self.labels if l is not None]
        if not present:
            raise TableError("feature table has no labeled rows")
        return max(present) + 1

    def as_eval_dataset(self) -> Dataset:
        """Label-only dataset view (stub documents) for fold construction
        and evaluation over precomputed features."""
        docs = [
            AnnotatedDocument(doc_id=doc_id, label=label, raw_text="", sentences=())
            for doc_id, label in zip(self.doc_ids, self.labels)
        ]
        return Dataset(documents=docs, class_count=self.n_classes())


def read_features_csv(path: str | Path) -> FeatureTable:
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TableError(f"{path}: empty file") from None
        if header[:2] != ["doc_id", "label"]:
            raise TableError(f"{path}: header must start with doc_id,label")
        codes = header[2:]
        known = set(all_codes())
        unknown = [c for c in codes if c not in known]
        if unknown:
            raise TableError(f"{path}: unknown feature code(s): {', '.join(unknown[:5])}")
        doc_ids, labels, vectors = [], [], []
        for line, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise TableError(f"{path}: line {line}: expected {len(header)} cells, got {len(row)}")
            doc_id = row[0]
            label = int(row[1]) if row[1] != "" else None
            try:
                values = {code: float(cell) for code, cell in zip(codes, row[2:])}
            except ValueError as exc:
                raise TableError(f"{path}: line {line}: non-numeric feature value") from exc
            doc_ids.append(doc_id)
            labels.append(label)
            vectors.append(FeatureVector(doc_id=doc_id, values=values))
    return FeatureTable(doc_ids=doc_ids, labels=labels, codes=codes, vectors=vectors)


def write_report_json(path: str | Path, report: EvaluationReport) -> None:
    Path(path).write_text(json.dumps(report.to_mapping(), indent=1), encoding="utf-8")


def write_curve_csv(path: str | Path, rows: list[dict]) -> None:
    """One row per training size; metric columns are flattened as
    variant_metric (e.g. hybrid_accuracy)."""
    if not rows:
        raise TableError("empty curve")
    variants = [k for k in rows[0] if k != "size"]
    metric_names = list(rows[0][variants[0]])
    header = ["size"] + [f"{v}_{m}" for v in variants for m in metric_names]
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [row["size"]]
                + [repr(row[v][m]) for v in variants for m in metric_names]
            )
