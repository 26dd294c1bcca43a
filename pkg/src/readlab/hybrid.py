"""Hybrid evaluation pipeline: handcrafted features joined with neural soft
labels under a non-neural secondary predictor.

The flow mirrors the three assembly steps: ingest per-document class
probabilities produced elsewhere, append them to the handcrafted feature
columns, and train/evaluate the secondary classifier fold by fold. Soft
labels are keyed per fold because the producing model re-predicts its own
training data; a single-model file can be broadcast across folds instead.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import registry
from .annotations import Dataset
from .features import FeatureVector
from .ml import StandardScaler, compute_metrics, make_classifier, stratified_folds
from .ml.folds import FoldSplit
from .ml.metrics import EvaluationReport


class SoftLabelError(ValueError):
    pass


class PipelineError(ValueError):
    pass


# fold -> doc_id -> probability vector
SoftLabelMap = dict[int, dict[str, np.ndarray]]


@dataclass
class HybridConfig:
    feature_set: str | list[str] | None = "T1"  # name, explicit codes, or None = soft labels only
    model: str = "logreg"
    model_params: dict = field(default_factory=dict)
    n_folds: int = 5
    seed: int = 0
    standardize: bool | None = None  # None = per-model default (logreg yes, rf no)

    def wants_standardization(self) -> bool:
        if self.standardize is not None:
            return self.standardize
        return self.model == "logreg"


@dataclass
class DesignMatrix:
    columns: list[str]
    x: np.ndarray
    y: np.ndarray
    doc_ids: list[str]
    n_soft: int = 0

    @property
    def n_feature_columns(self) -> int:
        return len(self.columns) - self.n_soft


def read_soft_labels_csv(path: str | Path, n_classes: int) -> list[dict]:
    """Raw rows of a soft-label CSV: doc_id, fold, split, p_0..p_{K-1}."""
    path = Path(path)
    prob_columns = [f"p_{i}" for i in range(n_classes)]
    rows = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in ("doc_id", "fold", "split", *prob_columns)
                   if c not in (reader.fieldnames or [])]
        if missing:
            raise SoftLabelError(f"{path}: missing column(s) {', '.join(missing)}")
        for line, row in enumerate(reader, start=2):
            try:
                probs = np.array([float(row[c]) for c in prob_columns])
            except ValueError as exc:
                raise SoftLabelError(f"{path}: line {line}: non-numeric probability") from exc
            rows.append({
                "doc_id": row["doc_id"],
                "fold": int(row["fold"]),
                "split": row["split"],
                "probs": probs,
            })
    return rows


def ingest_soft_labels(
    path: str | Path,
    dataset: Dataset,
    folds: list[FoldSplit],
    broadcast: bool = False,
) -> SoftLabelMap:
    """Load and validate soft labels against the fold layout.

    Every document appearing in any split of any fold must have a record for
    that fold (rows with fold == -1, or ``broadcast=True``, reuse one record
    for all folds). Probability vectors must be nonnegative and sum to 1
    within 1e-3.
    """
    rows = read_soft_labels_csv(path, dataset.class_count)
    table: SoftLabelMap = {}
    for row in rows:
        probs = row["probs"]
        if (probs < 0).any() or abs(float(probs.sum()) - 1.0) > 1e-3:
            raise SoftLabelError(
                f"probabilities for doc {row['doc_id']!r} fold {row['fold']} "
                f"sum to {float(probs.sum()):.4f}, expected 1 within 1e-3"
            )
        targets = range(len(folds)) if (broadcast or row["fold"] == -1) else [row["fold"]]
        for f in targets:
            table.setdefault(f, {})[row["doc_id"]] = probs

    gaps = []
    for f, split in enumerate(folds):
        have = table.get(f, {})
        for part_name in ("train", "val", "test"):
            for idx in getattr(split, part_name):
                doc_id = dataset.documents[idx].doc_id
                if doc_id not in have:
                    gaps.append(f"fold {f} {part_name}: {doc_id}")
    if gaps:
        shown = "; ".join(gaps[:10])
        suffix = f" (+{len(gaps) - 10} more)" if len(gaps) > 10 else ""
        raise SoftLabelError(f"soft labels missing for {len(gaps)} entries: {shown}{suffix}")
    return table


def assemble(
    dataset: Dataset,
    features: list[FeatureVector],
    soft: SoftLabelMap | None,
    set_name: str | list[str] | None,
    fold: int,
) -> DesignMatrix:
    """Design matrix in dataset row order: feature columns in registry order
    for the resolved set (or as given, for an explicit code list), then one
    column per soft-label class."""
    if set_name is None:
        codes = []
    elif isinstance(set_name, str):
        codes = registry.resolve_set(set_name)
    else:
        codes = list(set_name)
    by_id = {fv.doc_id: fv.values for fv in features}
    n_soft = dataset.class_count if soft is not None else 0
    columns = codes + [f"p_{i}" for i in range(n_soft)]

    x = np.zeros((len(dataset.documents), len(columns)))
    y = np.full(len(dataset.documents), -1, dtype=np.int64)
    doc_ids = []
    for r, doc in enumerate(dataset.documents):
        doc_ids.append(doc.doc_id)
        if doc.label is not None:
            y[r] = doc.label
        values = by_id.get(doc.doc_id)
        if values is None and codes:
            raise PipelineError(f"no feature vector for document {doc.doc_id!r}")
        for c, code in enumerate(codes):
            try:
                x[r, c] = values[code]
            except KeyError as exc:
                raise PipelineError(f"feature {code!r} missing for document {doc.doc_id!r}") from exc
        if soft is not None:
            probs = soft[fold].get(doc.doc_id)
            if probs is None:
                raise PipelineError(f"no soft labels for document {doc.doc_id!r} in fold {fold}")
            x[r, len(codes):] = probs
    return DesignMatrix(columns=columns, x=x, y=y, doc_ids=doc_ids, n_soft=n_soft)


def _fit_eval_fold(matrix: DesignMatrix, split: FoldSplit, config: HybridConfig, n_classes: int):
    n_feat = matrix.n_feature_columns
    x = matrix.x.copy()
    if config.wants_standardization() and n_feat > 0:
        # soft-label columns are already on [0, 1]; only handcrafted ones scale
        scaler = StandardScaler.fit(matrix.x[split.train][:, :n_feat])
        x[:, :n_feat] = scaler.transform(matrix.x[:, :n_feat])
    model = make_classifier(config.model, config.model_params, seed=config.seed)
    model.fit(x[split.train], matrix.y[split.train])
    predicted = model.predict(x[split.test])
    metrics = compute_metrics(matrix.y[split.test], predicted, n_classes)
    return metrics, predicted


def run_hybrid(
    dataset: Dataset,
    features: list[FeatureVector],
    config: HybridConfig,
    soft: SoftLabelMap | None = None,
    folds: list[FoldSplit] | None = None,
) -> tuple[EvaluationReport, list[dict]]:
    """Evaluate the (hybrid or features-only) classifier over stratified folds.

    Returns the metric report plus per-fold test predictions
    [{doc_id, true, predicted}, ...].
    """
    if config.feature_set is None and soft is None:
        raise PipelineError("nothing to train on: no feature set and no soft labels")
    if folds is None:
        folds = stratified_folds([d.label for d in dataset.documents],
                                 k=config.n_folds, seed=config.seed)
    report = EvaluationReport()
    predictions = []
    for f, split in enumerate(folds):
        matrix = assemble(dataset, features, soft, config.feature_set, f)
        metrics, predicted = _fit_eval_fold(matrix, split, config, dataset.class_count)
        report.add_fold(metrics)
        predictions.append({
            "fold": f,
            "doc_ids": [matrix.doc_ids[i] for i in split.test],
            "true": [int(matrix.y[i]) for i in split.test],
            "predicted": [int(p) for p in predicted],
        })
    return report, predictions


def _balanced_allocation(size: int, classes: list[int]) -> dict[int, int]:
    base = size // len(classes)
    remainder = size - base * len(classes)
    return {cls: base + (1 if i < remainder else 0) for i, cls in enumerate(sorted(classes))}


def data_size_curve(
    dataset: Dataset,
    features: list[FeatureVector],
    config: HybridConfig,
    soft: SoftLabelMap | None,
    sizes: list[int] | None = None,
    nested: bool = False,
) -> list[dict]:
    """Metrics as a function of training-set size.

    The fold-0 test split stays fixed; for each size a class-balanced
    subsample of the fold-0 train split feeds the hybrid model and both
    single-source baselines. Samples are independent per size unless
    ``nested``, where smaller samples are prefixes of larger ones.
    """
    sizes = sizes if sizes is not None else list(range(50, 751, 50))
    folds = stratified_folds([d.label for d in dataset.documents],
                             k=config.n_folds, seed=config.seed)
    base_split = folds[0]
    labels = np.array([
        dataset.documents[i].label if dataset.documents[i].label is not None else -1
        for i in range(len(dataset.documents))
    ])
    pool_by_class: dict[int, np.ndarray] = {}
    for cls in range(dataset.class_count):
        pool_by_class[cls] = base_split.train[labels[base_split.train] == cls]

    nested_orders = None
    if nested:
        rng = np.random.default_rng(config.seed)
        nested_orders = {cls: rng.permutation(pool) for cls, pool in pool_by_class.items()}

    rows = []
    for size in sizes:
        allocation = _balanced_allocation(size, list(pool_by_class))
        chosen_parts = []
        for cls, want in allocation.items():
            pool = pool_by_class[cls]
            if want > len(pool):
                raise PipelineError(
                    f"size {size}: class {cls} needs {want} train items, pool has {len(pool)}"
                )
            if nested:
                chosen_parts.append(nested_orders[cls][:want])
            else:
                rng = np.random.default_rng((config.seed, size, cls))
                chosen_parts.append(rng.choice(pool, size=want, replace=False))
        train_idx = np.sort(np.concatenate(chosen_parts))
        split = FoldSplit(train=train_idx, val=base_split.val, test=base_split.test)

        row = {"size": size}
        variants = {"hybrid": (config.feature_set, soft)}
        if soft is not None:
            variants["features_only"] = (config.feature_set, None)
            variants["soft_only"] = (None, soft)
        for name, (set_name, soft_map) in variants.items():
            if set_name is None and soft_map is None:
                continue
            matrix = assemble(dataset, features, soft_map, set_name, fold=0)
            metrics, _ = _fit_eval_fold(matrix, split, config, dataset.class_count)
            row[name] = metrics
        rows.append(row)
    return rows
