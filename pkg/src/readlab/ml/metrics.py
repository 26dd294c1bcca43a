"""Evaluation metrics: accuracy, support-weighted P/R/F1, quadratic weighted
kappa, and the per-fold report container."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

METRIC_NAMES = ("accuracy", "f1", "precision", "recall", "qwk")


class MetricsError(ValueError):
    pass


def confusion_matrix(y_true, y_pred, n_classes: int) -> np.ndarray:
    matrix = np.zeros((n_classes, n_classes), dtype=np.float64)
    for t, p in zip(y_true, y_pred):
        matrix[int(t), int(p)] += 1
    return matrix


def accuracy(y_true, y_pred) -> float:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    return float((y_true == y_pred).mean()) if len(y_true) else 0.0


def weighted_prf(y_true, y_pred, n_classes: int) -> tuple[float, float, float]:
    """Support-weighted precision, recall, F1. Classes with no predictions
    score 0 precision; classes with no true members carry no weight."""
    matrix = confusion_matrix(y_true, y_pred, n_classes)
    support = matrix.sum(axis=1)
    predicted = matrix.sum(axis=0)
    total = support.sum()
    if total == 0:
        return 0.0, 0.0, 0.0
    precision_sum = recall_sum = f1_sum = 0.0
    for cls in range(n_classes):
        tp = matrix[cls, cls]
        p = tp / predicted[cls] if predicted[cls] else 0.0
        r = tp / support[cls] if support[cls] else 0.0
        f = 2 * p * r / (p + r) if (p + r) else 0.0
        weight = support[cls] / total
        precision_sum += weight * p
        recall_sum += weight * r
        f1_sum += weight * f
    return float(precision_sum), float(recall_sum), float(f1_sum)


def quadratic_weighted_kappa(y_true, y_pred, n_classes: int) -> float:
    """1 - sum(w * O) / sum(w * E) with w_ij = (i-j)^2 / (K-1)^2 and E the
    outer product of the marginals scaled to the observation count."""
    observed = confusion_matrix(y_true, y_pred, n_classes)
    total = observed.sum()
    if total == 0:
        return 0.0
    indices = np.arange(n_classes, dtype=np.float64)
    weights = (indices[:, None] - indices[None, :]) ** 2
    if n_classes > 1:
        weights /= (n_classes - 1) ** 2
    expected = np.outer(observed.sum(axis=1), observed.sum(axis=0)) / total
    denom = float((weights * expected).sum())
    if denom == 0:
        return 1.0  # all mass on one ordinal cell and no disagreement possible
    return float(1.0 - (weights * observed).sum() / denom)


def compute_metrics(y_true, y_pred, n_classes: int) -> dict[str, float]:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise MetricsError(f"length mismatch: {y_true.shape} vs {y_pred.shape}")
    precision, recall, f1 = weighted_prf(y_true, y_pred, n_classes)
    return {
        "accuracy": accuracy(y_true, y_pred),
        "f1": f1,
        "precision": precision,
        "recall": recall,
        "qwk": quadratic_weighted_kappa(y_true, y_pred, n_classes),
    }


@dataclass
class EvaluationReport:
    folds: list[dict[str, float]] = field(default_factory=list)

    def add_fold(self, metrics: dict[str, float]) -> None:
        self.folds.append(metrics)

    def mean(self) -> dict[str, float]:
        if not self.folds:
            return {name: 0.0 for name in METRIC_NAMES}
        return {
            name: float(np.mean([fold[name] for fold in self.folds]))
            for name in METRIC_NAMES
        }

    def to_mapping(self) -> dict:
        return {
            name: {
                "folds": [fold[name] for fold in self.folds],
                "mean": self.mean()[name],
            }
            for name in METRIC_NAMES
        }
