"""Exhaustive grid search over classifier hyperparameters.

Grids are dicts of parameter name to candidate list, expanded in insertion
order; ties on the selection score keep the earliest cell. Parameter names
accept both the internal spellings and the shorthand used in experiment
configs (nEst, MDep, Mfea, C, Pen); grid files are JSON objects of the same
shape.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from .forest import RandomForestClassifier
from .logreg import LogisticRegressionClassifier
from .metrics import accuracy

_PARAM_ALIASES = {
    "nEst": "n_trees",
    "MDep": "max_depth",
    "Mfea": "max_features",
    "C": "c",
    "Pen": "penalty",
}


def load_grid(path: str | Path) -> dict[str, list]:
    """Read a hyperparameter grid from a JSON config file."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(payload, dict) or not all(isinstance(v, list) for v in payload.values()):
        raise ValueError(f"{path}: grid file must map parameter names to candidate lists")
    return payload


def save_model(model, path: str | Path) -> None:
    """Persist a fitted classifier as versioned JSON."""
    Path(path).write_text(json.dumps(model.to_mapping()), encoding="utf-8")


def load_model(path: str | Path):
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    kind = payload.get("kind")
    if kind == "logreg":
        return LogisticRegressionClassifier.from_mapping(payload)
    if kind == "random_forest":
        return RandomForestClassifier.from_mapping(payload)
    raise ValueError(f"{path}: unknown model kind {kind!r}")


def make_classifier(kind: str, params: dict, seed: int = 0):
    params = {_PARAM_ALIASES.get(k, k): v for k, v in params.items()}
    if kind == "logreg":
        allowed = {"penalty", "c", "max_iter", "tol"}
        return LogisticRegressionClassifier(seed=seed, **{k: v for k, v in params.items() if k in allowed})
    if kind in ("rf", "random_forest"):
        allowed = {"n_trees", "max_depth", "max_features", "n_jobs"}
        return RandomForestClassifier(seed=seed, **{k: v for k, v in params.items() if k in allowed})
    raise ValueError(f"unknown classifier kind {kind!r}")


@dataclass
class GridSearchResult:
    best_params: dict
    best_score: float
    table: list[tuple[dict, float]]  # (cell, mean validation accuracy)


def grid_search(kind: str, grid: dict[str, list], fold_data, seed: int = 0) -> GridSearchResult:
    """Evaluate every grid cell on the provided folds.

    ``fold_data`` is a list of (x_train, y_train, x_val, y_val) tuples; the
    selection score is mean validation accuracy across folds.
    """
    if not grid:
        raise ValueError("empty grid")
    names = list(grid)
    table: list[tuple[dict, float]] = []
    best: tuple[dict, float] | None = None
    for combo in itertools.product(*(grid[name] for name in names)):
        cell = dict(zip(names, combo))
        scores = []
        for x_train, y_train, x_val, y_val in fold_data:
            model = make_classifier(kind, cell, seed=seed)
            model.fit(x_train, y_train)
            scores.append(accuracy(y_val, model.predict(x_val)))
        score = sum(scores) / len(scores)
        table.append((cell, score))
        if best is None or score > best[1]:
            best = (cell, score)
    return GridSearchResult(best_params=best[0], best_score=best[1], table=table)
