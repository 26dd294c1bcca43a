from .folds import FoldError, FoldSplit, stratified_folds
from .forest import RandomForestClassifier
from .logreg import LogisticRegressionClassifier
from .metrics import EvaluationReport, MetricsError, compute_metrics
from .scaling import StandardScaler
from .search import (
    GridSearchResult,
    grid_search,
    load_grid,
    load_model,
    make_classifier,
    save_model,
)

__all__ = [
    "FoldError",
    "FoldSplit",
    "stratified_folds",
    "RandomForestClassifier",
    "LogisticRegressionClassifier",
    "EvaluationReport",
    "MetricsError",
    "compute_metrics",
    "StandardScaler",
    "GridSearchResult",
    "grid_search",
    "load_grid",
    "load_model",
    "make_classifier",
    "save_model",
]
