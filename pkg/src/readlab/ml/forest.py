"""Random forest of Gini-split decision trees.

Each tree gets its own RNG seeded with (forest seed + tree index), so serial
and parallel training build bit-identical forests. Bootstrap samples, split
search over a per-node feature subset, leaves store class distributions, and
the forest prediction is the mean of per-tree leaf distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed


@dataclass
class _TreeNode:
    # leaf payload
    distribution: np.ndarray | None = None
    # split payload
    feature: int = -1
    threshold: float = 0.0
    left: "._TreeNode | None" = None
    right: "._TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.distribution is not None

    def to_mapping(self) -> dict:
        if self.is_leaf:
            return {"dist": self.distribution.tolist()}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_mapping(),
            "right": self.right.to_mapping(),
        }

    @classmethod
    def from_mapping(cls, payload: dict) -> "_TreeNode":
        if "dist" in payload:
            return cls(distribution=np.asarray(payload["dist"], dtype=np.float64))
        return cls(
            feature=int(payload["feature"]),
            threshold=float(payload["threshold"]),
            left=cls.from_mapping(payload["left"]),
            right=cls.from_mapping(payload["right"]),
        )


def _class_distribution(y: np.ndarray, n_classes: int) -> np.ndarray:
    counts = np.bincount(y, minlength=n_classes).astype(np.float64)
    return counts / counts.sum()


def _best_split_for_feature(values: np.ndarray, y: np.ndarray, n_classes: int):
    """(gini, threshold) of the best binary split on one feature, or None."""
    order = np.argsort(values, kind="stable")
    v_sorted = values[order]
    y_sorted = y[order]
    n = len(y_sorted)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), y_sorted] = 1.0
    left_counts = np.cumsum(onehot, axis=0)
    total = left_counts[-1]

    # candidate boundaries sit between distinct consecutive values
    boundaries = np.nonzero(v_sorted[1:] > v_sorted[:-1])[0]
    if len(boundaries) == 0:
        return None
    nl = (boundaries + 1).astype(np.float64)
    nr = n - nl
    lc = left_counts[boundaries]
    rc = total - lc
    gini_left = 1.0 - ((lc / nl[:, None]) ** 2).sum(axis=1)
    gini_right = 1.0 - ((rc / nr[:, None]) ** 2).sum(axis=1)
    weighted = (nl * gini_left + nr * gini_right) / n
    best = int(np.argmin(weighted))
    b = boundaries[best]
    threshold = (v_sorted[b] + v_sorted[b + 1]) / 2.0
    return float(weighted[best]), threshold


def _grow_tree(x, y, n_classes, max_depth, n_candidate_features, rng, depth=0):
    node_dist = _class_distribution(y, n_classes)
    if (
        len(y) < 2
        or (max_depth is not None and depth >= max_depth)
        or np.count_nonzero(node_dist) <= 1
    ):
        return _TreeNode(distribution=node_dist)

    n_features = x.shape[1]
    candidates = rng.permutation(n_features)[:n_candidate_features]
    best = None
    for feature in candidates:
        found = _best_split_for_feature(x[:, feature], y, n_classes)
        if found is None:
            continue
        gini, threshold = found
        if best is None or gini < best[0]:
            best = (gini, int(feature), threshold)
    if best is None:
        return _TreeNode(distribution=node_dist)

    _, feature, threshold = best
    left_mask = x[:, feature] <= threshold
    return _TreeNode(
        feature=feature,
        threshold=threshold,
        left=_grow_tree(x[left_mask], y[left_mask], n_classes, max_depth,
                        n_candidate_features, rng, depth + 1),
        right=_grow_tree(x[~left_mask], y[~left_mask], n_classes, max_depth,
                         n_candidate_features, rng, depth + 1),
    )


def _predict_tree(node: _TreeNode, x: np.ndarray) -> np.ndarray:
    out = np.empty((len(x), len(_leaf_dist_shape(node))), dtype=np.float64)
    for i, row in enumerate(x):
        cursor = node
        while not cursor.is_leaf:
            cursor = cursor.left if row[cursor.feature] <= cursor.threshold else cursor.right
        out[i] = cursor.distribution
    return out


def _leaf_dist_shape(node: _TreeNode) -> np.ndarray:
    while not node.is_leaf:
        node = node.left
    return node.distribution


def _resolve_feature_count(max_features, n_features: int) -> int:
    if max_features in (None, "all"):
        return n_features
    if max_features == "sqrt":
        return max(1, int(math.sqrt(n_features)))
    if max_features == "log2":
        return max(1, int(math.log2(n_features))) if n_features > 1 else 1
    if isinstance(max_features, int):
        return max(1, min(max_features, n_features))
    raise ValueError(f"unsupported max_features {max_features!r}")


def _build_one_tree(x, y, n_classes, max_depth, n_candidates, tree_seed):
    rng = np.random.default_rng(tree_seed)
    sample = rng.integers(0, len(y), len(y))
    return _grow_tree(x[sample], y[sample], n_classes, max_depth, n_candidates, rng)


@dataclass
class RandomForestClassifier:
    n_trees: int = 800
    max_depth: int | None = None
    max_features: str | int | None = "sqrt"
    seed: int = 0
    n_jobs: int = 1
    trees: list[_TreeNode] = field(default_factory=list, repr=False)
    n_classes: int = 0

    def fit(self, x: np.ndarray, y: np.ndarray) -> "RandomForestClassifier":
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if len(np.unique(y)) < 2:
            raise ValueError("training data has a single class; nothing to separate")
        self.n_classes = int(y.max()) + 1
        n_candidates = _resolve_feature_count(self.max_features, x.shape[1])
        seeds = [self.seed + i for i in range(self.n_trees)]
        if self.n_jobs == 1:
            self.trees = [
                _build_one_tree(x, y, self.n_classes, self.max_depth, n_candidates, s)
                for s in seeds
            ]
        else:
            self.trees = Parallel(n_jobs=self.n_jobs)(
                delayed(_build_one_tree)(x, y, self.n_classes, self.max_depth, n_candidates, s)
                for s in seeds
            )
        return self

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        if not self.trees:
            raise RuntimeError("classifier is not fitted")
        x = np.asarray(x, dtype=np.float64)
        acc = np.zeros((len(x), self.n_classes))
        for tree in self.trees:
            acc += _predict_tree(tree, x)
        return acc / len(self.trees)

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.predict_proba(x).argmax(axis=1)

    def to_mapping(self) -> dict:
        return {
            "format_version": 1,
            "kind": "random_forest",
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "max_features": self.max_features,
            "seed": self.seed,
            "n_classes": self.n_classes,
            "trees": [t.to_mapping() for t in self.trees],
        }

    @classmethod
    def from_mapping(cls, payload: dict) -> "RandomForestClassifier":
        model = cls(
            n_trees=payload["n_trees"],
            max_depth=payload["max_depth"],
            max_features=payload["max_features"],
            seed=payload["seed"],
        )
        model.n_classes = payload["n_classes"]
        model.trees = [_TreeNode.from_mapping(t) for t in payload["trees"]]
        return model
