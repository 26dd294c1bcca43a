"""Stratified train/validation/test folds.

Each class is shuffled under the seed and cut into 10 near-equal buckets;
fold f takes bucket f as test, bucket (f+1) mod 10 as validation, and the
remaining eight as train, giving the 0.8/0.1/0.1 split per class.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_BUCKETS = 10


class FoldError(ValueError):
    pass


@dataclass(frozen=True)
class FoldSplit:
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray


def stratified_folds(labels, k: int = 5, seed: int = 0) -> list[FoldSplit]:
    """Index partitions for k folds over integer labels (None = unlabeled,
    excluded). Deterministic under seed."""
    labels = list(labels)
    by_class: dict[int, list[int]] = {}
    for idx, label in enumerate(labels):
        if label is None:
            continue
        by_class.setdefault(int(label), []).append(idx)
    if not by_class:
        raise FoldError("no labeled items to fold")
    if k < 1 or k > N_BUCKETS:
        raise FoldError(f"k must be in 1..{N_BUCKETS}, got {k}")

    rng = np.random.default_rng(seed)
    buckets_per_class: dict[int, list[np.ndarray]] = {}
    for cls in sorted(by_class):
        indices = np.array(by_class[cls], dtype=np.int64)
        if len(indices) < N_BUCKETS:
            raise FoldError(
                f"class {cls} has {len(indices)} items, too few for {N_BUCKETS} buckets"
            )
        rng.shuffle(indices)
        buckets_per_class[cls] = np.array_split(indices, N_BUCKETS)

    folds = []
    for f in range(k):
        val_bucket = (f + 1) % N_BUCKETS
        train_parts, val_parts, test_parts = [], [], []
        for cls in sorted(buckets_per_class):
            for b, bucket in enumerate(buckets_per_class[cls]):
                if b == f:
                    test_parts.append(bucket)
                elif b == val_bucket:
                    val_parts.append(bucket)
                else:
                    train_parts.append(bucket)
        folds.append(FoldSplit(
            train=np.sort(np.concatenate(train_parts)),
            val=np.sort(np.concatenate(val_parts)),
            test=np.sort(np.concatenate(test_parts)),
        ))
    return folds
