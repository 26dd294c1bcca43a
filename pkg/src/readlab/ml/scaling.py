"""Column z-scoring with train-only statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class StandardScaler:
    mean: np.ndarray
    std: np.ndarray

    @classmethod
    def fit(cls, train_rows: np.ndarray) -> "StandardScaler":
        mean = train_rows.mean(axis=0)
        std = train_rows.std(axis=0)
        return cls(mean=mean, std=std)

    def transform(self, rows: np.ndarray) -> np.ndarray:
        # zero-variance columns become all zeros rather than NaN
        safe_std = np.where(self.std > 0, self.std, 1.0)
        out = (rows - self.mean) / safe_std
        out[:, self.std == 0] = 0.0
        return out
