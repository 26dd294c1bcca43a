"""Multinomial logistic regression via accelerated proximal gradient descent.

Objective: sum of per-row cross-entropy plus (1/C) times the penalty, L2 as
half the squared weight norm folded into the smooth part, L1 handled by
soft-threshold proximal steps so small weights land exactly on zero. The
intercept is never penalized. Step size comes from backtracking line search;
convergence is declared when the composite gradient map drops below tol.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def _one_hot(y: np.ndarray, n_classes: int) -> np.ndarray:
    out = np.zeros((len(y), n_classes))
    out[np.arange(len(y)), y] = 1.0
    return out


def smooth_loss_and_grad(weights, intercept, x, y_onehot, l2_term: float):
    """Cross-entropy sum (plus the L2 term when active) and its gradients."""
    logits = x @ weights + intercept
    shifted = logits - logits.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    loss = -float((y_onehot * log_probs).sum())
    probs = np.exp(log_probs)
    delta = probs - y_onehot
    grad_w = x.T @ delta
    grad_b = delta.sum(axis=0)
    if l2_term > 0:
        loss += 0.5 * l2_term * float((weights * weights).sum())
        grad_w = grad_w + l2_term * weights
    return loss, grad_w, grad_b


def _soft_threshold(values: np.ndarray, amount: float) -> np.ndarray:
    return np.sign(values) * np.maximum(np.abs(values) - amount, 0.0)


@dataclass
class LogisticRegressionClassifier:
    penalty: str = "l2"  # "l1" or "l2"
    c: float = 1.0
    max_iter: int = 2000
    tol: float = 1e-6
    seed: int = 0
    weights: np.ndarray | None = field(default=None, repr=False)
    intercept: np.ndarray | None = field(default=None, repr=False)
    classes: np.ndarray | None = field(default=None, repr=False)
    converged: bool = False

    def fit(self, x: np.ndarray, y: np.ndarray) -> "LogisticRegressionClassifier":
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.classes = np.unique(y)
        if len(self.classes) < 2:
            raise ValueError("training data has a single class; nothing to separate")
        n_classes = int(self.classes.max()) + 1
        y_onehot = _one_hot(y, n_classes)
        n_features = x.shape[1]

        l1_term = (1.0 / self.c) if self.penalty == "l1" else 0.0
        l2_term = (1.0 / self.c) if self.penalty == "l2" else 0.0

        w = np.zeros((n_features, n_classes))
        b = np.zeros(n_classes)
        # FISTA extrapolation state
        w_prev, b_prev = w.copy(), b.copy()
        t_prev = 1.0
        step = 1.0
        objective_prev = np.inf
        self.converged = False

        for iteration in range(self.max_iter):
            t_next = (1.0 + np.sqrt(1.0 + 4.0 * t_prev * t_prev)) / 2.0
            beta = (t_prev - 1.0) / t_next
            yw = w + beta * (w - w_prev)
            yb = b + beta * (b - b_prev)

            loss_y, grad_w, grad_b = smooth_loss_and_grad(yw, yb, x, y_onehot, l2_term)

            # backtracking on the smooth majorization; the step is allowed to
            # grow back so one early shrink cannot throttle later iterations
            step = min(step * 1.25, 1e6)
            while True:
                w_new = yw - step * grad_w
                if l1_term > 0:
                    w_new = _soft_threshold(w_new, step * l1_term)
                b_new = yb - step * grad_b
                loss_new, _, _ = smooth_loss_and_grad(w_new, b_new, x, y_onehot, l2_term)
                dw = w_new - yw
                db = b_new - yb
                quad = (
                    loss_y
                    + float((grad_w * dw).sum()) + float((grad_b * db).sum())
                    + (float((dw * dw).sum()) + float((db * db).sum())) / (2.0 * step)
                )
                if loss_new <= quad + 1e-12 or step < 1e-12:
                    break
                step *= 0.5

            w_prev, b_prev = w, b
            w, b = w_new, b_new
            t_prev = t_next

            objective = loss_new + (l1_term * float(np.abs(w).sum()) if l1_term else 0.0)
            if objective > objective_prev:
                t_prev = 1.0  # momentum restart
            objective_prev = objective

            # composite gradient map at the new point
            gap_w = (yw - w) / step
            gap_b = (yb - b) / step
            if max(np.abs(gap_w).max(), np.abs(gap_b).max()) < self.tol:
                self.converged = True
                break
        if not self.converged:
            warnings.warn(
                f"logistic regression stopped at max_iter={self.max_iter} "
                f"without reaching tol={self.tol}"
            )
        self.weights = w
        self.intercept = b
        return self

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        if self.weights is None:
            raise RuntimeError("classifier is not fitted")
        return softmax(np.asarray(x, dtype=np.float64) @ self.weights + self.intercept)

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.predict_proba(x).argmax(axis=1)

    def to_mapping(self) -> dict:
        return {
            "format_version": 1,
            "kind": "logreg",
            "penalty": self.penalty,
            "c": self.c,
            "seed": self.seed,
            "weights": self.weights.tolist(),
            "intercept": self.intercept.tolist(),
        }

    @classmethod
    def from_mapping(cls, payload: dict) -> "LogisticRegressionClassifier":
        model = cls(penalty=payload["penalty"], c=payload["c"], seed=payload.get("seed", 0))
        model.weights = np.asarray(payload["weights"], dtype=np.float64)
        model.intercept = np.asarray(payload["intercept"], dtype=np.float64)
        return model
