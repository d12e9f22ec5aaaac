"""Linear two-class classifiers: regression, Fisher discriminant, hard-margin
support vector machine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..numerics import least_squares, mean_and_covariance, qp_hard_margin, sym_eigen
from .base import LabeledSet, apply_threshold, choose_threshold
from .quantize import Quantizer


@dataclass(frozen=True)
class LinearModel:
    """Discriminant f(x) = v'x with a learned threshold; if a quantizer is
    attached the label comes from the score's quantizing interval instead."""

    weights: np.ndarray
    theta: float
    orientation: int
    method: str
    quantizer: Optional[Quantizer] = None
    training_error: float = 0.0

    def score(self, x: np.ndarray) -> float:
        return float(np.asarray(x, dtype=np.float64) @ self.weights)

    def scores(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.weights

    def predict(self, x: np.ndarray) -> int:
        s = self.score(x)
        if self.quantizer is not None:
            return self.quantizer.classify(s)
        return apply_threshold(s, self.theta, self.orientation)

    def with_quantizer(self, q: Quantizer) -> "LinearModel":
        return LinearModel(self.weights, self.theta, self.orientation,
                           self.method, q, self.training_error)


def scatter_matrices(data: LabeledSet) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(S, S_w, S_b): mixture scatter, prior-weighted within-class scatter,
    and between-class scatter.  S = S_w + S_b."""
    X1 = data.class_rows(1)
    X2 = data.class_rows(2)
    n1, n2 = len(X1), len(X2)
    p1 = n1 / (n1 + n2)
    p2 = n2 / (n1 + n2)
    mu1, C1 = mean_and_covariance(X1)
    mu2, C2 = mean_and_covariance(X2)
    Sw = p1 * C1 + p2 * C2
    d = mu1 - mu2
    Sb = p1 * p2 * np.outer(d, d)
    mu = p1 * mu1 + p2 * mu2
    D = data.features - mu
    S = D.T @ D / (n1 + n2)
    return S, Sw, Sb


def _fisher_weights(data: LabeledSet) -> np.ndarray:
    X1 = data.class_rows(1)
    X2 = data.class_rows(2)
    mu1, _ = mean_and_covariance(X1)
    mu2, _ = mean_and_covariance(X2)
    _, Sw, _ = scatter_matrices(data)
    eig = sym_eigen(Sw)
    lam_max = float(eig.values[0])
    if lam_max <= 0.0 or float(eig.values[-1]) < 1e-12 * lam_max:
        Sw = Sw + (1e-8 * max(np.trace(Sw), 1e-300) / Sw.shape[0]
                   + np.finfo(float).tiny) * np.eye(Sw.shape[0])
    return np.linalg.solve(Sw, mu1 - mu2)


def fit_linear(data: LabeledSet, method: str = "regression") -> LinearModel:
    """Fit the weight vector by the chosen method, then pick the threshold and
    orientation minimizing the training error.

    regression: v = argmin ||Av - b|| with b = 0 for class 1 and 1 for class 2
    fisher:     v = Sw^-1 (mu1 - mu2), unit multiplicative constant
    svm:        v minimizes v'v subject to y_k v'z_k >= 1 (labels +1 / -1)
    """
    if data.num_classes != 2:
        raise ValueError("linear classifiers are two-class")
    if not ((data.labels == 1).any() and (data.labels == 2).any()):
        raise ValueError("both classes must be nonempty")
    X = data.features
    if method == "regression":
        b = (data.labels == 2).astype(np.float64)
        v = least_squares(X, b)
    elif method == "fisher":
        v = _fisher_weights(data)
    elif method == "svm":
        y = np.where(data.labels == 1, 1.0, -1.0)
        v = qp_hard_margin(X * y[:, None])
    else:
        raise ValueError(f"unknown method {method!r}")
    if not np.any(v):
        raise ValueError("degenerate weight vector")
    scores = X @ v
    theta, orient, err = choose_threshold(scores, data.labels)
    return LinearModel(v, theta, orient, method, training_error=err)


def predict(model, x: np.ndarray) -> Tuple[int, float]:
    """Label and raw discriminant score for any fitted model exposing
    score/predict."""
    return model.predict(x), model.score(x)
