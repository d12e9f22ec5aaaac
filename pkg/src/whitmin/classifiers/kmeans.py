"""K-means clustering with deterministic tie-breaking and empty-cluster
reseeding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class KMeansModel:
    centers: np.ndarray
    iterations: int
    objective: float            # sum of squared distances at convergence
    objective_unsquared: float  # sum of plain distances (reported, not asserted)
    assignments: np.ndarray

    def predict(self, x: np.ndarray) -> int:
        d = np.linalg.norm(self.centers - np.asarray(x, dtype=np.float64), axis=1)
        return int(np.argmin(d))


def _assign(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)  # argmin takes the lowest index on ties


def kmeans(
    points: np.ndarray,
    k: int,
    init_centers: Optional[np.ndarray] = None,
    max_iter: int = 300,
    rng: Optional[np.random.Generator] = None,
    track_objective: bool = False,
) -> KMeansModel:
    """Alternate nearest-center assignment and mean updates until the
    assignment is stable or max_iter is hit.  Empty clusters are reseeded to
    the point farthest from its current center.  The squared-distance
    objective never increases between iterations."""
    X = np.asarray(points, dtype=np.float64)
    n = X.shape[0]
    if k < 1 or k > n:
        raise ValueError("need 1 <= k <= number of points")
    if init_centers is not None:
        centers = np.asarray(init_centers, dtype=np.float64).copy()
        if centers.shape != (k, X.shape[1]):
            raise ValueError("init_centers must be k x d")
    else:
        if rng is None:
            rng = np.random.default_rng()
        centers = X[rng.choice(n, size=k, replace=False)].copy()

    assign = _assign(X, centers)
    history: List[float] = []
    it = 0
    for it in range(1, max_iter + 1):
        for c in range(k):
            members = X[assign == c]
            if len(members):
                centers[c] = members.mean(axis=0)
            else:
                dists = np.linalg.norm(X - centers[assign], axis=1)
                far = int(np.argmax(dists))
                centers[c] = X[far]
                assign[far] = c
        new_assign = _assign(X, centers)
        if track_objective:
            d2 = ((X - centers[new_assign]) ** 2).sum()
            history.append(float(d2))
        if np.array_equal(new_assign, assign):
            assign = new_assign
            break
        assign = new_assign

    diff = X - centers[assign]
    obj2 = float((diff ** 2).sum())
    obj1 = float(np.linalg.norm(diff, axis=1).sum())
    model = KMeansModel(centers, it, obj2, obj1, assign)
    if track_objective:
        object.__setattr__(model, "objective_history", history)
    return model
