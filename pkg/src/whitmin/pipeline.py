"""Training and evaluation pipelines: feature extraction + classifier +
quantizer, stratified accuracy reports, score histograms, and greedy forward
feature selection."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classifiers import (LabeledSet, Quantizer, build_quantizer, fit_distance,
                          fit_linear, fit_tree, TreeParams)
from .classifiers.serialize import (SCHEMA_VERSION, ModelFormatError,
                                    model_from_dict, model_to_dict,
                                    quantizer_from_dict, quantizer_to_dict)
from .datasets import LabeledWordSet
from .features import FeatureMap, Pattern, feature_matrix, resolve_map
from .numerics import least_squares
from .words import CyclicWord

DEFAULT_STRATA = (0, 4, 100)
DEFAULT_QUANTIZER_BINS = 100


@dataclass(frozen=True)
class PipelineConfig:
    feature_map: str = "f6"
    method: str = "regression"          # regression|fisher|svm|tree|distance
    quantizer_kind: Optional[str] = "equal_interval"
    quantizer_bins: int = DEFAULT_QUANTIZER_BINS
    threshold_override: Optional[float] = None
    rank: int = 2
    seed: int = 0


@dataclass
class Pipeline:
    """Feature map + fitted model (+ quantizer for scalar-score models)."""

    fmap: FeatureMap
    model: object
    config: PipelineConfig

    def scores(self, words: Sequence[CyclicWord]) -> np.ndarray:
        X = feature_matrix(words, self.fmap)
        if hasattr(self.model, "scores"):
            return self.model.scores(X)
        return np.array([self.model.score(x) for x in X])

    def predict_words(self, words: Sequence[CyclicWord]) -> np.ndarray:
        X = feature_matrix(words, self.fmap)
        model = self.model
        if self.config.method == "tree":
            return np.array([model.predict(x) for x in X], dtype=np.int64)
        s = model.scores(X) if hasattr(model, "scores") else \
            np.array([model.score(x) for x in X])
        return self._labels_from_scores(s)

    def _labels_from_scores(self, s: np.ndarray) -> np.ndarray:
        model = self.model
        if self.config.threshold_override is not None:
            theta = self.config.threshold_override
            left = model.orientation
            right = 2 if left == 1 else 1
            return np.where(s <= theta, left, right).astype(np.int64)
        q = getattr(model, "quantizer", None)
        if q is not None:
            return np.array([q.classify(v) for v in s], dtype=np.int64)
        left = model.orientation
        right = 2 if left == 1 else 1
        return np.where(s <= model.theta, left, right).astype(np.int64)

    def predict(self, w: CyclicWord) -> int:
        return int(self.predict_words([w])[0])


def train_pipeline(train: LabeledWordSet, cfg: PipelineConfig) -> Pipeline:
    """Extract features, fit the classifier, and (for scalar-score methods)
    build the quantizer on the training scores."""
    if len(train) == 0:
        raise ValueError("empty training set")
    fmap = resolve_map(cfg.feature_map, cfg.rank)
    X = feature_matrix(train.words(), fmap)
    y = train.labels()
    data = LabeledSet(X, y, 2)

    if cfg.method in ("regression", "fisher", "svm"):
        model = fit_linear(data, cfg.method)
        if cfg.quantizer_kind:
            q = build_quantizer(model.scores(X), y, cfg.quantizer_bins,
                                cfg.quantizer_kind)
            model = model.with_quantizer(q)
    elif cfg.method == "distance":
        model = fit_distance(data, "mahalanobis")
    elif cfg.method == "tree":
        model = fit_tree(data, TreeParams())
    else:
        raise ValueError(f"unknown method {cfg.method!r}")
    return Pipeline(fmap, model, cfg)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass
class EvaluationReport:
    strata: Dict[int, Tuple[int, Optional[float]]]   # min_len -> (n, accuracy)
    confusion: np.ndarray                            # 2x2, [true-1][pred-1]
    histogram: Optional["ScoreHistogram"] = None

    def accuracy(self, min_len: int = 0) -> Optional[float]:
        return self.strata[min_len][1]

    def strata_csv(self) -> str:
        lines = ["stratum,n,accuracy"]
        for lo, (n, acc) in sorted(self.strata.items()):
            lines.append(f"|w|>{lo},{n},{'' if acc is None else f'{acc:.6f}'}")
        return "\n".join(lines) + "\n"


@dataclass
class ScoreHistogram:
    bin_centers: np.ndarray
    counts_class1: np.ndarray
    counts_class2: np.ndarray

    def overlap_fraction(self) -> float:
        """Mass shared between the two class distributions."""
        total = self.counts_class1.sum() + self.counts_class2.sum()
        return float(np.minimum(self.counts_class1, self.counts_class2).sum() * 2 / total)

    def csv(self) -> str:
        lines = ["bin_center,count_class1,count_class2"]
        for c, a, b in zip(self.bin_centers, self.counts_class1, self.counts_class2):
            lines.append(f"{c!r},{int(a)},{int(b)}")
        return "\n".join(lines) + "\n"


def score_histogram(pipeline: Pipeline, data: LabeledWordSet, bins: int) -> ScoreHistogram:
    """Class-conditional equal-width binned counts of the discriminant scores."""
    if bins < 2:
        raise ValueError("need at least 2 bins")
    s = pipeline.scores(data.words())
    y = data.labels()
    lo, hi = float(s.min()), float(s.max())
    if hi <= lo:
        hi = lo + 1.0
    edges = np.linspace(lo, hi, bins + 1)
    c1, _ = np.histogram(s[y == 1], bins=edges)
    c2, _ = np.histogram(s[y == 2], bins=edges)
    centers = (edges[:-1] + edges[1:]) / 2.0
    return ScoreHistogram(centers, c1, c2)


def evaluate(
    pipeline: Pipeline,
    test: LabeledWordSet,
    bins: int = 50,
    strata: Sequence[int] = DEFAULT_STRATA,
) -> EvaluationReport:
    preds = pipeline.predict_words(test.words())
    y = test.labels()
    lengths = test.lengths()
    report_strata: Dict[int, Tuple[int, Optional[float]]] = {}
    for lo in strata:
        mask = lengths > lo
        n = int(mask.sum())
        acc = float((preds[mask] == y[mask]).mean()) if n else None
        report_strata[lo] = (n, acc)
    confusion = np.zeros((2, 2), dtype=np.int64)
    for t, p in zip(y, preds):
        confusion[t - 1, p - 1] += 1
    hist = None
    if pipeline.config.method != "tree":
        hist = score_histogram(pipeline, test, bins)
    return EvaluationReport(report_strata, confusion, hist)


# ---------------------------------------------------------------------------
# greedy forward feature selection
# ---------------------------------------------------------------------------

def greedy_feature_selection(
    pool: Sequence[Pattern],
    train: LabeledWordSet,
    validation: LabeledWordSet,
    rank: int = 2,
    min_improvement: float = 0.001,
    max_features: Optional[int] = None,
) -> List[int]:
    """Forward selection of pool patterns for the regression classifier.

    Starts empty and repeatedly adds the pattern maximizing validation
    accuracy of the retrained pipeline; stops when the best improvement drops
    below ``min_improvement`` or the pool is exhausted.  Returns the selected
    pool indices in acceptance order.
    """
    if not pool:
        raise ValueError("empty pattern pool")
    full = FeatureMap("pool", tuple(pool), rank)
    Xtr = feature_matrix(train.words(), full)
    Xva = feature_matrix(validation.words(), full)
    ytr = train.labels()
    yva = validation.labels()
    btr = (ytr == 2).astype(np.float64)

    def val_accuracy(cols: List[int]) -> float:
        A = Xtr[:, cols]
        v = least_squares(A, btr)
        s_tr = A @ v
        from .classifiers import choose_threshold
        theta, orient, _ = choose_threshold(s_tr, ytr)
        s_va = Xva[:, cols] @ v
        left = orient
        right = 2 if orient == 1 else 1
        preds = np.where(s_va <= theta, left, right)
        return float((preds == yva).mean())

    selected: List[int] = []
    best_acc = 0.0
    limit = max_features if max_features is not None else len(pool)
    while len(selected) < limit:
        best = None
        for j in range(len(pool)):
            if j in selected:
                continue
            acc = val_accuracy(selected + [j])
            if best is None or acc > best[0]:
                best = (acc, j)
        if best is None or best[0] < best_acc + min_improvement:
            break
        best_acc = best[0]
        selected.append(best[1])
    return selected


# ---------------------------------------------------------------------------
# pipeline serialization
# ---------------------------------------------------------------------------

def pipeline_to_json(pipeline: Pipeline) -> str:
    doc = model_to_dict(pipeline.model, pipeline.fmap.name)
    doc["config"] = {
        "feature_map": pipeline.config.feature_map,
        "method": pipeline.config.method,
        "quantizer_kind": pipeline.config.quantizer_kind,
        "quantizer_bins": pipeline.config.quantizer_bins,
        "threshold_override": pipeline.config.threshold_override,
        "rank": pipeline.config.rank,
        "seed": pipeline.config.seed,
    }
    return json.dumps(doc, indent=2)


def pipeline_from_json(text: str) -> Pipeline:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(str(e)) from e
    model = model_from_dict(doc)
    c = doc.get("config", {})
    cfg = PipelineConfig(
        feature_map=c.get("feature_map", doc.get("feature_map", "f6")),
        method=c.get("method", doc.get("method", "regression")),
        quantizer_kind=c.get("quantizer_kind"),
        quantizer_bins=c.get("quantizer_bins", DEFAULT_QUANTIZER_BINS),
        threshold_override=c.get("threshold_override"),
        rank=c.get("rank", 2),
        seed=c.get("seed", 0),
    )
    fmap = resolve_map(cfg.feature_map, cfg.rank)
    return Pipeline(fmap, model, cfg)
