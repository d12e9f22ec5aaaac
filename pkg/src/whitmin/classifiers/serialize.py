"""Versioned JSON serialization for fitted models.

Floats are written with Python's shortest round-trip repr (>= 17 significant
digits where needed), so serialize/deserialize round-trips are bit exact.
"""

from __future__ import annotations

import json
from typing import Any, Dict

import numpy as np

from .flats import DistanceModel, FlatModel
from .kmeans import KMeansModel
from .linear import LinearModel
from .quantize import Quantizer
from .tree import TreeLeaf, TreeModel, TreeNode, TreeParams

SCHEMA_VERSION = 1


class ModelFormatError(ValueError):
    """Serialized model document is malformed or has an unknown schema."""


def _arr(a) -> list:
    return np.asarray(a, dtype=np.float64).tolist()


def quantizer_to_dict(q: Quantizer) -> Dict[str, Any]:
    return {
        "kind": q.kind,
        "boundaries": [float(b) for b in q.boundaries],
        "interval_labels": list(q.interval_labels),
        "degenerate": q.degenerate,
    }


def quantizer_from_dict(d: Dict[str, Any]) -> Quantizer:
    return Quantizer(d["kind"], tuple(d["boundaries"]),
                     tuple(int(x) for x in d["interval_labels"]),
                     bool(d.get("degenerate", False)))


def _tree_node_to_dict(node) -> Dict[str, Any]:
    if isinstance(node, TreeLeaf):
        return {"leaf": node.label}
    return {
        "feature": node.feature,
        "threshold": float(node.threshold),
        "left": _tree_node_to_dict(node.left),
        "right": _tree_node_to_dict(node.right),
    }


def _tree_node_from_dict(d: Dict[str, Any]):
    if "leaf" in d:
        return TreeLeaf(int(d["leaf"]))
    return TreeNode(int(d["feature"]), float(d["threshold"]),
                    _tree_node_from_dict(d["left"]), _tree_node_from_dict(d["right"]))


def model_to_dict(model, feature_map: str = "") -> Dict[str, Any]:
    doc: Dict[str, Any] = {"schema_version": SCHEMA_VERSION, "feature_map": feature_map}
    if isinstance(model, LinearModel):
        doc.update(
            method=model.method,
            weights=_arr(model.weights),
            theta=float(model.theta),
            orientation=int(model.orientation),
            training_error=float(model.training_error),
        )
        if model.quantizer is not None:
            doc["quantizer"] = quantizer_to_dict(model.quantizer)
    elif isinstance(model, DistanceModel):
        doc.update(
            method="distance",
            variant=model.variant,
            mu1=_arr(model.mu1), mu2=_arr(model.mu2),
            theta=float(model.theta),
            orientation=int(model.orientation),
            ridge_repaired=model.ridge_repaired,
            training_error=float(model.training_error),
        )
        if model.variant == "flat":
            doc["flat1"] = {"mu": _arr(model.flat1.mu), "T": _arr(model.flat1.T),
                            "tol": model.flat1.tol}
            doc["flat2"] = {"mu": _arr(model.flat2.mu), "T": _arr(model.flat2.T),
                            "tol": model.flat2.tol}
        else:
            doc["inv_cov1"] = _arr(model.inv_cov1)
            doc["inv_cov2"] = _arr(model.inv_cov2)
    elif isinstance(model, TreeModel):
        doc.update(
            method="tree",
            num_classes=model.num_classes,
            tree=_tree_node_to_dict(model.root),
            params={
                "max_depth": model.params.max_depth,
                "min_node": model.params.min_node,
                "chi2_cutoff": model.params.chi2_cutoff,
                "criterion": model.params.criterion,
                "eps_type1": model.params.eps_type1,
                "eps_type2": model.params.eps_type2,
            },
        )
    elif isinstance(model, KMeansModel):
        doc.update(
            method="kmeans",
            centers=_arr(model.centers),
            iterations=int(model.iterations),
            objective=float(model.objective),
            objective_unsquared=float(model.objective_unsquared),
        )
    else:
        raise ModelFormatError(f"cannot serialize {type(model).__name__}")
    return doc


def model_from_dict(doc: Dict[str, Any]):
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ModelFormatError(f"unsupported schema_version {doc.get('schema_version')!r}")
    method = doc.get("method")
    if method in ("regression", "fisher", "svm"):
        q = quantizer_from_dict(doc["quantizer"]) if "quantizer" in doc else None
        return LinearModel(np.array(doc["weights"]), float(doc["theta"]),
                           int(doc["orientation"]), method, q,
                           float(doc.get("training_error", 0.0)))
    if method == "distance":
        kwargs = dict(
            variant=doc["variant"],
            mu1=np.array(doc["mu1"]), mu2=np.array(doc["mu2"]),
            theta=float(doc["theta"]), orientation=int(doc["orientation"]),
            ridge_repaired=bool(doc.get("ridge_repaired", False)),
            training_error=float(doc.get("training_error", 0.0)),
        )
        if doc["variant"] == "flat":
            kwargs["flat1"] = FlatModel(np.array(doc["flat1"]["mu"]),
                                        np.array(doc["flat1"]["T"]), doc["flat1"]["tol"])
            kwargs["flat2"] = FlatModel(np.array(doc["flat2"]["mu"]),
                                        np.array(doc["flat2"]["T"]), doc["flat2"]["tol"])
        else:
            kwargs["inv_cov1"] = np.array(doc["inv_cov1"])
            kwargs["inv_cov2"] = np.array(doc["inv_cov2"])
        return DistanceModel(**kwargs)
    if method == "tree":
        p = doc["params"]
        params = TreeParams(p["max_depth"], p["min_node"], p["chi2_cutoff"],
                            p["criterion"], p["eps_type1"], p["eps_type2"])
        return TreeModel(_tree_node_from_dict(doc["tree"]), int(doc["num_classes"]),
                         params)
    if method == "kmeans":
        return KMeansModel(np.array(doc["centers"]), int(doc["iterations"]),
                           float(doc["objective"]), float(doc["objective_unsquared"]),
                           np.array([], dtype=np.int64))
    raise ModelFormatError(f"unknown method {method!r}")


def dumps(model, feature_map: str = "") -> str:
    return json.dumps(model_to_dict(model, feature_map), indent=2)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFormatError(str(e)) from e
    return model_from_dict(doc)
