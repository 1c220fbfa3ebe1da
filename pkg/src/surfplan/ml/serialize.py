"""Versioned JSON persistence for every fitted model kind.

Floats are written with Python's shortest-round-trip repr, so a loaded model
predicts bit-identically to the one saved. Loading rejects unknown format
tags, unknown versions, and truncated or otherwise corrupt files without
returning a partial model.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict

import numpy as np

from ..core import HeuristicWeights
from ..heuristics import HeuristicKind, HeuristicModel, Standardizer
from ..oracle import OracleConfig
from .ensemble import BoostedModel, ForestModel
from .linear import LinearModel
from .pipeline import PipelineModel
from .tree import TreeModel

FORMAT_TAG = "surfplan-model"
FORMAT_VERSION = 1


class ModelIOError(Exception):
    """Base error for model persistence problems."""


class ModelVersionError(ModelIOError):
    """The file's format tag or version is not supported."""


class CorruptModelError(ModelIOError):
    """The file is not a complete, well-formed model."""


def _tree_to_dict(tree: TreeModel) -> dict:
    return {
        "kind": "tree",
        "feature": tree.feature.tolist(),
        "threshold": tree.threshold.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "value": tree.value.tolist(),
        "n_features": tree.n_features,
    }


def _tree_from_dict(data: dict) -> TreeModel:
    return TreeModel(
        feature=np.asarray(data["feature"], dtype=np.int64),
        threshold=np.asarray(data["threshold"], dtype=np.float64),
        left=np.asarray(data["left"], dtype=np.int64),
        right=np.asarray(data["right"], dtype=np.int64),
        value=np.asarray(data["value"], dtype=np.float64),
        n_features=int(data["n_features"]),
    )


def stage_to_dict(model) -> dict:
    if isinstance(model, TreeModel):
        return _tree_to_dict(model)
    if isinstance(model, ForestModel):
        return {"kind": "forest", "n_features": model.n_features,
                "trees": [_tree_to_dict(t) for t in model.trees]}
    if isinstance(model, BoostedModel):
        return {"kind": "boosted", "n_features": model.n_features,
                "learning_rate": model.learning_rate, "base_score": model.base_score,
                "trees": [_tree_to_dict(t) for t in model.trees]}
    if isinstance(model, LinearModel):
        return {"kind": "linear", "n_features": model.n_features,
                "coefficients": model.coefficients.tolist(),
                "intercept": model.intercept}
    raise ModelIOError(f"cannot serialize stage model of type {type(model).__name__}")


def stage_from_dict(data: dict):
    kind = data.get("kind")
    if kind == "tree":
        return _tree_from_dict(data)
    if kind == "forest":
        return ForestModel(trees=tuple(_tree_from_dict(t) for t in data["trees"]),
                           n_features=int(data["n_features"]))
    if kind == "boosted":
        return BoostedModel(trees=tuple(_tree_from_dict(t) for t in data["trees"]),
                            learning_rate=float(data["learning_rate"]),
                            base_score=float(data["base_score"]),
                            n_features=int(data["n_features"]))
    if kind == "linear":
        return LinearModel(coefficients=np.asarray(data["coefficients"], dtype=np.float64),
                           intercept=float(data["intercept"]),
                           n_features=int(data["n_features"]))
    raise CorruptModelError(f"unknown stage model kind {kind!r}")


def model_to_dict(model) -> dict:
    envelope = {"format": FORMAT_TAG, "version": FORMAT_VERSION}
    if isinstance(model, PipelineModel):
        envelope["model"] = {
            "kind": "pipeline",
            "stage1": stage_to_dict(model.stage1),
            "stage2": stage_to_dict(model.stage2),
            "stage1_schema": list(model.stage1_schema),
            "stage2_schema": list(model.stage2_schema),
            "oracle": asdict(model.oracle),
            "min_target": model.min_target,
            "max_target": model.max_target,
        }
        return envelope
    if isinstance(model, HeuristicModel):
        envelope["model"] = {
            "kind": "heuristic",
            "heuristic": model.kind.label,
            "weights": asdict(model.weights),
            "oracle": asdict(model.oracle),
            "noise": model.noise.tolist(),
            "log_ler": model.log_ler.tolist(),
            "distance": model.distance.tolist(),
            "rounds": model.rounds.tolist(),
            "stage1_scaler": asdict(model.stage1_scaler),
            "stage2_scaler": asdict(model.stage2_scaler),
        }
        return envelope
    envelope["model"] = stage_to_dict(model)
    return envelope


def model_from_dict(envelope: dict):
    if not isinstance(envelope, dict) or envelope.get("format") != FORMAT_TAG:
        raise ModelVersionError("not a surfplan model file (missing format tag)")
    if envelope.get("version") != FORMAT_VERSION:
        raise ModelVersionError(
            f"unsupported model version {envelope.get('version')!r}; "
            f"this build reads version {FORMAT_VERSION}")
    try:
        data = envelope["model"]
        kind = data["kind"]
        if kind == "pipeline":
            return PipelineModel(
                stage1=stage_from_dict(data["stage1"]),
                stage2=stage_from_dict(data["stage2"]),
                oracle=OracleConfig(**data["oracle"]),
                min_target=float(data["min_target"]),
                max_target=float(data["max_target"]),
                stage1_schema=tuple(data["stage1_schema"]),
                stage2_schema=tuple(data["stage2_schema"]),
            )
        if kind == "heuristic":
            return HeuristicModel(
                kind=HeuristicKind.parse(data["heuristic"]),
                weights=HeuristicWeights(**data["weights"]),
                oracle=OracleConfig(**data["oracle"]),
                noise=np.asarray(data["noise"], dtype=np.float64),
                log_ler=np.asarray(data["log_ler"], dtype=np.float64),
                distance=np.asarray(data["distance"], dtype=np.float64),
                rounds=np.asarray(data["rounds"], dtype=np.float64),
                stage1_scaler=Standardizer(
                    mean=tuple(data["stage1_scaler"]["mean"]),
                    scale=tuple(data["stage1_scaler"]["scale"])),
                stage2_scaler=Standardizer(
                    mean=tuple(data["stage2_scaler"]["mean"]),
                    scale=tuple(data["stage2_scaler"]["scale"])),
            )
        return stage_from_dict(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CorruptModelError(f"malformed model file: {exc}") from exc


def save_model(model, path: str | os.PathLike) -> None:
    text = json.dumps(model_to_dict(model), indent=1, allow_nan=False)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text + "\n")


def load_model(path: str | os.PathLike):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            envelope = json.load(handle)
    except json.JSONDecodeError as exc:
        raise CorruptModelError(f"truncated or invalid model file {path}: {exc}") from exc
    return model_from_dict(envelope)
