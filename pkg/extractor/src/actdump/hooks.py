"""Capture-point planning for the supported torchvision architectures.

Feedforward stacks (VGG) are tapped at every conv/ReLU/pool layer; block
architectures are tapped once per block, after the residual connection or
dense concatenation, plus the pooled stem where the architecture has one.
DenseNet transition blocks get their own capture points since their
pooling step contracts the embedding sharply.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torchvision import models

from .errors import UnsupportedModel

SUPPORTED_MODELS = (
    "vgg16",
    "resnet18",
    "resnet50",
    "resnet101",
    "resnet152",
    "mobilenet_v2",
    "densenet121",
    "densenet169",
    "densenet201",
)


@dataclass(frozen=True)
class CapturePoint:
    module_path: str  # resolvable via model.get_submodule
    name: str  # human-readable layer/block name
    granularity: str  # "layer" | "block" | "transition"


@dataclass(frozen=True)
class HookPlan:
    model_id: str
    points: tuple[CapturePoint, ...]  # forward-pass order


def build_model(model_id: str, pretrained: bool = False) -> torch.nn.Module:
    """Instantiate the architecture; weights stay random unless requested."""
    if model_id not in SUPPORTED_MODELS:
        raise UnsupportedModel(
            f"{model_id!r} not in supported set {', '.join(SUPPORTED_MODELS)}"
        )
    if pretrained:
        from .extract import load_pretrained  # avoids a cycle at import time

        return load_pretrained(model_id)
    return models.get_model(model_id, weights=None)


def plan_hooks(model_id: str) -> HookPlan:
    model = build_model(model_id, pretrained=False)
    points: list[CapturePoint] = []

    if model_id == "vgg16":
        for i, module in enumerate(model.features):
            kind = type(module).__name__.lower()
            points.append(CapturePoint(f"features.{i}", f"{kind}{i:02d}", "layer"))
    elif model_id.startswith("resnet"):
        points.append(CapturePoint("maxpool", "stem", "block"))
        for stage in ("layer1", "layer2", "layer3", "layer4"):
            blocks = getattr(model, stage)
            for j in range(len(blocks)):
                points.append(
                    CapturePoint(f"{stage}.{j}", f"{stage}_block{j}", "block")
                )
    elif model_id.startswith("densenet"):
        points.append(CapturePoint("features.pool0", "stem", "block"))
        for name, _ in model.features.named_children():
            if name.startswith("denseblock"):
                points.append(CapturePoint(f"features.{name}", name, "block"))
            elif name.startswith("transition"):
                points.append(CapturePoint(f"features.{name}", name, "transition"))
    elif model_id == "mobilenet_v2":
        for i, module in enumerate(model.features):
            if type(module).__name__ == "InvertedResidual":
                points.append(
                    CapturePoint(f"features.{i}", f"inverted_residual{i:02d}", "block")
                )
    return HookPlan(model_id, tuple(points))
