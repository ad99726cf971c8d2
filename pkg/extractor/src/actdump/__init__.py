"""Per-layer activation tensor dumps from pretrained torchvision models,
written in the tensor + manifest formats the cubetopo pipeline consumes.
"""

from .errors import ActdumpError, EmptyDataset, ImageDecodeError, UnsupportedModel, WeightsUnavailable
from .extract import ExtractionConfig, extract
from .hooks import SUPPORTED_MODELS, CapturePoint, HookPlan, plan_hooks
from .softmax import dump_softmax

__all__ = [
    "ActdumpError",
    "CapturePoint",
    "EmptyDataset",
    "ExtractionConfig",
    "HookPlan",
    "ImageDecodeError",
    "SUPPORTED_MODELS",
    "UnsupportedModel",
    "WeightsUnavailable",
    "dump_softmax",
    "extract",
    "plan_hooks",
]
