import pytest
import torch

from actdump import UnsupportedModel, plan_hooks
from actdump.hooks import build_model


@pytest.mark.parametrize(
    "model_id,expected",
    [
        ("resnet18", 9),       # stem + 2+2+2+2 blocks
        ("resnet50", 17),      # stem + 3+4+6+3 blocks
        ("densenet121", 8),    # stem + 4 dense blocks + 3 transitions
        ("mobilenet_v2", 17),  # inverted residual blocks only
        ("vgg16", 31),         # every conv/relu/pool layer
    ],
)
def test_capture_point_counts(model_id, expected):
    assert len(plan_hooks(model_id).points) == expected


def test_unsupported_model():
    with pytest.raises(UnsupportedModel):
        plan_hooks("alexnet")


def test_densenet_granularities():
    plan = plan_hooks("densenet121")
    kinds = [p.granularity for p in plan.points]
    assert kinds.count("transition") == 3
    assert kinds.count("block") == 5  # stem + 4 dense blocks


def test_points_resolve_in_forward_order():
    plan = plan_hooks("resnet18")
    model = build_model("resnet18", pretrained=False)
    seen = []

    def make_hook(path):
        def hook(*_):
            seen.append(path)
        return hook

    handles = [
        model.get_submodule(p.module_path).register_forward_hook(make_hook(p.module_path))
        for p in plan.points
    ]
    with torch.no_grad():
        model(torch.zeros(1, 3, 64, 64))
    for h in handles:
        h.remove()
    assert seen == [p.module_path for p in plan.points]
