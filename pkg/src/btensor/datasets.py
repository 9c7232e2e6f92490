"""Bundled example tensors.

Two small symmetric strict-class tensors ship with the package: ``ex41``
(order 4, dimension 3) and ``ex42`` (order 4, dimension 4).  Both are
written in the sparse-with-default JSON form and exercise every bound in
the library at desk scale.
"""
from __future__ import annotations

from importlib import resources

from .core import Tensor
from .tensorio import loads_tensor

__all__ = ["EXAMPLE_NAMES", "example_path", "load_example"]

EXAMPLE_NAMES = ("ex41", "ex42")


def example_path(name: str):
    if name not in EXAMPLE_NAMES:
        raise ValueError(f"unknown example {name!r}, choose from {EXAMPLE_NAMES}")
    return resources.files(__package__) / "data" / f"{name}.json"


def load_example(name: str) -> Tensor:
    text = example_path(name).read_text(encoding="utf-8")
    tensor = loads_tensor(text)
    return Tensor(tensor.array, symmetric=True)
