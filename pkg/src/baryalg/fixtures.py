"""Polygons shipped with the package: ``square``, ``triangle``, ``pentagon``."""
from __future__ import annotations

from importlib import resources

from .geometry import Polygon

FIXTURES = ("square", "triangle", "pentagon")


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return resources.files("baryalg").joinpath("data", f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> Polygon:
    return Polygon.from_json(fixture_text(name))
