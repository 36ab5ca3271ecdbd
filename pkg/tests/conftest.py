"""Shared fixtures: bundled models and cached filtration results.

Filtrations are the expensive objects; computing each (model, kind) pair
once and sharing it across test modules keeps the whole suite fast.
"""

from __future__ import annotations

from functools import lru_cache

import pytest

from kring import build_model, compute_filtration


@lru_cache(maxsize=None)
def model(name: str, g: int):
    return build_model(name, g)


@lru_cache(maxsize=None)
def filtration(name: str, g: int, kind: str, n_max: int, method: str = "saturation"):
    return compute_filtration(model(name, g), kind, n_max, method)


def bundled_models(g_max: int = 4):
    out = [("theta", g) for g in range(1, g_max + 1)]
    for name in ("antisym", "pathological", "violator"):
        out.extend((name, g) for g in range(2, g_max + 1))
    return out


@pytest.fixture
def theta2():
    return model("theta", 2)


@pytest.fixture
def antisym2():
    return model("antisym", 2)


@pytest.fixture
def pathological2():
    return model("pathological", 2)


@pytest.fixture
def violator2():
    return model("violator", 2)
