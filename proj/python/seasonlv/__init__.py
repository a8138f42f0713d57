"""Poincare map of the seasonal-succession Lotka-Volterra competition model."""

import json

from . import _core
from ._core import SeasonLVError, class_count, load_scenario

__all__ = [
    "SeasonLVError",
    "class_count",
    "classify",
    "derive",
    "fixed_points",
    "load_scenario",
    "orbit",
    "verify_index",
]


def _encode(params):
    if isinstance(params, str):
        params = load_scenario(params)
    return json.dumps(params)


def derive(params):
    return _core.derive(_encode(params))


def classify(params, oracle=False):
    return _core.classify(_encode(params), oracle)


def fixed_points(params, seed=0, rel_tol=0.0, abs_tol=0.0):
    return _core.fixed_points(_encode(params), seed, rel_tol, abs_tol)


def verify_index(params, seed=0, rel_tol=0.0, abs_tol=0.0):
    return _core.verify_index(_encode(params), seed, rel_tol, abs_tol)


def orbit(params, x0, n=4000, transient=2000, seed=0):
    return _core.orbit(_encode(params), list(x0), n, transient, seed)
