"""Singular anti-de Sitter spacetimes, HS surfaces and their isometries.

Structured inputs are plain dicts using the same JSON schemas as the
``adsgeom`` command line tool; results come back as dicts.
"""

import json as _json

from ._adsgeom import (
    InputError,
    PreconditionError,
    ProjMatrix,
    UndecidableError,
    __version__,
    diagonal_boost,
    is_elliptic,
    is_hyperbolic,
    is_parabolic,
    rotation,
    suite_names,
    unipotent,
)
from . import _adsgeom

__all__ = [
    "InputError",
    "PreconditionError",
    "ProjMatrix",
    "UndecidableError",
    "__version__",
    "classify_isometry",
    "classify_link",
    "classify_surface",
    "diagonal_boost",
    "is_elliptic",
    "is_hyperbolic",
    "is_parabolic",
    "plot",
    "polyhedron",
    "rotation",
    "run_suite",
    "spacetime",
    "suite_names",
    "unipotent",
]


def _as_matrix(g):
    if isinstance(g, ProjMatrix):
        return g
    if isinstance(g, str):
        return ProjMatrix.parse(g)
    return ProjMatrix(*g)


def classify_isometry(g):
    """Class, fixed rays and rotation number of a PSL(2,R) element."""
    return _json.loads(_adsgeom._classify_isometry(_as_matrix(g)))


def classify_link(link):
    return _json.loads(_adsgeom._classify_link(_json.dumps(link)))


def classify_surface(surface):
    """Census, causality and interaction class; CCC result for first-return input."""
    return _json.loads(_adsgeom._surface(_json.dumps(surface)))


def spacetime(recipe):
    return _json.loads(_adsgeom._spacetime(_json.dumps(recipe)))


def polyhedron(description):
    return _json.loads(_adsgeom._polyhedron(_json.dumps(description)))


def plot(surface):
    """SVG text for a surface or a first-return map."""
    return _adsgeom._plot(_json.dumps(surface))


def run_suite(name, seed=42):
    return _json.loads(_adsgeom._run_suite(name, seed))
