"""Configuration inequalities for network correlations."""

import json
from fractions import Fraction

from . import _core
from ._core import NetcfgError, visibility_threshold_ghz, region_scan

__all__ = [
    "NetcfgError",
    "fis",
    "is_valid_fis",
    "simulate",
    "check",
    "chain_min_check",
    "witness",
    "visibility_threshold_ghz",
    "region_scan",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def fis(network, algorithm="greedy", m=1000, k=1, variant="a", facet=""):
    """Weights for a network document, as Fractions."""
    return [Fraction(x) for x in _core.fis(_text(network), algorithm, m, k, variant, facet)]


def is_valid_fis(network, weights):
    return _core.is_valid_fis(_text(network), [str(w) for w in weights])


def simulate(state, basis=None):
    """Outcome distribution document (a dict) of a quantum state document."""
    return json.loads(_core.simulate(_text(state), "" if basis is None else _text(basis)))


def check(dist, weights, tol=1e-9):
    return _core.check(_text(dist), [str(w) for w in weights], tol)


def chain_min_check(dist, m, k=1, tol=1e-9):
    return _core.chain_min_check(_text(dist), m, k, tol)


def witness(state, tol=1e-9):
    return _core.witness(_text(state), tol)
