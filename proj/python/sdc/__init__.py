"""Derived subdivisions, collapses and non-evasiveness certificates.

Complexes are plain facet lists (lists of vertex ids) or, when coordinates
matter, dicts in the ``sdc-complex`` JSON format.  Certificates come back as
dicts in the ``sdc-certificate`` format and can be re-checked with
:func:`check_certificate`.
"""

import json

from . import _sdc
from ._sdc import BudgetExhaustedError, Error, InputError, RefutedError

DEFAULT_BUDGET = _sdc.DEFAULT_BUDGET

__all__ = [
    "BudgetExhaustedError",
    "Error",
    "InputError",
    "RefutedError",
    "check_certificate",
    "collapse_search",
    "euler_characteristic",
    "free_faces",
    "generate",
    "is_nonevasive",
    "link",
    "load_complex",
    "pipeline",
    "sd",
    "shell",
]


def _text(complex_or_text):
    if isinstance(complex_or_text, str):
        return complex_or_text
    return json.dumps(complex_or_text)


def _load(text):
    return None if text is None else json.loads(text)


def facets_of(c):
    """Facet list of a complex dict, or the argument itself if it is a list."""
    return c["facets"] if isinstance(c, dict) else c


def generate(name, *, d=2, n=5, m=1, ratio=None, spikes=1, seed=0):
    return json.loads(_sdc.generate(name, d, n, m, None if ratio is None else str(ratio), spikes, seed))


def load_complex(path):
    with open(path) as f:
        return json.loads(_sdc.validate(f.read()))


def sd(c, m=1):
    """Returns (facets of sd^m C, carrier face in C of each vertex id)."""
    return _sdc.sd(facets_of(c), m)


def link(face, c):
    return _sdc.link(list(face), facets_of(c))


def free_faces(c):
    return _sdc.free_faces(facets_of(c))


def euler_characteristic(c):
    return _sdc.euler_characteristic(facets_of(c))


def collapse_search(c, target=None, *, strategy="greedy", budget=DEFAULT_BUDGET, seed=0):
    """Returns (outcome, certificate or None); outcome is 'certificate', 'refuted' or 'budget-exhausted'."""
    t = None if target is None else facets_of(target)
    outcome, cert = _sdc.collapse_search(facets_of(c), t, strategy, budget, seed)
    return outcome, _load(cert)


def is_nonevasive(c, *, budget=DEFAULT_BUDGET):
    outcome, cert = _sdc.is_nonevasive(facets_of(c), budget)
    return outcome, _load(cert)


def pipeline(theorem, c, *, seed=0, budget=DEFAULT_BUDGET, subdivision=None):
    """Runs 'convex', 'star-shaped', 'boundary' or 'hudson' on a geometric complex."""
    sub = None if subdivision is None else _text(subdivision)
    outcome, cert = _sdc.pipeline(theorem, _text(c), seed, budget, sub)
    return outcome, _load(cert)


def shell(c, mu, *, seed=0):
    return json.loads(_sdc.shell(_text(c), list(mu), seed))


def check_certificate(cert):
    """Returns (ok, kind, message)."""
    return _sdc.check_certificate(_text(cert))
