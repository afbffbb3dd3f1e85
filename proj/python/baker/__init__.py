"""Exact boundary resolution of plane curves over finite fields.

Thin wrappers over the compiled core; every function returns plain dicts
decoded from the JSON documents the command line tool emits.
"""

import json as _json

from ._baker import (
    GuardError,
    ParseError,
    PreconditionError,
    check_json,
    genus_json,
    places_json,
    resolve_json,
    superelliptic_json,
)


def resolve(field, poly, mode="minimal", max_iterations=64):
    """Chart tower, orbits and regularity reports for the curve poly = 0."""
    return _json.loads(resolve_json(field, poly, mode, max_iterations))


def places(field, poly, max_iterations=64):
    """Galois orbits of the points at infinity."""
    return _json.loads(places_json(field, poly, max_iterations))["orbits"]


def genus(field, poly):
    """Arithmetic genus, counted by interior lattice points."""
    return _json.loads(genus_json(field, poly))["genus"]


def check(field, poly):
    """Torus smoothness report plus per-edge nondegeneracy."""
    return _json.loads(check_json(field, poly))


def superelliptic(field, s, h, cross_check=False):
    """Closed-form boundary data of the cover y**s = h(x)."""
    return _json.loads(superelliptic_json(field, s, h, cross_check))


__all__ = [
    "GuardError",
    "ParseError",
    "PreconditionError",
    "check",
    "check_json",
    "genus",
    "genus_json",
    "places",
    "places_json",
    "resolve",
    "resolve_json",
    "superelliptic",
    "superelliptic_json",
]
