"""White surfaces in P^5: configurations, trisecant census and numerical characters.

Configurations, schemes, census reports and trial records are plain dicts in
the JSON schema used by the command-line tool.
"""

import json

from . import _whitesurf
from ._whitesurf import (
    WhitesurfError,
    degree_of_character,
    hilbert_from_character,
    is_uniform,
    is_valid_character,
    superabundance,
)

__all__ = [
    "WhitesurfError",
    "census",
    "character",
    "contracted_line_count",
    "degree_of_character",
    "gen",
    "h0",
    "hilbert_from_character",
    "is_uniform",
    "is_valid_character",
    "superabundance",
    "trial",
]


def gen(kind, seed, prime=1009, ext=1):
    """A random, polygonal or Segre White configuration over F_prime^ext (Q when prime is 0)."""
    return json.loads(_whitesurf.gen(kind, seed, prime, ext))


def census(config, prime=0, maxext=1, seed=0):
    """Trisecant census of the surface of `config` from a generic point chosen by `seed`."""
    return json.loads(_whitesurf.census(json.dumps(config), prime, maxext, seed))


def contracted_line_count(config):
    return _whitesurf.contracted_line_count(json.dumps(config))


def character(scheme, seed=0):
    """Numerical character of a reduced point scheme, as a list."""
    return _whitesurf.character(json.dumps(scheme), seed)


def h0(scheme, degree):
    return _whitesurf.h0(json.dumps(scheme), degree)


def trial(seed, prime=1009):
    return json.loads(_whitesurf.trial(seed, prime))
