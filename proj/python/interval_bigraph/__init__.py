"""Recognize interval bigraphs and check their certificates."""

import json

from ._core import (
    Bigraph,
    IbgError,
    gen_biclique,
    gen_cycle,
    gen_exobiclique,
    gen_intervals,
    gen_obstruction,
    gen_path,
    gen_random,
    oracle,
)
from . import _core

__all__ = [
    "Bigraph",
    "IbgError",
    "recognize",
    "verify",
    "oracle",
    "gen_biclique",
    "gen_cycle",
    "gen_exobiclique",
    "gen_intervals",
    "gen_obstruction",
    "gen_path",
    "gen_random",
]


def recognize(g):
    """Certificate as a dict: verdict plus ordering/intervals or witness."""
    return json.loads(_core.recognize_json(g))


def verify(g, certificate):
    """(ok, reason) for a certificate given as a dict or JSON text."""
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    return _core.verify_json(g, text)
