"""Python front end for the native perfo core.

Domains travel as plain dicts (the same JSON the CLI writes).
"""

import json

from . import _perfo
from ._perfo import DomainError, MeshError, SpectralError, family_names, fit_decay, lawson_area, leqpol

__all__ = [
    "DomainError", "MeshError", "SpectralError",
    "family_names", "construct", "blueprint_hash", "measures", "mesh_summary",
    "solve", "evaluate", "fit_decay", "lawson_area", "leqpol",
]


def construct(family, **params):
    return json.loads(_perfo.construct(family, json.dumps(params)))


def blueprint_hash(domain):
    return _perfo.blueprint_hash(json.dumps(domain))


def measures(domain):
    return json.loads(_perfo.measures(json.dumps(domain)))


def mesh_summary(domain, h=0.1):
    return json.loads(_perfo.mesh_summary(json.dumps(domain), h))


def solve(domain, h=0.1, bc="neumann", count=4, steklov=False):
    return _perfo.solve(json.dumps(domain), h, bc, count, steklov)


def evaluate(domain, h=0.1, certify=False):
    return json.loads(_perfo.evaluate(json.dumps(domain), h, certify))
