"""Exact characteristic-number decisions and sphere-map numerics."""

import json as _json

from . import _core
from ._core import AcmanError, bott_group, catalog_names, determinant, signature, verify_properties

__all__ = [
    "AcmanError",
    "bott_group",
    "catalog_entry",
    "catalog_names",
    "curvatura_integra",
    "decide",
    "determinant",
    "f1",
    "f_full",
    "find_critical_points",
    "four_manifold",
    "hopf",
    "invariant_I",
    "product",
    "sample_fiber",
    "segre",
    "signature",
    "suspension_hopf",
    "validate",
    "verify_properties",
]


def _dump(descriptor):
    return descriptor if isinstance(descriptor, str) else _json.dumps(descriptor)


def error_code(exc):
    """Error code string of an AcmanError, e.g. "SignatureMismatch"."""
    return exc.args[0]


def segre(k):
    return _json.loads(_core.segre(k))


def catalog_entry(name):
    return _json.loads(_core.catalog_entry(name))


def validate(descriptor):
    return _json.loads(_core.validate(_dump(descriptor)))


def invariant_I(descriptor):
    return _core.invariant_I(_dump(descriptor))


def curvatura_integra(descriptor):
    return _core.curvatura_integra(_dump(descriptor))


def decide(descriptor, target):
    """Decision for target in r4m2, r4m-immerse, r4m-embed, r6-ph, r6-smooth."""
    return _json.loads(_core.decide(_dump(descriptor), target))


def product(a, b):
    return _json.loads(_core.product(_dump(a), _dump(b)))


def four_manifold(name, Q, c1, euler, torsion_free=True, closed=True):
    return _json.loads(_core.four_manifold(name, Q, c1, euler, torsion_free, closed))


def hopf(p):
    return tuple(_core.hopf(list(p)))


def suspension_hopf(p):
    return tuple(_core.suspension_hopf(list(p)))


def f1(p):
    return tuple(_core.f1(list(p)))


def f_full(p, twist_rate=None):
    if twist_rate is None:
        return tuple(_core.f_full(list(p)))
    return tuple(_core.f_full(list(p), twist_rate))


def find_critical_points(map_name, seeds, seed=0):
    return [tuple(p) for p in _core.find_critical_points(map_name, seeds, seed)]


def sample_fiber(target, n, seed=0, map_name="f1"):
    return _json.loads(_core.sample_fiber(list(target), n, seed, map_name))
