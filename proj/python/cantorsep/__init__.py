"""Exact mixed-radix expansions, weighted submeasure ideals, and separation
certificates.

Rationals cross the boundary as ``"p/q"`` strings; structured results come
back as plain dicts decoded from the same JSON the command-line tool emits.
"""

import json as _json

try:
    from ._core import Base, IndexSet  # packaged layout
    from . import _core as _impl
except ImportError:  # development tree: extension next to the package
    from _core import Base, IndexSet
    import _core as _impl

__all__ = [
    "Base",
    "IndexSet",
    "digits",
    "jump",
    "phi",
    "member",
    "rho",
    "inclusion",
    "separate",
    "separate_csv",
    "verify",
]


def digits(base, value, n=128):
    """Sign, integer part, and the first n digits of `value` over `base`."""
    return _impl.digits(base, value, n)


def jump(base, value, depth=128):
    """Digit-change set of `value` restricted to [1, depth], plus its tail."""
    return _json.loads(_impl.jump_json(base, value, depth))


def phi(x, base, value, depth=128):
    """Mass of the change set of `value` under the weighted ideal of `x`."""
    return _json.loads(_impl.phi_json(x, base, value, depth))


def member(x, base, value, depth=128):
    """Membership verdict (with certificate) of the change set in the ideal."""
    return _json.loads(_impl.member_json(x, base, value, depth))


def rho(x, base, first, second, depth=128):
    """Metric value between two rationals: exact distance plus change-set mass."""
    return _json.loads(_impl.rho_json(x, base, first, second, depth))


def inclusion(x, y):
    """Is the weighted ideal of x contained in the ideal of y (with witness)."""
    return _json.loads(_impl.inclusion_json(x, y))


def separate(x, y, c="1", count=3, base=None):
    """Scaling-discontinuity certificate for (x, y, c) as a dict."""
    base = Base.constant(10) if base is None else base
    return _json.loads(_impl.separate_json(x, y, c, count, base))


def separate_csv(x, y, c="1", count=3, base=None):
    """The same certificate as a k,w,phi_x,phi_y CSV table."""
    base = Base.constant(10) if base is None else base
    return _impl.separate_csv(x, y, c, count, base)


def verify(suite, seed=0, trials=200):
    """Run a named invariant suite; the report lists trials and failures."""
    return _json.loads(_impl.verify_json(suite, seed, trials))
