"""Finite-window freeness certificates, Neron-Severi lattice actions and plane
Cremona degree sequences. Thin wrappers over the C++ core in ``_core``."""

import json
from pathlib import Path

from . import _core
from ._core import SkewcertError

__all__ = [
    "SkewcertError",
    "certify",
    "degree_sequence",
    "errata",
    "evaluate",
    "fixture_dir",
    "list_fixtures",
    "run_fixture",
]


def fixture_dir():
    """Fixtures shipped with the wheel, else the directory compiled into the core."""
    bundled = Path(__file__).with_name("fixtures")
    if bundled.is_dir():
        return bundled
    return Path(_core.default_fixture_dir())


def _dump(x):
    if x is None:
        return ""
    return x if isinstance(x, str) else json.dumps(x)


def evaluate(op, args=None, *, lattice=None, map=None):
    """Run one atlas operation, e.g. evaluate("spectral_radius", lattice=spec)."""
    return json.loads(_core.evaluate(op, _dump(args), _dump(lattice), _dump(map)))


def certify(map, a="x", b="y", step=1, depth=3):
    return json.loads(_core.certify(_dump(map), a, b, step, depth))


def degree_sequence(map, n=8, max_degree=512):
    return json.loads(_core.degree_sequence(_dump(map), n, max_degree))


def list_fixtures(directory=None):
    return json.loads(_core.list_fixtures(str(directory or fixture_dir())))


def run_fixture(name, directory=None):
    return json.loads(_core.run_fixture(str(directory or fixture_dir()), name))


def errata(directory=None):
    return _core.errata_markdown(str(directory or fixture_dir()))
