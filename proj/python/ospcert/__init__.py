"""Python front end for the ospcert C++ core.

Every command returns the same report dictionary the CLI writes with --out.
"""

import json

from . import _core
from ._core import IntegrityError, MathError, ResourceError, UsageError, normal_order, rank_rational, rank_sqrt2

__all__ = [
    "generate",
    "dim_check",
    "rank",
    "verify_certs",
    "verify_b01",
    "verify_bmn",
    "normal_order",
    "rank_rational",
    "rank_sqrt2",
    "UsageError",
    "MathError",
    "IntegrityError",
    "ResourceError",
]


def _as_list(n):
    return [n] if isinstance(n, int) else list(n)


def generate(m, n, data_dir="", gamma_frame="orthonormal"):
    return json.loads(_core.generate(m, _as_list(n), data_dir, gamma_frame))


def dim_check(n):
    return json.loads(_core.dim_check(_as_list(n)))


def rank(n, m=0, sector=None, jobs=1, data_dir=""):
    return json.loads(_core.rank(m, _as_list(n), sector, jobs, data_dir))


def verify_certs(n, jobs=1, data_dir=""):
    return json.loads(_core.verify_certs(_as_list(n), jobs, data_dir))


def verify_b01(data_dir=""):
    return json.loads(_core.verify_b01(data_dir))


def verify_bmn(targets, row_cap=1_000_000, jobs=1, data_dir=""):
    return json.loads(_core.verify_bmn([tuple(t) for t in targets], row_cap, jobs, data_dir))
