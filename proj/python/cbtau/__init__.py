"""Exact conformal blocks, Painleve tau functions and their checks.

Rationals cross the boundary as strings and come back as ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _cbtau
from ._cbtau import CbtauError, NonGenericPoint, q_stat

__all__ = [
    "CbtauError",
    "NonGenericPoint",
    "block_sum",
    "cli",
    "icb_rank1",
    "q_stat",
    "solve_c",
    "verify_ode",
]


def _point(point):
    return {k: str(Fraction(v)) for k, v in point.items()}


def cli(*args):
    """Run a command; returns (exit code, parsed JSON or None, stderr)."""
    code, out, err = _cbtau.run_cli([str(a) for a in args])
    return code, (json.loads(out) if out.strip() else None), err


def block_sum(kind, point, order, threads=1):
    return [Fraction(x) for x in _cbtau.block_sum(kind, _point(point), order, threads)]


def icb_rank1(theta, beta, theta_0, theta_t, order):
    args = [str(Fraction(x)) for x in (theta, beta, theta_0, theta_t)]
    return [Fraction(x) for x in _cbtau.icb_rank1(*args, order)]


def verify_ode(family, point, nmax=1, order=6, exact=True, digits=60, threads=1):
    ok, max_abs = _cbtau.verify_ode(family, _point(point), nmax, order, exact, digits, threads)
    return ok, float(max_abs)


def solve_c(order, seed=1, symmetric=True, threads=1):
    consistent, nullity, table = _cbtau.solve_c(order, seed, symmetric, threads)
    return consistent, nullity, {k: (None if v is None else Fraction(v)) for k, v in table.items()}
