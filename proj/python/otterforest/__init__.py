"""Exact tree and forest enumeration, Otter constants and forest limit laws."""

from fractions import Fraction

from . import _core
from ._core import CertificationError, ConsistencyError, ParseError, PreconditionError

__all__ = [
    "CertificationError",
    "ConsistencyError",
    "ParseError",
    "PreconditionError",
    "cli",
    "component_law",
    "constants",
    "multiset_transform",
    "run_criterion",
    "sample_profiles",
    "sequence",
]


def sequence(kind, n):
    """Dict index -> int for kind in rooted, free, forest, partition."""
    offset, values = _core.sequence(kind, n)
    return {offset + i: int(v) for i, v in enumerate(values)}


def multiset_transform(weights, n):
    """Coefficients F_0..F_n of prod_k (1 - x^k)^(-w_k); weights[0] is w_1."""
    return [int(v) for v in _core.multiset_transform([str(int(w)) for w in weights], n)]


def constants(digits=30, truncation=5000):
    """Dict name -> (value, radius) as strings."""
    return _core.constants(digits, truncation)


def component_law(n):
    """Exact law of the number of trees in a uniform forest on n vertices."""
    return {k: Fraction(p) for k, p in _core.component_law(n)}


def sample_profiles(n, count, seed=0):
    """List of size profiles, each a list of (size, count) pairs in decreasing size."""
    return [[tuple(p) for p in prof] for prof in _core.sample_profiles(n, count, seed)]


def run_criterion(id, digits=30, truncation=5000, seed=0):
    """(passed, report line) for one acceptance criterion."""
    return _core.run_criterion(id, digits, truncation, seed)


def cli(*args):
    """Runs the command line in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
