"""Pointwise information measures and their expectations.

Every function here evaluates at a single realization of a joint
distribution; `expected` lifts any of them to the distribution level by
weighting over the support.  Surprisal-like quantities are non-negative,
mutual quantities are signed.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from .distribution import JointDistribution, ZeroMass

_LOG_BASE = 2.0


def set_log_base(base: float) -> None:
    """Select the information unit globally: 2 for bits, e for nats, 10 for hartleys."""
    global _LOG_BASE
    b = float(base)
    if not b > 1.0:
        raise ValueError("log base must be greater than 1")
    _LOG_BASE = b


def get_log_base() -> float:
    return _LOG_BASE


def _neg_log(p: float) -> float:
    if _LOG_BASE == 2.0:
        return -math.log2(p)
    if _LOG_BASE == 10.0:
        return -math.log10(p)
    return -math.log(p) / math.log(_LOG_BASE)


def surprisal(d: JointDistribution, source: Iterable[int], realization: Sequence[int]) -> float:
    """Negative log marginal mass of the source at the realization."""
    p = d.marginal_mass(source, realization)
    if p <= 0.0:
        raise ZeroMass("surprisal undefined: zero marginal mass")
    return _neg_log(p)


def cond_surprisal(
    d: JointDistribution,
    source: Iterable[int],
    given: Iterable[int],
    realization: Sequence[int],
) -> float:
    """Joint surprisal of source and conditioner, minus the conditioner's."""
    s = d.variables.check_source(source)
    g = d.variables.check_source(given)
    if s & g:
        raise ValueError("source and conditioning variables overlap")
    p_given = d.marginal_mass(g, realization)
    if p_given <= 0.0:
        raise ZeroMass("conditioning event has zero mass")
    p_joint = d.marginal_mass(s | g, realization)
    if p_joint <= 0.0:
        raise ZeroMass("surprisal undefined: zero joint mass")
    return _neg_log(p_joint) - _neg_log(p_given)


def _source_list(d: JointDistribution, sources) -> list[frozenset[int]]:
    out = [d.variables.check_source(s) for s in sources]
    if not out:
        raise ValueError("at least one source is required")
    return out


def union_content(d: JointDistribution, sources, realization) -> float:
    """Largest marginal surprisal over the given sources."""
    return max(surprisal(d, s, realization) for s in _source_list(d, sources))


def intersection_content(d: JointDistribution, sources, realization) -> float:
    """Smallest marginal surprisal over the given sources."""
    return min(surprisal(d, s, realization) for s in _source_list(d, sources))


def unique_content(d: JointDistribution, first, second, realization) -> float:
    """Surplus surprisal of the first source over the second, floored at zero."""
    return max(surprisal(d, first, realization) - surprisal(d, second, realization), 0.0)


def synergy_content(d: JointDistribution, sources, realization) -> float:
    """Joint surprisal of all involved variables minus the union content."""
    parts = _source_list(d, sources)
    whole: frozenset[int] = frozenset().union(*parts)
    return surprisal(d, whole, realization) - max(
        surprisal(d, s, realization) for s in parts
    )


def mutual_content(d: JointDistribution, first, second, realization) -> float:
    """Sum of the two marginal surprisals minus the joint surprisal; signed."""
    a = d.variables.check_source(first)
    b = d.variables.check_source(second)
    if a & b:
        raise ValueError("sources overlap")
    return (
        surprisal(d, a, realization)
        + surprisal(d, b, realization)
        - surprisal(d, a | b, realization)
    )


def cond_union_content(d, sources, given, realization) -> float:
    return max(cond_surprisal(d, s, given, realization) for s in _source_list(d, sources))


def cond_intersection_content(d, sources, given, realization) -> float:
    return min(cond_surprisal(d, s, given, realization) for s in _source_list(d, sources))


def cond_unique_content(d, first, second, given, realization) -> float:
    return max(
        cond_surprisal(d, first, given, realization)
        - cond_surprisal(d, second, given, realization),
        0.0,
    )


def cond_synergy_content(d, sources, given, realization) -> float:
    parts = _source_list(d, sources)
    whole: frozenset[int] = frozenset().union(*parts)
    return cond_surprisal(d, whole, given, realization) - max(
        cond_surprisal(d, s, given, realization) for s in parts
    )


def cond_mutual_content(d, first, second, given, realization) -> float:
    a = d.variables.check_source(first)
    b = d.variables.check_source(second)
    if a & b:
        raise ValueError("sources overlap")
    return (
        cond_surprisal(d, a, given, realization)
        + cond_surprisal(d, b, given, realization)
        - cond_surprisal(d, a | b, given, realization)
    )


def cond_pointwise(d, kind: str, sources, given, realization) -> float:
    """Conditional variant of a named pointwise measure.

    `kind` selects among union, intersection, unique, synergy and mutual;
    unique and mutual expect exactly two sources.
    """
    if kind in ("union", "intersection", "synergy"):
        fn = {
            "union": cond_union_content,
            "intersection": cond_intersection_content,
            "synergy": cond_synergy_content,
        }[kind]
        return fn(d, sources, given, realization)
    if kind in ("unique", "mutual"):
        pair = list(sources)
        if len(pair) != 2:
            raise ValueError(f"{kind} needs exactly two sources")
        fn = {"unique": cond_unique_content, "mutual": cond_mutual_content}[kind]
        return fn(d, pair[0], pair[1], given, realization)
    raise ValueError(f"unknown pointwise kind {kind!r}")


def expected(d: JointDistribution, fn: Callable[[tuple[int, ...]], float]) -> float:
    """Support-weighted mean of a per-realization functional."""
    return math.fsum(p * fn(r) for r, p in d.support())


def entropy(d: JointDistribution, source) -> float:
    """Expected surprisal of a source."""
    return expected(d, lambda r: surprisal(d, source, r))
