"""Valuations on the antichain lattice and their Möbius inversion.

A valuation assigns each lattice node the least surprisal among its
sources at one realization (or an expectation of that).  Inversion turns
node values into per-node increments: the recursive form subtracts the
increments of everything strictly below, the closed form subtracts the
largest value among the covered nodes.  The two coincide for pointwise
valuations; the recursive form is kept as the oracle and the closed form
is the production path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .distribution import JointDistribution, ZeroMass
from .lattice import Antichain, RedundancyLattice, enumerate_antichains
from .measures import (
    cond_intersection_content,
    cond_mutual_content,
    cond_surprisal,
    cond_synergy_content,
    cond_unique_content,
    cond_union_content,
    intersection_content,
    mutual_content,
    surprisal,
    synergy_content,
    unique_content,
    union_content,
)


@dataclass
class LatticeValuation:
    """Per-node values h(alpha) for one realization, or their expectations."""

    lattice: RedundancyLattice
    values: dict[Antichain, float]


@dataclass
class PartialValuation:
    """Per-node increments whose down-set sums reproduce the node values."""

    lattice: RedundancyLattice
    partials: dict[Antichain, float]

    def total(self) -> float:
        return math.fsum(self.partials[node] for node in self.lattice.topo_order())


def redundancy_value(
    d: JointDistribution,
    alpha: Antichain,
    realization: Sequence[int],
    given: Iterable[int] | None = None,
) -> float:
    """Least (conditional) surprisal among the antichain's sources."""
    if given is None:
        return min(surprisal(d, src, realization) for src in alpha.sources)
    return min(cond_surprisal(d, src, given, realization) for src in alpha.sources)


def lattice_valuation(
    d: JointDistribution,
    lattice: RedundancyLattice,
    realization: Sequence[int],
    variables: Sequence[int] | None = None,
    given: Iterable[int] | None = None,
) -> LatticeValuation:
    """Value every lattice node at one realization.

    `variables` maps lattice positions to distribution variable indices;
    by default the lattice spans all variables in order.
    """
    if variables is None:
        variables = tuple(range(d.variables.n))
    else:
        variables = tuple(variables)
    if len(variables) != lattice.n:
        raise ValueError(
            f"lattice spans {lattice.n} variables but {len(variables)} were selected"
        )
    cache: dict[tuple[int, ...], float] = {}

    def h(src: tuple[int, ...]) -> float:
        got = cache.get(src)
        if got is None:
            mapped = [variables[i] for i in src]
            if given is None:
                got = surprisal(d, mapped, realization)
            else:
                got = cond_surprisal(d, mapped, given, realization)
            cache[src] = got
        return got

    values = {node: min(h(src) for src in node.sources) for node in lattice.nodes}
    return LatticeValuation(lattice, values)


def mobius_recursive(valuation: LatticeValuation) -> PartialValuation:
    """Bottom-up inversion: node value minus the strictly-lower increments."""
    lattice = valuation.lattice
    partials: dict[Antichain, float] = {}
    for node in lattice.topo_order():
        below = valuation.lattice.down_set(node)
        acc = math.fsum(partials[b] for b in below if b != node)
        partials[node] = valuation.values[node] - acc
    return PartialValuation(lattice, partials)


def mobius_closed_form(valuation: LatticeValuation) -> PartialValuation:
    """Closed-form inversion: node value minus the max over covered nodes.

    Valid for per-realization valuations, where node values inherit the
    total order of the underlying surprisals.
    """
    lattice = valuation.lattice
    partials: dict[Antichain, float] = {}
    for node in lattice.topo_order():
        covered = lattice.covered_by(node)
        value = valuation.values[node]
        if covered:
            partials[node] = value - max(valuation.values[c] for c in covered)
        else:
            partials[node] = value
    return PartialValuation(lattice, partials)


def _selected(d: JointDistribution, variables: Sequence[int] | None) -> tuple[int, ...]:
    if variables is None:
        return tuple(range(d.variables.n))
    sel = tuple(int(i) for i in variables)
    seen = d.variables.check_source(sel)
    if len(sel) != len(seen):
        raise ValueError("selected variables must be distinct")
    return sel


def decompose_pointwise(
    d: JointDistribution,
    realization: Sequence[int],
    variables: Sequence[int] | None = None,
    allow_large: bool = False,
) -> PartialValuation:
    """Per-node increments at one support realization (closed-form path)."""
    sel = _selected(d, variables)
    if d.marginal_mass(sel, realization) <= 0.0:
        raise ZeroMass("realization outside the support of the selected variables")
    lattice = enumerate_antichains(len(sel), allow_large)
    valuation = lattice_valuation(d, lattice, realization, variables=sel)
    return mobius_closed_form(valuation)


def decompose_expected(
    d: JointDistribution,
    variables: Sequence[int] | None = None,
    allow_large: bool = False,
) -> PartialValuation:
    """Support-weighted expectation of the pointwise increments."""
    sel = _selected(d, variables)
    lattice = enumerate_antichains(len(sel), allow_large)
    acc: dict[Antichain, list[float]] = {node: [] for node in lattice.nodes}
    for r, p in d.support():
        valuation = lattice_valuation(d, lattice, r, variables=sel)
        pointwise = mobius_closed_form(valuation)
        for node, value in pointwise.partials.items():
            acc[node].append(p * value)
    return PartialValuation(lattice, {node: math.fsum(acc[node]) for node in lattice.nodes})


def expected_valuation(
    d: JointDistribution,
    variables: Sequence[int] | None = None,
    allow_large: bool = False,
) -> LatticeValuation:
    """Support-weighted expectation of the per-node values."""
    sel = _selected(d, variables)
    lattice = enumerate_antichains(len(sel), allow_large)
    acc: dict[Antichain, list[float]] = {node: [] for node in lattice.nodes}
    for r, p in d.support():
        valuation = lattice_valuation(d, lattice, r, variables=sel)
        for node, value in valuation.values.items():
            acc[node].append(p * value)
    return LatticeValuation(lattice, {node: math.fsum(acc[node]) for node in lattice.nodes})


# The 18 nodes of the three-variable lattice, bottom-up, each with the
# expression (in the surface grammar) that its increment computes.
_TRIVARIATE_TERMS: tuple[tuple[tuple[tuple[int, ...], ...], str], ...] = (
    (((0,), (1,), (2,)), "{x} cap {y} cap {z}"),
    (((0,), (1,)), "({x} cap {y}) minus {z}"),
    (((0,), (2,)), "({x} cap {z}) minus {y}"),
    (((1,), (2,)), "({y} cap {z}) minus {x}"),
    (((0,), (1, 2)), "{x} cap ({y} oplus {z})"),
    (((1,), (0, 2)), "{y} cap ({x} oplus {z})"),
    (((2,), (0, 1)), "{z} cap ({x} oplus {y})"),
    (((0,),), "{x} minus ({y},{z})"),
    (((1,),), "{y} minus ({x},{z})"),
    (((2,),), "{z} minus ({x},{y})"),
    (((0, 1), (0, 2), (1, 2)), "({x} oplus {y}) cap ({x} oplus {z}) cap ({y} oplus {z})"),
    (((0, 1), (0, 2)), "(({x} oplus {y}) cap ({x} oplus {z})) minus ({y},{z})"),
    (((0, 1), (1, 2)), "(({x} oplus {y}) cap ({y} oplus {z})) minus ({x},{z})"),
    (((0, 2), (1, 2)), "(({x} oplus {z}) cap ({y} oplus {z})) minus ({x},{y})"),
    (((0, 1),), "({x} oplus {y}) minus (({x},{z}) cup ({y},{z}))"),
    (((0, 2),), "({x} oplus {z}) minus (({x},{y}) cup ({y},{z}))"),
    (((1, 2),), "({y} oplus {z}) minus (({x},{y}) cup ({x},{z}))"),
    (((0, 1, 2),), "({x},{y}) oplus ({x},{z}) oplus ({y},{z})"),
)


def trivariate_report(d: JointDistribution, realization: Sequence[int]) -> dict[str, float]:
    """The 18 named increments of a three-variable pointwise decomposition.

    The names use the expression grammar with the distribution's own
    variable names; each value is the increment of the matching lattice
    node, and the values sum to the joint surprisal.
    """
    if d.variables.n != 3:
        raise ValueError("trivariate report needs exactly three variables")
    partials = decompose_pointwise(d, realization).partials
    x, y, z = d.variables.names
    report: dict[str, float] = {}
    for sources, template in _TRIVARIATE_TERMS:
        node = Antichain.normalize(sources)
        report[template.format(x=x, y=y, z=z)] = partials[node]
    return report


@dataclass(frozen=True)
class MutualDecomposition:
    """The five shared-information readings of a mutual information content.

    Every field is an unconditioned value minus its conditioned-on-target
    counterpart; all of them are signed.  `joint` is the mutual content of
    the combined predictors and equals the sum of intersection, the two
    uniques and synergy; `coinformation` equals intersection minus synergy.
    """

    union: float
    unique_first: float
    unique_second: float
    intersection: float
    synergy: float
    joint: float
    coinformation: float

    def parts_sum(self) -> float:
        return math.fsum(
            (self.intersection, self.unique_first, self.unique_second, self.synergy)
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "union": self.union,
            "unique_first": self.unique_first,
            "unique_second": self.unique_second,
            "intersection": self.intersection,
            "synergy": self.synergy,
            "joint": self.joint,
            "coinformation": self.coinformation,
        }


def _mi_point(d, first, second, target, realization) -> MutualDecomposition:
    pair = [first, second]
    return MutualDecomposition(
        union=union_content(d, pair, realization)
        - cond_union_content(d, pair, target, realization),
        unique_first=unique_content(d, first, second, realization)
        - cond_unique_content(d, first, second, target, realization),
        unique_second=unique_content(d, second, first, realization)
        - cond_unique_content(d, second, first, target, realization),
        intersection=intersection_content(d, pair, realization)
        - cond_intersection_content(d, pair, target, realization),
        synergy=synergy_content(d, pair, realization)
        - cond_synergy_content(d, pair, target, realization),
        joint=surprisal(d, frozenset(first) | frozenset(second), realization)
        - cond_surprisal(d, frozenset(first) | frozenset(second), target, realization),
        coinformation=mutual_content(d, first, second, realization)
        - cond_mutual_content(d, first, second, target, realization),
    )


def mi_decompose(
    d: JointDistribution,
    first,
    second,
    target,
    realization: Sequence[int] | None = None,
) -> MutualDecomposition:
    """Decompose what two predictor sources say about a target source.

    With a realization this is pointwise; without one, every component is
    averaged over the support.
    """
    a = d.variables.check_source(first)
    b = d.variables.check_source(second)
    t = d.variables.check_source(target)
    if a & b or a & t or b & t:
        raise ValueError("predictor and target sources must be pairwise disjoint")
    if realization is not None:
        return _mi_point(d, a, b, t, realization)
    fields = ("union", "unique_first", "unique_second", "intersection",
              "synergy", "joint", "coinformation")
    acc: dict[str, list[float]] = {name: [] for name in fields}
    for r, p in d.support():
        point = _mi_point(d, a, b, t, r)
        for name in fields:
            acc[name].append(p * getattr(point, name))
    return MutualDecomposition(**{name: math.fsum(acc[name]) for name in fields})


def decomposition_rows(
    valuation: LatticeValuation,
    partials: PartialValuation,
    names: Sequence[str],
) -> list[tuple[str, float, float]]:
    """(label, value, increment) per node, bottom-up, for report rendering."""
    return [
        (node.label(names), valuation.values[node], partials.partials[node])
        for node in valuation.lattice.topo_order()
    ]
