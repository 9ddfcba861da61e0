"""Seeded random joint distributions for the randomized suites."""

from __future__ import annotations

import math
import random
from itertools import product
from typing import Sequence

from .distribution import JointDistribution, VariableSet
from .lattice import default_names

_MASK64 = (1 << 64) - 1


def derive_trial_seed(master_seed: int, index: int) -> int:
    """Deterministic per-trial seed so parallel trial order never matters."""
    mixed = (master_seed * 0x9E3779B97F4A7C15 + (index + 1) * 0xBF58476D1CE4E5B9) & _MASK64
    mixed ^= mixed >> 31
    return mixed


def trial_rng(master_seed: int, index: int) -> random.Random:
    return random.Random(derive_trial_seed(master_seed, index))


def random_distribution(
    rng: random.Random,
    cardinalities: Sequence[int],
    names: Sequence[str] | None = None,
    sparsity: float = 0.5,
) -> JointDistribution:
    """Uniform-simplex masses over a randomly masked outcome grid.

    Each grid cell is kept with probability 1 - sparsity (redrawn until at
    least one cell survives); kept cells get independent exponential
    weights, normalized to sum to one.  Covers both dense and degenerate
    supports.
    """
    cards = tuple(int(c) for c in cardinalities)
    if names is None:
        names = default_names(len(cards))
    variables = VariableSet(tuple(names), cards)
    grid = list(product(*(range(c) for c in cards)))
    chosen: list[tuple[int, ...]] = []
    while not chosen:
        chosen = [cell for cell in grid if rng.random() >= sparsity]
    weights = [rng.expovariate(1.0) for _ in chosen]
    total = math.fsum(weights)
    pmf = {cell: w / total for cell, w in zip(chosen, weights)}
    return JointDistribution(variables, pmf)
