"""Fixed distributions and brute-force oracles shared by the test modules."""

from infoshare import JointDistribution, VariableSet


def dist(names, cards, pmf):
    return JointDistribution(VariableSet(tuple(names), tuple(cards)), pmf)


def xor3():
    """X, Y independent fair bits, Z their parity."""
    return dist(
        ("X", "Y", "Z"), (2, 2, 2),
        {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 1): 0.25, (1, 1, 0): 0.25},
    )


def copy2():
    """Y is a copy of a fair bit X."""
    return dist(("X", "Y"), (2, 2), {(0, 0): 0.5, (1, 1): 0.5})


def copy3():
    """One fair bit copied to three variables."""
    return dist(("X", "Y", "Z"), (2, 2, 2), {(0, 0, 0): 0.5, (1, 1, 1): 0.5})


def unif2():
    """Two independent fair bits."""
    return dist(
        ("X", "Y"), (2, 2),
        {(0, 0): 0.25, (0, 1): 0.25, (1, 0): 0.25, (1, 1): 0.25},
    )


def indep3():
    """Three independent fair bits."""
    pmf = {}
    for a in range(2):
        for b in range(2):
            for c in range(2):
                pmf[(a, b, c)] = 0.125
    return dist(("X", "Y", "Z"), (2, 2, 2), pmf)


def biased1():
    """Single bit with p(0) = 3/4."""
    return dist(("X",), (2,), {(0,): 0.75, (1,): 0.25})


def biased2():
    """Two independent 3/4-bits."""
    pmf = {}
    for a, pa in ((0, 0.75), (1, 0.25)):
        for b, pb in ((0, 0.75), (1, 0.25)):
            pmf[(a, b)] = pa * pb
    return dist(("X", "Y"), (2, 2), pmf)


def anti():
    """Anticorrelated pair: diagonal mass 0.1, off-diagonal 0.4."""
    return dist(
        ("X", "Y"), (2, 2),
        {(0, 0): 0.1, (0, 1): 0.4, (1, 0): 0.4, (1, 1): 0.1},
    )


def point3():
    """Deterministic point mass on (0, 0, 0)."""
    return dist(("X", "Y", "Z"), (2, 2, 2), {(0, 0, 0): 1.0})


def marginal_oracle(d, source, realization):
    """Brute-force marginal: sum the pmf rows agreeing on the source."""
    idx = sorted(source)
    return sum(p for r, p in d.support() if all(r[i] == realization[i] for i in idx))


XOR3_JSON = """
{"variables": [{"name": "X", "cardinality": 2},
               {"name": "Y", "cardinality": 2},
               {"name": "Z", "cardinality": 2}],
 "pmf": [{"assignment": [0, 0, 0], "p": 0.25},
         {"assignment": [0, 1, 1], "p": 0.25},
         {"assignment": [1, 0, 1], "p": 0.25},
         {"assignment": [1, 1, 0], "p": 0.25}]}
"""

UNIFORM2_JSON = """
{"variables": [{"name": "A", "cardinality": 2}, {"name": "B", "cardinality": 2}],
 "pmf": [{"assignment": [0, 0], "p": 0.25}, {"assignment": [0, 1], "p": 0.25},
         {"assignment": [1, 0], "p": 0.25}, {"assignment": [1, 1], "p": 0.25}]}
"""
