import math

import pytest

from infoshare import (
    Antichain,
    ZeroMass,
    cond_mutual_content,
    decompose_expected,
    decompose_pointwise,
    decomposition_rows,
    entropy,
    enumerate_antichains,
    expected,
    expected_valuation,
    intersection_content,
    lattice_valuation,
    mi_decompose,
    mobius_closed_form,
    mobius_recursive,
    mutual_content,
    precedes,
    redundancy_value,
    surprisal,
    synergy_content,
    trivariate_report,
    unique_content,
)
from infoshare.sampling import random_distribution, trial_rng

from helpers import copy2, copy3, indep3, point3, unif2, xor3

A = Antichain.normalize
TOL = 1e-9


def test_redundancy_value_examples():
    d = xor3()
    for r, _ in d.support():
        assert redundancy_value(d, A([(0,), (1,)]), r) == pytest.approx(1.0)
        assert redundancy_value(d, A([(0, 1), (0, 2), (1, 2)]), r) == pytest.approx(2.0)
        top = A([(0, 1, 2)])
        assert redundancy_value(d, top, r) == surprisal(d, [0, 1, 2], r)


def test_redundancy_value_zero_mass():
    d = copy2()
    with pytest.raises(ZeroMass):
        redundancy_value(d, A([(0, 1)]), (0, 1))


def _partials_by_label(pv, names):
    return {node.label(names): value for node, value in pv.partials.items()}


def test_mobius_recursive_copy_pair():
    d = copy2()
    lattice = enumerate_antichains(2)
    for r, _ in d.support():
        valuation = lattice_valuation(d, lattice, r)
        partials = mobius_recursive(valuation)
        got = _partials_by_label(partials, d.variables.names)
        assert got == {
            "{X}{Y}": pytest.approx(1.0),
            "{X}": pytest.approx(0.0),
            "{Y}": pytest.approx(0.0),
            "{X,Y}": pytest.approx(0.0),
        }


def test_mobius_recursive_independent_pair():
    d = unif2()
    lattice = enumerate_antichains(2)
    valuation = lattice_valuation(d, lattice, (0, 0))
    got = _partials_by_label(mobius_recursive(valuation), d.variables.names)
    assert got == {
        "{X}{Y}": pytest.approx(1.0),
        "{X}": pytest.approx(0.0),
        "{Y}": pytest.approx(0.0),
        "{X,Y}": pytest.approx(1.0),
    }


def test_mobius_single_node_lattice():
    lattice = enumerate_antichains(1)
    d = random_distribution(trial_rng(5, 1), [3], sparsity=0.0)
    valuation = lattice_valuation(d, lattice, d.support()[0][0])
    only = lattice.nodes[0]
    assert mobius_recursive(valuation).partials[only] == valuation.values[only]
    assert mobius_closed_form(valuation).partials[only] == valuation.values[only]


def test_closed_form_matches_recursive_on_fixtures():
    for d in (copy2(), unif2(), xor3()):
        lattice = enumerate_antichains(d.variables.n)
        for r, _ in d.support():
            valuation = lattice_valuation(d, lattice, r)
            rec = mobius_recursive(valuation)
            closed = mobius_closed_form(valuation)
            for node in lattice.nodes:
                assert closed.partials[node] == pytest.approx(rec.partials[node], abs=TOL)


def test_closed_form_bottom_and_xor_top():
    d = xor3()
    lattice = enumerate_antichains(3)
    for r, _ in d.support():
        valuation = lattice_valuation(d, lattice, r)
        closed = mobius_closed_form(valuation)
        assert closed.partials[lattice.bottom] == valuation.values[lattice.bottom]
        assert closed.partials[lattice.top] == pytest.approx(0.0)


@pytest.mark.parametrize("trial", range(60))
def test_mobius_randomized(trial):
    rng = trial_rng(31, trial)
    n = 2 if trial % 2 == 0 else 3
    d = random_distribution(rng, [rng.randint(2, 3)] * 2 if n == 2 else [2, 2, 2])
    lattice = enumerate_antichains(n)
    for r, _ in d.support():
        valuation = lattice_valuation(d, lattice, r)
        # valuation is monotone along the order
        for a in lattice.nodes:
            for b in lattice.nodes:
                if precedes(a, b):
                    assert valuation.values[a] <= valuation.values[b] + TOL
        rec = mobius_recursive(valuation)
        closed = mobius_closed_form(valuation)
        for node in lattice.nodes:
            assert abs(rec.partials[node] - closed.partials[node]) <= TOL
            assert closed.partials[node] >= -TOL
        assert abs(closed.total() - valuation.values[lattice.top]) <= TOL
        # reconstruction: down-set sums reproduce the node values
        for node in lattice.nodes:
            acc = math.fsum(rec.partials[b] for b in lattice.down_set(node))
            assert abs(acc - valuation.values[node]) <= TOL


def test_decompose_pointwise_copy():
    d = copy2()
    pv = decompose_pointwise(d, (0, 0))
    got = _partials_by_label(pv, d.variables.names)
    assert got["{X}{Y}"] == pytest.approx(1.0)
    assert pv.total() == pytest.approx(1.0)


def test_decompose_pointwise_xor3():
    d = xor3()
    for r, _ in d.support():
        pv = decompose_pointwise(d, r)
        nonzero = {
            node.label(d.variables.names): v
            for node, v in pv.partials.items()
            if abs(v) > 1e-12
        }
        assert nonzero == {
            "{X}{Y}{Z}": pytest.approx(1.0),
            "{X,Y}{X,Z}{Y,Z}": pytest.approx(1.0),
        }
        assert pv.total() == pytest.approx(2.0)


def test_decompose_pointwise_point_mass():
    pv = decompose_pointwise(point3(), (0, 0, 0))
    assert all(v == pytest.approx(0.0) for v in pv.partials.values())


def test_decompose_pointwise_outside_support():
    with pytest.raises(ZeroMass):
        decompose_pointwise(xor3(), (0, 0, 1))


def test_decompose_pointwise_variable_subset():
    d = xor3()
    pv = decompose_pointwise(d, (0, 1, 1), variables=[0, 1])
    assert pv.lattice.n == 2
    assert pv.total() == pytest.approx(surprisal(d, [0, 1], (0, 1, 1)))


def test_decompose_expected_variable_subset():
    for trial in range(10):
        rng = trial_rng(45, trial)
        d = random_distribution(rng, [2, 2, 2])
        pv = decompose_expected(d, variables=[0, 2])
        assert pv.lattice.n == 2
        assert pv.total() == pytest.approx(entropy(d, [0, 2]), abs=TOL)


def test_top_increment_is_least_complementary_conditional():
    # The top node's increment measures what only the full joint tells you
    # beyond all pairwise observers: the least single-given-pair surprisal.
    from infoshare import cond_surprisal

    lattice = enumerate_antichains(3)
    for trial in range(30):
        rng = trial_rng(43, trial)
        d = random_distribution(rng, [2, 2, 2])
        for r, _ in d.support():
            pv = decompose_pointwise(d, r)
            direct = min(
                cond_surprisal(d, [2], [0, 1], r),
                cond_surprisal(d, [1], [0, 2], r),
                cond_surprisal(d, [0], [1, 2], r),
            )
            assert abs(pv.partials[lattice.top] - direct) <= TOL


def test_mobius_four_variables():
    # The inversion machinery is not n<=3 specific.
    lattice = enumerate_antichains(4)
    for trial in range(5):
        rng = trial_rng(47, trial)
        d = random_distribution(rng, [2, 2, 2, 2])
        for r, _ in d.support()[:4]:
            valuation = lattice_valuation(d, lattice, r)
            closed = mobius_closed_form(valuation)
            recursive = mobius_recursive(valuation)
            for node in lattice.nodes:
                assert abs(closed.partials[node] - recursive.partials[node]) <= TOL
                assert closed.partials[node] >= -TOL
            assert abs(closed.total() - valuation.values[lattice.top]) <= TOL


def test_decompose_expected_fixtures():
    copy = decompose_expected(copy2())
    got = _partials_by_label(copy, ("X", "Y"))
    assert got["{X}{Y}"] == pytest.approx(1.0)
    assert got["{X}"] == pytest.approx(0.0)
    assert got["{X,Y}"] == pytest.approx(0.0)

    indep = decompose_expected(unif2())
    got = _partials_by_label(indep, ("X", "Y"))
    assert got["{X}{Y}"] == pytest.approx(1.0)
    assert got["{X,Y}"] == pytest.approx(1.0)
    assert indep.total() == pytest.approx(2.0)

    assert decompose_expected(xor3()).total() == pytest.approx(2.0)


def test_expected_partials_match_inverted_expected_valuation():
    # Expectation and recursive inversion commute (the inversion is linear).
    for trial in range(30):
        rng = trial_rng(41, trial)
        d = random_distribution(rng, [2, 2, 2])
        lattice = enumerate_antichains(3)
        via_pointwise = decompose_expected(d)
        via_valuation = mobius_recursive(expected_valuation(d))
        for node in lattice.nodes:
            assert abs(
                via_pointwise.partials[node] - via_valuation.partials[node]
            ) <= TOL
        assert abs(via_pointwise.total() - entropy(d, [0, 1, 2])) <= TOL


def test_pair_partials_match_named_measures():
    # The four n=2 increments are the intersection, unique, and synergy contents.
    for trial in range(40):
        rng = trial_rng(51, trial)
        d = random_distribution(rng, [rng.randint(2, 3), rng.randint(2, 3)])
        for r, _ in d.support():
            pv = decompose_pointwise(d, r)
            assert pv.partials[A([(0,), (1,)])] == intersection_content(d, [[0], [1]], r)
            assert pv.partials[A([(0,)])] == unique_content(d, [0], [1], r)
            assert pv.partials[A([(1,)])] == unique_content(d, [1], [0], r)
            assert pv.partials[A([(0, 1)])] == synergy_content(d, [[0], [1]], r)


def test_trivariate_report_xor3():
    d = xor3()
    for r, _ in d.support():
        report = trivariate_report(d, r)
        assert len(report) == 18
        assert report["X cap Y cap Z"] == pytest.approx(1.0)
        assert report["(X,Y) oplus (X,Z) oplus (Y,Z)"] == pytest.approx(0.0)
        assert math.fsum(report.values()) == pytest.approx(2.0, abs=TOL)


def test_trivariate_report_independent_bits():
    d = indep3()
    report = trivariate_report(d, (0, 0, 0))
    assert report["X cap Y cap Z"] == pytest.approx(1.0)
    assert report["(X,Y) oplus (X,Z) oplus (Y,Z)"] == pytest.approx(1.0)
    assert math.fsum(report.values()) == pytest.approx(3.0, abs=TOL)


def test_trivariate_report_point_mass():
    report = trivariate_report(point3(), (0, 0, 0))
    assert all(v == pytest.approx(0.0) for v in report.values())


def test_trivariate_report_matches_partials():
    for trial in range(20):
        rng = trial_rng(61, trial)
        d = random_distribution(rng, [2, 2, 2])
        for r, _ in d.support():
            report = trivariate_report(d, r)
            pv = decompose_pointwise(d, r)
            assert math.fsum(report.values()) == pytest.approx(
                surprisal(d, [0, 1, 2], r), abs=TOL
            )
            assert sorted(report.values()) == pytest.approx(
                sorted(pv.partials.values()), abs=TOL
            )


def test_trivariate_report_needs_three_variables():
    with pytest.raises(ValueError):
        trivariate_report(copy2(), (0, 0))


def test_mi_decompose_xor3_expected():
    got = mi_decompose(xor3(), [0], [1], [2])
    assert got.intersection == pytest.approx(0.0, abs=TOL)
    assert got.synergy == pytest.approx(1.0, abs=TOL)
    assert got.unique_first == pytest.approx(0.0, abs=TOL)
    assert got.unique_second == pytest.approx(0.0, abs=TOL)
    assert got.joint == pytest.approx(1.0, abs=TOL)
    assert got.coinformation == pytest.approx(-1.0, abs=TOL)


def test_mi_decompose_copy3_expected():
    got = mi_decompose(copy3(), [0], [1], [2])
    assert got.intersection == pytest.approx(1.0, abs=TOL)
    assert got.synergy == pytest.approx(0.0, abs=TOL)


def test_mi_decompose_independent_target():
    # Z independent of (X, Y): conditioning changes nothing.
    pmf = {}
    for (x, y), p in unif2().support():
        for z in range(2):
            pmf[(x, y, z)] = p * 0.5
    from helpers import dist

    d = dist(("X", "Y", "Z"), (2, 2, 2), pmf)
    got = mi_decompose(d, [0], [1], [2])
    for value in got.as_dict().values():
        assert value == pytest.approx(0.0, abs=TOL)


def test_mi_decompose_identities_randomized():
    for trial in range(40):
        rng = trial_rng(71, trial)
        d = random_distribution(rng, [2, 2, 2])
        exp = mi_decompose(d, [0], [1], [2])
        assert abs(exp.joint - exp.parts_sum()) <= TOL
        assert abs(exp.coinformation - (exp.intersection - exp.synergy)) <= TOL
        # i(x;y;z) from the chain-rule side
        i_xy = expected(d, lambda r: mutual_content(d, [0], [1], r))
        i_xy_given_z = expected(d, lambda r: cond_mutual_content(d, [0], [1], [2], r))
        assert abs(exp.coinformation - (i_xy - i_xy_given_z)) <= TOL
        for r, _ in d.support():
            point = mi_decompose(d, [0], [1], [2], r)
            assert abs(point.joint - point.parts_sum()) <= TOL
            assert abs(
                point.coinformation - (point.intersection - point.synergy)
            ) <= TOL


def test_mi_decompose_rejects_overlap():
    with pytest.raises(ValueError, match="disjoint"):
        mi_decompose(xor3(), [0], [0], [2])


def test_decomposition_rows_order_and_shape():
    d = xor3()
    lattice = enumerate_antichains(3)
    valuation = lattice_valuation(d, lattice, (0, 0, 0))
    partials = mobius_closed_form(valuation)
    rows = decomposition_rows(valuation, partials, d.variables.names)
    assert len(rows) == 18
    assert rows[0][0] == "{X}{Y}{Z}"
    assert rows[-1][0] == "{X,Y,Z}"
    assert rows[0][1] == pytest.approx(1.0)
