from fractions import Fraction
from itertools import combinations

import pytest

import spacelab


def brute_count(in_p, n):
    total = 0
    for r in range(n + 1):
        for ones in combinations(range(n), r):
            if all(in_p(b - a) for a, b in combinations(ones, 2)):
                total += 1
    return total


def test_count_examples():
    even = spacelab.build_pset(spacelab.PSetSpec.multiples(2), 20)
    assert spacelab.count_words(even, 4, mode="naive") == 7
    assert spacelab.count_words(even, 20) == 2047
    odd = spacelab.view({"type": "complement", "of": {"type": "multiples", "k": 2}}, 10)
    assert spacelab.count_words(odd, 4) == 9


def test_count_matches_brute_force():
    spec = spacelab.PSetSpec.union(
        [spacelab.PSetSpec.squares(), spacelab.PSetSpec.explicit([2, 3])])
    view = spacelab.build_pset(spec, 14)
    for n in range(0, 13):
        assert spacelab.count_words(view, n) == brute_count(spec.contains, n)


def test_big_counts_are_python_ints():
    view = spacelab.build_pset(spacelab.PSetSpec.multiples(1), 140)
    assert spacelab.count_words(view, 130) == 2 ** 130


def test_view_and_density():
    view = spacelab.view('{"type": "squares"}', 100)
    assert 49 in view and 50 not in view
    assert len(view) == 10
    rep = spacelab.density_report(view, 50, [10])
    assert rep["prefix_densities"][-1] == Fraction(1, 10)
    with pytest.raises(IndexError):
        view.member(101)


def test_structure_search():
    sq = spacelab.build_pset(spacelab.PSetSpec.squares(), 100)
    res = spacelab.find_delta_chain(sq, 3, 100)
    assert res["status"] == "found"
    assert res["witness"]["S"] == [1, 10, 26]
    assert spacelab.verify_witness(res["witness"], sq)
    even = spacelab.build_pset(spacelab.PSetSpec.multiples(2), 10)
    assert spacelab.find_ip_generator(even, 2, 10)["witness"]["A"] == [2, 4]
    assert spacelab.syndetic_gap(sq) == (18, 0)
    assert spacelab.thick_run(even) == 1


def test_budget_and_validation_errors():
    view = spacelab.view({"type": "complement", "of": {"type": "squares"}}, 64)
    with pytest.raises(spacelab.BudgetExhaustedError):
        spacelab.count_words(view, 64, budget=100)
    with pytest.raises(ValueError):
        spacelab.PSetSpec({"type": "bogus"})
    with pytest.raises(ValueError):
        spacelab.run_experiment("no-such-experiment")


def test_language_and_dynamics():
    c3 = spacelab.view({"type": "complement", "of": {"type": "multiples", "k": 3}}, 50)
    assert spacelab.max_ones(c3, 10) == (3, [0, 1, 2])
    assert spacelab.greedy_point(c3, 50) == [0, 1, 2]
    assert spacelab.is_admissible("10100", spacelab.view({"type": "multiples", "k": 2}, 10))
    m3 = spacelab.view({"type": "multiples", "k": 3}, 30)
    assert spacelab.periodic_point_check(m3, 3, 30) == list(range(0, 30, 3))
    assert spacelab.periodic_point_check(m3, 2, 30) is None
    nat = spacelab.view({"type": "multiples", "k": 1}, 64)
    fs = spacelab.f_statistic("1" + "0" * 39, "0" * 40, nat, 0, [10])
    assert fs == [(10, Fraction(9, 10))]
    assert spacelab.proximal_probe([0, 1, 2], [1, 2, 3], c3, 20, horizon=40) == 4


def test_experiments():
    assert "delta-kills-density" in spacelab.experiment_ids()
    rep = spacelab.run_experiment("delta-kills-density", {"k": 3, "n_max": 24})
    assert rep["verdict"] == "consistent"
    assert rep["observations"]["omega_at_n_max"] == 3
    assert "complement_squares" in spacelab.corpus_names()
    assert spacelab.default_params("high-density-trivial-dynamics")["k"] == 10
