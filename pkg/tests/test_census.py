"""Census enumeration, sampling, and the choice generators."""

import itertools

import numpy as np
import pytest

from harmchoice import (
    ExplicitIndexPolicy,
    FixedIndexPolicy,
    LinearOrder,
    Menu,
    UniformIndexPolicy,
    construct_inconsistent,
    enumerate_census,
    generate_harmful,
    inconsistent_ground_set,
    is_inconsistent,
    rational_choice,
    sample_census,
    sp,
    total_choice_functions,
)
from harmchoice.errors import GroundSetTooLarge, IndexOutOfRange
from conftest import iter_all_choices


class TestTotals:
    def test_small_values(self):
        assert total_choice_functions(2) == 2
        assert total_choice_functions(3) == 24
        assert total_choice_functions(4) == 20736
        assert total_choice_functions(5) == 309_586_821_120


class TestEnumerate:
    def test_n2_all_rational(self):
        rep = enumerate_census(2)
        assert rep.total == 2
        assert rep.counts_by_sp == {0: 2, 1: 0}
        assert rep.strongly_harmful_fraction == 0.0

    def test_n3_distribution(self):
        rep = enumerate_census(3)
        assert rep.total == 24
        assert rep.counts_by_sp[0] == 6  # one rational choice per order
        # oracle: classify every choice individually
        expected = {0: 0, 1: 0, 2: 0}
        for c in iter_all_choices(3):
            expected[sp(c).sp] += 1
        assert rep.counts_by_sp == expected

    def test_n4_frozen_distribution(self):
        rep = enumerate_census(4)
        assert rep.total == 20736
        assert rep.counts_by_sp == {0: 24, 1: 2664, 2: 16464, 3: 1584}
        assert rep.strongly_harmful_fraction == 1584 / 20736

    def test_n4_spot_check_against_dispatcher(self):
        # the census classification path, checked per choice against sp()
        from harmchoice import ChoiceFunction, _kernels
        from harmchoice.census import _menu_layout, _sp_table

        rng = np.random.default_rng(61)
        masks, sizes, members = _menu_layout(4)
        table = _sp_table(4)
        for idx in sorted(set(int(x) for x in rng.integers(0, 20736, size=40))):
            picks_mat = _kernels.decode_choices(idx, idx + 1, sizes, members, masks, 4)
            pm = _kernels.pair_masks(picks_mat, 4)
            assert int(table[pm[0]]) == sp(ChoiceFunction(4, picks_mat[0])).sp

    def test_bounds(self):
        with pytest.raises(ValueError):
            enumerate_census(1)
        with pytest.raises(GroundSetTooLarge):
            enumerate_census(5)

    def test_worker_count_never_changes_counts(self):
        reports = [enumerate_census(4, workers=w).to_dict() for w in (1, 2, 8)]
        assert reports[0] == reports[1] == reports[2]


class TestSample:
    def test_deterministic_same_seed(self):
        a = sample_census(4, 5000, seed=99)
        b = sample_census(4, 5000, seed=99)
        assert a.to_dict() == b.to_dict()

    def test_deterministic_across_workers(self):
        reports = [sample_census(4, 20000, seed=7, workers=w).to_dict() for w in (1, 2, 8)]
        assert reports[0] == reports[1] == reports[2]

    def test_estimate_brackets_exact_n4(self):
        exact = enumerate_census(4).strongly_harmful_fraction
        est = sample_census(4, 100_000, seed=7)
        assert abs(est.strongly_harmful_fraction - exact) <= est.half_width

    def test_fraction_and_width_ranges(self):
        rep = sample_census(5, 2000, seed=3)
        assert 0.0 <= rep.strongly_harmful_fraction <= 1.0
        assert rep.half_width >= 0.0
        assert rep.samples == 2000 and rep.seed == 3

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            sample_census(1, 10, seed=0)
        with pytest.raises(ValueError):
            sample_census(3, 0, seed=0)


class TestGenerate:
    def test_fixed_zero_is_maximization(self):
        order = LinearOrder((2, 0, 1))
        assert generate_harmful(order, FixedIndexPolicy(0)) == rational_choice(order)

    def test_projects_table_from_explicit_map(self, projects_choice):
        ground, expected = projects_choice
        lab = lambda *ls: Menu(tuple(ground.index(x) for x in ls))
        mapping = {
            lab("h", "mh", "ml", "l"): 0,
            lab("h", "ml", "l"): 0,
            lab("h", "mh"): 0,
            lab("h", "l"): 0,
            lab("ml", "l"): 0,
            lab("h", "mh", "l"): 1,
            lab("h", "ml"): 1,
            lab("mh", "ml"): 1,
            lab("h", "mh", "ml"): 2,
            lab("mh", "ml", "l"): 2,
            lab("mh", "l"): 2,
        }
        got = generate_harmful(
            LinearOrder((0, 1, 2, 3)), ExplicitIndexPolicy.from_menus(mapping)
        )
        assert got == expected

    def test_donation_table_from_explicit_map(self, donation_choice):
        ground, expected = donation_choice
        mapping = {menu: 1 for menu, _ in expected.items()}
        mapping[Menu((0, 1, 2))] = 0
        got = generate_harmful(
            LinearOrder((0, 1, 2)), ExplicitIndexPolicy.from_menus(mapping)
        )
        assert got == expected

    def test_uniform_respects_cap(self):
        rng = np.random.default_rng(62)
        for trial in range(25):
            n = int(rng.integers(2, 6))
            order = LinearOrder(tuple(int(x) for x in rng.permutation(n)))
            cap = int(rng.integers(0, n))
            c = generate_harmful(order, UniformIndexPolicy(cap), seed=trial)
            assert sp(c).sp <= cap

    def test_uniform_deterministic(self):
        order = LinearOrder((0, 1, 2, 3))
        a = generate_harmful(order, UniformIndexPolicy(3), seed=8)
        b = generate_harmful(order, UniformIndexPolicy(3), seed=8)
        assert a == b

    def test_index_out_of_range(self):
        order = LinearOrder((0, 1, 2))
        with pytest.raises(IndexOutOfRange):
            generate_harmful(order, FixedIndexPolicy(3))
        with pytest.raises(IndexOutOfRange):
            generate_harmful(order, UniformIndexPolicy(-1))

    def test_explicit_foreign_menu_rejected(self):
        order = LinearOrder((0, 1))
        policy = ExplicitIndexPolicy.from_menus({Menu((0, 2)): 0})
        with pytest.raises(ValueError):
            generate_harmful(order, policy)


class TestConstructInconsistent:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_passes_inconsistency_oracle(self, k):
        c = construct_inconsistent(k)
        assert c.n == 2 * k
        assert is_inconsistent(c)

    def test_k2_strongly_harmful(self):
        assert sp(construct_inconsistent(2)).sp == 3

    def test_ground_set_labels(self):
        g = inconsistent_ground_set(2)
        assert g.labels == ("x*", "x1", "x2", "x3")

    def test_small_k_rejected(self):
        with pytest.raises(ValueError):
            construct_inconsistent(1)
        with pytest.raises(ValueError):
            inconsistent_ground_set(1)


def test_fixture_equivalent_inconsistency(erratic4_choice):
    # an independent four-element table with the same full-coverage property
    assert is_inconsistent(erratic4_choice[1])


def test_make_choice_and_census_agree_on_rational_count():
    # sanity link between the test helper and the census: 3! rational choices
    orders = [LinearOrder(p) for p in itertools.permutations(range(3))]
    rationals = {rational_choice(o) for o in orders}
    assert len(rationals) == enumerate_census(3).counts_by_sp[0]
