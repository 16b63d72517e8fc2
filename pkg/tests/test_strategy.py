"""Algorithm traces, the cheat sheet, and certified winning moves."""

from __future__ import annotations

import random
from itertools import product

import pytest

import setnim as sn
from setnim import DomainError, Move

NN10 = sn.necklace(10, 5)
NN42 = sn.necklace(4, 2)


def rows_as_tuples(trace):
    return [
        (row.j, row.d, row.Delta, row.m, row.delta, row.position)
        for row in trace.rows
    ]


class TestTwoDelta:
    def test_first_fixture_table(self):
        result, trace = sn.two_delta(NN10, (4, 21, 3, 2, 3, 4, 2, 7, 6, 5))
        assert result == (4, 21, 0, 0, 0, 4, 2, 7, 6, 5)
        assert trace.start.Delta == 9 and trace.start.delta == 7
        assert trace.start.m == (25, 8, 7, 7, 7)
        assert rows_as_tuples(trace) == [
            (5, 3, 6, (22, 5, 4, 4), 4, (4, 21, 3, 2, 0, 4, 2, 7, 6, 5)),
            (4, 2, 4, (20, 3, 2), 2, (4, 21, 3, 0, 0, 4, 2, 7, 6, 5)),
            (3, 3, 1, (17, 0), 0, (4, 21, 0, 0, 0, 4, 2, 7, 6, 5)),
        ]

    def test_second_fixture_table(self):
        result, trace = sn.two_delta(NN10, (2, 15, 8, 4, 5, 4, 5, 5, 5, 8))
        assert result == (2, 15, 8, 2, 0, 4, 5, 5, 5, 8)
        assert trace.start.m == (30, 19, 16, 16, 16)
        assert rows_as_tuples(trace) == [
            (5, 5, 2, (25, 14, 11, 11), 11, (2, 15, 8, 4, 0, 4, 5, 5, 5, 8)),
            (4, 2, 0, (23, 12, 9), 9, (2, 15, 8, 2, 0, 4, 5, 5, 5, 8)),
        ]

    def test_small_hand_trace(self, oracle):
        result, trace = sn.two_delta(NN42, (2, 3, 2, 1))
        assert result == (2, 1, 2, 1)
        assert rows_as_tuples(trace) == [(2, 2, 0, (0,), 0, (2, 1, 2, 1))]
        assert oracle.classify(NN42, result) == "P"

    @pytest.mark.parametrize(
        "pos,message",
        [
            ((1, 1, 1, 1), "A > B"),
            ((3, 3, 1, 2), "s\\* > m"),
            ((3, 2, 1, 0), "m > 0"),
        ],
    )
    def test_domain_errors_name_the_inequality(self, pos, message):
        with pytest.raises(DomainError, match=message):
            sn.two_delta(NN42, pos)


class TestDeltaAlg:
    def test_fixture(self):
        result, trace = sn.delta_alg(NN10, (4, 21, 0, 0, 0, 4, 2, 7, 6, 5))
        assert result == (4, 20, 0, 0, 0, 4, 2, 7, 6, 5)
        assert [row.j for row in trace.rows] == [2]
        assert trace.rows[0].d == 1 and trace.rows[0].Delta == 0

    def test_end_assignment_when_the_walk_is_empty(self, oracle):
        result, trace = sn.delta_alg(NN42, (5, 2, 3, 2))
        assert result == (3, 2, 3, 2)
        assert [row.j for row in trace.rows] == [1]
        assert oracle.classify(NN42, result) == "P"

        result, _ = sn.delta_alg(NN42, (3, 1, 2, 1))
        assert result == (2, 1, 2, 1)
        assert oracle.classify(NN42, result) == "P"

    def test_requires_matched_minimum(self):
        with pytest.raises(DomainError, match="m = s"):
            sn.delta_alg(NN42, (4, 21, 3, 2))


class TestSmallDelta:
    def test_fixture_table(self):
        result, trace = sn.small_delta(NN10, (2, 15, 8, 2, 0, 4, 5, 5, 5, 8))
        assert result == (2, 15, 4, 0, 0, 0, 3, 5, 5, 8)
        assert trace.start.m == (23, 12, 9, 9, 9) and trace.start.delta == 9
        assert (trace.final_x, trace.final_y) == (3, 2)
        blocks = [
            (row.x, row.y, row.d, row.m, row.m_tail, row.delta, row.position)
            for row in trace.rows
        ]
        assert blocks == [
            (4, 1, 2, (21, 10, 7), (8, 5, 5, 5), 5, (2, 15, 8, 0, 0, 2, 5, 5, 5, 8)),
            (3, 1, 2, (19, 6), (4, 3, 3, 3), 3, (2, 15, 6, 0, 0, 0, 5, 5, 5, 8)),
            (3, 2, 1, (18, 3), (2, 2, 2), 2, (2, 15, 5, 0, 0, 0, 4, 5, 5, 8)),
            (3, 2, 1, (17, 2), (1, 1, 1), 1, (2, 15, 4, 0, 0, 0, 3, 5, 5, 8)),
        ]

    def test_single_step_hand_trace(self):
        result, trace = sn.small_delta(NN42, (1, 3, 3, 1))
        assert result == (1, 2, 2, 1)
        assert [(r.x, r.y, r.d) for r in trace.rows] == [(2, 1, 1)]
        assert sn.derived_quantities(NN42, result).delta_me == 1

    def test_gap_of_one_returns_unchanged(self):
        result, trace = sn.small_delta(NN42, (1, 2, 2, 1))
        assert result == (1, 2, 2, 1)
        assert trace.rows == ()
        assert (trace.final_x, trace.final_y) == (2, 1)


class TestUnitAdjust:
    def test_fixture(self):
        adjusted = sn.unit_adjust(NN10, (2, 15, 4, 0, 0, 0, 3, 5, 5, 8), 3, 2)
        assert adjusted == (2, 15, 3, 0, 0, 0, 2, 5, 5, 8)
        assert sn.p_half_window(NN10, adjusted).holds

    def test_square(self, oracle):
        adjusted = sn.unit_adjust(NN42, (1, 2, 2, 1), 2, 1)
        assert adjusted == (1, 1, 1, 1)
        assert oracle.classify(NN42, adjusted) == "P"

    def test_requires_unit_gap(self):
        with pytest.raises(DomainError, match="s\\* - m = 1"):
            sn.unit_adjust(NN42, (1, 3, 3, 1), 2, 1)


class TestCaseOne:
    def test_endpoint_when_the_gap_absorbs_the_imbalance(self, oracle):
        sm = sn.case1_move(NN42, (3, 3, 1, 4))
        assert sm.result == (1, 3, 1, 3)
        assert set(NN42.move_set(sm.move.set_index)) == {1, 4}
        assert oracle.classify(NN42, sm.result) == "P"

    def test_big_first_stack(self, oracle):
        sm = sn.case1_move(NN42, (5, 1, 2, 3))
        assert sm.result == (2, 1, 2, 1)
        assert oracle.classify(NN42, sm.result) == "P"

    def test_two_stage_descent_stays_in_one_window(self, oracle):
        sm = sn.case1_move(NN42, (4, 4, 1, 3))
        assert sm.result == (1, 3, 1, 3)
        assert NN42.move_set(sm.move.set_index) == (1, 2)
        assert sm.move.removals == (3, 1, 0, 0)
        assert oracle.classify(NN42, sm.result) == "P"

    def test_rejects_the_wrong_regime(self):
        with pytest.raises(DomainError, match="m >= s"):
            sn.case1_move(NN42, (1, 3, 3, 1))
        with pytest.raises(DomainError, match="mirror"):
            sn.case1_move(NN42, (1, 2, 3, 3))


class TestWinningMove:
    def test_composed_suffix_walk_plus_sum_fix(self):
        sm = sn.winning_move(NN10, (4, 21, 3, 2, 3, 4, 2, 7, 6, 5))
        assert sm.move == Move(1, (0, 1, 3, 2, 3, 0, 0, 0, 0, 0))
        assert sm.result == (4, 20, 0, 0, 0, 4, 2, 7, 6, 5)
        assert [t.algorithm for t in sm.traces] == ["two_delta", "delta_alg"]

    def test_composed_walk_pair_and_unit_fix(self):
        sm = sn.winning_move(NN10, (2, 15, 8, 4, 5, 4, 5, 5, 5, 8))
        assert sm.move == Move(3, (0, 0, 5, 4, 5, 4, 3, 0, 0, 0))
        assert sm.result == (2, 15, 3, 0, 0, 0, 2, 5, 5, 8)
        assert [t.algorithm for t in sm.traces] == ["two_delta", "small_delta"]

    def test_balanced_positions_have_no_move(self):
        assert sn.winning_move(sn.necklace(3, 2), (1, 1, 1)) is None
        assert sn.winning_move(NN10, (4, 20, 0, 0, 0, 4, 2, 7, 6, 5)) is None

    def test_zero_end_goes_through_the_path_game(self, oracle):
        spec = sn.necklace(6, 3)
        sm = sn.winning_move(spec, (0, 2, 1, 2, 0, 1), oracle)
        assert sm is not None
        assert sn.p_half_window(spec, sm.result).holds
        assert oracle.classify(spec, sm.result) == "P"

    def test_mirrored_imbalance(self, oracle):
        spec = sn.necklace(6, 3)
        pos = (1, 2, 1, 3, 4, 2)  # B > A
        sm = sn.winning_move(spec, pos, oracle)
        assert sm is not None
        assert sn.apply_move(spec, pos, sm.move) == sm.result
        assert oracle.classify(spec, sm.result) == "P"

    def test_mirror_coherence_for_imbalanced_positions(self, oracle):
        spec = sn.necklace(6, 3)
        rng = random.Random(31)
        outcomes = oracle.classify_all(spec, 3)
        candidates = [
            pos
            for pos, out in outcomes.items()
            if out == "N" and sum(pos[:3]) != sum(pos[3:])
        ]
        for pos in rng.sample(candidates, 150):
            forward = sn.winning_move(spec, pos, oracle)
            backward = sn.winning_move(spec, sn.mirror(pos), oracle)
            assert backward.result == sn.mirror(forward.result)

    def test_odd_games_search_by_predicate(self, oracle):
        spec = sn.necklace(5, 3)
        sm = sn.winning_move(spec, (1, 2, 1, 3, 2), oracle)
        assert sm is not None
        assert sn.p_half_window(spec, sm.result).holds
        assert oracle.classify(spec, sm.result) == "P"
        assert sn.winning_move(spec, (3, 1, 2, 1, 3), oracle) is None

    def test_wide_window_games_search_by_the_reduced_predicate(self, oracle):
        spec = sn.necklace(7, 5)
        sm = sn.winning_move(spec, (1, 2, 1, 1, 1, 3, 2), oracle)
        assert sm is not None
        assert sn.closed_form(spec, sm.result).holds
        assert oracle.classify(spec, sm.result) == "P"

    def test_whole_board_window_takes_everything(self):
        spec = sn.necklace(5, 5)
        sm = sn.winning_move(spec, (1, 0, 2, 0, 1))
        assert sm.result == (0, 0, 0, 0, 0)

    def test_oracle_backed_families(self, oracle):
        spec = sn.moore(3, 2)
        sm = sn.winning_move(spec, (1, 2, 3), oracle)
        if sm is not None:
            assert oracle.classify(spec, sm.result) == "P"
        spec2 = sn.generic(4, [[1, 2], [2, 3], [4]])
        sm2 = sn.winning_move(spec2, (1, 1, 1, 1), oracle)
        if sm2 is not None:
            assert oracle.classify(spec2, sm2.result) == "P"


class TestPathMoves:
    @pytest.mark.parametrize("n,k,cap", [(3, 2, 4), (4, 2, 3), (5, 3, 3), (6, 4, 2)])
    def test_exhaustive_soundness(self, oracle, n, k, cap):
        spec = sn.path(n, k)
        for pos in product(range(cap + 1), repeat=n):
            move = sn.path_winning_move(spec, pos)
            if move is None:
                assert sn.p_path(spec, pos)
            else:
                result = sn.apply_move(spec, pos, move)
                assert sn.p_path(spec, result)
                assert oracle.classify(spec, result) == "P"


class TestCircularMoves:
    @pytest.mark.parametrize("n,k,cap", [(3, 2, 4), (4, 2, 3)])
    def test_exhaustive_soundness(self, oracle, n, k, cap):
        spec = sn.circular(n, k)
        for pos in product(range(cap + 1), repeat=n):
            move = sn.circular_small_move(spec, pos)
            if move is None:
                assert sn.p_circular_small(spec, pos)
            else:
                result = sn.apply_move(spec, pos, move)
                assert sn.p_circular_small(spec, result)
                assert oracle.classify(spec, result) == "P"


class TestTraceRendering:
    def test_table_mirrors_the_fixture_layout(self):
        _, trace = sn.two_delta(NN10, (4, 21, 3, 2, 3, 4, 2, 7, 6, 5))
        text = trace.render()
        lines = text.splitlines()
        assert "m_2" in lines[0] and "m_6" in lines[0]
        assert any("j=5" in line and "22" in line and "(4,21,3,2,0,4,2,7,6,5)" in line
                   for line in lines)
        assert any("j=3" in line and "17" in line for line in lines)

    def test_json_round_trip_fields(self):
        _, trace = sn.small_delta(NN10, (2, 15, 8, 2, 0, 4, 5, 5, 5, 8))
        obj = trace.to_json()
        assert obj["algorithm"] == "small_delta"
        assert obj["final_x"] == 3 and obj["final_y"] == 2
        assert obj["rows"][0]["m_tail"] == [8, 5, 5, 5]
