"""Voter, alarm, and flip-flop semantics against the frozen truth table."""

from itertools import permutations

import pytest

from htmr_lab.voting import (
    TmrRegister,
    TripleInput,
    VoteOutcome,
    alarm_signal,
    enumerate_truth_table,
    flipflop_step,
    majority_vote,
    vote_with_alarm,
)

# Frozen truth table: (y1, y2, y3) -> (value, alarm), all 8 rows.
TRUTH_TABLE = {
    (0, 0, 0): (0, 0),
    (1, 0, 0): (0, 1),
    (0, 1, 0): (0, 1),
    (1, 1, 0): (1, 1),
    (0, 0, 1): (0, 1),
    (1, 0, 1): (1, 1),
    (0, 1, 1): (1, 1),
    (1, 1, 1): (1, 0),
}

ALL_TRIPLES = sorted(TRUTH_TABLE)


class TestTruthTable:
    def test_all_eight_rows_exact(self):
        for bits, (value, alarm) in TRUTH_TABLE.items():
            outcome = vote_with_alarm(TripleInput(*bits))
            assert (outcome.value, outcome.alarm) == (value, alarm), bits

    def test_enumerate_covers_every_combination_once(self):
        rows = enumerate_truth_table()
        assert len(rows) == 8
        seen = {t.as_tuple() for t, _ in rows}
        assert seen == set(TRUTH_TABLE)
        for t, outcome in rows:
            assert TRUTH_TABLE[t.as_tuple()] == (outcome.value, outcome.alarm)

    def test_majority_equals_integer_sum_oracle(self):
        # independent oracle: majority is 1 iff the bits sum to >= 2
        for bits in ALL_TRIPLES:
            assert majority_vote(bits) == (1 if sum(bits) >= 2 else 0)

    def test_alarm_equals_not_unanimous_oracle(self):
        for bits in ALL_TRIPLES:
            assert alarm_signal(bits) == (0 if len(set(bits)) == 1 else 1)


class TestAlgebraicProperties:
    def test_permutation_symmetry(self):
        for bits in ALL_TRIPLES:
            expected = (majority_vote(bits), alarm_signal(bits))
            for perm in permutations(bits):
                assert (majority_vote(perm), alarm_signal(perm)) == expected

    def test_inversion_duality(self):
        for bits in ALL_TRIPLES:
            inverted = tuple(1 - b for b in bits)
            assert majority_vote(inverted) == 1 - majority_vote(bits)
            assert alarm_signal(inverted) == alarm_signal(bits)

    def test_alarm_zero_iff_all_equal(self):
        for bits in ALL_TRIPLES:
            assert (alarm_signal(bits) == 0) == (bits[0] == bits[1] == bits[2])


class TestValidation:
    @pytest.mark.parametrize("bad", [2, -1, 0.5, "1", None, True])
    def test_triple_input_rejects_non_bits(self, bad):
        with pytest.raises(ValueError):
            TripleInput(bad, 0, 0)

    def test_wrong_arity_rejected(self):
        with pytest.raises(ValueError):
            majority_vote((0, 1))

    def test_register_rejects_bad_stored(self):
        with pytest.raises(ValueError):
            TmrRegister(stored=2)


class TestFlipFlop:
    def test_reset_convention(self):
        reg = TmrRegister()
        assert reg.stored == 0
        assert not reg.loaded

    def test_step_registers_vote_and_sets_loaded(self):
        reg, outcome = flipflop_step(TmrRegister(), (1, 1, 0))
        assert outcome == VoteOutcome(value=1, alarm=1)
        assert reg.stored == 1
        assert reg.loaded

    def test_step_back_to_zero(self):
        reg, outcome = flipflop_step(TmrRegister(stored=1, loaded=True), (0, 0, 0))
        assert outcome == VoteOutcome(value=0, alarm=0)
        assert reg.stored == 0

    def test_step_on_dissenting_middle_input(self):
        reg, outcome = flipflop_step(TmrRegister(), (0, 1, 0))
        assert (outcome.value, outcome.alarm) == (0, 1)
        assert reg.stored == 0

    def test_step_is_pure(self):
        before = TmrRegister()
        flipflop_step(before, (1, 1, 1))
        assert before == TmrRegister()

    def test_step_matches_truth_table_everywhere(self):
        for bits, (value, alarm) in TRUTH_TABLE.items():
            reg, outcome = flipflop_step(TmrRegister(), bits)
            assert (reg.stored, outcome.value, outcome.alarm) == (value, value, alarm)
