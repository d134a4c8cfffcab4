from fractions import Fraction

import pytest

from nicecover.analysis import (
    HaltsAt,
    NoHaltWithin,
    StairMap,
    StepMap,
    bisect_limit,
    bisect_step,
    bisect_to_precision,
    constancy_check,
    expression_builtins,
    geometric_targets,
    halting_reduction,
    parse_oracle,
    parse_targets,
    waiting_crn,
)
from nicecover.crn import approx_to, validate_regulator
from nicecover.errors import BudgetExceeded, NotSeparated, ParseError, ZeroDenominator
from nicecover.machine import Halted, StillRunning, run_for
from nicecover.rational import pow2

THIRD = Fraction(1, 3)


class TestTargets:
    def test_geometric_values(self):
        g = geometric_targets()
        for i in range(11):
            assert g.approx(i) == 1 - pow2(-i)
        assert g.regulator(7) == 7

    def test_geometric_regulator_law(self):
        assert validate_regulator(geometric_targets(), levels=range(0, 16)).ok

    def test_parse_targets(self):
        assert parse_targets("geometric").approx(3) == Fraction(7, 8)
        with pytest.raises(ParseError):
            parse_targets("arithmetic")


class TestDiscreteMaps:
    def test_step_map(self):
        f = StepMap(THIRD)
        assert f.label(Fraction(0)) == 0
        assert f.label(THIRD - Fraction(1, 1000)) == 0
        assert f.label(THIRD) == 1
        assert f.label(Fraction(1)) == 1

    def test_stair_map(self):
        f = StairMap((Fraction(1, 4), Fraction(3, 4)))
        values = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
        assert [f.label(v) for v in values] == [0, 1, 1, 2, 2]

    def test_parse_oracle(self):
        assert parse_oracle("step@1/2") == StepMap(Fraction(1, 2))
        assert parse_oracle("stair:1/4,3/4") == StairMap((Fraction(1, 4), Fraction(3, 4)))

    @pytest.mark.parametrize("spec", ["", "step@", "stair:", "foo", "step@x", "stair:1/2,x"])
    def test_parse_oracle_rejects(self, spec):
        with pytest.raises(ParseError):
            parse_oracle(spec)

    def test_parse_oracle_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            parse_oracle("step@1/0")


class TestWaiting:
    def test_halting_run_freezes(self, countdown):
        w = waiting_crn(countdown, 2, geometric_targets())  # halts at step 8
        for i in range(8):
            assert w.approx(i) == 1 - pow2(-i)
        for i in (8, 9, 20, 64):
            assert w.approx(i) == Fraction(255, 256)

    def test_non_halting_run_tracks_targets(self, looper):
        w = waiting_crn(looper, 0, geometric_targets())
        for i in (0, 1, 10, 64):
            assert w.approx(i) == 1 - pow2(-i)

    def test_regulator_is_inherited_and_valid(self, countdown, looper):
        for w in (
            waiting_crn(countdown, 2, geometric_targets()),
            waiting_crn(countdown, 0, geometric_targets()),
            waiting_crn(looper, 5, geometric_targets()),
        ):
            assert w.regulator(9) == 9
            assert validate_regulator(w, levels=range(0, 12)).ok

    def test_approx_to_bounds(self, countdown, looper):
        halting = waiting_crn(countdown, 2, geometric_targets())
        for n in range(12):
            assert abs(approx_to(halting, n) - Fraction(255, 256)) <= pow2(-n)
        running = waiting_crn(looper, 0, geometric_targets())
        for n in range(12):
            assert abs(approx_to(running, n) - 1) <= pow2(-n)

    def test_max_steps_cap(self, looper):
        w = waiting_crn(looper, 0, geometric_targets(), max_steps=5)
        assert w.approx(5) == Fraction(31, 32)
        with pytest.raises(BudgetExceeded):
            w.approx(6)
        with pytest.raises(BudgetExceeded):
            approx_to(w, 6)  # needs index 7


class TestHaltingReduction:
    def test_halt_inside_window(self, countdown):
        assert halting_reduction(
            countdown, 2, geometric_targets(), StepMap(Fraction(1, 2)), 10
        ) == HaltsAt(8)

    def test_no_halt_reported_with_window(self, looper):
        assert halting_reduction(
            looper, 0, geometric_targets(), StepMap(Fraction(1, 2)), 10
        ) == NoHaltWithin(11)

    def test_window_too_small_for_late_halt(self, countdown):
        assert halting_reduction(
            countdown, 2, geometric_targets(), StepMap(Fraction(1, 2)), 5
        ) == NoHaltWithin(6)

    def test_verdicts_are_step_certified(self, countdown, looper, mod3):
        cases = [(countdown, 2), (countdown, 0), (looper, 3), (mod3, 6), (mod3, 7)]
        for program, input_value in cases:
            for prec in (0, 3, 9, 20):
                verdict = halting_reduction(
                    program, input_value, geometric_targets(), StepMap(Fraction(1, 2)), prec
                )
                if isinstance(verdict, HaltsAt):
                    assert run_for(program, input_value, verdict.steps) == Halted(verdict.steps)
                else:
                    outcome = run_for(program, input_value, verdict.steps)
                    assert outcome == StillRunning(verdict.steps)
                    assert verdict.steps == geometric_targets().regulator(prec + 1)


class TestBisectStep:
    def test_step_oracle_sequence(self):
        f = StepMap(THIRD)
        lo, hi = Fraction(0), Fraction(1)
        seen = [(lo, hi)]
        for _ in range(3):
            lo, hi = bisect_step((lo, hi), f)
            seen.append((lo, hi))
        assert seen == [
            (Fraction(0), Fraction(1)),
            (Fraction(0), Fraction(1, 2)),
            (Fraction(1, 4), Fraction(1, 2)),
            (Fraction(1, 4), Fraction(3, 8)),
        ]

    def test_stair_oracle_prefers_upper_half(self):
        f = StairMap((Fraction(1, 4), Fraction(3, 4)))
        assert bisect_step((Fraction(0), Fraction(1)), f) == (Fraction(1, 2), Fraction(1))
        assert bisect_step((Fraction(1, 2), Fraction(1)), f) == (Fraction(1, 2), Fraction(3, 4))

    def test_not_separated(self):
        with pytest.raises(NotSeparated):
            bisect_step((Fraction(1, 2), Fraction(1)), StepMap(THIRD))

    def test_labels_stay_separated(self):
        f = StepMap(THIRD)
        lo, hi = Fraction(0), Fraction(1)
        for _ in range(20):
            lo, hi = bisect_step((lo, hi), f)
            assert f.label(lo) != f.label(hi)


class TestBisectToPrecision:
    @pytest.mark.parametrize(
        "oracle,limit",
        [
            (StepMap(THIRD), THIRD),
            (StepMap(Fraction(1, 7)), Fraction(1, 7)),
            (StairMap((Fraction(1, 4), Fraction(3, 4))), Fraction(3, 4)),
        ],
    )
    def test_transcript_invariants(self, oracle, limit):
        value, rows = bisect_to_precision(oracle, Fraction(0), Fraction(1), 24)
        assert len(rows) == 25
        assert (rows[0].index, rows[0].lo, rows[0].hi, rows[0].branch) == (0, 0, 1, "init")
        for i, row in enumerate(rows):
            assert row.index == i
            assert row.hi - row.lo == pow2(-i)
            assert oracle.label(row.lo) != oracle.label(row.hi)
            assert row.lo <= limit <= row.hi
            if i:
                assert rows[i - 1].lo <= row.lo and row.hi <= rows[i - 1].hi
                assert row.branch in ("lower", "upper")
                if row.branch == "upper":
                    assert row.lo > rows[i - 1].lo
                else:
                    assert row.lo == rows[i - 1].lo

    def test_limit_crn_accuracy_and_regulator(self):
        value = bisect_limit(StepMap(THIRD), Fraction(0), Fraction(1))
        for n in (0, 5, 17, 40):
            assert abs(approx_to(value, n) - THIRD) <= pow2(-n)
        assert validate_regulator(value, levels=range(0, 20)).ok

    def test_chain_reuse_is_consistent(self):
        value, _ = bisect_to_precision(StepMap(THIRD), Fraction(0), Fraction(1), 0)
        deep = approx_to(value, 40)
        shallow = approx_to(value, 5)
        fresh = bisect_limit(StepMap(THIRD), Fraction(0), Fraction(1))
        assert shallow == approx_to(fresh, 5)
        assert deep == approx_to(fresh, 40)

    def test_off_grid_interval(self):
        lo, hi = Fraction(1, 10), Fraction(9, 10)
        value, rows = bisect_to_precision(StepMap(THIRD), lo, hi, 16)
        for row in rows:
            assert row.hi - row.lo == (hi - lo) * pow2(-row.index)
            assert row.lo <= THIRD <= row.hi
        assert abs(approx_to(value, 30) - THIRD) <= pow2(-30)

    def test_negative_steps_rejected(self):
        with pytest.raises(ValueError):
            bisect_to_precision(StepMap(THIRD), Fraction(0), Fraction(1), -1)

    def test_unseparated_endpoints_rejected(self):
        with pytest.raises(NotSeparated):
            bisect_to_precision(StepMap(THIRD), Fraction(1, 2), Fraction(1), 3)


class TestConstancyCheck:
    def test_finds_flip(self):
        pair = constancy_check(StepMap(THIRD), Fraction(0), Fraction(1), 5)
        assert pair == (Fraction(1, 4), Fraction(1, 2))

    def test_constant_region(self):
        assert constancy_check(StepMap(THIRD), Fraction(1, 2), Fraction(1), 5) is None

    def test_stair_first_flip(self):
        pair = constancy_check(
            StairMap((Fraction(1, 4), Fraction(3, 4))), Fraction(0), Fraction(1), 5
        )
        assert pair == (Fraction(0), Fraction(1, 4))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            constancy_check(StepMap(THIRD), Fraction(1), Fraction(0), 5)
        with pytest.raises(ValueError):
            constancy_check(StepMap(THIRD), Fraction(0), Fraction(1), 1)


class TestExpressionBuiltins:
    def test_names(self):
        assert set(expression_builtins()) == {"waiting", "bisect_limit"}

    def test_waiting_builtin(self, countdown_file):
        value = expression_builtins()["waiting"]([str(countdown_file), "2"])
        assert approx_to(value, 10) == Fraction(255, 256)

    def test_waiting_builtin_arity(self):
        with pytest.raises(ParseError):
            expression_builtins()["waiting"](["only-one"])

    def test_bisect_builtin_keeps_stair_commas(self):
        value = expression_builtins()["bisect_limit"](["stair:1/4", "3/4", "0", "1"])
        assert abs(approx_to(value, 12) - Fraction(3, 4)) <= pow2(-12)
