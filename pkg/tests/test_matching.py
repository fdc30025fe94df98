"""Activity completion, reclassification, and matching schedules."""

import datetime as dt

import pytest

from tledger import (
    AccountPath,
    ActivityPair,
    Amount,
    Chart,
    InsufficientBalanceError,
    Journal,
    Ledger,
    MatchingSchedule,
    Posting,
    ScheduleMode,
    TAccount,
    Transaction,
    build_schedule,
    complete_activity,
    contra_account,
    emit_schedule_transactions,
    net_book_value,
    reclassify,
    validate_transaction,
)
from tledger.matching import add_years, schedule_accounts

D = dt.date


def p(text):
    return AccountPath.parse(text)


def amt(text):
    return Amount.parse(str(text))


def dr(account, value):
    return Posting(p(account), TAccount.dr(amt(value)))


def cr(account, value):
    return Posting(p(account), TAccount.cr(amt(value)))


@pytest.fixture
def allocated_ledger():
    """Budgeted opening state: cash split by use against three claims."""
    chart = Chart.empty().declare_all(
        [
            p("assets:cash1"),
            p("assets:cash2"),
            p("assets:cash3"),
            p("assets:machine"),
            p("liabilities:suppliers"),
            p("liabilities:banks"),
            p("equity:capital"),
        ]
    )
    opening = Transaction(
        D(2020, 1, 2),
        "allocated opening",
        (
            dr("assets:cash1", "1/5"),
            dr("assets:cash2", "2/5"),
            dr("assets:cash3", "2/5"),
            cr("liabilities:suppliers", "2/5"),
            cr("liabilities:banks", "2/5"),
            cr("equity:capital", "1/5"),
        ),
    )
    return Ledger.empty(chart).post(opening)


class TestActivityPair:
    def test_zero_magnitude_rejected(self):
        with pytest.raises(ValueError):
            ActivityPair(p("a"), p("b"), Amount(0))

    def test_completion_removes_both_sides(self, allocated_ledger):
        pair = ActivityPair(p("assets:cash2"), p("liabilities:suppliers"), amt("2/5"))
        tx = complete_activity(allocated_ledger, pair, D(2020, 1, 3))
        assert validate_transaction(tx).ok
        after = allocated_ledger.post(tx)
        assert after.balance(p("assets:cash2")).is_zero
        assert after.balance(p("liabilities:suppliers")).is_zero
        assert after.total().is_zero

    def test_partial_completion_keeps_half(self, allocated_ledger):
        pair = ActivityPair(p("assets:cash2"), p("liabilities:suppliers"), amt("1/5"))
        after = allocated_ledger.post(
            complete_activity(allocated_ledger, pair, D(2020, 1, 3))
        )
        assert after.balance(p("assets:cash2")).reduce() == TAccount.dr(amt("1/5"))
        assert after.balance(p("liabilities:suppliers")).reduce() == TAccount.cr(amt("1/5"))

    def test_completion_touches_no_other_account(self, allocated_ledger):
        pair = ActivityPair(p("assets:cash2"), p("liabilities:suppliers"), amt("2/5"))
        after = allocated_ledger.post(
            complete_activity(allocated_ledger, pair, D(2020, 1, 3))
        )
        untouched = [a for a in after.balances if a not in (pair.resource, pair.obligation)]
        for account in untouched:
            assert after.balance(account) == allocated_ledger.balance(account)

    def test_magnitude_exceeding_resource(self, allocated_ledger):
        pair = ActivityPair(p("assets:cash2"), p("liabilities:suppliers"), amt("3/5"))
        with pytest.raises(InsufficientBalanceError):
            complete_activity(allocated_ledger, pair, D(2020, 1, 3))

    def test_resource_must_be_debit_side(self, allocated_ledger):
        pair = ActivityPair(p("liabilities:banks"), p("liabilities:suppliers"), amt("1/5"))
        with pytest.raises(InsufficientBalanceError):
            complete_activity(allocated_ledger, pair, D(2020, 1, 3))


class TestReclassify:
    def test_debit_side(self, allocated_ledger):
        tx = reclassify(
            allocated_ledger, p("assets:cash3"), p("assets:machine"), amt("2/5"), D(2020, 1, 4)
        )
        after = allocated_ledger.post(tx)
        assert after.balance(p("assets:cash3")).is_zero
        assert after.balance(p("assets:machine")).reduce() == TAccount.dr(amt("2/5"))
        assert after.aggregate(p("assets")) .reduce() == allocated_ledger.aggregate(p("assets")).reduce()

    def test_credit_side_is_mirrored(self, allocated_ledger):
        chart = allocated_ledger.chart.declare(p("liabilities:longterm"))
        ledger = Ledger.empty(chart).post(
            Transaction(
                D(2020, 1, 2),
                "opening",
                (dr("assets:cash1", "2/5"), cr("liabilities:banks", "2/5")),
            )
        )
        tx = reclassify(ledger, p("liabilities:banks"), p("liabilities:longterm"), amt("2/5"), D(2020, 1, 5))
        sides = {po.account: po.entry for po in tx.postings}
        assert sides[p("liabilities:longterm")] == TAccount.cr(amt("2/5"))
        assert sides[p("liabilities:banks")] == TAccount.dr(amt("2/5"))
        after = ledger.post(tx)
        assert after.balance(p("liabilities:banks")).is_zero
        assert after.total().is_zero

    def test_zero_magnitude_is_an_empty_movement(self, allocated_ledger):
        with pytest.raises(ValueError, match="empty movement"):
            reclassify(allocated_ledger, p("assets:cash3"), p("assets:machine"), Amount(0), D(2020, 1, 4))

    def test_insufficient_balance(self, allocated_ledger):
        with pytest.raises(InsufficientBalanceError):
            reclassify(allocated_ledger, p("assets:cash1"), p("assets:machine"), amt("2/5"), D(2020, 1, 4))


class TestBuildSchedule:
    def test_straight_line_fifths(self):
        schedule = build_schedule(
            p("assets:machine"), p("expenses:interest"), amt("2/5"), 5, D(2020, 1, 4)
        )
        assert [f for _, f in schedule.periods] == [Amount(1, 5)] * 5
        assert [d for d, _ in schedule.periods] == [D(y, 1, 4) for y in range(2021, 2026)]
        emitted = emit_schedule_transactions(schedule)
        assert [t.postings[0].entry.debit for t in emitted] == [amt("2/25")] * 5

    def test_single_period(self):
        schedule = build_schedule(p("a"), p("b"), amt(10), 1, D(2020, 6, 1))
        emitted = emit_schedule_transactions(schedule)
        assert len(emitted) == 1
        assert emitted[0].postings[0].entry.debit == amt(10)

    def test_exact_thirds(self):
        schedule = build_schedule(p("a"), p("b"), amt("1/3"), 3, D(2020, 1, 1))
        for t in emit_schedule_transactions(schedule):
            assert t.postings[0].entry.debit == amt("1/9")

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            build_schedule(p("a"), p("b"), amt(1), 0, D(2020, 1, 1))
        with pytest.raises(ValueError):
            build_schedule(p("a"), p("b"), Amount(0), 3, D(2020, 1, 1))

    def test_custom_fractions_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            MatchingSchedule(
                p("a"), p("b"), amt(1),
                ((D(2021, 1, 1), Amount(1, 2)), (D(2022, 1, 1), Amount(1, 3))),
            )

    def test_period_dates_strictly_increasing(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            MatchingSchedule(
                p("a"), p("b"), amt(1),
                ((D(2021, 1, 1), Amount(1, 2)), (D(2021, 1, 1), Amount(1, 2))),
            )

    def test_leap_day_steps_to_feb_28(self):
        assert add_years(D(2020, 2, 29), 1) == D(2021, 2, 28)
        assert add_years(D(2020, 2, 29), 4) == D(2024, 2, 29)


class TestEmission:
    @pytest.fixture
    def machine_journal_parts(self):
        chart = Chart.empty().declare_all(
            [p("assets:machine"), p("liabilities:banks"), p("expenses:interest")]
        )
        opening = Transaction(
            D(2020, 1, 4),
            "machine on credit",
            (dr("assets:machine", "2/5"), cr("liabilities:banks", "2/5")),
        )
        return chart, opening

    def _journal(self, parts, mode):
        chart, opening = parts
        schedule = build_schedule(
            p("assets:machine"), p("expenses:interest"), amt("2/5"), 5, D(2020, 1, 4), mode
        )
        return Journal(chart, (opening,), (schedule,)), schedule

    def test_every_emission_is_balanced(self, machine_journal_parts):
        _, schedule = self._journal(machine_journal_parts, ScheduleMode.DIRECT)
        for t in emit_schedule_transactions(schedule):
            assert validate_transaction(t).ok

    def test_conservation(self, machine_journal_parts):
        _, schedule = self._journal(machine_journal_parts, ScheduleMode.DIRECT)
        moved = Amount(0)
        for t in emit_schedule_transactions(schedule):
            moved = moved + t.postings[0].entry.debit
        assert moved == schedule.total

    def test_direct_mode_derecognizes_source(self, machine_journal_parts):
        journal, _ = self._journal(machine_journal_parts, ScheduleMode.DIRECT)
        assert journal.stock_at(D(2021, 1, 4)).balance(p("assets:machine")) == TAccount.dr(amt("8/25"))
        assert journal.stock_at(D(2025, 1, 4)).balance(p("assets:machine")).is_zero

    def test_contra_mode_keeps_source_and_nets(self, machine_journal_parts):
        journal, schedule = self._journal(machine_journal_parts, ScheduleMode.CONTRA)
        stock = journal.stock_at(D(2025, 1, 4))
        contra = contra_account(p("assets:machine"))
        assert stock.balance(p("assets:machine")) == TAccount.dr(amt("2/5"))
        assert stock.balance(contra) == TAccount.cr(amt("2/5"))
        assert net_book_value(stock, schedule) == TAccount.zero()

    def test_modes_agree_on_net_book_value(self, machine_journal_parts):
        direct_journal, direct = self._journal(machine_journal_parts, ScheduleMode.DIRECT)
        contra_journal, contra = self._journal(machine_journal_parts, ScheduleMode.CONTRA)
        for year in range(2020, 2026):
            cutoff = D(year, 1, 4)
            assert net_book_value(direct_journal.stock_at(cutoff), direct) == net_book_value(
                contra_journal.stock_at(cutoff), contra
            )

    def test_counterpart_children_per_period(self, machine_journal_parts):
        _, schedule = self._journal(machine_journal_parts, ScheduleMode.CONTRA)
        accounts = schedule_accounts(schedule)
        assert p("expenses:interest:y1") in accounts
        assert p("expenses:interest:y5") in accounts
        assert contra_account(p("assets:machine")) == p("assets:accumulated-depreciation")

    def test_root_zero_through_all_periods(self, machine_journal_parts):
        journal, _ = self._journal(machine_journal_parts, ScheduleMode.DIRECT)
        chart, txs = journal.expand()
        ledger = Ledger.empty(chart)
        for t in txs:
            ledger = ledger.post(t)
            assert ledger.total().is_zero


class TestScenarioWalkthrough:
    def test_refine_complete_reclassify_reaches_final_state(self):
        chart = Chart.empty().declare_all(
            [
                p("assets:cash"),
                p("assets:machine"),
                p("liabilities:suppliers"),
                p("liabilities:banks"),
                p("equity:capital"),
            ]
        )
        ledger = Ledger.empty(chart).post(
            Transaction(
                D(2020, 1, 1),
                "opening",
                (
                    dr("assets:cash", 1),
                    cr("liabilities:suppliers", "2/5"),
                    cr("liabilities:banks", "2/5"),
                    cr("equity:capital", "1/5"),
                ),
            )
        )
        ledger = ledger.refine(
            p("assets:cash"),
            [
                (p("assets:cash:c1"), TAccount.dr(amt("1/5"))),
                (p("assets:cash:c2"), TAccount.dr(amt("2/5"))),
                (p("assets:cash:c3"), TAccount.dr(amt("2/5"))),
            ],
        )
        pair = ActivityPair(p("assets:cash:c2"), p("liabilities:suppliers"), amt("2/5"))
        ledger = ledger.post(complete_activity(ledger, pair, D(2020, 1, 3)))
        ledger = ledger.post(
            reclassify(ledger, p("assets:cash:c3"), p("assets:machine"), amt("2/5"), D(2020, 1, 4))
        )
        assert dict(ledger.nonzero_items()) == {
            p("assets:cash:c1"): TAccount.dr(amt("1/5")),
            p("equity:capital"): TAccount.cr(amt("1/5")),
            p("assets:machine"): TAccount.dr(amt("2/5")),
            p("liabilities:banks"): TAccount.cr(amt("2/5")),
        }
        assert ledger.total().is_zero
