"""Activity pairing and multi-period matching.

A debit-side resource can be earmarked against the credit-side
obligation it is meant to settle. Completing that activity (paying the
supplier from the cash set aside for it) emits a transaction that
shrinks both sides by the same magnitude, so the pair drops out of the
reduced balance sheet. A matching schedule does the same thing in
installments: it partitions a resource across periods and consumes one
slice per period against a period cost account.

Two emission modes cover the two bookkeeping conventions: direct mode
credits the source account itself (derecognition), contra mode credits a
sibling "accumulated-depreciation" account that reduced reports net
against the source. Both give identical net book values at every period
boundary.
"""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

from .algebra import Amount, TAccount
from .chart import AccountPath
from .errors import InsufficientBalanceError
from .ledger import Ledger, Posting, Transaction

if TYPE_CHECKING:
    from .diagnostics import SourceSpan

__all__ = [
    "ActivityPair",
    "MatchingSchedule",
    "ScheduleMode",
    "build_schedule",
    "complete_activity",
    "reclassify",
    "emit_schedule_transactions",
    "schedule_accounts",
    "contra_account",
    "net_book_value",
    "add_years",
]

CONTRA_SEGMENT = "accumulated-depreciation"


class ScheduleMode(enum.Enum):
    DIRECT = "direct"
    CONTRA = "contra"


@dataclass(frozen=True, slots=True)
class ActivityPair:
    """A debit-side resource matched to a credit-side obligation."""

    resource: AccountPath
    obligation: AccountPath
    magnitude: Amount

    def __post_init__(self):
        if not self.magnitude:
            raise ValueError("activity pair magnitude must be positive")


def complete_activity(
    ledger: Ledger,
    pair: ActivityPair,
    date: dt.date,
    description: str | None = None,
) -> Transaction:
    """Emit the transaction that settles a matched resource/obligation pair.

    Credits the resource and debits the obligation by the magnitude;
    once posted, both reduced balances shrink by exactly that much and
    vanish entirely when fully matched.
    """
    resource = ledger.balance(pair.resource).reduce()
    obligation = ledger.balance(pair.obligation).reduce()
    if resource.debit < pair.magnitude:
        raise InsufficientBalanceError(
            f"{pair.resource} holds debit {resource.debit},"
            f" needs {pair.magnitude}"
        )
    if obligation.credit < pair.magnitude:
        raise InsufficientBalanceError(
            f"{pair.obligation} holds credit {obligation.credit},"
            f" needs {pair.magnitude}"
        )
    return Transaction(
        date,
        description or f"complete activity: {pair.resource} against {pair.obligation}",
        (
            Posting(pair.obligation, TAccount.dr(pair.magnitude)),
            Posting(pair.resource, TAccount.cr(pair.magnitude)),
        ),
    )


def reclassify(
    ledger: Ledger,
    source: AccountPath,
    target: AccountPath,
    magnitude: Amount,
    date: dt.date,
    description: str | None = None,
) -> Transaction:
    """Move a balance between accounts without changing any aggregate.

    Debit-side sources move as [target dr, source cr]; credit-side
    sources get the mirrored entry. A zero magnitude is rejected as an
    empty movement.
    """
    if not magnitude:
        raise ValueError("empty movement: reclassify magnitude must be positive")
    ledger.balance(target)  # target must be a postable leaf
    net = ledger.balance(source).reduce()
    if net.debit >= magnitude:
        postings = (
            Posting(target, TAccount.dr(magnitude)),
            Posting(source, TAccount.cr(magnitude)),
        )
    elif net.credit >= magnitude:
        postings = (
            Posting(target, TAccount.cr(magnitude)),
            Posting(source, TAccount.dr(magnitude)),
        )
    else:
        raise InsufficientBalanceError(
            f"{source} holds {net}, cannot move {magnitude}"
        )
    return Transaction(
        date, description or f"reclassify {source} to {target}", postings
    )


@dataclass(frozen=True)
class MatchingSchedule:
    """A partition of a resource matched period by period.

    Fractions are exact, positive, and sum to one, so the emitted
    movements always rebuild the total with no rounding residue.
    """

    source: AccountPath
    counterpart_prefix: AccountPath
    total: Amount
    periods: tuple[tuple[dt.date, Amount], ...]
    mode: ScheduleMode = ScheduleMode.DIRECT
    start: dt.date | None = None
    span: "SourceSpan | None" = field(default=None, compare=False)

    def __post_init__(self):
        if not self.total:
            raise ValueError("schedule total must be positive")
        if not self.periods:
            raise ValueError("schedule needs at least one period")
        running = Fraction(0)
        last: dt.date | None = None
        for date, fraction in self.periods:
            if not fraction:
                raise ValueError("schedule fractions must be positive")
            if last is not None and date <= last:
                raise ValueError("schedule period dates must be strictly increasing")
            last = date
            running += fraction.as_fraction
        if running != 1:
            raise ValueError(f"schedule fractions must sum to 1, got {running}")


def add_years(date: dt.date, years: int) -> dt.date:
    """Calendar-year stepping; Feb 29 lands on Feb 28 off leap years."""
    try:
        return date.replace(year=date.year + years)
    except ValueError:
        return date.replace(year=date.year + years, day=28)


def build_schedule(
    source: AccountPath,
    counterpart_prefix: AccountPath,
    total: Amount,
    n: int,
    start: dt.date,
    mode: ScheduleMode = ScheduleMode.DIRECT,
    span: "SourceSpan | None" = None,
) -> MatchingSchedule:
    """Straight-line schedule: n yearly periods of exactly 1/n each.

    Period k falls on the k-th anniversary of start. Other fraction
    vectors can be fed to MatchingSchedule directly; straight-line is
    the only built-in generator.
    """
    if n < 1:
        raise ValueError("schedule needs at least one period")
    if not total:
        raise ValueError("schedule total must be positive")
    periods = tuple((add_years(start, k), Amount(1, n)) for k in range(1, n + 1))
    return MatchingSchedule(
        source, counterpart_prefix, total, periods, mode, start=start, span=span
    )


def contra_account(source: AccountPath) -> AccountPath:
    """The source's sibling account that accumulates contra credits."""
    parent = source.parent
    if parent is None:
        return AccountPath((CONTRA_SEGMENT,))
    return parent.child(CONTRA_SEGMENT)


def schedule_accounts(schedule: MatchingSchedule) -> tuple[AccountPath, ...]:
    """Accounts the schedule's emissions will post to, beyond the source."""
    out = [
        schedule.counterpart_prefix.child(f"y{k}")
        for k in range(1, len(schedule.periods) + 1)
    ]
    if schedule.mode is ScheduleMode.CONTRA:
        out.append(contra_account(schedule.source))
    return tuple(out)


def emit_schedule_transactions(schedule: MatchingSchedule) -> list[Transaction]:
    """One balanced transaction per period.

    Period k debits a per-period cost account under the counterpart
    prefix and credits the source (direct mode) or the contra sibling
    (contra mode) by total times the period fraction. After the final
    period the net book value is exactly zero.
    """
    credit_to = (
        schedule.source
        if schedule.mode is ScheduleMode.DIRECT
        else contra_account(schedule.source)
    )
    n = len(schedule.periods)
    out = []
    for k, (date, fraction) in enumerate(schedule.periods, 1):
        amount = schedule.total * fraction
        out.append(
            Transaction(
                date,
                f"matching: {schedule.source} period {k}/{n}",
                (
                    Posting(schedule.counterpart_prefix.child(f"y{k}"), TAccount.dr(amount)),
                    Posting(credit_to, TAccount.cr(amount)),
                ),
                span=schedule.span,
            )
        )
    return out


def net_book_value(ledger: Ledger, schedule: MatchingSchedule) -> TAccount:
    """The source's carrying value, netting the contra account if present."""
    value = ledger.aggregate(schedule.source)
    contra = contra_account(schedule.source)
    if schedule.mode is ScheduleMode.CONTRA and contra in ledger.chart:
        value = value + ledger.aggregate(contra)
    return value.reduce()
