"""Dated transactions and the views derived from them.

A transaction is a set of postings whose entries sum to a zero pair:
that is the double-entry principle, and it is what keeps the whole tree
balanced after every posting. The same postings can be read two ways:
summed up to a cutoff date they give a stock view (a balance sheet),
summed over an interval they give a flow view. Because each transaction
is itself a zero pair, a stock at one date plus the flow since then
reconciles exactly with the stock at any later date.

Journals and ledgers are immutable; every operation returns a new value,
so derivations may run concurrently over the same journal.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Sequence

from .algebra import Amount, SignedAmount, TAccount
from .chart import AccountPath, Chart
from .errors import (
    ChildCollisionError,
    ImbalanceError,
    IntervalError,
    LedgerError,
    NonLeafPostingError,
    PartitionMismatchError,
    UnknownAccountError,
)

if TYPE_CHECKING:
    from .diagnostics import SourceSpan
    from .matching import MatchingSchedule

__all__ = [
    "Posting",
    "Transaction",
    "TransactionCheck",
    "Journal",
    "Ledger",
    "ReconcileRow",
    "ReconciliationReport",
    "IncomeReport",
    "validate_transaction",
    "closing_transaction",
]


@dataclass(frozen=True, slots=True)
class Posting:
    """One account's share of a transaction: a single-sided entry.

    The entry must be canonical — a pure debit, a pure credit, or the
    zero pair. General two-sided pairs appear only in computed states.
    """

    account: AccountPath
    entry: TAccount
    span: "SourceSpan | None" = field(default=None, compare=False)

    def __post_init__(self):
        if not self.entry.is_canonical:
            raise ValueError(
                f"posting entry must be a pure debit or credit, got {self.entry}"
            )


@dataclass(frozen=True, slots=True)
class Transaction:
    """A dated, described list of postings.

    Validity (at least two postings summing to a zero pair) is checked
    by validate_transaction, not at construction, so that parsed but
    broken transactions can still be reported with their location.
    """

    date: dt.date
    description: str
    postings: tuple[Posting, ...]
    span: "SourceSpan | None" = field(default=None, compare=False)

    def total(self) -> TAccount:
        out = TAccount.zero()
        for p in self.postings:
            out = out + p.entry
        return out


@dataclass(frozen=True, slots=True)
class TransactionCheck:
    """Outcome of validating one transaction."""

    ok: bool
    reason: str | None = None  # "empty-transaction" | "imbalance"
    residual: SignedAmount | None = None


def validate_transaction(tx: Transaction) -> TransactionCheck:
    """Check the double-entry rule: postings must sum to a zero pair.

    Returns the signed residual (debit minus credit of the sum) when the
    transaction does not balance. Fewer than two postings is rejected
    outright.
    """
    if len(tx.postings) < 2:
        return TransactionCheck(False, reason="empty-transaction")
    total = tx.total()
    if not total.is_zero:
        return TransactionCheck(False, reason="imbalance", residual=total.balance())
    return TransactionCheck(True)


@dataclass(frozen=True)
class Ledger:
    """Per-account T-account state over a fixed chart.

    balances maps every postable leaf to its T-account. Posting
    accumulates raw pairs; stock views hand back reduced copies. A
    ledger remembers which view produced it (a cutoff date or an
    interval), if any.
    """

    chart: Chart
    balances: dict[AccountPath, TAccount]
    as_of: dt.date | None = None
    interval: tuple[dt.date, dt.date] | None = None

    @classmethod
    def empty(cls, chart: Chart) -> Ledger:
        return cls(chart, {leaf: TAccount.zero() for leaf in chart.leaves()})

    def balance(self, account: AccountPath) -> TAccount:
        if account in self.balances:
            return self.balances[account]
        if account in self.chart:
            raise NonLeafPostingError(f"account {account} is not postable")
        raise UnknownAccountError(f"unknown account {account}")

    def post(self, tx: Transaction) -> Ledger:
        """Fold one balanced transaction into the ledger.

        Each posting's entry is added componentwise to its account.
        Because the entries sum to a zero pair, the whole tree stays a
        zero representative.
        """
        check = validate_transaction(tx)
        if not check.ok:
            if check.reason == "imbalance":
                raise ImbalanceError(
                    f"unbalanced transaction: residual {check.residual}",
                    check.residual,
                    span=tx.span,
                )
            raise LedgerError(
                "transaction requires at least two postings", span=tx.span
            )
        balances = dict(self.balances)
        for p in tx.postings:
            if p.account not in balances:
                if p.account in self.chart:
                    raise NonLeafPostingError(
                        f"account {p.account} is not postable", span=p.span or tx.span
                    )
                raise UnknownAccountError(
                    f"unknown account {p.account}", span=p.span or tx.span
                )
            balances[p.account] = balances[p.account] + p.entry
        return replace(self, balances=balances)

    def aggregate(self, path: AccountPath) -> TAccount:
        """Componentwise sum of every leaf in the subtree at path."""
        out = TAccount.zero()
        for leaf in self.chart.leaves_under(path):
            out = out + self.balances[leaf]
        return out

    def total(self) -> TAccount:
        """Sum over the whole tree; a zero representative for any valid state."""
        out = TAccount.zero()
        for entry in self.balances.values():
            out = out + entry
        return out

    def refine(
        self, parent: AccountPath, parts: Sequence[tuple[AccountPath, TAccount]]
    ) -> Ledger:
        """Split a leaf's balance into named children, exactly.

        The shares must sum componentwise to the parent's stored
        T-account — no silent residual. The parent becomes an interior
        node and every aggregate above it is unchanged, so refinement
        only adds information, never wealth.
        """
        if parent not in self.chart:
            raise UnknownAccountError(f"unknown account {parent}")
        if parent not in self.balances:
            raise LedgerError(f"refine parent {parent} must be a postable leaf")
        if not parts:
            raise ValueError("refine requires at least one child")
        seen: set[AccountPath] = set()
        for child, _ in parts:
            if child.parent != parent:
                raise ValueError(f"{child} is not a direct child of {parent}")
            if child in self.chart or child in seen:
                raise ChildCollisionError(f"child {child} already exists")
            seen.add(child)
        share_sum = TAccount.zero()
        for _, share in parts:
            share_sum = share_sum + share
        target = self.balances[parent]
        if share_sum != target:
            residual = SignedAmount.from_fraction(
                share_sum.balance().as_fraction - target.balance().as_fraction
            )
            raise PartitionMismatchError(
                f"shares sum to {share_sum}, parent holds {target}"
                f" (signed residual {residual})",
                residual,
            )
        chart = self.chart
        for child, _ in parts:
            chart = chart.declare(child)
        balances = dict(self.balances)
        del balances[parent]
        for child, share in parts:
            balances[child] = share
        return replace(self, chart=chart, balances=balances)

    def reduced(self) -> Ledger:
        """Every balance replaced by its canonical representative."""
        return replace(
            self, balances={a: t.reduce() for a, t in self.balances.items()}
        )

    def scaled(self, k: Amount) -> Ledger:
        """Every balance scaled by k (basis normalization)."""
        return replace(self, balances={a: t.scale(k) for a, t in self.balances.items()})

    def items(self) -> list[tuple[AccountPath, TAccount]]:
        return sorted(self.balances.items())

    def nonzero_items(self) -> list[tuple[AccountPath, TAccount]]:
        """Reduced (account, pair) terms that survive reduction, sorted.

        This is the decomposition of the zero account: accounts whose
        pair reduces to zero drop out of the picture without being
        deleted from the ledger.
        """
        out = []
        for account, entry in sorted(self.balances.items()):
            reduced = entry.reduce()
            if not reduced.is_zero:
                out.append((account, reduced))
        return out


@dataclass(frozen=True)
class Journal:
    """Chart directives, dated transactions, and matching schedules.

    Transactions are kept sorted by date (stable, so file order breaks
    ties). Schedules stay directives here; expand() turns them into
    ordinary transactions for the derived views.
    """

    chart: Chart
    transactions: tuple[Transaction, ...] = ()
    schedules: "tuple[MatchingSchedule, ...]" = ()
    basis: Amount | None = None

    def __post_init__(self):
        ordered = tuple(sorted(self.transactions, key=lambda t: t.date))
        object.__setattr__(self, "transactions", ordered)
        object.__setattr__(self, "schedules", tuple(self.schedules))

    def expand(self) -> tuple[Chart, tuple[Transaction, ...]]:
        """Chart and transaction stream with schedules expanded.

        Schedule-generated accounts are declared on the fly; emitted
        transactions merge into date order after authored ones.
        """
        from .matching import emit_schedule_transactions, schedule_accounts

        chart = self.chart
        txs = list(self.transactions)
        for schedule in self.schedules:
            for account in schedule_accounts(schedule):
                if not chart.is_declared(account):
                    chart = chart.declare(account)
            txs.extend(emit_schedule_transactions(schedule))
        return chart, tuple(sorted(txs, key=lambda t: t.date))

    def stock_at(self, cutoff: dt.date) -> Ledger:
        """Balance-sheet view: post everything dated on or before cutoff.

        Balances come back reduced; posting errors carry the offending
        transaction's location.
        """
        chart, txs = self.expand()
        ledger = Ledger.empty(chart)
        for tx in txs:
            if tx.date > cutoff:
                break
            try:
                ledger = ledger.post(tx)
            except LedgerError as err:
                if err.span is None:
                    err.span = tx.span
                raise
        return replace(ledger.reduced(), as_of=cutoff)

    def flow_between(self, start: dt.date, end: dt.date) -> Ledger:
        """Flow view: raw componentwise posting sums over (start, end].

        The half-open interval means a stock at start plus this flow
        reconciles with the stock at end, with nothing double counted.
        The grand total of any flow view is itself a zero representative.
        """
        if start > end:
            raise IntervalError(f"inverted interval: {start} > {end}")
        chart, txs = self.expand()
        balances = {leaf: TAccount.zero() for leaf in chart.leaves()}
        for tx in txs:
            if tx.date <= start or tx.date > end:
                continue
            for p in tx.postings:
                if p.account not in balances:
                    if p.account in chart:
                        raise NonLeafPostingError(
                            f"account {p.account} is not postable",
                            span=p.span or tx.span,
                        )
                    raise UnknownAccountError(
                        f"unknown account {p.account}", span=p.span or tx.span
                    )
                balances[p.account] = balances[p.account] + p.entry
        return Ledger(chart, balances, interval=(start, end))

    def reconcile(self, start: dt.date, end: dt.date) -> ReconciliationReport:
        """Check stock(start) + flow(start, end] against stock(end) per account.

        Any violation signals an engine bug, not a journal problem: the
        identity is forced by the algebra for every valid journal.
        """
        opening = self.stock_at(start)
        flow = self.flow_between(start, end)
        closing = self.stock_at(end)
        rows = []
        for account in sorted(closing.balances):
            combined = opening.balances[account] + flow.balances[account]
            rows.append(
                ReconcileRow(
                    account=account,
                    opening=opening.balances[account],
                    flow=flow.balances[account],
                    closing=closing.balances[account],
                    ok=combined.equivalent(closing.balances[account]),
                )
            )
        return ReconciliationReport(start, end, tuple(rows))

    def income_report(
        self, start: dt.date, end: dt.date, nominal_roots: Sequence[AccountPath]
    ) -> IncomeReport:
        """Aggregate flows under the nominal roots into a net income pair.

        Net income is the balance of that aggregate with credit counted
        positive, so revenue above cost comes out positive.
        """
        flow = self.flow_between(start, end)
        rows = []
        total = TAccount.zero()
        for root in nominal_roots:
            agg = flow.aggregate(root)
            rows.append((root, agg))
            total = total + agg
        net = SignedAmount.from_fraction(
            total.credit.as_fraction - total.debit.as_fraction
        )
        return IncomeReport(start, end, tuple(rows), total, net)


@dataclass(frozen=True, slots=True)
class ReconcileRow:
    account: AccountPath
    opening: TAccount
    flow: TAccount
    closing: TAccount
    ok: bool


@dataclass(frozen=True)
class ReconciliationReport:
    start: dt.date
    end: dt.date
    rows: tuple[ReconcileRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    @property
    def violations(self) -> tuple[ReconcileRow, ...]:
        return tuple(row for row in self.rows if not row.ok)


@dataclass(frozen=True)
class IncomeReport:
    start: dt.date
    end: dt.date
    rows: tuple[tuple[AccountPath, TAccount], ...]
    total: TAccount
    net_income: SignedAmount


def closing_transaction(
    journal: Journal,
    start: dt.date,
    end: dt.date,
    nominal_roots: Sequence[AccountPath],
    target: AccountPath,
    description: str = "close nominal flows",
) -> Transaction:
    """Optional plumbing: a transaction moving net nominal flows to target.

    Income stays a derived view; nothing requires closing entries. This
    builds one for users who want the books to show it explicitly.
    """
    flow = journal.flow_between(start, end)
    if target not in flow.balances:
        raise UnknownAccountError(f"closing target {target} is not a postable leaf")
    postings = []
    moved = TAccount.zero()
    for root in nominal_roots:
        for leaf in flow.chart.leaves_under(root):
            net = flow.balances[leaf].reduce()
            if net.is_zero:
                continue
            postings.append(Posting(leaf, net.inverse()))
            moved = moved + net.inverse()
    if not postings:
        raise ValueError("no nominal activity to close")
    postings.append(Posting(target, moved.inverse().reduce()))
    return Transaction(end, description, tuple(postings))
