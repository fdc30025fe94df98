"""The plain-text journal language: parsing, serializing, validating.

The format is line-oriented and diffable:

    ; comment to end of line
    basis 1234567.89
    account assets:cash
    schedule assets:machine expenses:interest 2/5 over 5 yearly from 2020-01-04 mode direct

    2020-01-01 "opening balance sheet"
        assets:cash dr 1234567.89
        equity:capital cr 1234567.89

A transaction block is a date-and-description header followed by
indented postings, terminated by a blank line or end of file. Amounts
come in exactly two forms, decimals and rationals, and both parse
exactly: 493827.16 becomes 49382716/100 before reduction, never a float.

Parsing never throws past this boundary: every problem becomes a
diagnostic with a 1-based source span, and after an error the parser
skips to the next blank line so one pass can surface several mistakes.
A journal value is only produced for input with zero errors.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass

from .algebra import Amount, TAccount
from .chart import AccountPath, Chart
from .diagnostics import ParseDiagnostic, Severity, SourceSpan
from .errors import DuplicateAccountError, LedgerError
from .ledger import (
    Journal,
    Ledger,
    Posting,
    Transaction,
    validate_transaction,
)
from .matching import MatchingSchedule, ScheduleMode, add_years, build_schedule

__all__ = [
    "parse_journal",
    "serialize_journal",
    "format_transaction_block",
    "validate_file",
    "FileReport",
]

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_HEADER_RE = re.compile(r'^(\d{4}-\d{2}-\d{2})\s+"([^"]*)"\s*$')
_SIDES = {"dr": "dr", "debit": "dr", "cr": "cr", "credit": "cr"}


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 0-based column offsets."""
    return [(m.group(0), m.start()) for m in re.finditer(r"\S+", line)]


class _FileParser:
    def __init__(self, text: str, file: str, strict: bool):
        self.file = file
        self.strict = strict
        self.lines = text.split("\n")
        self.diagnostics: list[ParseDiagnostic] = []
        self.chart = Chart.empty()
        self.transactions: list[Transaction] = []
        self.schedules: list[MatchingSchedule] = []
        self.basis: Amount | None = None
        self.lineno = 0
        self.recovering = False
        # open transaction block, if any
        self.header: tuple[dt.date, str, SourceSpan] | None = None
        self.postings: list[Posting] = []

    # -- diagnostics -------------------------------------------------

    def span(self, col: int, length: int) -> SourceSpan:
        return SourceSpan(self.file, self.lineno, col + 1, max(length, 1))

    def line_span(self, line: str) -> SourceSpan:
        stripped = line.strip()
        col = line.find(stripped[0]) if stripped else 0
        return self.span(col, len(stripped))

    def error(self, message: str, span: SourceSpan, *, recover: bool = False):
        self.diagnostics.append(ParseDiagnostic(Severity.ERROR, message, span))
        if recover:
            self.recovering = True
            if self.header is not None:
                self.header = None
                self.postings = []

    def warn(self, message: str, span: SourceSpan):
        self.diagnostics.append(ParseDiagnostic(Severity.WARNING, message, span))

    # -- small parsers -----------------------------------------------

    def parse_path(self, token: str, col: int) -> AccountPath | None:
        try:
            return AccountPath.parse(token)
        except ValueError as err:
            self.error(str(err), self.span(col, len(token)))
            return None

    def parse_amount(self, token: str, col: int) -> Amount | None:
        try:
            return Amount.parse(token)
        except ValueError as err:
            self.error(str(err), self.span(col, len(token)))
            return None

    def parse_date(self, token: str, col: int) -> dt.date | None:
        if not _DATE_RE.match(token):
            self.error(f"malformed date {token!r}", self.span(col, len(token)))
            return None
        try:
            return dt.date.fromisoformat(token)
        except ValueError:
            self.error(f"invalid date {token!r}", self.span(col, len(token)))
            return None

    def resolve_account(self, path: AccountPath, col: int, token: str) -> bool:
        """Strict mode demands declaration before use; loose declares on use."""
        if self.chart.is_declared(path):
            return True
        if self.strict:
            self.error(
                f"undeclared account {path}", self.span(col, len(token))
            )
            return False
        self.chart = self.chart.declare(path)
        self.warn(
            f"implicitly declared account {path}", self.span(col, len(token))
        )
        return True

    # -- line handlers -----------------------------------------------

    def run(self) -> tuple[Journal | None, list[ParseDiagnostic]]:
        for raw in self.lines:
            self.lineno += 1
            line = raw.rstrip("\r")
            blank = not line.strip()
            comment = line.find(";")
            if comment >= 0:
                line = line[:comment]
            if blank:
                self.close_transaction()
                self.recovering = False
                continue
            if not line.strip():
                continue  # comment-only line; does not end a block
            if self.recovering:
                continue
            if line[0] in (" ", "\t"):
                self.handle_posting(line)
            else:
                self.handle_top_level(line)
        self.close_transaction()
        if any(d.severity is Severity.ERROR for d in self.diagnostics):
            return None, self.diagnostics
        journal = Journal(
            self.chart,
            tuple(self.transactions),
            tuple(self.schedules),
            self.basis,
        )
        return journal, self.diagnostics

    def close_transaction(self):
        if self.header is None:
            return
        date, description, span = self.header
        self.transactions.append(
            Transaction(date, description, tuple(self.postings), span=span)
        )
        self.header = None
        self.postings = []

    def handle_top_level(self, line: str):
        if self.header is not None:
            self.error(
                "expected posting or blank line inside transaction block",
                self.line_span(line),
                recover=True,
            )
            return
        keyword = line.split(None, 1)[0]
        if keyword == "basis":
            self.handle_basis(line)
        elif keyword == "account":
            self.handle_account(line)
        elif keyword == "schedule":
            self.handle_schedule(line)
        elif keyword[0].isdigit():
            self.handle_header(line)
        else:
            self.error(
                f"unknown directive {keyword!r}", self.line_span(line), recover=True
            )

    def handle_basis(self, line: str):
        toks = _tokens(line)
        if len(toks) != 2:
            self.error("expected: basis <amount>", self.line_span(line), recover=True)
            return
        token, col = toks[1]
        amount = self.parse_amount(token, col)
        if amount is None:
            return
        if not amount:
            self.error("basis must be positive", self.span(col, len(token)))
            return
        if self.basis is not None:
            self.error("basis already declared", self.span(col, len(token)))
            return
        self.basis = amount

    def handle_account(self, line: str):
        toks = _tokens(line)
        if len(toks) != 2:
            self.error(
                "expected: account <path>", self.line_span(line), recover=True
            )
            return
        token, col = toks[1]
        path = self.parse_path(token, col)
        if path is None:
            return
        try:
            self.chart = self.chart.declare(path)
        except DuplicateAccountError as err:
            self.error(str(err), self.span(col, len(token)))

    def handle_schedule(self, line: str):
        toks = _tokens(line)
        if len(toks) != 11 or [toks[i][0] for i in (4, 6, 7, 9)] != [
            "over",
            "yearly",
            "from",
            "mode",
        ]:
            self.error(
                "expected: schedule <source> <counterpart> <amount>"
                " over <n> yearly from <date> mode <direct|contra>",
                self.line_span(line),
                recover=True,
            )
            return
        source = self.parse_path(*toks[1])
        counterpart = self.parse_path(*toks[2])
        total = self.parse_amount(*toks[3])
        n_tok, n_col = toks[5]
        n = int(n_tok) if n_tok.isdigit() else 0
        if n < 1:
            self.error(
                "schedule period count must be a positive integer",
                self.span(n_col, len(n_tok)),
            )
            n = None
        start = self.parse_date(*toks[8])
        mode_tok, mode_col = toks[10]
        try:
            mode = ScheduleMode(mode_tok)
        except ValueError:
            self.error(
                f"schedule mode must be direct or contra, got {mode_tok!r}",
                self.span(mode_col, len(mode_tok)),
            )
            mode = None
        if None in (source, counterpart, total, n, start, mode):
            return
        if not total:
            self.error(
                "schedule total must be positive",
                self.span(toks[3][1], len(toks[3][0])),
            )
            return
        ok = self.resolve_account(source, toks[1][1], toks[1][0])
        ok = self.resolve_account(counterpart, toks[2][1], toks[2][0]) and ok
        if not ok:
            return
        self.schedules.append(
            build_schedule(
                source, counterpart, total, n, start, mode, span=self.line_span(line)
            )
        )

    def handle_header(self, line: str):
        m = _HEADER_RE.match(line.rstrip())
        if m is None:
            self.error(
                'expected transaction header: <YYYY-MM-DD> "<description>"',
                self.line_span(line),
                recover=True,
            )
            return
        date = self.parse_date(m.group(1), 0)
        if date is None:
            self.recovering = True
            return
        self.header = (date, m.group(2), self.line_span(line))
        self.postings = []

    def handle_posting(self, line: str):
        if self.header is None:
            self.error(
                "posting outside a transaction block",
                self.line_span(line),
                recover=True,
            )
            return
        toks = _tokens(line)
        if len(toks) != 3:
            self.error(
                "expected posting: <account-path> <dr|cr> <amount>",
                self.line_span(line),
                recover=True,
            )
            return
        path = self.parse_path(*toks[0])
        side_tok, side_col = toks[1]
        side = _SIDES.get(side_tok)
        if side is None:
            self.error(
                f"expected side keyword dr or cr, got {side_tok!r}",
                self.span(side_col, len(side_tok)),
            )
        amount = self.parse_amount(*toks[2])
        if path is None or side is None or amount is None:
            return
        if not self.resolve_account(path, toks[0][1], toks[0][0]):
            return
        entry = TAccount.dr(amount) if side == "dr" else TAccount.cr(amount)
        self.postings.append(
            Posting(path, entry, span=self.span(toks[0][1], len(toks[0][0])))
        )


def parse_journal(
    text: str, file: str = "<journal>", strict: bool = True
) -> tuple[Journal | None, list[ParseDiagnostic]]:
    """Parse journal text into (journal, diagnostics).

    The journal is None whenever any error-severity diagnostic was
    produced. Loose mode (strict=False) declares accounts implicitly on
    first use and downgrades that to a warning.
    """
    return _FileParser(text, file, strict).run()


def _posting_line(posting: Posting) -> str:
    entry = posting.entry
    if entry.credit:
        return f"    {posting.account} cr {entry.credit}"
    return f"    {posting.account} dr {entry.debit}"


def format_transaction_block(tx: Transaction) -> str:
    """A transaction in journal syntax, ready to paste into a file."""
    lines = [f'{tx.date.isoformat()} "{tx.description}"']
    lines.extend(_posting_line(p) for p in tx.postings)
    return "\n".join(lines)


def _check_serializable(journal: Journal):
    for tx in journal.transactions:
        if any(ch in tx.description for ch in ';"\n'):
            raise ValueError(
                f"description {tx.description!r} is not representable"
            )
    for s in journal.schedules:
        n = len(s.periods)
        straight = s.start is not None and s.periods == tuple(
            (add_years(s.start, k), Amount(1, n)) for k in range(1, n + 1)
        )
        if not straight:
            raise ValueError("only straight-line schedules have journal syntax")


def serialize_journal(journal: Journal) -> str:
    """Canonical rendering: directives first, then date-ordered blocks.

    Amounts always come out as reduced rationals, so a decimal literal
    in the input reappears as its exact fraction. Parsing the output
    reproduces the journal structurally, and serializing again is
    byte-stable.
    """
    _check_serializable(journal)
    directives = []
    if journal.basis is not None:
        directives.append(f"basis {journal.basis}")
    directives.extend(f"account {p}" for p in journal.chart.declared_paths())
    for s in journal.schedules:
        directives.append(
            f"schedule {s.source} {s.counterpart_prefix} {s.total}"
            f" over {len(s.periods)} yearly from {s.start.isoformat()}"
            f" mode {s.mode.value}"
        )
    blocks = [format_transaction_block(tx) for tx in journal.transactions]
    parts = []
    if directives:
        parts.append("\n".join(directives))
    parts.extend(blocks)
    if not parts:
        return ""
    return "\n\n".join(parts) + "\n"


@dataclass(frozen=True)
class FileReport:
    """Aggregate verdict on one journal file."""

    status: str  # "ok" | "invalid" | "parse-error"
    diagnostics: tuple[ParseDiagnostic, ...]
    transactions: int
    message: str

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def validate_file(
    text: str, file: str = "<journal>", strict: bool = True
) -> FileReport:
    """Parse, then replay: every transaction must balance and post cleanly.

    After each posted transaction the whole tree is checked to still be
    a zero representative; a violation there would be an engine bug and
    is reported as an internal inconsistency. Problems are aggregated as
    diagnostics, never thrown.
    """
    journal, diagnostics = parse_journal(text, file=file, strict=strict)
    diags = list(diagnostics)
    if journal is None:
        n = sum(1 for d in diags if d.severity is Severity.ERROR)
        return FileReport("parse-error", tuple(diags), 0, f"{n} parse error(s)")
    fallback = SourceSpan(file, 1, 1, 1)
    chart, txs = journal.expand()
    ledger = Ledger.empty(chart)
    posted = 0
    for tx in txs:
        span = tx.span or fallback
        check = validate_transaction(tx)
        if not check.ok:
            if check.reason == "imbalance":
                message = f"unbalanced transaction: residual {check.residual}"
            else:
                message = "transaction requires at least two postings"
            diags.append(ParseDiagnostic(Severity.ERROR, message, span))
            continue
        try:
            ledger = ledger.post(tx)
        except LedgerError as err:
            diags.append(
                ParseDiagnostic(Severity.ERROR, str(err), err.span or span)
            )
            continue
        posted += 1
        if not ledger.total().is_zero:
            diags.append(
                ParseDiagnostic(
                    Severity.ERROR,
                    "internal inconsistency: tree total is not a zero"
                    f" representative after {tx.date} {tx.description!r}",
                    span,
                )
            )
    errors = sum(1 for d in diags if d.severity is Severity.ERROR)
    if errors:
        return FileReport(
            "invalid", tuple(diags), posted, f"{errors} validation error(s)"
        )
    return FileReport(
        "ok", tuple(diags), posted, f"ok: {posted} transactions, root ≡ 0"
    )
