"""Batch command-line surface.

Every command is a pure read of a journal file: parse, validate, derive,
print. Reports go to standard output, diagnostics to standard error.
Exit codes: 0 success, 1 validation or usage-of-data failure, 2 parse
failure. Identical inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import datetime as dt
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import Amount, TAccount
from .chart import AccountPath
from .ledger import Journal, Ledger
from .matching import emit_schedule_transactions
from .parser import format_transaction_block, parse_journal, validate_file

__all__ = ["RenderOptions", "main", "entry"]


@dataclass(frozen=True)
class RenderOptions:
    """How report values are shown; never affects computation.

    places None renders reduced rationals; an integer renders fixed
    decimals (round half to even). Percent mode divides by the declared
    basis. Zero-balance accounts are hidden unless show_zero is set.
    """

    places: int | None = None
    percent: bool = False
    show_zero: bool = False

    def __post_init__(self):
        if self.places is not None and not 0 <= self.places <= 12:
            raise ValueError("decimal places must be between 0 and 12")


def _fmt_fraction(value: Fraction, places: int | None) -> str:
    if places is None:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    sign = "-" if value < 0 else ""
    return sign + Amount(abs(value)).to_decimal(places)


def _fmt_value(value: Fraction, opts: RenderOptions) -> str:
    """A signed scalar; percent mode shows it as a percentage of basis."""
    if opts.percent:
        return _fmt_fraction(value * 100, opts.places) + "%"
    return _fmt_fraction(value, opts.places)


def _fmt_pair(entry: TAccount, places: int | None) -> str:
    debit = _fmt_fraction(entry.debit.as_fraction, places)
    credit = _fmt_fraction(entry.credit.as_fraction, places)
    return f"({debit}, {credit})"


def _zero_check_line(total: TAccount, places: int | None) -> str:
    if total.is_zero:
        return f"total  {_fmt_pair(total, places)}  = 0  ok"
    return f"total  {_fmt_pair(total, places)}  IMBALANCED residual {total.balance()}"


# -- loading ----------------------------------------------------------


def _read_file(path: str) -> str | None:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        print(f"error: cannot read {path}: {err}", file=sys.stderr)
        return None


def _load_valid(path: str, strict: bool) -> tuple[Journal | None, int]:
    """Parse and fully validate; on failure report and pick the exit code."""
    text = _read_file(path)
    if text is None:
        return None, 2
    report = validate_file(text, file=path, strict=strict)
    for diag in report.diagnostics:
        print(diag.render(), file=sys.stderr)
    if report.status == "parse-error":
        return None, 2
    if report.status == "invalid":
        return None, 1
    journal, _ = parse_journal(text, file=path, strict=strict)
    return journal, 0


def _resolve_cutoff(journal: Journal, at: dt.date | None) -> dt.date:
    if at is not None:
        return at
    _, txs = journal.expand()
    return txs[-1].date if txs else dt.date.min


def _percent_scaled(
    journal: Journal, ledger: Ledger, opts: RenderOptions
) -> Ledger | None:
    if not opts.percent:
        return ledger
    if journal.basis is None:
        print("error: --percent requires a basis declaration", file=sys.stderr)
        return None
    return ledger.scaled(journal.basis.reciprocal())


# -- commands ---------------------------------------------------------


def cmd_check(args) -> int:
    text = _read_file(args.file)
    if text is None:
        return 2
    report = validate_file(text, file=args.file, strict=not args.loose)
    for diag in report.diagnostics:
        print(diag.render(), file=sys.stderr)
    if report.ok:
        print(report.message)
        return 0
    return 2 if report.status == "parse-error" else 1


def cmd_balance(args, opts: RenderOptions) -> int:
    journal, code = _load_valid(args.file, not args.loose)
    if journal is None:
        return code
    cutoff = _resolve_cutoff(journal, args.at)
    ledger = _percent_scaled(journal, journal.stock_at(cutoff), opts)
    if ledger is None:
        return 1

    chart = ledger.chart
    lines: list[str] = [f"balance as of {cutoff.isoformat()}"]

    def visit(path: AccountPath, depth: int) -> list[str]:
        agg = ledger.aggregate(path).reduce()
        child_lines: list[str] = []
        for child in chart.children(path):
            child_lines.extend(visit(child, depth + 1))
        if not (opts.show_zero or not agg.is_zero or child_lines):
            return []
        value = _fmt_value(agg.balance().as_fraction, opts)
        return [f"{'  ' * (depth + 1)}{path.leaf}  {value}"] + child_lines

    for root in chart.roots():
        lines.extend(visit(root, 0))
    lines.append(_zero_check_line(ledger.total(), opts.places))
    print("\n".join(lines))
    return 0


def cmd_flows(args, opts: RenderOptions) -> int:
    journal, code = _load_valid(args.file, not args.loose)
    if journal is None:
        return code
    _, txs = journal.expand()
    start = args.from_date
    end = args.to_date
    if start is None:
        start = txs[0].date - dt.timedelta(days=1) if txs else dt.date.min
    if end is None:
        end = txs[-1].date if txs else dt.date.min
    if start > end:
        print(f"error: inverted interval: {start} > {end}", file=sys.stderr)
        return 1
    ledger = _percent_scaled(journal, journal.flow_between(start, end), opts)
    if ledger is None:
        return 1
    lines = [f"flows from {start.isoformat()} to {end.isoformat()}"]
    for account, entry in ledger.items():
        net = entry.reduce()
        if net.is_zero and not opts.show_zero:
            continue
        if net.credit:
            side, amount = "cr", net.credit
        else:
            side, amount = "dr", net.debit
        lines.append(f"  {account}  {side} {_fmt_value(amount.as_fraction, opts)}")
    lines.append(_zero_check_line(ledger.total(), opts.places))
    print("\n".join(lines))
    return 0


def cmd_equation(args, opts: RenderOptions) -> int:
    journal, code = _load_valid(args.file, not args.loose)
    if journal is None:
        return code
    cutoff = _resolve_cutoff(journal, args.at)
    ledger = _percent_scaled(journal, journal.stock_at(cutoff), opts)
    if ledger is None:
        return 1
    terms = ledger.nonzero_items()
    if terms:
        rendered = " + ".join(
            f"{_fmt_pair(entry, opts.places)}_{account}" for account, entry in terms
        )
        print(f"0 = {rendered}")
    else:
        print("0 = (0, 0)")
    print(_zero_check_line(ledger.total(), opts.places))
    return 0


def cmd_schedule(args) -> int:
    journal, code = _load_valid(args.file, not args.loose)
    if journal is None:
        return code
    blocks = []
    for schedule in journal.schedules:
        header = (
            f"; schedule {schedule.source} over"
            f" {len(schedule.periods)} periods ({schedule.mode.value})"
        )
        txs = emit_schedule_transactions(schedule)
        blocks.append("\n\n".join([header] + [format_transaction_block(t) for t in txs]))
    if blocks:
        print("\n\n".join(blocks))
    return 0


# -- argument plumbing ------------------------------------------------


def _places(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= 12:
        raise argparse.ArgumentTypeError("decimal places must be between 0 and 12")
    return value


def _iso_date(text: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a YYYY-MM-DD date: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tledger",
        description="Double-entry ledger engine over plain-text journal files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, render: bool = True):
        p.add_argument("file", help="journal file")
        p.add_argument(
            "--loose",
            action="store_true",
            help="declare accounts implicitly on first use",
        )
        if render:
            p.add_argument(
                "--percent",
                action="store_true",
                help="express values as fractions of the declared basis",
            )
            p.add_argument(
                "--decimal",
                type=_places,
                metavar="PLACES",
                help="render fixed decimals (0-12 places) instead of rationals",
            )
            p.add_argument(
                "--show-zero",
                action="store_true",
                help="include accounts whose reduced balance is zero",
            )

    p = sub.add_parser("check", help="validate the file; exit 0/1/2")
    common(p, render=False)

    p = sub.add_parser("balance", help="stock view at a cutoff date")
    common(p)
    p.add_argument("--at", type=_iso_date, metavar="DATE", help="cutoff (default: last)")

    p = sub.add_parser("flows", help="net flows over a half-open interval")
    common(p)
    p.add_argument("--from", dest="from_date", type=_iso_date, metavar="DATE")
    p.add_argument("--to", dest="to_date", type=_iso_date, metavar="DATE")

    p = sub.add_parser("equation", help="zero-account decomposition at a date")
    common(p)
    p.add_argument("--at", type=_iso_date, metavar="DATE", help="cutoff (default: last)")

    p = sub.add_parser("schedule", help="print the transactions schedules will emit")
    common(p, render=False)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "check":
        return cmd_check(args)
    if args.command == "schedule":
        return cmd_schedule(args)
    opts = RenderOptions(
        places=args.decimal, percent=args.percent, show_zero=args.show_zero
    )
    if args.command == "balance":
        return cmd_balance(args, opts)
    if args.command == "flows":
        return cmd_flows(args, opts)
    return cmd_equation(args, opts)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
