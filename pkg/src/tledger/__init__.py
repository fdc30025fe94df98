"""tledger: a double-entry ledger engine with exact T-account algebra.

Amounts are arbitrary-precision rationals; T-accounts are (debit,
credit) pairs forming a commutative group under componentwise addition;
transactions are zero pairs; stock and flow views of a journal
reconcile exactly. A plain-text journal language and a batch CLI sit on
top of the algebra.
"""

from .algebra import Amount, SignedAmount, TAccount
from .chart import AccountPath, Chart
from .diagnostics import ParseDiagnostic, Severity, SourceSpan
from .errors import (
    ChildCollisionError,
    DuplicateAccountError,
    ImbalanceError,
    InsufficientBalanceError,
    IntervalError,
    LedgerError,
    NonLeafPostingError,
    PartitionMismatchError,
    UnknownAccountError,
)
from .ledger import (
    IncomeReport,
    Journal,
    Ledger,
    Posting,
    ReconciliationReport,
    ReconcileRow,
    Transaction,
    TransactionCheck,
    closing_transaction,
    validate_transaction,
)
from .matching import (
    ActivityPair,
    MatchingSchedule,
    ScheduleMode,
    build_schedule,
    complete_activity,
    contra_account,
    emit_schedule_transactions,
    net_book_value,
    reclassify,
)
from .parser import (
    FileReport,
    format_transaction_block,
    parse_journal,
    serialize_journal,
    validate_file,
)

__version__ = "0.1.0"

__all__ = [
    "Amount",
    "SignedAmount",
    "TAccount",
    "AccountPath",
    "Chart",
    "ParseDiagnostic",
    "Severity",
    "SourceSpan",
    "LedgerError",
    "DuplicateAccountError",
    "UnknownAccountError",
    "NonLeafPostingError",
    "ImbalanceError",
    "PartitionMismatchError",
    "ChildCollisionError",
    "InsufficientBalanceError",
    "IntervalError",
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
    "ActivityPair",
    "MatchingSchedule",
    "ScheduleMode",
    "build_schedule",
    "complete_activity",
    "contra_account",
    "emit_schedule_transactions",
    "net_book_value",
    "reclassify",
    "parse_journal",
    "serialize_journal",
    "format_transaction_block",
    "validate_file",
    "FileReport",
    "__version__",
]
