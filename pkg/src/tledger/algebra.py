"""Exact T-account algebra.

A T-account is an ordered pair (debit, credit) of non-negative exact
rationals. Under componentwise addition the pairs form a commutative
group once pairs with equal cross-sums are identified: (a, b) ~ (c, d)
iff a + d = b + c, the additive analogue of fraction equivalence. Every
pair (x, x) represents the neutral element, and the unique canonical
representative of a class has a zero on at least one side.

All arithmetic is exact: amounts are arbitrary-precision rationals kept
in lowest terms, so the group laws hold with component equality, never
within a tolerance. All types here are immutable values and all
operations are pure functions; they are safe to share across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Amount", "SignedAmount", "TAccount"]

_DECIMAL_RE = re.compile(r"^(\d+)\.(\d+)$")
_RATIONAL_RE = re.compile(r"^(\d+)/(\d+)$")
_INTEGER_RE = re.compile(r"^\d+$")


class Amount:
    """A non-negative exact rational quantity of value.

    Stored in lowest terms with a positive denominator; zero is 0/1.
    Amounts never go negative: subtraction that would cross zero raises,
    and signedness lives in SignedAmount instead.
    """

    __slots__ = ("_value",)

    def __init__(self, numerator: int | Fraction = 0, denominator: int = 1):
        if isinstance(numerator, Fraction):
            if denominator != 1:
                raise ValueError("denominator not allowed with a Fraction numerator")
            value = numerator
        else:
            if denominator == 0:
                raise ValueError("zero denominator")
            value = Fraction(numerator, denominator)
        if value < 0:
            raise ValueError(f"amount must be non-negative, got {value}")
        self._value = value

    @classmethod
    def _wrap(cls, value: Fraction) -> Amount:
        # Fast path for internal arithmetic: value is already a
        # normalized non-negative Fraction.
        out = object.__new__(cls)
        out._value = value
        return out

    @classmethod
    def parse(cls, text: str) -> Amount:
        """Parse an exact literal: "7", "493827.16", or "2/5".

        Decimal literals convert exactly (493827.16 becomes 49382716/100
        before reduction); no floating point is involved. Raises
        ValueError for malformed input or a zero denominator.
        """
        if _INTEGER_RE.match(text):
            return cls(int(text))
        if m := _DECIMAL_RE.match(text):
            whole, frac = m.group(1), m.group(2)
            return cls(int(whole + frac), 10 ** len(frac))
        if m := _RATIONAL_RE.match(text):
            num, den = int(m.group(1)), int(m.group(2))
            if den == 0:
                raise ValueError("zero denominator")
            return cls(num, den)
        raise ValueError(f"malformed amount {text!r}")

    @property
    def numerator(self) -> int:
        return self._value.numerator

    @property
    def denominator(self) -> int:
        return self._value.denominator

    @property
    def as_fraction(self) -> Fraction:
        return self._value

    def __add__(self, other: Amount) -> Amount:
        if not isinstance(other, Amount):
            return NotImplemented
        return Amount._wrap(self._value + other._value)

    def __sub__(self, other: Amount) -> Amount:
        """Partial subtraction: defined only when the result stays >= 0."""
        if not isinstance(other, Amount):
            return NotImplemented
        value = self._value - other._value
        if value < 0:
            raise ValueError(f"amount subtraction went negative: {self} - {other}")
        return Amount._wrap(value)

    def __mul__(self, other: Amount) -> Amount:
        if not isinstance(other, Amount):
            return NotImplemented
        return Amount._wrap(self._value * other._value)

    def reciprocal(self) -> Amount:
        if not self._value:
            raise ZeroDivisionError("reciprocal of zero amount")
        return Amount._wrap(1 / self._value)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Amount):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other: Amount) -> bool:
        return self._value < other._value

    def __le__(self, other: Amount) -> bool:
        return self._value <= other._value

    def __gt__(self, other: Amount) -> bool:
        return self._value > other._value

    def __ge__(self, other: Amount) -> bool:
        return self._value >= other._value

    def __hash__(self) -> int:
        return hash(self._value)

    def __bool__(self) -> bool:
        return bool(self._value)

    def __str__(self) -> str:
        # Reduced rational; integers drop the "/1".
        if self._value.denominator == 1:
            return str(self._value.numerator)
        return f"{self._value.numerator}/{self._value.denominator}"

    def __repr__(self) -> str:
        return f"Amount({self._value.numerator}, {self._value.denominator})"

    def to_decimal(self, places: int) -> str:
        """Render at a fixed number of decimal places, rounding half to even.

        Rendering is presentation only; it never feeds back into
        computation, which stays exact.
        """
        if places < 0:
            raise ValueError("places must be >= 0")
        scaled = self._value * 10**places
        q, r = divmod(scaled.numerator, scaled.denominator)
        double = 2 * r
        if double > scaled.denominator or (double == scaled.denominator and q % 2):
            q += 1
        if places == 0:
            return str(q)
        digits = str(q).rjust(places + 1, "0")
        return f"{digits[:-places]}.{digits[-places:]}"


@dataclass(frozen=True, slots=True)
class SignedAmount:
    """A signed exact rational: a sign in {-1, 0, +1} and a magnitude.

    The sign is zero exactly when the magnitude is zero.
    """

    sign: int
    magnitude: Amount

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0, or +1, got {self.sign}")
        if (self.sign == 0) != (not self.magnitude):
            raise ValueError("sign is zero iff magnitude is zero")

    @classmethod
    def from_fraction(cls, value: Fraction) -> SignedAmount:
        sign = (value > 0) - (value < 0)
        return cls(sign, Amount._wrap(abs(value)))

    @classmethod
    def zero(cls) -> SignedAmount:
        return cls(0, Amount(0))

    @property
    def as_fraction(self) -> Fraction:
        return self.sign * self.magnitude.as_fraction

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        return f"{'+' if self.sign > 0 else '-'}{self.magnitude}"


@dataclass(frozen=True, slots=True)
class TAccount:
    """An ordered (debit, credit) pair of non-negative exact amounts."""

    debit: Amount
    credit: Amount

    @classmethod
    def dr(cls, amount: Amount) -> TAccount:
        """A pure debit entry (amount, 0)."""
        return cls(amount, Amount(0))

    @classmethod
    def cr(cls, amount: Amount) -> TAccount:
        """A pure credit entry (0, amount)."""
        return cls(Amount(0), amount)

    @classmethod
    def zero(cls) -> TAccount:
        return cls(Amount(0), Amount(0))

    def __add__(self, other: TAccount) -> TAccount:
        """Combine two T-accounts: debits add to debits, credits to credits."""
        if not isinstance(other, TAccount):
            return NotImplemented
        return TAccount(self.debit + other.debit, self.credit + other.credit)

    def inverse(self) -> TAccount:
        """The additive inverse: swap the sides, so a + a.inverse() is zero."""
        return TAccount(self.credit, self.debit)

    def equivalent(self, other: TAccount) -> bool:
        """Whether the two pairs carry the same class: cross-sums agree.

        (a, b) ~ (c, d) iff a + d = b + c.
        """
        return (
            self.debit.as_fraction + other.credit.as_fraction
            == other.debit.as_fraction + self.credit.as_fraction
        )

    def reduce(self) -> TAccount:
        """The canonical class representative: subtract the common part.

        The result is equivalent to the input and has a zero on at least
        one side. Idempotent.
        """
        common = min(self.debit, self.credit)
        return TAccount(self.debit - common, self.credit - common)

    def balance(self) -> SignedAmount:
        """Net of the pair as a signed quantity: debit minus credit."""
        return SignedAmount.from_fraction(
            self.debit.as_fraction - self.credit.as_fraction
        )

    @property
    def is_zero(self) -> bool:
        """Whether the pair represents the neutral element: equal sides."""
        return self.debit == self.credit

    @property
    def is_canonical(self) -> bool:
        """Whether at least one side is zero (reduced form)."""
        return not self.debit or not self.credit

    def scale(self, k: Amount) -> TAccount:
        """Multiply both sides by a non-negative factor.

        Used for basis normalization: scaling by the reciprocal of a
        declared total re-expresses every amount as a fraction of it.
        """
        return TAccount(self.debit * k, self.credit * k)

    def __str__(self) -> str:
        return f"({self.debit}, {self.credit})"
