"""Exact scalar fields: the rationals and odd prime fields.

Values are kept as plain Python objects so inner loops stay cheap:
``fractions.Fraction`` over Q and an ``int`` residue in ``[0, p)`` over F_p.
A :class:`Field` knows how to combine and print them; :class:`Scalar` is a
small immutable wrapper for callers that want operator syntax.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any, Union

from sympy import isprime

__all__ = [
    "Field",
    "FieldError",
    "QQ",
    "Scalar",
    "field_make",
    "parse_field",
]

# keeps products of two residues inside a signed 64-bit word
MAX_MODULUS = 2**31 - 1

RawValue = Union[int, Fraction]


class FieldError(ValueError):
    """Invalid field or mismatched operands."""


@dataclass(frozen=True)
class Field:
    """Either Q (``modulus is None``) or F_p for an odd prime ``p``."""

    modulus: int | None = None

    def __post_init__(self):
        p = self.modulus
        if p is None:
            return
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"modulus must be an integer, got {p!r}")
        if p == 2:
            raise FieldError("characteristic two excluded")
        if p < 2 or not isprime(p):
            raise FieldError(f"modulus {p} is not prime")
        if p > MAX_MODULUS:
            raise FieldError(f"modulus {p} exceeds {MAX_MODULUS}")

    # -- identity -------------------------------------------------------
    @property
    def kind(self) -> str:
        return "Rationals" if self.modulus is None else "PrimeField"

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    def __str__(self) -> str:
        return "Q" if self.modulus is None else f"Fp:{self.modulus}"

    def __repr__(self) -> str:
        return f"Field({self})"

    # -- raw values -----------------------------------------------------
    @property
    def zero(self) -> RawValue:
        return Fraction(0) if self.modulus is None else 0

    @property
    def one(self) -> RawValue:
        return Fraction(1) if self.modulus is None else 1

    def __call__(self, x: Any) -> RawValue:
        """Coerce ``x`` (int, Fraction, str or Scalar) to a canonical raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldError(f"scalar over {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            x = int(x)
        p = self.modulus
        if p is None:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldError(f"cannot coerce {x!r} to Q")
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(den, -1, p) % p
        # numpy integers end up here
        try:
            return int(x) % p
        except (TypeError, ValueError):
            raise FieldError(f"cannot coerce {x!r} to {self}") from None

    def add(self, a, b):
        s = a + b
        return s if self.modulus is None else s % self.modulus

    def sub(self, a, b):
        s = a - b
        return s if self.modulus is None else s % self.modulus

    def neg(self, a):
        return -a if self.modulus is None else (-a) % self.modulus

    def mul(self, a, b):
        s = a * b
        return s if self.modulus is None else s % self.modulus

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero")
        if self.modulus is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        """Serialize: ``num/den`` over Q (den omitted when 1), residue over F_p."""
        if self.modulus is None:
            a = Fraction(a)
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(int(a) % self.modulus)

    def parse(self, s: str) -> RawValue:
        s = s.strip()
        try:
            if self.modulus is None:
                return Fraction(s)
            if "/" in s:
                return self(Fraction(s))
            return int(s) % self.modulus
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse {s!r} over {self}: {exc}") from None

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self(x))


QQ = Field()


def field_make(kind: str, modulus: int | None = None) -> Field:
    """Validated constructor by kind name (``"Rationals"`` / ``"PrimeField"``)."""
    k = kind.lower()
    if k in ("rationals", "q"):
        if modulus is not None:
            raise FieldError("the rationals take no modulus")
        return QQ
    if k in ("primefield", "fp"):
        if modulus is None:
            raise FieldError("a prime field needs a modulus")
        return Field(modulus)
    raise FieldError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Accepts ``q``/``Q`` and ``mod:<p>``/``Fp:<p>``."""
    t = text.strip()
    if t.lower() == "q":
        return QQ
    for prefix in ("mod:", "fp:"):
        if t.lower().startswith(prefix):
            try:
                p = int(t[len(prefix):])
            except ValueError:
                raise FieldError(f"bad modulus in {text!r}") from None
            return Field(p)
    raise FieldError(f"unrecognised field {text!r}; use q or mod:<p>")


@total_ordering
class Scalar:
    """Immutable field element with operator overloading."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Any = 0):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other) -> RawValue:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def _wrap(self, v) -> "Scalar":
        return Scalar(self.field, v)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return self._wrap(self.field.div(self._other(other), self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (FieldError, ZeroDivisionError):
            return NotImplemented

    def __lt__(self, other):
        # only meaningful over Q; residues compare as integers
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self})"
