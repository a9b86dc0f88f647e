"""Exact ground fields: the rationals and prime fields.

Scalars are plain Python objects so that the common case (small integers)
stays fast:

* over ``QQ`` a scalar is an ``int`` or a ``fractions.Fraction`` in lowest
  terms; integral fractions are collapsed back to ``int`` by :meth:`norm`;
* over ``GF(p)`` a scalar is an ``int`` in ``range(p)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache


class FieldMismatchError(ValueError):
    """Raised when values from two different fields are combined."""


class Field:
    name: str
    characteristic: int

    def norm(self, x):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.coerce(int(num)), self.coerce(int(den)))
        return self.coerce(int(text))

    def div(self, x, y):
        return self.norm(x * self.inv(y))

    def fmt(self, x) -> str:
        return str(x)

    def check_same(self, other: Field) -> None:
        if self != other:
            raise FieldMismatchError(f"cannot combine {self} with {other}")

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def norm(self, x):
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def coerce(self, x):
        if type(x) is int or type(x) is Fraction:
            return self.norm(x)
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise FieldMismatchError(f"{x!r} is not an exact rational")
        return self.norm(Fraction(x))

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if x == 1 or x == -1:
            return x
        if type(x) is int:
            return Fraction(1, x)
        return self.norm(1 / x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __reduce__(self):
        return (RationalField, ())


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def norm(self, x):
        return x % self.p

    def coerce(self, x):
        if type(x) is Fraction:
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, bool) or not isinstance(x, int):
            raise FieldMismatchError(f"{x!r} is not an element of {self.name}")
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def fmt(self, x) -> str:
        # symmetric representative reads better in reports
        x %= self.p
        return str(x - self.p) if x > self.p // 2 else str(x)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


@cache
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse ``Q``, ``F7``, ``F 7`` or ``Fp:7`` style field names."""
    s = spec.replace(" ", "").replace(":", "")
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("Fp"):
        s = s[2:]
    elif s.startswith(("F", "GF")):
        s = s.lstrip("GF")
    try:
        return GF(int(s))
    except ValueError as exc:
        raise ValueError(f"unknown field {spec!r}") from exc
