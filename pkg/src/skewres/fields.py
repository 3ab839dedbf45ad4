"""Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.

Scalars are plain Python objects (`fractions.Fraction` for the rationals,
`int` residues in ``[0, p)`` for prime fields).  The field object supplies
the operations, so polynomial code never touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The rationals; scalars are `Fraction` (lowest terms, positive denominator)."""

    kind = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not supported")
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(a.denominator, a.numerator)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> Fraction:
        return Fraction(text)

    @property
    def tag(self) -> str:
        return "q"

    def descriptor(self) -> dict:
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational-field")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Integers mod p for prime p; scalars are ints in ``[0, p)``."""

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value) -> int:
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not supported")
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator % self.p * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        r = a + b
        return r - self.p if r >= self.p else r

    def sub(self, a, b):
        r = a - b
        return r + self.p if r < 0 else r

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, -1, self.p) % self.p

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str) -> int:
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.coerce(int(num)), self.coerce(int(den)))
        return self.coerce(int(text))

    @property
    def tag(self) -> str:
        return f"fp{self.p}"

    def descriptor(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    """Return the (cached) prime field with p elements."""
    field = _GF_CACHE.get(p)
    if field is None:
        field = _GF_CACHE[p] = PrimeField(p)
    return field


def field_from_descriptor(doc: dict):
    if doc.get("kind") == "rational":
        return QQ
    if doc.get("kind") == "prime":
        return GF(int(doc["p"]))
    raise ValueError(f"unknown field descriptor: {doc!r}")
