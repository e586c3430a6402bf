"""Commutative coefficient rings with exact arithmetic.

Four kinds are supported: the integers ``Z``, the residue rings ``Z/n``,
prime fields ``GF(p)`` and the rationals ``Q``.  A :class:`Ring` is a small
immutable descriptor that knows how to do arithmetic on *raw* canonical
values:

* ``Z``: a Python ``int``;
* ``Z/n`` and ``GF(p)``: an ``int`` in ``[0, n)``;
* ``Q``: a :class:`fractions.Fraction` (always reduced, positive denominator).

Matrices store raw values for speed.  :class:`RingElement` wraps a raw value
together with its ring for code that wants operator syntax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import RingMismatchError, UnsupportedRingError

Raw = Union[int, Fraction]

INTEGERS = "Z"
INTEGERS_MOD = "Zmod"
PRIME_FIELD = "GF"
RATIONALS = "Q"


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


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) = s*a + t*b`` and ``g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    if old_r == 0:
        return 0, 0, 0
    return old_r, old_s, old_t


@dataclass(frozen=True)
class Ring:
    """Descriptor of a supported commutative ring.

    Use the constructors :meth:`integers`, :meth:`mod`, :meth:`gf` and
    :meth:`rationals` (or the module constants ``ZZ`` and ``QQ``) rather than
    calling the class directly.
    """

    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind in (INTEGERS, RATIONALS):
            if self.modulus is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        elif self.kind == INTEGERS_MOD:
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError(f"Z/n requires n >= 2, got {self.modulus!r}")
        elif self.kind == PRIME_FIELD:
            if not isinstance(self.modulus, int) or not _is_prime(self.modulus):
                raise ValueError(f"GF(p) requires p prime, got {self.modulus!r}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def integers(cls) -> "Ring":
        return cls(INTEGERS)

    @classmethod
    def mod(cls, n: int) -> "Ring":
        return cls(INTEGERS_MOD, n)

    @classmethod
    def gf(cls, p: int) -> "Ring":
        return cls(PRIME_FIELD, p)

    @classmethod
    def rationals(cls) -> "Ring":
        return cls(RATIONALS)

    def __str__(self):
        if self.kind == INTEGERS_MOD:
            return f"Z/{self.modulus}"
        if self.kind == PRIME_FIELD:
            return f"GF({self.modulus})"
        return self.kind

    @property
    def is_field(self) -> bool:
        return self.kind in (PRIME_FIELD, RATIONALS)

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    @property
    def zero(self) -> Raw:
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self) -> Raw:
        return Fraction(1) if self.kind == RATIONALS else 1

    # -- raw arithmetic -------------------------------------------------

    def canon(self, value) -> Raw:
        """Bring ``value`` (int, Fraction or ``"a/b"`` string) to canonical form."""
        if self.kind == RATIONALS:
            if isinstance(value, bool):
                raise TypeError("booleans are not ring elements")
            return Fraction(value)
        if isinstance(value, bool) or not isinstance(value, int):
            if isinstance(value, Fraction) and value.denominator == 1:
                value = value.numerator
            else:
                raise TypeError(f"{self} needs integer values, got {value!r}")
        if self.modulus is not None:
            return value % self.modulus
        return value

    def add(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is not None:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is not None:
            return (a - b) % self.modulus
        return a - b

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.modulus is not None:
            return (a * b) % self.modulus
        return a * b

    def neg(self, a: Raw) -> Raw:
        if self.modulus is not None:
            return (-a) % self.modulus
        return -a

    def is_unit(self, a: Raw) -> bool:
        if self.kind == INTEGERS:
            return a == 1 or a == -1
        if self.kind == RATIONALS:
            return a != 0
        return math.gcd(a, self.modulus) == 1

    def is_nonzero_nonunit(self, a: Raw) -> bool:
        return a != 0 and not self.is_unit(a)

    def inverse(self, a: Raw) -> Optional[Raw]:
        """Multiplicative inverse of ``a``, or ``None`` if ``a`` is not a unit."""
        if self.kind == INTEGERS:
            return a if a in (1, -1) else None
        if self.kind == RATIONALS:
            return 1 / a if a != 0 else None
        g, s, _ = extended_gcd(a, self.modulus)
        if g != 1:
            return None
        return s % self.modulus

    def generates_unit_ideal(self, values: Iterable[Raw]) -> bool:
        """True iff the ideal generated by ``values`` is the whole ring."""
        if self.is_field:
            return any(v != 0 for v in values)
        g = 0 if self.modulus is None else self.modulus
        for v in values:
            g = math.gcd(g, v)
            if g == 1:
                return True
        return g == 1

    def lift(self, a: Raw) -> Raw:
        """Representative of ``a`` in Z (or Q); the identity outside Z/n."""
        return a

    def elements(self):
        """All elements of a finite ring in canonical order."""
        if self.modulus is None:
            raise UnsupportedRingError(f"{self} is infinite")
        return range(self.modulus)

    # -- element wrapper and serialization ------------------------------

    def __call__(self, value) -> "RingElement":
        return RingElement(self, self.canon(value))

    def format(self, a: Raw) -> str:
        if isinstance(a, Fraction) and a.denominator != 1:
            return f"{a.numerator}/{a.denominator}"
        return str(int(a))

    def to_json(self):
        if self.kind == INTEGERS_MOD:
            return {"Zmod": self.modulus}
        if self.kind == PRIME_FIELD:
            return {"GF": self.modulus}
        return self.kind

    @classmethod
    def from_json(cls, obj) -> "Ring":
        if obj == INTEGERS:
            return cls.integers()
        if obj == RATIONALS:
            return cls.rationals()
        if isinstance(obj, dict) and len(obj) == 1:
            (key, value), = obj.items()
            if isinstance(value, int) and not isinstance(value, bool):
                if key == "Zmod":
                    return cls.mod(value)
                if key == "GF":
                    return cls.gf(value)
        raise ValueError(f"unrecognised ring descriptor {obj!r}")

    def encode(self, a: Raw):
        """JSON literal for a raw value: an int, or ``"a/b"`` for fractions."""
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return a.numerator
            return f"{a.numerator}/{a.denominator}"
        return a

    def decode(self, literal) -> Raw:
        if isinstance(literal, bool):
            raise ValueError(f"not a ring element literal: {literal!r}")
        if isinstance(literal, int):
            return self.canon(literal)
        if isinstance(literal, str) and self.kind == RATIONALS:
            num, sep, den = literal.partition("/")
            try:
                value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad rational literal {literal!r}") from None
            return value
        raise ValueError(f"not an element literal for {self}: {literal!r}")


ZZ = Ring.integers()
QQ = Ring.rationals()


@dataclass(frozen=True)
class RingElement:
    """A raw value tagged with its ring, with operator syntax."""

    ring: Ring
    value: Raw

    def _other(self, other) -> Raw:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other.value
        return self.ring.canon(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def try_inverse(self) -> Optional["RingElement"]:
        inv = self.ring.inverse(self.value)
        return None if inv is None else RingElement(self.ring, inv)

    def __str__(self):
        return self.ring.format(self.value)


def _check(x: RingElement, y: RingElement) -> Ring:
    if x.ring != y.ring:
        raise RingMismatchError(f"{x.ring} vs {y.ring}")
    return x.ring


def add(x: RingElement, y: RingElement) -> RingElement:
    ring = _check(x, y)
    return RingElement(ring, ring.add(x.value, y.value))


def mul(x: RingElement, y: RingElement) -> RingElement:
    ring = _check(x, y)
    return RingElement(ring, ring.mul(x.value, y.value))


def neg(x: RingElement) -> RingElement:
    return -x


def is_unit(x: RingElement) -> bool:
    return x.is_unit()


def try_inverse(x: RingElement) -> Optional[RingElement]:
    return x.try_inverse()
