"""Prime fields F_p with exact residue arithmetic."""

from __future__ import annotations

import functools
import operator
from dataclasses import dataclass

from .errors import CompositeModulus, DivisionByZero, FieldMismatch, ModulusTooLarge

# p**2 must fit comfortably in int64 for the numpy kernels (they also sum
# up to a few thousand such products before reducing).
MAX_MODULUS = 2**20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise DivisionByZero(f"0 has no inverse modulo {p}")
    r0, r1 = p, a
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    # r0 == gcd == 1 since p is prime
    return t0 % p


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime ``p``.

    Calling the field converts an integer into an :class:`Elem`::

        >>> F = make_field(5)
        >>> F(2).inv()
        Elem(3, p=5)
    """

    p: int

    def __post_init__(self):
        p = self.p
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError("modulus must be an int")
        if p > MAX_MODULUS:
            raise ModulusTooLarge(f"p={p} exceeds the supported limit {MAX_MODULUS}")
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")

    def __call__(self, value: int) -> Elem:
        return Elem(int(value) % self.p, self)

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p

    def has_cardinality_at_least(self, k: int) -> bool:
        return self.p >= k

    def char_is_two(self) -> bool:
        return self.p == 2

    def elements(self):
        return [Elem(v, self) for v in range(self.p)]

    # integer-level helpers used by the matrix kernels
    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        return inverse_mod(a, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * inverse_mod(b, self.p)) % self.p


@functools.lru_cache(maxsize=None)
def make_field(p: int) -> PrimeField:
    """Return the prime field of order ``p``.

    Raises CompositeModulus for non-primes and ModulusTooLarge above
    ``MAX_MODULUS``.
    """
    return PrimeField(p)


class Elem:
    """An immutable element of a :class:`PrimeField`."""

    __slots__ = ("_value", "_field")

    def __init__(self, value: int, field: PrimeField):
        object.__setattr__(self, "_value", int(value) % field.p)
        object.__setattr__(self, "_field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Elem is immutable")

    @property
    def value(self) -> int:
        return self._value

    @property
    def field(self) -> PrimeField:
        return self._field

    def __repr__(self):
        return f"Elem({self._value}, p={self._field.p})"

    def __int__(self):
        return self._value

    __index__ = __int__

    def __hash__(self):
        return hash((self._value, self._field.p))

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self._field == other._field and self._value == other._value
        if isinstance(other, int):
            return self._value == other % self._field.p
        return NotImplemented

    def __bool__(self):
        return self._value != 0

    def _coerce(self, other) -> int:
        if isinstance(other, Elem):
            if other._field != self._field:
                raise FieldMismatch(f"{self._field} vs {other._field}")
            return other._value
        if isinstance(other, int):
            return other % self._field.p
        raise TypeError(f"cannot combine Elem with {type(other).__name__}")

    def _wrap(self, v: int) -> Elem:
        return Elem(v, self._field)

    def __add__(self, other):
        return self._wrap(self._value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self._value - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self._value)

    def __mul__(self, other):
        return self._wrap(self._value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self._field.div(self._value, self._coerce(other)))

    def __rtruediv__(self, other):
        return self._wrap(self._field.div(self._coerce(other), self._value))

    def __neg__(self):
        return self._wrap(-self._value)

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return self._wrap(pow(self._value, k, self._field.p))

    def inv(self) -> Elem:
        return self._wrap(inverse_mod(self._value, self._field.p))


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def arith(a: Elem, b: Elem, op: str) -> Elem:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two elements of one field."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b)


def neg(a: Elem) -> Elem:
    return -a


def inv(a: Elem) -> Elem:
    return a.inv()
