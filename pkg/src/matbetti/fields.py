"""Exact scalar fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction


class Mod:
    """An element of GF(p), stored as a reduced residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixed characteristics {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return Mod(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _parse_scalar(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError(f"not a scalar: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact scalar: {x!r}")


class Field:
    """Common interface: ``F(x)`` converts ints, Fractions and "p/q" strings."""

    characteristic: int
    name: str

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(self.characteristic)

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"

    def __call__(self, x) -> Fraction:
        if isinstance(x, Mod):
            raise TypeError("cannot lift a GF(p) element to QQ")
        return _parse_scalar(x)

    def describe(self):
        return "rational"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> Mod:
        p = self.characteristic
        if isinstance(x, Mod):
            if x.p != p:
                raise ValueError(f"element of GF({x.p}) given to GF({p})")
            return x
        q = _parse_scalar(x)
        if q.denominator % p == 0:
            raise ZeroDivisionError(f"{q} has no image in GF({p})")
        return Mod(q.numerator, p) * Mod(q.denominator, p).inverse()

    def describe(self):
        return {"prime": self.characteristic}


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc) -> Field:
    """Accepts ``"rational"``, ``{"prime": p}``, ``"pP"`` / ``"GF(P)"`` strings, or a Field."""
    if isinstance(desc, Field):
        return desc
    if desc is None or desc in ("rational", "QQ", "Q"):
        return QQ
    if isinstance(desc, dict) and set(desc) == {"prime"}:
        return PrimeField(int(desc["prime"]))
    if isinstance(desc, str):
        s = desc.strip()
        if s.startswith("GF(") and s.endswith(")"):
            return PrimeField(int(s[3:-1]))
        if s[:1] in "pP" and s[1:].isdigit():
            return PrimeField(int(s[1:]))
    raise ValueError(f"unknown field descriptor {desc!r}")
