"""Ground fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Residue:
    """An element of GF(p). Mixes freely with Python ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) / self

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return Residue(pow(self.v, -1, self.p), self.p) ** (-n)
        return Residue(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "%d" % self.v


class Field:
    """Either Q (``char == 0``) or GF(p).

    Calling the field coerces ints, Fractions, residues and text into
    field elements.
    """

    def __init__(self, char: int = 0):
        if char and not _is_prime(char):
            raise ValueError("characteristic %d is not prime" % char)
        self.char = char
        self.zero = self(0)
        self.one = self(1)

    @classmethod
    def from_name(cls, name: str) -> "Field":
        name = name.strip()
        if name == "Q":
            return cls(0)
        if name.startswith("GF") and name[2:].isdigit():
            return cls(int(name[2:]))
        raise ValueError("unknown field %r (expected Q or GFp)" % name)

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else "GF%d" % self.char

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if self.char == 0:
            if isinstance(x, Residue):
                raise ValueError("residue in a rational context")
            return Fraction(x)
        if isinstance(x, Residue):
            if x.p != self.char:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ValueError("%s is undefined in GF(%d)" % (x, self.char))
            return Residue(x.numerator * pow(x.denominator, -1, self.char), self.char)
        return Residue(int(x), self.char)

    def parse(self, s: str):
        s = s.strip()
        if self.char == 0:
            if "/" in s:
                a, b = s.split("/", 1)
                num, den = int(a), int(b)
                if den == 0:
                    raise ValueError("zero denominator in %r" % s)
                return Fraction(num, den)
            return Fraction(int(s))
        if "/" in s:
            raise ValueError("prime-field scalars are decimal residues, got %r" % s)
        return Residue(int(s), self.char)

    def fmt(self, a) -> str:
        if self.char == 0:
            a = Fraction(a)
            if a.denominator == 1:
                return str(a.numerator)
            return "%d/%d" % (a.numerator, a.denominator)
        return str(int(self(a)))

    def random(self, rng, bound: int = 5):
        """A random element; small integers over Q, uniform over GF(p)."""
        if self.char == 0:
            return Fraction(rng.randint(-bound, bound))
        return Residue(rng.randrange(self.char), self.char)

    def elements(self):
        if self.char == 0:
            raise ValueError("Q is infinite")
        return [Residue(i, self.char) for i in range(self.char)]

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("field", self.char))

    def __repr__(self):
        return "Field(%s)" % self.name


Q = Field(0)


def GF(p: int) -> Field:
    return Field(p)
