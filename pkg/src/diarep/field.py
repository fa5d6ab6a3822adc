"""Exact coefficient fields: prime fields F_p and the rational numbers.

Field elements are plain Python values (ints reduced mod p, or
fractions.Fraction); a field object supplies the arithmetic, parsing and
formatting. Everything is exact, no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidStructure, ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ExactField:
    """Common interface; see PrimeField and RationalField."""

    name: str = "?"
    finite: bool = False

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # row-level helpers used by the matrix hot loops
    def dot(self, xs, ys):
        raise NotImplementedError

    def axpy(self, target_row, src_row, c):
        """target + c * src, as a new list."""
        raise NotImplementedError

    def scale_row(self, row, c):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def fmt(self, a) -> str:
        raise NotImplementedError

    def elements(self):
        """Iterate all elements (finite fields only)."""
        raise InvalidStructure(f"{self.name} is not finite")

    def random(self, rng):
        raise NotImplementedError

    def random_unit(self, rng):
        raise NotImplementedError


class PrimeField(ExactField):
    """F_p with elements stored as ints in [0, p)."""

    finite = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InvalidStructure(f"modulus {p} is not prime")
        self.p = p
        self.name = f"F{p}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def dot(self, xs, ys):
        return sum(map(int.__mul__, xs, ys)) % self.p

    def axpy(self, target_row, src_row, c):
        p = self.p
        return [(t + c * s) % p for t, s in zip(target_row, src_row)]

    def scale_row(self, row, c):
        p = self.p
        return [(c * x) % p for x in row]

    def parse(self, text: str):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.mul(int(num) % self.p, self.inv(int(den)))
            return int(text) % self.p
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad {self.name} element {text!r}: {exc}") from None

    def fmt(self, a) -> str:
        return str(a % self.p)

    def elements(self):
        return range(self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def random_unit(self, rng):
        return rng.randrange(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField(ExactField):
    """The rationals, backed by fractions.Fraction."""

    name = "Q"
    finite = False

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def dot(self, xs, ys):
        return sum(map(Fraction.__mul__, xs, ys), Fraction(0))

    def axpy(self, target_row, src_row, c):
        return [t + c * s for t, s in zip(target_row, src_row)]

    def scale_row(self, row, c):
        return [c * x for x in row]

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}: {exc}") from None

    def fmt(self, a) -> str:
        return str(a)

    def random(self, rng):
        # small numerators/denominators keep downstream arithmetic readable
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))

    def random_unit(self, rng):
        while True:
            x = self.random(rng)
            if x != 0:
                return x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()
GF2 = PrimeField(2)
GF3 = PrimeField(3)


def field_from_token(token: str) -> ExactField:
    """Parse a field descriptor such as 'Q', 'rationals', 'Fp:5' or 'prime 5'."""
    tok = token.strip()
    low = tok.lower()
    if low in ("q", "qq", "rationals", "rational"):
        return RationalField()
    for prefix in ("fp:", "f", "prime "):
        if low.startswith(prefix):
            rest = low[len(prefix):].strip()
            if rest.isdigit():
                return PrimeField(int(rest))
    raise ParseError(f"unrecognized field descriptor {token!r}")
