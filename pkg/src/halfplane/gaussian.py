"""Exact Gaussian rationals: complex numbers whose parts are ``Fraction``s."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal digits, optional sign) into a Fraction."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings 'p/q', got {text!r}")
    s = text.strip()
    num, _, den = s.partition("/")
    try:
        if not den:
            return Fraction(int(num))
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), d)
    except ValueError as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """``re + i*im`` with exact rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x), 0)
        if isinstance(x, str):
            return cls(parse_rational(x), 0)
        raise TypeError(f"cannot coerce {x!r} to GaussRat")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        if o.im == 0:
            return GaussRat(self.re * o.re, self.im * o.re)
        if self.im == 0:
            return GaussRat(self.re * o.re, self.re * o.im)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero Gaussian rational")
        if o.im == 0:
            return GaussRat(self.re / o.re, self.im / o.re)
        n = o.norm2()
        p = self * o.conjugate()
        return GaussRat(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = _maybe(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.im == 0:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussRat":
        if isinstance(obj, dict):
            return cls(parse_rational(obj.get("re", "0")), parse_rational(obj.get("im", "0")))
        return cls(parse_rational(obj), 0)


def _maybe(x):
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Rational)):
        return GaussRat(x, 0)
    return None


ZERO = GaussRat(0, 0)
ONE = GaussRat(1, 0)
I = GaussRat(0, 1)
