"""Exact Gaussian-rational arithmetic.

All coefficient arithmetic in the engine happens over Q(i): numbers
a + b*i with arbitrary-precision rational a, b.  fractions.Fraction keeps
both parts canonically reduced, so equality and hashing are structural.
"""

from __future__ import annotations

import re
from fractions import Fraction


class GaussianRational:
    """a + b*i with exact rational a, b.  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def of(cls, value):
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm_sq(self):
        """|z|^2, a nonnegative Fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing -----------------------------------------

    def __eq__(self, other):
        try:
            other = GaussianRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- display ------------------------------------------------------

    def __repr__(self):
        return "GaussianRational(%r, %r)" % (str(self.re), str(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s" % (self.re, sign, _imag_str(abs(self.im)))


def _imag_str(b):
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return "%si" % b


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

_TERM = re.compile(
    r"(?=[0-9i.])"          # nonempty
    r"(?P<num>[0-9]+(?:/[0-9]+)?)?"
    r"(?P<i>i)?"
)


def parse_scalar(text):
    """Parse a Gaussian-rational literal: '-2', 'i', '3/2', '1-2i', '-i/2'.

    Raises ValueError on malformed input.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    result = GaussianRational(0)
    pos = 0
    n = len(s)
    any_term = False
    while pos < n:
        sign = 1
        while pos < n and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
        m = _TERM.match(s, pos)
        if m is None or (m.group("num") is None and m.group("i") is None):
            raise ValueError("bad scalar literal: %r" % text)
        pos = m.end()
        num = m.group("num")
        is_i = m.group("i") is not None
        # allow 'i/2' (denominator after the i)
        if is_i and pos < n and s[pos] == "/":
            m2 = re.match(r"/([0-9]+)", s[pos:])
            if m2 is None:
                raise ValueError("bad scalar literal: %r" % text)
            num = "%s/%s" % (num or "1", m2.group(1))
            pos += m2.end()
        value = Fraction(num) if num is not None else Fraction(1)
        if is_i:
            result = result + GaussianRational(0, sign * value)
        else:
            result = result + GaussianRational(sign * value)
        any_term = True
    if not any_term:
        raise ValueError("bad scalar literal: %r" % text)
    return result
