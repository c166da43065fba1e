"""Exact arithmetic in real quadratic extensions of the rationals.

Values have the canonical form a + b*sqrt(delta) with rational a, b and a
squarefree nonnegative integer delta.  delta == 0 exactly when the value is
rational, so equality of canonical forms is equality of real numbers.  All
comparisons are decided by sign case analysis and integer squaring; floating
point never participates in a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

Rational = Union[int, Fraction]


class CrossFieldError(ValueError):
    """Arithmetic attempted between two distinct irrational extensions."""


class NoRealRootError(ValueError):
    """Negative discriminant in a root extraction."""


class NoPositiveRootError(ValueError):
    """The quadratic has real roots but none of them is positive."""


def _square_split(n: int) -> tuple[int, int]:
    # n = s*s*f with f squarefree, by trial division
    if n < 0:
        raise ValueError("negative radicand")
    s, f, m = 1, 1, n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                f *= d
        d += 1 if d == 2 else 2
    return s, f * m


def _sgn(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadExt:
    """Canonical a + b*sqrt(delta); construction normalizes arguments."""

    a: Fraction
    b: Fraction = Fraction(0)
    delta: int = 0

    def __post_init__(self) -> None:
        a = Fraction(self.a)
        b = Fraction(self.b)
        delta = Fraction(self.delta)
        if delta < 0:
            raise NoRealRootError("negative radicand")
        if b == 0 or delta == 0:
            b, delta = Fraction(0), Fraction(0)
        else:
            # sqrt(p/q) = sqrt(p*q)/q, then pull the square part out
            s, f = _square_split(delta.numerator * delta.denominator)
            b = b * Fraction(s, delta.denominator)
            if f == 1:
                a, b, delta = a + b, Fraction(0), Fraction(0)
            else:
                delta = Fraction(f)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "delta", int(delta))

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def of(value: "QuadExt | Rational") -> "QuadExt":
        if isinstance(value, QuadExt):
            return value
        return QuadExt(Fraction(value))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    # -- ring operations --------------------------------------------------

    def _join_delta(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.delta
        if other.b == 0 or self.delta == other.delta:
            return self.delta
        raise CrossFieldError(
            f"sqrt({self.delta}) and sqrt({other.delta}) do not share a field"
        )

    def __add__(self, other: "QuadExt | Rational") -> "QuadExt":
        o = QuadExt.of(other)
        d = self._join_delta(o)
        return QuadExt(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.a, -self.b, self.delta)

    def __sub__(self, other: "QuadExt | Rational") -> "QuadExt":
        return self + (-QuadExt.of(other))

    def __rsub__(self, other: "QuadExt | Rational") -> "QuadExt":
        return QuadExt.of(other) + (-self)

    def __mul__(self, other: "QuadExt | Rational") -> "QuadExt":
        o = QuadExt.of(other)
        d = self._join_delta(o)
        return QuadExt(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "QuadExt | Rational") -> "QuadExt":
        o = QuadExt.of(other)
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero")
        d = self._join_delta(o)
        norm = o.a * o.a - o.b * o.b * d
        # conjugate trick; norm is rational and nonzero for nonzero o
        num = self * QuadExt(o.a, -o.b, d)
        return QuadExt(num.a / norm, num.b / norm, num.delta)

    def __rtruediv__(self, other: "QuadExt | Rational") -> "QuadExt":
        return QuadExt.of(other) / self

    def __pow__(self, n: int) -> "QuadExt":
        if n < 0:
            return QuadExt(Fraction(1)) / self ** (-n)
        out = QuadExt(Fraction(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        a, b, d = self.a, self.b, self.delta
        if b == 0:
            return _sgn(a)
        if a == 0:
            return _sgn(b)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 * d
        s = _sgn(a * a - b * b * d)
        return s if a > 0 else -s

    def compare(self, other: "QuadExt | Rational") -> int:
        return compare_cross(self, other)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (QuadExt, int, Fraction)):
            return compare_cross(self, other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.delta))

    def __lt__(self, other: "QuadExt | Rational") -> bool:
        return compare_cross(self, other) < 0

    def __le__(self, other: "QuadExt | Rational") -> bool:
        return compare_cross(self, other) <= 0

    def __gt__(self, other: "QuadExt | Rational") -> bool:
        return compare_cross(self, other) > 0

    def __ge__(self, other: "QuadExt | Rational") -> bool:
        return compare_cross(self, other) >= 0

    def __floor__(self) -> int:
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        # exact bracket for |b|*sqrt(delta) via integer square root
        r = self.b * self.b * self.delta
        root = isqrt(r.numerator * r.denominator)
        mag_lo = Fraction(root, r.denominator)
        mag_hi = Fraction(root + 1, r.denominator)
        low = self.a + (mag_lo if self.b > 0 else -mag_hi)
        n = low.numerator // low.denominator
        while compare_cross(self, n + 1) >= 0:
            n += 1
        return n

    # -- presentation -------------------------------------------------------

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        tail = f"sqrt({self.delta})"
        if abs(self.b) != 1:
            tail = f"{abs(self.b)}*{tail}"
        op = "+" if self.b > 0 else "-"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        return f"{self.a} {op} {tail}"

    def __repr__(self) -> str:
        return f"QuadExt({self.a!r}, {self.b!r}, {self.delta})"


def compare_cross(x: QuadExt | Rational, y: QuadExt | Rational) -> int:
    """Sign of x - y for values from possibly different quadratic fields.

    Same-field differences reduce to a single sign test.  Otherwise write
    x - y = P + Q with P in one field and Q a pure multiple of the other
    square root; opposite signs are resolved by comparing P^2 with the
    rational Q^2.  One squaring always suffices.
    """
    xq, yq = QuadExt.of(x), QuadExt.of(y)
    if xq.b == 0 or yq.b == 0 or xq.delta == yq.delta:
        d = xq.delta if xq.b != 0 else yq.delta
        return QuadExt(xq.a - yq.a, xq.b - yq.b, d).sign()
    p = QuadExt(xq.a - yq.a, xq.b, xq.delta)
    sp = p.sign()
    sq = _sgn(-yq.b)
    if sp == 0:
        return sq
    if sq == 0 or sp == sq:
        return sp
    diff = p * p - yq.b * yq.b * yq.delta
    return sp * diff.sign()


def min_root_quadratic(
    a_coeff: Rational, b_coeff: Rational, c_coeff: Rational
) -> QuadExt:
    """Smallest positive solution of A*x^2 - 2*B*x + C = 0.

    Degenerate A == 0 gives the linear solution C / (2*B).  A negative
    quarter discriminant B^2 - A*C raises NoRealRootError; real roots with
    no positive one raise NoPositiveRootError.
    """
    a = Fraction(a_coeff)
    b = Fraction(b_coeff)
    c = Fraction(c_coeff)
    if a == 0:
        if b == 0:
            raise NoPositiveRootError("degenerate equation")
        linear = c / (2 * b)
        if linear <= 0:
            raise NoPositiveRootError("linear solution is nonpositive")
        return QuadExt(linear)
    disc = b * b - a * c
    if disc < 0:
        raise NoRealRootError(f"quarter discriminant {disc} < 0")
    root = QuadExt(Fraction(0), Fraction(1), disc)
    # (B -+ sqrt(disc)) / A in increasing order for either sign of A
    low = (QuadExt(b) - root) / a if a > 0 else (QuadExt(b) + root) / a
    if low.sign() > 0:
        return low
    high = (QuadExt(b) + root) / a if a > 0 else (QuadExt(b) - root) / a
    if high.sign() > 0:
        return high
    raise NoPositiveRootError("both roots nonpositive")


def _cf_state(x: QuadExt) -> tuple[int, int, int]:
    # write x = (P + sqrt(N)) / Q with integers, Q | N - P^2
    denom = x.a.denominator * x.b.denominator // gcd(
        x.a.denominator, x.b.denominator
    )
    a_int = x.a.numerator * (denom // x.a.denominator)
    b_int = x.b.numerator * (denom // x.b.denominator)
    n = b_int * b_int * x.delta
    p, q = a_int, denom
    if b_int < 0:
        p, q = -p, -q
    if (n - p * p) % q != 0:
        p, q, n = p * abs(q), q * abs(q), n * q * q
    return p, q, n


def rational_below(x: QuadExt, gap: Rational) -> Fraction:
    """A rational r with x - gap < r < x; x must exceed every returned r.

    Rational x gets x - gap/2.  Irrational x gets an even-index continued
    fraction convergent, which is strictly below the value.
    """
    gap = Fraction(gap)
    if gap <= 0:
        raise ValueError("gap must be positive")
    if x.is_rational:
        return x.as_fraction() - gap / 2
    return _cf_bound(x, gap, below=True)


def rational_above(x: QuadExt, gap: Rational) -> Fraction:
    """A rational r with x < r < x + gap (strictly above)."""
    gap = Fraction(gap)
    if gap <= 0:
        raise ValueError("gap must be positive")
    if x.is_rational:
        return x.as_fraction() + gap / 2
    return _cf_bound(x, gap, below=False)


def _cf_bound(x: QuadExt, gap: Fraction, below: bool) -> Fraction:
    p, q, n = _cf_state(x)
    h_prev, h = 1, None
    k_prev, k = 0, None
    best: Fraction | None = None
    for step in range(10_000):
        value = QuadExt(Fraction(p, q), Fraction(1, q), n)
        a_k = value.__floor__()
        if h is None:
            h, k = a_k, 1
        else:
            h, h_prev = a_k * h + h_prev, h
            k, k_prev = a_k * k + k_prev, k
        conv = Fraction(h, k)
        is_below = step % 2 == 0
        if is_below == below:
            best = conv
            err = x - conv if below else QuadExt(conv) - x
            if err.sign() > 0 and compare_cross(err, gap) < 0:
                return best
        p = a_k * q - p
        q = (n - p * p) // q
        if q == 0:
            break
    raise ArithmeticError("continued fraction failed to converge")
