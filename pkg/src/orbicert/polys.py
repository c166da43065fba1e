"""Dense univariate polynomial helpers over the rationals.

Polynomials are tuples of coefficients, constant term first, with no
trailing zeros; the zero polynomial is the empty tuple.  Valuations,
degrees and radicals are invariant under nonzero rational scaling, so most
routines work on primitive integer tuples and rational inputs are cleared
to that form once at the boundary.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntPoly = tuple[int, ...]

ZERO: IntPoly = ()
ONE: IntPoly = (1,)


def trim(coeffs: Sequence[int]) -> IntPoly:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def degree(p: IntPoly) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(p) - 1


def is_zero(p: IntPoly) -> bool:
    return not p


def content(p: IntPoly) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p: IntPoly) -> IntPoly:
    g = content(p)
    if g in (0, 1):
        return p
    return tuple(c // g for c in p)


def clear_rationals(coeffs: Iterable[Fraction | int]) -> IntPoly:
    """Primitive integer polynomial with the same roots and valuations."""
    fracs = [Fraction(c) for c in coeffs]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // gcd(scale, f.denominator)
    return primitive(trim([int(f * scale) for f in fracs]))


def add(a: IntPoly, b: IntPoly) -> IntPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def neg(a: IntPoly) -> IntPoly:
    return tuple(-c for c in a)


def sub(a: IntPoly, b: IntPoly) -> IntPoly:
    return add(a, neg(b))


def scale(a: IntPoly, k: int) -> IntPoly:
    if k == 0:
        return ZERO
    return tuple(c * k for c in a)


def mul(a: IntPoly, b: IntPoly) -> IntPoly:
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return b if a[0] == 1 else scale(b, a[0])
    if len(b) == 1:
        return a if b[0] == 1 else scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def pow_(a: IntPoly, n: int) -> IntPoly:
    if n == 0:
        return ONE
    if n == 1:
        return a
    out = ONE
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def derivative(a: IntPoly) -> IntPoly:
    return trim([i * c for i, c in enumerate(a)][1:])


def eval_int(a: IntPoly, x: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def eval_fraction(a: IntPoly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def divmod_rational(a: IntPoly, b: IntPoly) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Quotient and remainder in Q[t]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for shift in range(len(a) - len(b), -1, -1):
        coef = rem[shift + len(b) - 1] / lead
        if coef:
            quo[shift] = coef
            for j, c in enumerate(b):
                rem[shift + j] -= coef * c
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(quo), tuple(rem)


def _divide_unit_lead(p: IntPoly, a: IntPoly) -> IntPoly | None:
    # integer synthetic division for lead(p) = +-1; None on a nonzero remainder
    lead = p[-1]
    rem = list(a)
    quo = [0] * (len(a) - len(p) + 1)
    for shift in range(len(a) - len(p), -1, -1):
        coef = rem[shift + len(p) - 1] * lead
        if coef:
            quo[shift] = coef
            for j, c in enumerate(p):
                rem[shift + j] -= coef * c
    if any(rem[: len(p) - 1]):
        return None
    return trim(quo)


def divides_exactly(p: IntPoly, a: IntPoly) -> IntPoly | None:
    """a / p as a primitive integer polynomial, or None if p does not divide a."""
    if degree(p) > degree(a):
        return None
    if p and abs(p[-1]) == 1:
        quo_int = _divide_unit_lead(p, a)
        return None if quo_int is None else primitive(quo_int)
    quo, rem = divmod_rational(a, p)
    if rem:
        return None
    return clear_rationals(quo)


def valuation(p: IntPoly, a: IntPoly) -> int:
    """Multiplicity of the irreducible p in a (a nonzero)."""
    if not a:
        raise ValueError("valuation of the zero polynomial")
    v = 0
    cur = a
    while True:
        nxt = divides_exactly(p, cur)
        if nxt is None:
            return v
        v += 1
        cur = nxt


def valuation_linear(root_num: int, root_den: int, a: IntPoly) -> int:
    """Multiplicity of (den*t - num) in a, by integer synthetic division.

    Gauss's lemma makes exact quotients of integer polynomials by the
    primitive (den*t - num) integral, so a failed exact division step means
    non-divisibility.
    """
    if not a:
        raise ValueError("valuation of the zero polynomial")
    v = 0
    cur = list(a)
    while len(cur) > 1:
        quo = [0] * (len(cur) - 1)
        carry = 0
        for i in range(len(cur) - 1, 0, -1):
            top = cur[i] + carry
            if top % root_den:
                return v
            q = top // root_den
            quo[i - 1] = q
            carry = q * root_num
        if cur[0] + carry != 0:
            return v
        v += 1
        cur = quo
    return v


def gcd_poly(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd in Q[t] via a primitive pseudo-remainder sequence."""
    a, b = primitive(a), primitive(b)
    if not a:
        return _pos_lead(b)
    if not b:
        return _pos_lead(a)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        # in-place pseudo-remainder keeps everything in Z[t]; reducing to
        # the primitive part after every step blocks coefficient blowup and
        # only changes the result by a unit
        r = list(a)
        lead = b[-1]
        while len(r) >= len(b):
            factor = r[-1]
            shift = len(r) - len(b)
            for j in range(len(b) - 1):
                r[shift + j] = lead * r[shift + j] - factor * b[j]
            for j in range(shift):
                r[j] *= lead
            r.pop()
            while r and r[-1] == 0:
                r.pop()
            g = content(r)
            if g > 1:
                r = [c // g for c in r]
        a, b = b, tuple(r)
    return _pos_lead(a)


def _pos_lead(p: IntPoly) -> IntPoly:
    if p and p[-1] < 0:
        return neg(p)
    return p


def radical_degree(a: IntPoly) -> int:
    """Number of distinct roots in an algebraic closure (degree of a/gcd(a, a'))."""
    if not a:
        raise ValueError("radical of the zero polynomial")
    if degree(a) == 0:
        return 0
    return degree(a) - degree(gcd_poly(a, derivative(a)))


def to_string(p: IntPoly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
        parts.append(("-" if c < 0 else "+", term))
    sign0, term0 = parts[0]
    text = ("-" if sign0 == "-" else "") + term0
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text
