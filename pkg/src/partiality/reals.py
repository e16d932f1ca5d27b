"""Semideciding the sign of an exact real given by rational approximations.

A real is presented as a function ``f : N -> Q`` whose values settle at rate
``-1 < m * (f(m) - f(n)) < 1`` for ``m < n``; two presentations name the
same real iff ``-2 <= n * (f(n) - g(n)) <= 2`` for every ``n``.  Whether the
named real is positive is then semidecidable but not decidable: a zero can
never be told apart from a small-enough nonzero by finitely many queries.

``is_positive`` returns the verdict as a monotone sequence of bits — done
with 1 from the first index that certifies positivity, done with 0 from the
first that certifies non-positivity, pending forever on zero — so all the
fuel-bounded machinery applies unchanged.

Rationals are ``fractions.Fraction`` throughout: exact, hashable, and with
arithmetic we have no reason to rewrite.
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction
from typing import Callable

from .seq import Done, PENDING, Seq

Rational = Fraction

Real = Callable[[int], Rational]


class Sign3(Enum):
    MINUS = -1
    QUERY = 0
    PLUS = 1


def sign_approx(f: Real) -> Callable[[int], Sign3]:
    """Sticky running sign of ``f``: undecided until some ``|n * f(n)| > 2``.

    The threshold is what the settling rate buys: once ``n * f(n)`` escapes
    ``[-2, 2]`` the sign of every later approximant — and so of the limit —
    is pinned down, and the answer may be latched forever.  The recurrence
    starts undecided and consults ``f`` only while undecided, so each prefix
    costs each query once.
    """
    memo: list[Sign3] = [Sign3.QUERY]

    def s(n: int) -> Sign3:
        while len(memo) <= n:
            k = len(memo)
            prev = memo[k - 1]
            if prev is not Sign3.QUERY:
                memo.append(prev)
            else:
                v = k * f(k)
                if v < -2:
                    memo.append(Sign3.MINUS)
                elif v > 2:
                    memo.append(Sign3.PLUS)
                else:
                    memo.append(Sign3.QUERY)
        return memo[n]

    return s


def is_positive(f: Real) -> Seq:
    """Positivity of the real named by ``f``, as a sequence of bits.

    Index ``n`` is ``Done(1)`` once the sign has latched positive by step
    ``n``, ``Done(0)`` once it has latched negative, ``PENDING`` while still
    undecided.  For the zero real every index is pending.
    """
    s = sign_approx(f)

    def produce():
        n = 0
        while True:
            v = s(n)
            if v is Sign3.QUERY:
                yield PENDING
            else:
                yield Done(1 if v is Sign3.PLUS else 0)
            n += 1

    return Seq(produce)


# ---------------------------------------------------------------------------
# presentations and their laws, fuel-bounded


def const_real(q: Rational) -> Real:
    q = Fraction(q)
    return lambda _n: q


def is_cauchy_prefix(f: Real, n: int) -> bool:
    """Check the settling rate on all pairs ``m < k <= n``."""
    vals = [f(i) for i in range(n + 1)]
    for m in range(1, n + 1):
        for k in range(m + 1, n + 1):
            d = m * (vals[m] - vals[k])
            if not (-1 < d < 1):
                return False
    return True


def equiv_within(f: Real, g: Real, fuel: int) -> bool:
    """Check the same-real criterion at every index up to ``fuel``."""
    for n in range(fuel + 1):
        d = n * (f(n) - g(n))
        if not (-2 <= d <= 2):
            return False
    return True


_RAT = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Rational:
    """Parse ``p`` or ``p/q`` with an optional leading minus.

    Stricter than ``Fraction``'s own parser on purpose: no floats, no
    whitespace, no exponent forms — the CLI grammar stays predictable.
    """
    m = _RAT.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = m.group(2)
    if den is None:
        return Fraction(num)
    if int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, int(den))
