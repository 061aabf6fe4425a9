"""Closed-form classification of even integers near the base-2 log bound.

For even n with 2**m < n <= 2**(m+1), complexity m+1 happens exactly for a
pure power or a sum of two powers of 2, and complexity m+2 exactly for four
closed families of bit patterns (for m >= 3).  These predicates are exact
and allocation-light so the table builder can use them as pruning bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


def ceil_log2(n: int) -> int:
    """Smallest e with 2**e >= n, for n >= 1."""
    return (n - 1).bit_length()


@dataclass(frozen=True)
class Pow2Decomposition:
    """Exponents of the set bits of an even number, strictly decreasing."""

    exponents: tuple[int, ...]

    def value(self) -> int:
        return sum(1 << e for e in self.exponents)


def decompose_pow2(n: int) -> Pow2Decomposition:
    _require_even(n)
    exps = tuple(e for e in range(n.bit_length() - 1, 0, -1) if n >> e & 1)
    return Pow2Decomposition(exps)


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"{n} is not an even positive integer")


@dataclass(frozen=True)
class PurePower:
    """n == 2**exponent; complexity equals the exponent."""

    exponent: int

    def value(self) -> int:
        return 1 << self.exponent

    def implied_complexity(self) -> int:
        return self.exponent

    def describe(self) -> str:
        return f"2^{self.exponent}"


@dataclass(frozen=True)
class TwoPowers:
    """n == 2**high + 2**low with high > low >= 1; complexity high + 1."""

    high: int
    low: int

    def value(self) -> int:
        return (1 << self.high) + (1 << self.low)

    def implied_complexity(self) -> int:
        return self.high + 1

    def describe(self) -> str:
        return f"2^{self.high} + 2^{self.low}"


@dataclass(frozen=True)
class FormA:
    """Three distinct powers 2^m1 + 2^m2 + 2^m3, m1 > m2 > m3 >= 1."""

    m1: int
    m2: int
    m3: int

    def value(self) -> int:
        return (1 << self.m1) + (1 << self.m2) + (1 << self.m3)

    def implied_complexity(self) -> int:
        return self.m1 + 2

    def describe(self) -> str:
        return f"2^{self.m1} + 2^{self.m2} + 2^{self.m3}"


@dataclass(frozen=True)
class FormB:
    """Four powers with m1 > m2 > m3 > m4 >= 2 and m1 + m4 == m2 + m3."""

    m1: int
    m2: int
    m3: int
    m4: int

    def value(self) -> int:
        return (1 << self.m1) + (1 << self.m2) + (1 << self.m3) + (1 << self.m4)

    def implied_complexity(self) -> int:
        return self.m1 + 2

    def describe(self) -> str:
        return f"2^{self.m1} + 2^{self.m2} + 2^{self.m3} + 2^{self.m4} (balanced)"


@dataclass(frozen=True)
class FormC:
    """2^m1 + 2^(m1-3) + 2^m2 + 2^(m2-1) with m1 >= m2 + 3 >= 6.

    When m1 == m2 + 3 two terms merge and the value has only three set bits.
    """

    m1: int
    m2: int

    def value(self) -> int:
        return ((1 << self.m1) + (1 << (self.m1 - 3))
                + (1 << self.m2) + (1 << (self.m2 - 1)))

    def implied_complexity(self) -> int:
        return self.m1 + 2

    def describe(self) -> str:
        return f"2^{self.m1} + 2^{self.m1 - 3} + 2^{self.m2} + 2^{self.m2 - 1}"


@dataclass(frozen=True)
class FormD:
    """2^m + 2^(m-5) + 2^(m-6) + 2^(m-7) with m >= 10."""

    m: int

    def value(self) -> int:
        m = self.m
        return (1 << m) + (1 << (m - 5)) + (1 << (m - 6)) + (1 << (m - 7))

    def implied_complexity(self) -> int:
        return self.m + 2

    def describe(self) -> str:
        return f"2^{self.m} + 2^{self.m - 5} + 2^{self.m - 6} + 2^{self.m - 7}"


ClassifiedForm = Union[PurePower, TwoPowers, FormA, FormB, FormC, FormD]


def classify_m_plus_1(n: int) -> Optional[Union[PurePower, TwoPowers]]:
    """Match n against the complexity == ceil(log2 n) patterns, else None."""
    _require_even(n)
    pc = n.bit_count()
    if pc == 1:
        return PurePower(n.bit_length() - 1)
    if pc == 2:
        high = n.bit_length() - 1
        low = (n & -n).bit_length() - 1
        return TwoPowers(high, low)
    return None


def classify_m_plus_2(n: int) -> list[ClassifiedForm]:
    """All closed forms matching n among families (a) to (d).

    Matching is by reconstruction equality, so the degenerate merges of form
    (c) (three surviving bits) are caught.  Forms overlap; every match is
    returned.  An empty list for n with ceil(log2 n) - 1 >= 3 certifies
    complexity >= ceil(log2 n) + 2.
    """
    _require_even(n)
    exps = decompose_pow2(n).exponents
    k = len(exps)
    out: list[ClassifiedForm] = []
    if k == 3:
        out.append(FormA(*exps))
    if k == 4 and exps[3] >= 2 and exps[0] + exps[3] == exps[1] + exps[2]:
        out.append(FormB(*exps))
    m1 = exps[0]
    for m2 in range(3, m1 - 2):
        cand = FormC(m1, m2)
        if cand.value() == n:
            out.append(cand)
            break
    if m1 >= 10 and FormD(m1).value() == n:
        out.append(FormD(m1))
    return out


def refined_lower_bound_2(n: int) -> int:
    """Sharpest classification-based lower bound on the base-2 complexity."""
    pc = n.bit_count()
    m1 = (n - 1).bit_length()
    if pc <= 2:
        return m1
    if pc == 3:
        return m1 + 1           # always form (a): lowest bit >= 1 since n is even
    if pc >= 5:
        return m1 + 2           # five or more distinct powers of 2
    if classify_m_plus_2(n):
        return m1 + 1
    return m1 + 2
