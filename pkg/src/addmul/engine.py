"""Complexity tables: bounds, the filling DP, witnesses, and the oracle.

The complexity of n over a base literal b (n a positive multiple of b) is
the least number of copies of b that express n using addition and
multiplication.  ``build_table`` fills a dense byte table of these values;
``reachable_sets_oracle`` recomputes them by exhaustive set combination and
serves as the independent ground truth the table is checked against.
"""

from __future__ import annotations

import struct
import zlib
from bisect import bisect_left
from dataclasses import dataclass
from math import isqrt

from .classify2 import refined_lower_bound_2
from .tree import LEAF, Add, Expr, Mul, ValueOverflowError, WORD_MAX


class InvalidConfigError(ValueError):
    """Build parameters violate the table contract."""


class CapacityExceededError(ValueError):
    """The complexity upper bound for the requested range exceeds one byte."""


class OutOfRangeError(ValueError):
    """Queried value lies outside the table."""


class NotMultipleOfBaseError(ValueError):
    """Queried value is not a positive multiple of the table base."""


class RangeExceededError(ValueError):
    """A check needs values beyond what the supplied table covers."""


class TableFormatError(ValueError):
    """A table file is malformed or corrupted."""


# ---------------------------------------------------------------------------
# bounds

def lower_bound(n: int, base: int) -> int:
    """Ceiling of log_base(n), by exact comparison against powers of base."""
    if base < 2:
        raise ValueError("lower_bound needs base >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    e, p = 0, 1
    while p < n:
        p *= base
        e += 1
    return e


def _base_digits(n: int, base: int) -> list[tuple[int, int]]:
    """(exponent, digit) pairs of the base expansion, highest first, zeros skipped."""
    out = []
    e = 0
    while n:
        n, d = divmod(n, base)
        if d:
            out.append((e, d))
        e += 1
    out.reverse()
    return out


def upper_bound_digits(n: int, base: int) -> int:
    """Constructive upper bound: top exponent plus digit sum minus one."""
    if base < 2:
        raise ValueError("upper_bound_digits needs base >= 2")
    if n < base or n % base:
        raise NotMultipleOfBaseError(f"{n} is not a positive multiple of {base}")
    digits = _base_digits(n, base)
    return digits[0][0] + sum(d for _, d in digits) - 1


def _power_chain(e: int) -> Expr:
    t: Expr = LEAF
    for _ in range(e - 1):
        t = Mul(t, LEAF)
    return t


def _leaf_sum(a: int) -> Expr:
    t: Expr = LEAF
    for _ in range(a - 1):
        t = Add(t, LEAF)
    return t


def digit_expression(n: int, base: int) -> Expr:
    """Tree for n with exactly upper_bound_digits(n, base) leaves.

    Built bottom-up from the base expansion: factor out the power of base
    just below the lowest nonzero digit, recurse on the shifted prefix, and
    append the lowest digit as a run of added leaves.
    """
    if base < 2:
        raise ValueError("digit_expression needs base >= 2")
    if n < base or n % base:
        raise NotMultipleOfBaseError(f"{n} is not a positive multiple of {base}")

    def build(digits: list[tuple[int, int]]) -> Expr:
        top_e, top_d = digits[0]
        if len(digits) == 1:
            inner = _leaf_sum(top_d)
            return inner if top_e == 1 else Mul(_power_chain(top_e - 1), inner)
        low_e, low_d = digits[-1]
        shifted = [(e - (low_e - 1), d) for e, d in digits[:-1]]
        inner = Add(build(shifted), _leaf_sum(low_d))
        return inner if low_e == 1 else Mul(_power_chain(low_e - 1), inner)

    return build(_base_digits(n, base))


def max_expressible(base: int, at_least: int) -> list[int]:
    """Ladder of the largest value reachable with k copies of base, k = 0, 1, ...

    Stops at the first entry >= at_least.  For base >= 2 the ladder is the
    plain powers; for base 1 it follows the defining recurrence (the familiar
    3-smooth staircase).
    """
    if base >= 2:
        vals = [1]
        while vals[-1] < at_least:
            vals.append(vals[-1] * base)
        return vals
    vals = [0, 1, 2, 3]
    while vals[-1] < at_least:
        k = len(vals)
        best = 0
        for i in range(1, k // 2 + 1):
            s = vals[i] + vals[k - i]
            p = vals[i] * vals[k - i]
            best = max(best, s, p)
        vals.append(best)
    return vals


# ---------------------------------------------------------------------------
# divisor enumeration

def spf_sieve(n: int) -> list[int]:
    """Smallest prime factor for every value up to n (0 for 0 and 1)."""
    spf = [0] * (n + 1)
    for i in range(2, n + 1):
        if spf[i] == 0:
            for j in range(i, n + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


def divisor_pairs_trial(q: int) -> list[tuple[int, int]]:
    """All (x, y) with x*y == q and x <= y, by trial division."""
    out = []
    for x in range(1, isqrt(q) + 1):
        if q % x == 0:
            out.append((x, q // x))
    return out


def divisor_pairs_spf(q: int, spf: list[int]) -> list[tuple[int, int]]:
    """All (x, y) with x*y == q and x <= y, from a smallest-prime-factor sieve."""
    if q == 1:
        return [(1, 1)]
    divs = [1]
    m = q
    while m > 1:
        p = spf[m]
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        pk = p
        grown = list(divs)
        for _ in range(e):
            grown.extend(d * pk for d in divs)
            pk *= p
        divs = grown
    return [(d, q // d) for d in divs if d * d <= q]


# ---------------------------------------------------------------------------
# table construction

@dataclass
class BuildConfig:
    """Parameters for one table build."""

    base: int
    limit: int
    use_reduction: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.base < 1:
            raise InvalidConfigError("base must be a positive integer")
        if self.limit < self.base:
            raise InvalidConfigError("limit must be at least the base")
        if self.limit % self.base:
            raise InvalidConfigError(
                f"limit {self.limit} is not a multiple of base {self.base}")
        if self.threads < 1:
            raise InvalidConfigError("threads must be positive")
        if self.base == 1:
            # the single-digit reduction rule is only valid for base > 1
            self.use_reduction = False


@dataclass(frozen=True)
class ComplexityTable:
    """Dense byte table: entries[i] is the complexity of (i + 1) * base."""

    base: int
    limit: int
    entries: bytes


def _check_capacity(base: int, limit: int) -> None:
    # refuse builds whose proven upper bound may not fit in one byte
    if base == 1:
        too_big = limit ** 3 > 2 ** 255
    else:
        too_big = limit ** base > base ** 256
    if too_big:
        raise CapacityExceededError(
            f"complexity upper bound exceeds 255 for base {base}, limit {limit}")


def build_table(cfg: BuildConfig, _no_early_stop: bool = False) -> ComplexityTable:
    """Fill the complexity table for every multiple of cfg.base up to cfg.limit.

    Ascending scan; per value: the digit construction seeds the upper bound,
    then (base > 1, value not divisible by base**2, reduction on) the exact
    single-digit reduction rule, otherwise multiplication splits over divisor
    pairs and addition splits with a log-bound stop rule.  ``_no_early_stop``
    disables every pruning shortcut and is only meant for validation runs.
    """
    _check_capacity(cfg.base, cfg.limit)
    size = cfg.limit // cfg.base
    entries = bytearray(size)
    if cfg.base == 1:
        _fill_base1(entries, cfg.limit, _no_early_stop)
    else:
        _fill(entries, cfg.base, cfg.limit, cfg.use_reduction, _no_early_stop)
    return ComplexityTable(base=cfg.base, limit=cfg.limit, entries=bytes(entries))


def _fill(T: bytearray, base: int, limit: int, use_reduction: bool,
          no_early_stop: bool) -> None:
    size = len(T)
    T[0] = 1
    if size == 1:
        return
    base2 = base * base
    ladder = max_expressible(base, limit)
    top = len(ladder) - 1
    spf = spf_sieve(limit // base2) if limit >= base2 else []
    is_two = base == 2
    pairs = divisor_pairs_spf
    lb = 0            # least k with base**k >= n
    half_lb = 0       # least k with 2 * base**k >= n
    n = base
    for j in range(2, size + 1):
        n += base
        while ladder[lb] < n:
            lb += 1
        q, a = divmod(j, base)          # n == base2 * q + a * base
        if a and use_reduction:
            T[j - 1] = (T[q * base - 1] if q else 0) + a
            continue
        if is_two:
            best = n.bit_length() + n.bit_count() - 2
            lo = refined_lower_bound_2(n)
        else:
            best = upper_bound_digits(n, base)
            lo = lb
        if a == 0 and q and (best > lo or no_early_stop):
            for x, y in pairs(q, spf):
                c = T[x - 1] + T[y - 1]
                if c < best:
                    best = c
                    if best <= lo and not no_early_stop:
                        break
        if best > lo or no_early_stop:
            while 2 * ladder[half_lb] < n:
                half_lb += 1
            half = j >> 1
            if no_early_stop:
                stop = half
            else:
                k = best - half_lb - 1
                stop = half if k >= top else (
                    min(ladder[k] // base, half) if k >= 0 else 0)
            i = 1
            while i <= stop:
                c = T[i - 1] + T[j - i - 1]
                if c < best:
                    best = c
                    if not no_early_stop:
                        if best <= lo:
                            break
                        k = best - half_lb - 1
                        stop = half if k >= top else (
                            min(ladder[k] // base, half) if k >= 0 else 0)
                i += 1
        T[j - 1] = best


def _fill_base1(T: bytearray, limit: int, no_early_stop: bool) -> None:
    T[0] = 1
    if limit == 1:
        return
    ladder = max_expressible(1, limit)
    top = len(ladder) - 1
    spf = spf_sieve(limit)
    # binary-method costs seed the upper bound (a valid expression always exists)
    seed = bytearray(limit + 1)
    seed[1] = 1
    if limit >= 2:
        seed[2] = 2
    if limit >= 3:
        seed[3] = 3
    lb = 0
    half_lb = 0
    for n in range(2, limit + 1):
        if n >= 4:
            seed[n] = seed[n >> 1] + 2 if n % 2 == 0 else seed[n - 1] + 1
        while ladder[lb] < n:
            lb += 1
        best = seed[n]
        if best > lb or no_early_stop:
            for x, y in divisor_pairs_spf(n, spf):
                if x == 1:
                    continue
                c = T[x - 1] + T[y - 1]
                if c < best:
                    best = c
                    if best <= lb and not no_early_stop:
                        break
        if best > lb or no_early_stop:
            while 2 * ladder[half_lb] < n:
                half_lb += 1
            half = n >> 1
            if no_early_stop:
                stop = half
            else:
                k = best - half_lb - 1
                stop = half if k >= top else (min(ladder[k], half) if k >= 0 else 0)
            i = 1
            while i <= stop:
                c = T[i - 1] + T[n - i - 1]
                if c < best:
                    best = c
                    if not no_early_stop:
                        if best <= lb:
                            break
                        k = best - half_lb - 1
                        stop = half if k >= top else (
                            min(ladder[k], half) if k >= 0 else 0)
                i += 1
        T[n - 1] = best


# ---------------------------------------------------------------------------
# queries

def complexity(table: ComplexityTable, n: int) -> int:
    """Table lookup of the complexity of n."""
    if n % table.base:
        raise NotMultipleOfBaseError(
            f"{n} is not a multiple of base {table.base}")
    if n < table.base or n > table.limit:
        raise OutOfRangeError(f"{n} outside table range [{table.base}, {table.limit}]")
    return table.entries[n // table.base - 1]


def witness(table: ComplexityTable, n: int) -> Expr:
    """One optimal expression tree for n.

    Deterministic tie-breaks: the single-digit reduction rule first (base > 1),
    then the multiplication split with the smallest factor, then the addition
    split with the smallest addend.
    """
    complexity(table, n)  # validates n
    base = table.base
    T = table.entries

    def rec(v: int) -> Expr:
        if v == base:
            return LEAF
        target = T[v // base - 1]
        if base > 1:
            a = (v // base) % base
            if a:
                b = v - a * base
                if b:
                    t = rec(b)
                    extra = a
                else:
                    t = LEAF
                    extra = a - 1
                for _ in range(extra):
                    t = Add(t, LEAF)
                return t
        x = base if base > 1 else 2
        step = base if base > 1 else 1
        while x * x <= v:
            if v % x == 0:
                y = v // x
                if y % base == 0 and T[x // base - 1] + T[y // base - 1] == target:
                    return Mul(rec(x), rec(y))
            x += step
        a = base
        while a <= v // 2:
            if T[a // base - 1] + T[(v - a) // base - 1] == target:
                return Add(rec(a), rec(v - a))
            a += base
        raise AssertionError(f"no split of {v} reproduces its stored complexity")

    return rec(n)


def defect_histogram(table: ComplexityTable) -> dict[int, int]:
    """Counts of (complexity - integer log lower bound) across the table.

    For base 1 the lower bound is the exact max-expressible ladder bound
    rather than a ceiling log.
    """
    ladder = max_expressible(table.base, table.limit)
    hist: dict[int, int] = {}
    lb = 0
    n = 0
    for c in table.entries:
        n += table.base
        while ladder[lb] < n:
            lb += 1
        d = c - lb
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))


def reachable_sets_oracle(base: int, m_max: int,
                          value_cap: int | None = None) -> dict[int, int]:
    """Ground truth: map value -> least number of copies of base reaching it.

    Level sets are combined exhaustively: S_1 = {base} and S_m collects all
    sums and products of S_i x S_j over i + j = m.  Values above value_cap
    are pruned, which is sound because every subexpression value is at most
    the final value.
    """
    if base < 1 or m_max < 1:
        raise ValueError("base and m_max must be positive")
    if base > 1 and base ** m_max > WORD_MAX:
        raise ValueOverflowError(f"base**m_max exceeds {WORD_MAX}")
    if value_cap is None:
        value_cap = base ** m_max if base > 1 else _base1_cap(m_max)
    levels: list[set[int]] = [set() for _ in range(m_max + 1)]
    if base <= value_cap:
        levels[1].add(base)
    first: dict[int, int] = {base: 1} if base <= value_cap else {}
    for m in range(2, m_max + 1):
        cur = levels[m]
        for i in range(1, m // 2 + 1):
            right = levels[m - i]
            for x in levels[i]:
                for y in right:
                    s = x + y
                    if s <= value_cap:
                        cur.add(s)
                    p = x * y
                    if p <= value_cap:
                        cur.add(p)
        for v in cur:
            if v not in first:
                first[v] = m
    return first


def _base1_cap(m_max: int) -> int:
    vals = [0, 1, 2, 3]
    while len(vals) <= m_max:
        k = len(vals)
        vals.append(max(max(vals[i] + vals[k - i], vals[i] * vals[k - i])
                        for i in range(1, k // 2 + 1)))
    return vals[m_max]


# ---------------------------------------------------------------------------
# beyond-table search

def complexity_search(table: ComplexityTable, n: int,
                      memo: dict | None = None) -> int:
    """Exact complexity of n, falling back to a budgeted split search when n
    exceeds the table.

    The search seeds with the digit upper bound, prunes with the refined
    lower bound (base 2) or the ceiling log, applies the single-digit
    reduction exactly, and recurses with strictly shrinking budgets so it
    always terminates.  Multiplication operands up to sqrt(n) must be covered
    by the table.  ``memo`` may be shared across calls.
    """
    base = table.base
    if base == 1:
        raise OutOfRangeError("beyond-table search requires base > 1")
    if n % base:
        raise NotMultipleOfBaseError(f"{n} is not a multiple of base {base}")
    if n < base:
        raise OutOfRangeError(f"{n} below base {base}")
    if n <= table.limit:
        return complexity(table, n)
    if n > WORD_MAX:
        raise ValueOverflowError(f"{n} exceeds the supported word size")
    if isqrt(n) > table.limit:
        raise RangeExceededError(
            f"table limit {table.limit} below sqrt({n}); build a larger table")
    if memo is None:
        memo = {}
    T = table.entries
    limit = table.limit
    base2 = base * base
    is_two = base == 2
    ladder = max_expressible(base, n)

    def lbound(v: int) -> int:
        return bisect_left(ladder, v)

    def rlb(v: int) -> int:
        return refined_lower_bound_2(v) if is_two else lbound(v)

    def fits(v: int, budget: int) -> bool:
        # decide: is the complexity of v at most budget?
        if budget <= 0:
            return False
        if v <= limit:
            return T[v // base - 1] <= budget
        key = (v, budget)
        cached = memo.get(key)
        if cached is not None:
            return cached
        a = (v // base) % base
        if a:
            res = fits(v - a * base, budget - a)
        elif rlb(v) > budget:
            res = False
        elif upper_bound_digits(v, base) <= budget:
            res = True
        else:
            res = False
            q = v // base2
            for x, y in divisor_pairs_trial(q):
                cx = T[x - 1]  # x * base <= sqrt(v) <= table limit, checked on entry
                ny = y * base
                if ny <= limit:
                    if cx + T[y - 1] <= budget:
                        res = True
                        break
                elif fits(ny, budget - cx):
                    res = True
                    break
            if not res:
                half_lb = bisect_left(ladder, (v + 1) // 2)
                k = budget - half_lb
                if k >= 1:
                    stop = min(ladder[k] if k < len(ladder) else v // 2, v // 2)
                    if stop > limit:
                        raise RangeExceededError(
                            f"addition operands beyond table limit while searching {v}")
                    aa = base
                    while aa <= stop:
                        if rlb(aa) + rlb(v - aa) <= budget and \
                                fits(v - aa, budget - T[aa // base - 1]):
                            res = True
                            break
                        aa += base
        memo[key] = res
        return res

    def exact(v: int) -> int:
        if v <= limit:
            return T[v // base - 1]
        cached = memo.get(v)
        if cached is not None:
            return cached
        a = (v // base) % base
        if a:
            r = exact(v - a * base) + a
        else:
            r = upper_bound_digits(v, base)
            lo = rlb(v)
            while r > lo and fits(v, r - 1):
                r -= 1
        memo[v] = r
        return r

    return exact(n)


# ---------------------------------------------------------------------------
# table files

_MAGIC = b"LCXT"
_VERSION = 1
_HEADER = struct.Struct("<4sIQQ")


def save_table(table: ComplexityTable, path) -> None:
    """Write the table in the binary format (magic, version, base, limit,
    entries, CRC-32 of everything before it; all little-endian)."""
    head = _HEADER.pack(_MAGIC, _VERSION, table.base, table.limit)
    crc = zlib.crc32(table.entries, zlib.crc32(head)) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(head)
        fh.write(table.entries)
        fh.write(struct.pack("<I", crc))


def load_table(path) -> ComplexityTable:
    """Read and validate a table file; raises TableFormatError with a
    distinct message for bad magic, bad version, size mismatch, corrupt
    header, and checksum mismatch."""
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size + 4:
        raise TableFormatError(f"truncated table file: only {len(data)} bytes")
    magic, version, base, limit = _HEADER.unpack_from(data, 0)
    if magic != _MAGIC:
        raise TableFormatError(f"bad magic {magic!r}: not a complexity table file")
    if version != _VERSION:
        raise TableFormatError(f"unsupported table format version {version}")
    if base < 1 or limit < base or limit % base:
        raise TableFormatError(f"corrupt header: base={base} limit={limit}")
    expected = _HEADER.size + limit // base + 4
    if len(data) != expected:
        raise TableFormatError(
            f"size mismatch: expected {expected} bytes, found {len(data)}")
    (crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(data[:-4]) & 0xFFFFFFFF != crc:
        raise TableFormatError("checksum mismatch: table file is corrupted")
    return ComplexityTable(base=base, limit=limit,
                           entries=data[_HEADER.size:-4])
