"""Finite unions of half-open rational intervals on the real line.

Endpoints are exact rationals; floats are converted via their exact binary
value, so translation by a float is still an exact operation.  As with the
plane sets, everything is read modulo zero-length differences.
"""

from fractions import Fraction


def _as_fraction(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not endpoints")
    if isinstance(x, (int, str, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"unsupported endpoint {x!r}")


class IntervalUnion:
    """Sorted disjoint half-open intervals [lo, hi) with rational endpoints."""

    __slots__ = ("intervals",)

    def __init__(self, pairs=()):
        items = []
        for lo, hi in pairs:
            lo, hi = _as_fraction(lo), _as_fraction(hi)
            if hi < lo:
                lo, hi = hi, lo
            if lo < hi:
                items.append((lo, hi))
        items.sort()
        merged = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                prev_lo, prev_hi = merged[-1]
                merged[-1] = (prev_lo, max(prev_hi, hi))
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    @classmethod
    def single(cls, lo, hi):
        return cls([(lo, hi)])

    @classmethod
    def empty(cls):
        return cls()

    def is_empty(self):
        return not self.intervals

    def length(self):
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def span(self):
        """(min, max) hull endpoints, or None when empty."""
        if not self.intervals:
            return None
        return (self.intervals[0][0], self.intervals[-1][1])

    def contains(self, x):
        x = _as_fraction(x)
        return any(lo <= x < hi for lo, hi in self.intervals)

    def translate(self, h):
        h = _as_fraction(h)
        return IntervalUnion([(lo + h, hi + h) for lo, hi in self.intervals])

    def scale(self, factor):
        factor = _as_fraction(factor)
        if factor == 0:
            raise ValueError("zero scale collapses intervals")
        return IntervalUnion([(lo * factor, hi * factor) for lo, hi in self.intervals])

    def clip(self, lo, hi):
        lo, hi = _as_fraction(lo), _as_fraction(hi)
        out = []
        for a, b in self.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 < b2:
                out.append((a2, b2))
        return IntervalUnion(out)

    def intersect(self, other):
        out = []
        for a, b in self.intervals:
            for c, d in other.intervals:
                lo, hi = max(a, c), min(b, d)
                if lo < hi:
                    out.append((lo, hi))
        return IntervalUnion(out)

    def union(self, other):
        return IntervalUnion(self.intervals + other.intervals)

    def subtract(self, other):
        out = []
        for a, b in self.intervals:
            chunks = [(a, b)]
            for c, d in other.intervals:
                next_chunks = []
                for lo, hi in chunks:
                    if d <= lo or hi <= c:
                        next_chunks.append((lo, hi))
                        continue
                    if lo < c:
                        next_chunks.append((lo, c))
                    if d < hi:
                        next_chunks.append((d, hi))
                chunks = next_chunks
            out.extend(chunks)
        return IntervalUnion(out)

    def symmetric_difference(self, other):
        return self.subtract(other).union(other.subtract(self))

    def __eq__(self, other):
        return isinstance(other, IntervalUnion) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        parts = ", ".join(f"[{lo}, {hi})" for lo, hi in self.intervals)
        return f"IntervalUnion({parts})"

    def to_pairs(self):
        return [[str(lo), str(hi)] for lo, hi in self.intervals]

    @classmethod
    def from_pairs(cls, pairs):
        return cls([(Fraction(lo), Fraction(hi)) for lo, hi in pairs])


def fraction_lcm(a, b):
    """Least common multiple of two positive rationals."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise ValueError("lcm needs positive rationals")
    import math

    return Fraction(
        math.lcm(a.numerator, b.numerator), math.gcd(a.denominator, b.denominator)
    )
