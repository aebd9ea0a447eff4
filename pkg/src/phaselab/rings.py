"""Product cylinder sets over countably many coordinates, finitely many active.

A bar fixes a factor set at finitely many coordinate indices and leaves every
other index at the algebra's distinguished tail cell, whose weight is exactly
one; the bar's weight is the finite product of its active factor weights.
Porous bars subtract finitely many bars from a base bar, and disjoint unions
of porous bars realize the generated ring.  Every ring operation below reduces
to bar intersections, so the machinery works for any factor type exposing
``measure()`` and ``intersect()`` plus a tail-cell factory on the bar class.

Measures are computed by inclusion-exclusion over hole intersections, which is
exact but exponential in the hole count; the count is capped.
"""

from fractions import Fraction

from .errors import HoleLimitExceeded

HOLE_LIMIT = 12


class ProductBar:
    """Cylinder set: active factors at finitely many indices, tail cell elsewhere.

    Subclasses provide ``tail_factor()``.  A bar whose factors include a
    null factor is the empty set (modulo null); it is stored canonically
    with ``factors = None``.
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        items = {}
        null = False
        for k, f in dict(factors).items():
            k = int(k)
            if k < 1:
                raise ValueError("coordinate indices are 1-based")
            m = f.measure()
            if m == 0:
                null = True
                break
            if m == 1 and self._equals_tail(f):
                continue
            items[k] = f
        self.factors = None if null else dict(sorted(items.items()))

    @classmethod
    def tail_factor(cls):
        raise NotImplementedError

    @classmethod
    def _equals_tail(cls, f):
        tail = cls.tail_factor()
        overlap = f.intersect(tail).measure()
        return f.measure() + tail.measure() - 2 * overlap == 0

    @classmethod
    def all_tail(cls):
        return cls()

    def is_null(self):
        return self.factors is None

    def active_indices(self):
        return frozenset() if self.factors is None else frozenset(self.factors)

    def factor(self, k):
        """Factor at index k, materializing the tail cell when inactive."""
        if self.factors is None:
            raise ValueError("the empty bar has no factors")
        f = self.factors.get(int(k))
        return f if f is not None else self.tail_factor()

    def measure(self):
        if self.factors is None:
            return Fraction(0)
        total = Fraction(1)
        for f in self.factors.values():
            total = total * f.measure()
        return total

    def intersect(self, other):
        if self.factors is None or other.factors is None:
            return type(self)._null()
        out = {}
        for k in sorted(set(self.factors) | set(other.factors)):
            a = self.factors.get(k)
            b = other.factors.get(k)
            if a is None:
                f = b.intersect(self.tail_factor())
            elif b is None:
                f = a.intersect(self.tail_factor())
            else:
                f = a.intersect(b)
            out[k] = f
        return type(self)(out)

    def map_factors(self, fn, extra=()):
        """Apply ``fn(k, factor)`` at every active index plus ``extra`` ones."""
        if self.factors is None:
            return self
        indices = set(self.factors) | {int(k) for k in extra}
        return type(self)({k: fn(k, self.factor(k)) for k in sorted(indices)})

    @classmethod
    def _null(cls):
        bar = cls.__new__(cls)
        bar.factors = None
        return bar

    def __eq__(self, other):
        return type(self) is type(other) and self.factors == other.factors

    def __repr__(self):
        if self.factors is None:
            return f"{type(self).__name__}(empty)"
        return f"{type(self).__name__}(active={sorted(self.factors)})"


def _union_measure(bars):
    """Measure of a finite union of bars by inclusion-exclusion."""
    total = Fraction(0)
    n = len(bars)

    def visit(start, current, sign):
        nonlocal total
        for i in range(start, n):
            inter = bars[i] if current is None else current.intersect(bars[i])
            m = inter.measure()
            if m == 0:
                continue
            total += sign * m
            visit(i + 1, inter, -sign)

    visit(0, None, 1)
    return total


class PorousBar:
    """A bar minus finitely many bars (holes are intersected with the base)."""

    __slots__ = ("base", "holes")

    def __init__(self, base, holes=()):
        cut = []
        if not base.is_null():
            for hole in holes:
                h = base.intersect(hole)
                if h.is_null():
                    continue
                cut.append(h)
        kept = []
        for i, h in enumerate(cut):
            mh = h.measure()
            redundant = False
            for j, g in enumerate(cut):
                if i == j:
                    continue
                if h.intersect(g).measure() == mh and (mh < g.measure() or j < i):
                    redundant = True  # h is covered by a bigger (or earlier equal) hole
                    break
            if not redundant:
                kept.append(h)
        if len(kept) > HOLE_LIMIT:
            raise HoleLimitExceeded(
                f"porous bar with {len(kept)} holes exceeds the limit of {HOLE_LIMIT}"
            )
        self.base = base
        self.holes = tuple(kept)

    def measure(self):
        if self.base.is_null():
            return Fraction(0)
        return self.base.measure() - _union_measure(list(self.holes))

    def intersect(self, other):
        return PorousBar(self.base.intersect(other.base), self.holes + other.holes)

    def subtract(self, other):
        """Difference with another porous bar, as disjoint porous pieces."""
        pieces = [PorousBar(self.base, self.holes + (other.base,))]
        for j, g in enumerate(other.holes):
            pieces.append(PorousBar(self.base.intersect(g), self.holes + other.holes[:j]))
        return [p for p in pieces if p.measure() != 0]

    def map(self, fn, extra=()):
        return PorousBar(
            self.base.map_factors(fn, extra),
            tuple(h.map_factors(fn, extra) for h in self.holes),
        )

    def active_indices(self):
        out = set(self.base.active_indices())
        for h in self.holes:
            out |= h.active_indices()
        return frozenset(out)

    def __repr__(self):
        return f"PorousBar(base={self.base!r}, holes={len(self.holes)})"


class RingSet:
    """Element of the generated ring: a disjoint union of porous bars."""

    __slots__ = ("pieces",)

    def __init__(self, pieces=(), check_disjoint=True):
        kept = [p for p in pieces if p.measure() != 0]
        if check_disjoint:
            for i in range(len(kept)):
                for j in range(i + 1, len(kept)):
                    if kept[i].intersect(kept[j]).measure() != 0:
                        raise ValueError(f"pieces {i} and {j} overlap")
        self.pieces = tuple(kept)

    @classmethod
    def from_bar(cls, bar):
        return cls([PorousBar(bar)], check_disjoint=False)

    @classmethod
    def from_porous(cls, porous):
        return cls([porous], check_disjoint=False)

    @classmethod
    def empty(cls):
        return cls((), check_disjoint=False)

    def is_null(self):
        return not self.pieces

    def measure(self):
        total = Fraction(0)
        for p in self.pieces:
            total += p.measure()
        return total

    def intersect(self, other):
        out = []
        for p in self.pieces:
            for q in other.pieces:
                out.append(p.intersect(q))
        return RingSet(out, check_disjoint=False)

    def difference(self, other):
        out = []
        for p in self.pieces:
            chunks = [p]
            for q in other.pieces:
                chunks = [piece for c in chunks for piece in c.subtract(q)]
                if not chunks:
                    break
            out.extend(chunks)
        return RingSet(out, check_disjoint=False)

    def union(self, other):
        return RingSet(
            self.pieces + other.difference(self).pieces, check_disjoint=False
        )

    def symmetric_difference(self, other):
        return RingSet(
            self.difference(other).pieces + other.difference(self).pieces,
            check_disjoint=False,
        )

    def map(self, fn, extra=()):
        return RingSet([p.map(fn, extra) for p in self.pieces], check_disjoint=False)

    def active_indices(self):
        out = set()
        for p in self.pieces:
            out |= p.active_indices()
        return frozenset(out)

    def __repr__(self):
        return f"RingSet({len(self.pieces)} pieces)"
