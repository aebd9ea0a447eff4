"""Exact 2D set algebra on finite unions of convex polygons.

A plane set is a finite union of convex polygons with pairwise disjoint
interiors.  Coordinates default to `fractions.Fraction`, which keeps areas
and boolean operations exact; applying a map with floating-point entries
flips the result into approximate mode (plain floats, with a small area
cutoff to suppress degenerate slivers).  Boundaries are never tracked:
sets are treated modulo zero-area differences, so half-open and closed
rectangles are interchangeable.
"""

import math
from fractions import Fraction

EXACT = "exact"
APPROXIMATE = "approximate"

# area below which a float-mode polygon is considered a degenerate sliver
_FLOAT_AREA_EPS = 1e-12
_FLOAT_DET_TOL = 1e-12


def is_exact_number(x):
    return not isinstance(x, float)


def as_number(value):
    """Parse a coordinate; strings "p/q" and ints stay exact, floats do not."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (str, int)):
        return Fraction(value)
    if isinstance(value, (Fraction, float)):
        return value
    raise TypeError(f"unsupported coordinate {value!r}")


def number_to_json(x):
    return float(x) if isinstance(x, float) else str(Fraction(x))


def _cross(a, b, p):
    """Twice the signed area of triangle (a, b, p); > 0 when p is left of a->b."""
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


def _twice_area(poly):
    s = 0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def polygon_area(poly):
    """Shoelace area of a vertex list (positive for counterclockwise order)."""
    return _twice_area(poly) / 2


class Matrix2:
    """2x2 matrix [[a, b], [c, d]] acting on column vectors (x, y)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = as_number(a)
        self.b = as_number(b)
        self.c = as_number(c)
        self.d = as_number(d)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_exact(self):
        return all(is_exact_number(v) for v in (self.a, self.b, self.c, self.d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_symplectic(self, tol=_FLOAT_DET_TOL):
        if self.is_exact:
            return self.det == 1
        scale = max(1.0, abs(self.a * self.d), abs(self.b * self.c))
        return abs(self.det - 1) <= tol * scale

    def is_identity(self, tol=_FLOAT_DET_TOL):
        if self.is_exact:
            return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)
        return (
            abs(self.a - 1) <= tol
            and abs(self.d - 1) <= tol
            and abs(self.b) <= tol
            and abs(self.c) <= tol
        )

    def apply(self, point):
        x, y = point
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other):
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        det = self.det
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("matrix powers take integer exponents")
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Matrix2.identity()
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Matrix2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Matrix2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def rotation(cls, cos_value, sin_value):
        """Rotation block [[c, -s], [s, c]]; (c, s) must lie on the unit circle."""
        c, s = as_number(cos_value), as_number(sin_value)
        r = c * c + s * s
        if is_exact_number(r):
            if r != 1:
                raise ValueError(f"({c}, {s}) is not on the unit circle")
        elif abs(r - 1) > 1e-9:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
        return cls(c, -s, s, c)

    @classmethod
    def rotation_angle(cls, theta):
        return cls.rotation(math.cos(theta), math.sin(theta))

    @classmethod
    def hyperbolic(cls, ch, sh):
        """Hyperbolic block [[ch, sh], [sh, ch]] with ch^2 - sh^2 = 1."""
        c, s = as_number(ch), as_number(sh)
        r = c * c - s * s
        if is_exact_number(r):
            if r != 1:
                raise ValueError(f"({c}, {s}) is not on the unit hyperbola")
        elif abs(r - 1) > 1e-9 * max(1.0, abs(c * c)):
            raise ValueError(f"({c}, {s}) is not on the unit hyperbola")
        return cls(c, s, s, c)

    @classmethod
    def hyperbolic_angle(cls, t):
        return cls.hyperbolic(math.cosh(t), math.sinh(t))

    @classmethod
    def hyperbolic_exp(cls, r):
        """Hyperbolic block at time ln(r): exact for rational r > 0."""
        r = as_number(r)
        if r <= 0:
            raise ValueError("exp(t) must be positive")
        return cls.hyperbolic((r + 1 / r) / 2, (r - 1 / r) / 2)

    @classmethod
    def shear(cls, s):
        return cls(1, as_number(s), 0, 1)

    def is_rotation_form(self):
        return self.a == self.d and self.b == -self.c

    def is_hyperbolic_form(self):
        return self.a == self.d and self.b == self.c

    def hyperbolic_time(self):
        """Recover t for a hyperbolic-form block (float)."""
        return math.asinh(float(self.b))

    def rotation_time(self):
        """Recover the angle in (-pi, pi] for a rotation-form block (float)."""
        return math.atan2(float(self.c), float(self.a))

    def to_dict(self):
        return {"entries": [number_to_json(v) for v in self.entries()]}

    @classmethod
    def from_dict(cls, data):
        return cls(*[as_number(v) for v in data["entries"]])


def _normalize_polygon(poly, eps):
    """Canonical CCW vertex list, or None when degenerate.

    Removes repeated and collinear vertices; orientation is flipped when the
    signed area is negative; polygons with |area| <= eps vanish.
    """
    pts = [tuple(p) for p in poly]
    # drop consecutive duplicates
    dedup = []
    for p in pts:
        if not dedup or p != dedup[-1]:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    if len(dedup) < 3:
        return None
    # drop collinear middle vertices
    out = []
    n = len(dedup)
    for i in range(n):
        a, b, c = dedup[i - 1], dedup[i], dedup[(i + 1) % n]
        if _cross(a, c, b) != 0:
            out.append(b)
    if len(out) < 3:
        return None
    doubled = _twice_area(out)
    if doubled < 0:
        out.reverse()
        doubled = -doubled
    if doubled <= 2 * eps:
        return None
    # rotate so the lexicographically smallest vertex comes first
    k = min(range(len(out)), key=lambda i: out[i])
    return tuple(out[k:] + out[:k])


def _is_convex_ccw(poly, exact):
    n = len(poly)
    tol = 0 if exact else -1e-9
    for i in range(n):
        if _cross(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < tol:
            return False
    return True


def _clip_half_plane(poly, a, b, keep_left):
    """Clip a convex polygon by the line a->b, keeping one side."""
    sign = 1 if keep_left else -1
    out = []
    n = len(poly)
    sides = [sign * _cross(a, b, p) for p in poly]
    for i in range(n):
        p, sp = poly[i], sides[i]
        q, sq = poly[(i + 1) % n], sides[(i + 1) % n]
        if sp >= 0:
            out.append(p)
        if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
            t = sp / (sp - sq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _intersect_convex(p, q, eps):
    out = list(p)
    n = len(q)
    for i in range(n):
        out = _clip_half_plane(out, q[i], q[(i + 1) % n], keep_left=True)
        if len(out) < 3:
            return None
    return _normalize_polygon(out, eps)


def _subtract_convex(p, q, eps):
    """Decompose p \\ q into convex pieces with disjoint interiors."""
    pieces = []
    rest = list(p)
    n = len(q)
    for i in range(n):
        a, b = q[i], q[(i + 1) % n]
        outside = _normalize_polygon(_clip_half_plane(rest, a, b, keep_left=False), eps)
        if outside is not None:
            pieces.append(outside)
        rest = _clip_half_plane(rest, a, b, keep_left=True)
        if len(rest) < 3:
            break
    return pieces


class PlaneSet:
    """Finite union of convex polygons with pairwise disjoint interiors."""

    __slots__ = ("polygons", "mode")

    def __init__(self, polygons, mode=None, _trusted=False):
        eps = 0
        polys = []
        approx = mode == APPROXIMATE
        for poly in polygons:
            vertices = tuple((as_number(x), as_number(y)) for x, y in poly)
            if any(isinstance(v, float) for pt in vertices for v in pt):
                approx = True
            polys.append(vertices)
        if approx:
            eps = _FLOAT_AREA_EPS
            polys = [tuple((float(x), float(y)) for x, y in p) for p in polys]
        if mode == EXACT and approx:
            raise ValueError("exact mode requires rational coordinates")
        normalized = []
        for poly in polys:
            norm = _normalize_polygon(poly, eps)
            if norm is None:
                continue
            if not _trusted and not _is_convex_ccw(norm, exact=not approx):
                raise ValueError(f"polygon is not convex: {poly}")
            normalized.append(norm)
        if not _trusted:
            for i in range(len(normalized)):
                for j in range(i + 1, len(normalized)):
                    overlap = _intersect_convex(normalized[i], normalized[j], eps)
                    if overlap is not None:
                        raise ValueError("polygons have overlapping interiors")
        self.polygons = tuple(sorted(normalized))
        self.mode = APPROXIMATE if approx else EXACT

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, mode=EXACT):
        return cls((), mode=mode if mode == APPROXIMATE else None, _trusted=True)

    @classmethod
    def polygon(cls, vertices):
        return cls([vertices])

    @classmethod
    def rect(cls, x0, y0, x1, y1):
        x0, y0, x1, y1 = (as_number(v) for v in (x0, y0, x1, y1))
        if x1 < x0:
            x0, x1 = x1, x0
        if y1 < y0:
            y0, y1 = y1, y0
        if x0 == x1 or y0 == y1:
            return cls.empty()
        return cls([[(x0, y0), (x1, y0), (x1, y1), (x0, y1)]], _trusted=True)

    @classmethod
    def unit_cell(cls):
        return cls.rect(0, 0, 1, 1)

    # -- queries ----------------------------------------------------------

    @property
    def _eps(self):
        return _FLOAT_AREA_EPS if self.mode == APPROXIMATE else 0

    def is_empty(self):
        return not self.polygons

    def area(self):
        """Total area; exact rational in exact mode."""
        total = Fraction(0) if self.mode == EXACT else 0.0
        for poly in self.polygons:
            total += polygon_area(poly)
        return total

    def measure(self):
        return self.area()

    def contains(self, point):
        """Boundary-inclusive membership (sets are defined modulo boundaries)."""
        p = (as_number(point[0]), as_number(point[1]))
        for poly in self.polygons:
            n = len(poly)
            if all(_cross(poly[i], poly[(i + 1) % n], p) >= 0 for i in range(n)):
                return True
        return False

    def bounding_box(self):
        if not self.polygons:
            return None
        xs = [x for poly in self.polygons for x, _ in poly]
        ys = [y for poly in self.polygons for _, y in poly]
        return (min(xs), min(ys), max(xs), max(ys))

    # -- set operations ---------------------------------------------------

    def _result_mode(self, other=None):
        if self.mode == APPROXIMATE or (other is not None and other.mode == APPROXIMATE):
            return APPROXIMATE
        return EXACT

    def intersect(self, other):
        mode = self._result_mode(other)
        eps = _FLOAT_AREA_EPS if mode == APPROXIMATE else 0
        pieces = []
        for p in self.polygons:
            for q in other.polygons:
                r = _intersect_convex(p, q, eps)
                if r is not None:
                    pieces.append(r)
        return PlaneSet(pieces, mode=mode if mode == APPROXIMATE else None, _trusted=True)

    def subtract(self, other):
        mode = self._result_mode(other)
        eps = _FLOAT_AREA_EPS if mode == APPROXIMATE else 0
        pieces = []
        for p in self.polygons:
            chunks = [p]
            for q in other.polygons:
                chunks = [r for c in chunks for r in _subtract_convex(c, q, eps)]
                if not chunks:
                    break
            pieces.extend(chunks)
        return PlaneSet(pieces, mode=mode if mode == APPROXIMATE else None, _trusted=True)

    def union(self, other):
        extra = other.subtract(self)
        mode = self._result_mode(other)
        return PlaneSet(
            self.polygons + extra.polygons,
            mode=mode if mode == APPROXIMATE else None,
            _trusted=True,
        )

    def symmetric_difference(self, other):
        left = self.subtract(other)
        right = other.subtract(self)
        mode = self._result_mode(other)
        return PlaneSet(
            left.polygons + right.polygons,
            mode=mode if mode == APPROXIMATE else None,
            _trusted=True,
        )

    def equals_mod_null(self, other):
        diff = self.symmetric_difference(other)
        if diff.mode == EXACT:
            return diff.area() == 0
        return diff.area() <= 1e-9

    def translate(self, vector):
        dx, dy = as_number(vector[0]), as_number(vector[1])
        polys = [tuple((x + dx, y + dy) for x, y in poly) for poly in self.polygons]
        return PlaneSet(polys, _trusted=True)

    def linear_image(self, matrix):
        """Image under an invertible linear map; area scales by |det|."""
        det = matrix.det
        if det == 0 or (not matrix.is_exact and abs(det) <= _FLOAT_DET_TOL):
            raise ValueError("singular matrix has no plane-set image")
        polys = []
        for poly in self.polygons:
            mapped = [matrix.apply(pt) for pt in poly]
            if det < 0:
                mapped.reverse()
            polys.append(tuple(mapped))
        return PlaneSet(polys, _trusted=True)

    def as_approximate(self):
        if self.mode == APPROXIMATE:
            return self
        return PlaneSet(self.polygons, mode=APPROXIMATE, _trusted=True)

    # -- plumbing -----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, PlaneSet)
            and self.mode == other.mode
            and self.polygons == other.polygons
        )

    def __hash__(self):
        return hash((self.mode, self.polygons))

    def __repr__(self):
        return f"PlaneSet({len(self.polygons)} polygons, {self.mode})"

    def to_dict(self):
        return {
            "mode": self.mode,
            "polygons": [
                [[number_to_json(x), number_to_json(y)] for x, y in poly]
                for poly in self.polygons
            ],
        }

    @classmethod
    def from_dict(cls, data):
        mode = data.get("mode", EXACT)
        return cls(
            [[(as_number(x), as_number(y)) for x, y in poly] for poly in data["polygons"]],
            mode=APPROXIMATE if mode == APPROXIMATE else None,
        )
