"""Cylinder bars over symplectic coordinate pairs and their product measure.

Each coordinate pair (q_k, p_k) is constrained to a plane set; inactive pairs
sit at the unit cell [0,1)^2, so the infinite product of factor areas is the
finite product over active indices.  The measure extends additively to porous
bars and their disjoint unions (the generated ring), is invariant under
per-pair translations and determinant-one block maps, and all of that is
exact in rational arithmetic.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import rings
from .errors import TailNotPreserved
from .geometry2d import PlaneSet, as_number, is_exact_number
from .rings import PorousBar, RingSet


class CylinderBar(rings.ProductBar):
    """Bar with plane-set factors; the tail cell is the unit square."""

    _TAIL = PlaneSet.unit_cell()

    @classmethod
    def tail_factor(cls):
        return cls._TAIL


def bar_measure(bar):
    """Product of active factor areas (1 for the all-tail bar, 0 when empty)."""
    return bar.measure()


def intersect_bars(a, b):
    return a.intersect(b)


def ring_measure(ring_set):
    return ring_set.measure()


def ring_union(a, b):
    return a.union(b)


def ring_difference(a, b):
    return a.difference(b)


def ring_intersection(a, b):
    return a.intersect(b)


def translate_ringset(ring_set, shifts):
    """Shift factor k by the vector shifts[k]; indices it newly touches activate."""
    moves = {}
    for k, vec in shifts.items():
        dx, dy = as_number(vec[0]), as_number(vec[1])
        if dx != 0 or dy != 0:
            moves[int(k)] = (dx, dy)

    def shift_factor(k, factor):
        vec = moves.get(k)
        return factor if vec is None else factor.translate(vec)

    return ring_set.map(shift_factor, extra=moves.keys())


def pushforward(ring_set, flow, t, activate=()):
    """Image of a ring set under the block flow at time t.

    Every index where the flow acts nontrivially must already be active in
    every bar of the ring set or be named in ``activate``; otherwise the
    implicit tail cells would not be preserved and TailNotPreserved is raised.
    Translation flows delegate to per-factor translation instead.
    """
    if flow.kind == "translation":
        head = () if flow.shift is None else flow.shift.head
        shifts = {k + 1: (t * q, t * p) for k, (q, p) in enumerate(head)}
        return translate_ringset(ring_set, shifts)

    nontrivial = flow.nontrivial_indices(t)
    if nontrivial is None:
        raise TailNotPreserved(
            "flow acts nontrivially on infinitely many coordinate pairs"
        )
    activate = frozenset(int(k) for k in activate)
    allowed = activate
    missing = set()
    for piece in ring_set.pieces:
        base_missing = nontrivial - piece.base.active_indices() - allowed
        missing |= base_missing
        for hole in piece.holes:
            missing |= nontrivial - hole.active_indices() - allowed
    if missing:
        raise TailNotPreserved(
            f"flow moves the tail cell at inactive indices {sorted(missing)}; "
            "activate them explicitly"
        )

    matrices = {k: flow.block_matrix(k, t) for k in nontrivial}

    def move(k, factor):
        m = matrices.get(k)
        return factor if m is None else factor.linear_image(m)

    return ring_set.map(move, extra=activate | nontrivial)


# -- admissibility of infinite tail-area profiles ---------------------------


class Admissibility(Enum):
    POSITIVE_PRODUCT = "admissible-with-positive-product"
    ZERO_PRODUCT = "admissible-with-zero-product"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class TailAreaProfile:
    """Parametric factor areas s_k for all k >= 1.

    Forms: ``constant`` (s_k = c), ``geometric`` (s_k = c * rho**k),
    ``power`` (s_k = c * k**-sigma), ``log_power`` (ln s_k = -c * k**-sigma).
    """

    form: str
    c: object = 1
    rho: object = 1
    sigma: object = 1

    @classmethod
    def constant(cls, c):
        return cls("constant", c=as_number(c))

    @classmethod
    def geometric(cls, c, rho):
        return cls("geometric", c=as_number(c), rho=as_number(rho))

    @classmethod
    def power(cls, c, sigma):
        return cls("power", c=as_number(c), sigma=as_number(sigma))

    @classmethod
    def log_power(cls, c, sigma):
        return cls("log_power", c=as_number(c), sigma=as_number(sigma))

    def value(self, k):
        if self.form == "constant":
            return self.c
        if self.form == "geometric":
            return self.c * self.rho ** k
        if self.form == "power":
            return float(self.c) * float(k) ** -float(self.sigma)
        if self.form == "log_power":
            return math.exp(-float(self.c) * float(k) ** -float(self.sigma))
        raise ValueError(f"unknown profile form {self.form!r}")


@dataclass(frozen=True)
class AdmissibilityResult:
    status: Admissibility
    log_product: float  # sum of ln s_k; -inf for zero products, nan if inadmissible
    product: float


def _zeta(s):
    """Riemann zeta for s > 1 via Euler-Maclaurin (plenty for diagnostics)."""
    s = float(s)
    n = 64
    partial = sum(k ** -s for k in range(1, n + 1))
    tail = n ** (1 - s) / (s - 1) - 0.5 * n ** -s + s * n ** (-s - 1) / 12
    return partial + tail


def admissibility(profile):
    """Classify sum of ln+ s_k (admissible) and sum |ln s_k| (positive product)."""
    form = profile.form
    if form == "constant":
        c = profile.c
        if c <= 0:
            return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
        if c > 1:
            return AdmissibilityResult(Admissibility.INADMISSIBLE, math.nan, math.inf)
        if c == 1:
            return AdmissibilityResult(Admissibility.POSITIVE_PRODUCT, 0.0, 1.0)
        return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
    if form == "geometric":
        c, rho = profile.c, profile.rho
        if c <= 0 or rho <= 0:
            return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
        if rho > 1:
            return AdmissibilityResult(Admissibility.INADMISSIBLE, math.nan, math.inf)
        if rho == 1:
            return admissibility(TailAreaProfile.constant(c))
        return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
    if form == "power":
        c, sigma = profile.c, profile.sigma
        if c <= 0:
            return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
        if sigma > 0:
            return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
        if sigma == 0:
            return admissibility(TailAreaProfile.constant(c))
        return AdmissibilityResult(Admissibility.INADMISSIBLE, math.nan, math.inf)
    if form == "log_power":
        c, sigma = float(profile.c), float(profile.sigma)
        if c == 0:
            return AdmissibilityResult(Admissibility.POSITIVE_PRODUCT, 0.0, 1.0)
        if sigma > 1:
            log_sum = -c * _zeta(sigma)
            return AdmissibilityResult(
                Admissibility.POSITIVE_PRODUCT, log_sum, math.exp(log_sum)
            )
        if c > 0:
            return AdmissibilityResult(Admissibility.ZERO_PRODUCT, -math.inf, 0.0)
        return AdmissibilityResult(Admissibility.INADMISSIBLE, math.nan, math.inf)
    raise ValueError(f"unknown profile form {form!r}")


# -- serialization -----------------------------------------------------------


def bar_to_dict(bar):
    if bar.is_null():
        return {"active": None}
    return {"active": {str(k): f.to_dict() for k, f in bar.factors.items()}}


def bar_from_dict(data):
    active = data["active"]
    if active is None:
        return CylinderBar({1: PlaneSet.empty()})
    return CylinderBar({int(k): PlaneSet.from_dict(v) for k, v in active.items()})


def porous_to_dict(porous):
    return {
        "base": bar_to_dict(porous.base),
        "holes": [bar_to_dict(h) for h in porous.holes],
    }


def porous_from_dict(data):
    return PorousBar(
        bar_from_dict(data["base"]), [bar_from_dict(h) for h in data.get("holes", [])]
    )


def ring_to_dict(ring_set):
    return {"pieces": [porous_to_dict(p) for p in ring_set.pieces]}


def ring_from_dict(data):
    return RingSet([porous_from_dict(p) for p in data["pieces"]])
