"""Block Hamiltonian flows on the sequence phase space.

Flows act independently on each coordinate pair (q_k, p_k): translations,
rotation blocks (harmonic oscillator), hyperbolic blocks (hyperbolic
oscillator), or an explicit finite family of determinant-one matrices.
Points carry a finite head of concrete coordinates plus a parametric tail
envelope; everything about the tail (membership in l2, blow-up intervals,
energy bounds) is classified by closed-form series tests on the envelope
and the frequency form, and partial sums double-check the classification
in the tests.

Exact evaluation: instead of a float time, most operations accept a 2x2
block (rational rotation or rational (ch, sh) pair) interpreted as the
unit-frequency map at that time; mode k then uses its a_k-th integer
matrix power, which keeps trajectories, conservation laws, and group laws
exact rational identities.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateSet, LeftPhaseSpace, UnsupportedCombination
from .geometry2d import Matrix2, as_number


def _as_int(x, what="value"):
    if isinstance(x, bool):
        raise TypeError(f"{what} must be an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise ValueError(f"{what} must be an integer, got {x!r}")


# -- frequency sequences ------------------------------------------------------


@dataclass(frozen=True)
class FrequencySeq:
    """Parametric frequency sequence a_k, k >= 1."""

    form: str  # "finite" | "constant" | "linear" | "geometric" | "power"
    values: tuple = ()
    c: object = 0
    rho: object = 1
    exponent: object = 1

    @classmethod
    def finite(cls, values):
        return cls("finite", values=tuple(as_number(v) for v in values))

    @classmethod
    def constant(cls, c):
        return cls("constant", c=as_number(c))

    @classmethod
    def linear(cls, c):
        return cls("linear", c=as_number(c))

    @classmethod
    def geometric(cls, c, rho):
        rho = as_number(rho)
        if rho <= 0:
            raise ValueError("geometric ratio must be positive")
        return cls("geometric", c=as_number(c), rho=rho)

    @classmethod
    def power(cls, c, exponent):
        return cls("power", c=as_number(c), exponent=as_number(exponent))

    def value(self, k):
        k = int(k)
        if k < 1:
            raise ValueError("mode indices are 1-based")
        if self.form == "finite":
            return self.values[k - 1] if k <= len(self.values) else Fraction(0)
        if self.form == "constant":
            return self.c
        if self.form == "linear":
            return self.c * k
        if self.form == "geometric":
            return self.c * self.rho ** k
        if self.form == "power":
            e = self.exponent
            if isinstance(e, Fraction) and e.denominator == 1:
                return self.c * Fraction(k) ** e.numerator
            return float(self.c) * float(k) ** float(e)
        raise ValueError(f"unknown frequency form {self.form!r}")

    def is_zero(self):
        if self.form == "finite":
            return all(v == 0 for v in self.values)
        return self.c == 0

    def is_bounded(self):
        """Decidable l-infinity membership per form."""
        if self.form == "finite" or self.is_zero():
            return True
        if self.form == "constant":
            return True
        if self.form == "linear":
            return False
        if self.form == "geometric":
            return self.rho <= 1
        if self.form == "power":
            return self.exponent <= 0
        raise ValueError(f"unknown frequency form {self.form!r}")

    def tail_sup(self, n):
        """sup over k > n of |a_k| (math.inf when unbounded)."""
        if self.is_zero():
            return 0.0
        if self.form == "finite":
            rest = self.values[n:]
            return float(max((abs(v) for v in rest), default=0))
        if self.form == "constant":
            return abs(float(self.c))
        if self.form == "geometric":
            if self.rho > 1:
                return math.inf
            return abs(float(self.c * self.rho ** (n + 1)))
        if self.form == "power" and self.exponent <= 0:
            return abs(float(self.c)) * float(n + 1) ** float(self.exponent)
        return math.inf

    def support(self):
        """Largest index with a_k != 0 for finite-support sequences, else None."""
        if self.form != "finite":
            return None
        last = 0
        for i, v in enumerate(self.values):
            if v != 0:
                last = i + 1
        return last

    def squared(self):
        if self.form == "finite":
            return FrequencySeq.finite([v * v for v in self.values])
        if self.form == "constant":
            return FrequencySeq.constant(self.c * self.c)
        if self.form == "linear":
            return FrequencySeq.power(self.c * self.c, 2)
        if self.form == "geometric":
            return FrequencySeq.geometric(self.c * self.c, self.rho * self.rho)
        if self.form == "power":
            return FrequencySeq.power(self.c * self.c, 2 * self.exponent)
        raise ValueError(f"unknown frequency form {self.form!r}")

    def to_dict(self):
        out = {"form": self.form}
        if self.form == "finite":
            out["values"] = [str(Fraction(v)) if not isinstance(v, float) else v for v in self.values]
        else:
            for name in ("c", "rho", "exponent"):
                v = getattr(self, name)
                out[name] = v if isinstance(v, float) else str(Fraction(v))
        return out

    @classmethod
    def from_dict(cls, data):
        form = data["form"]
        if form == "finite":
            return cls.finite([as_number(v) for v in data["values"]])
        c = as_number(data.get("c", 0))
        if form == "constant":
            return cls.constant(c)
        if form == "linear":
            return cls.linear(c)
        if form == "geometric":
            return cls.geometric(c, as_number(data["rho"]))
        if form == "power":
            return cls.power(c, as_number(data["exponent"]))
        raise ValueError(f"unknown frequency form {form!r}")


# -- phase points with parametric tails --------------------------------------


@dataclass(frozen=True)
class TailEnvelope:
    """Bound on the mode radius |z_k| = sqrt(q_k^2 + p_k^2) beyond the head.

    kinds: "zero" (finite support), "exponential" (scale * e^{-rate*k}),
    "power" (scale * k^{-rate}).  The envelope is read as a tight order of
    magnitude when classifying blow-up, and as an upper bound everywhere else.
    """

    kind: str = "zero"
    scale: float = 0.0
    rate: float = 0.0

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def exponential(cls, scale, rate):
        scale = float(scale)
        if scale < 0:
            raise ValueError("envelope scale must be nonnegative")
        if scale == 0:
            return cls.zero()
        return cls("exponential", scale, float(rate))

    @classmethod
    def power(cls, scale, rate):
        scale = float(scale)
        if scale < 0:
            raise ValueError("envelope scale must be nonnegative")
        if scale == 0:
            return cls.zero()
        return cls("power", scale, float(rate))

    def bound(self, k):
        if self.kind == "zero":
            return 0.0
        if self.kind == "exponential":
            return self.scale * math.exp(-self.rate * k)
        return self.scale * float(k) ** -self.rate

    def scaled(self, factor):
        if self.kind == "zero":
            return self
        return TailEnvelope(self.kind, self.scale * float(factor), self.rate)

    def l2_summable(self):
        if self.kind == "zero":
            return True
        if self.kind == "exponential":
            return self.rate > 0
        return self.rate > 0.5

    def to_dict(self):
        return {"kind": self.kind, "scale": self.scale, "rate": self.rate}

    @classmethod
    def from_dict(cls, data):
        kind = data.get("kind", "zero")
        if kind == "zero":
            return cls.zero()
        if kind == "exponential":
            return cls.exponential(data["scale"], data["rate"])
        if kind == "power":
            return cls.power(data["scale"], data["rate"])
        raise ValueError(f"unknown envelope kind {kind!r}")


_ZERO_TAIL = TailEnvelope.zero()


@dataclass(frozen=True)
class PhasePoint:
    """Finitely many concrete (q_k, p_k) pairs plus a tail envelope."""

    head: tuple = ()
    tail: TailEnvelope = _ZERO_TAIL

    @classmethod
    def from_pairs(cls, pairs, tail=None):
        head = tuple((as_number(q), as_number(p)) for q, p in pairs)
        return cls(head, tail if tail is not None else _ZERO_TAIL)

    def head_len(self):
        return len(self.head)

    def mode(self, k):
        k = int(k)
        if 1 <= k <= len(self.head):
            return self.head[k - 1]
        return None

    def mode_bound(self, k):
        m = self.mode(k)
        if m is not None:
            return math.hypot(float(m[0]), float(m[1]))
        return self.tail.bound(k)

    def in_l2(self):
        return self.tail.l2_summable()

    def in_weighted_l2(self, freq):
        """Whether sum |a_k|^2 (q_k^2 + p_k^2) converges (a domain predicate only)."""
        converges, _ = _weighted_tail(self.tail, freq.squared(), len(self.head))
        return converges

    def to_dict(self):
        return {
            "head": [
                [q if isinstance(q, float) else str(Fraction(q)),
                 p if isinstance(p, float) else str(Fraction(p))]
                for q, p in self.head
            ],
            "tail": self.tail.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls.from_pairs(
            [(as_number(q), as_number(p)) for q, p in data.get("head", [])],
            TailEnvelope.from_dict(data.get("tail", {"kind": "zero"})),
        )


# -- series tails -------------------------------------------------------------


def _geom_tail(r, n):
    """sum_{k>n} r^k for 0 <= r < 1."""
    return r ** (n + 1) / (1 - r)


def _k_geom_tail(r, n):
    """sum_{k>n} k r^k for 0 <= r < 1."""
    return r ** (n + 1) * ((n + 1) * (1 - r) + r) / (1 - r) ** 2


def _power_tail(p, n):
    """Upper bound on sum_{k>n} k^-p for p > 1."""
    if n < 1:
        return 1.0 + 1.0 / (p - 1)
    return float(n) ** (1 - p) / (p - 1)


def _powgeom_tail(s, r, n, limit=200000):
    """Upper bound on sum_{k>n} k^s r^k for 0 < r < 1 (any real s)."""
    total = 0.0
    k = n + 1
    while k < n + limit:
        log_term = s * math.log(k) + k * math.log(r)
        term = math.exp(log_term) if log_term < 700 else math.inf
        total += term
        ratio = r * ((k + 1) / k) ** s
        if ratio < 1 and term * ratio / (1 - ratio) <= 1e-16 * (total + 1e-300):
            return total + term * ratio / (1 - ratio)
        k += 1
    return total


def _weighted_tail(env, freq, n):
    """Classify and bound sum_{k>n} |a_k| * env(k)^2.

    Returns (converges, bound); bound is math.inf when the series diverges.
    """
    if env.kind == "zero" or freq.is_zero():
        return True, 0.0
    if freq.form == "finite":
        extra = 0.0
        for k in range(n + 1, len(freq.values) + 1):
            b = env.bound(k)
            extra += abs(float(freq.value(k))) * b * b
        return True, extra
    c = abs(float(freq.c))
    if env.kind == "exponential":
        if env.rate <= 0:
            return False, math.inf
        r = math.exp(-2 * env.rate)
        scale = env.scale ** 2
        if freq.form == "constant":
            return True, c * scale * _geom_tail(r, n)
        if freq.form == "linear":
            return True, c * scale * _k_geom_tail(r, n)
        if freq.form == "power":
            s = float(freq.exponent)
            return True, c * scale * _powgeom_tail(s, r, n)
        if freq.form == "geometric":
            q = float(freq.rho) * r
            if q >= 1:
                return False, math.inf
            return True, c * scale * _geom_tail(q, n)
    if env.kind == "power":
        scale = env.scale ** 2
        two_sigma = 2 * env.rate
        if freq.form == "constant":
            p = two_sigma
        elif freq.form == "linear":
            p = two_sigma - 1
        elif freq.form == "power":
            p = two_sigma - float(freq.exponent)
        elif freq.form == "geometric":
            rho = float(freq.rho)
            if rho > 1:
                return False, math.inf
            if rho == 1:
                p = two_sigma
            else:
                bound = c * scale * (n + 1) ** -two_sigma if two_sigma >= 0 else c * scale
                return True, bound * _geom_tail(rho, n) / max(rho ** (n + 1), 1e-300) * rho ** (n + 1)
        else:
            raise UnsupportedCombination(f"{env.kind} x {freq.form}")
        if p > 1:
            return True, c * scale * _power_tail(p, n)
        return False, math.inf
    raise UnsupportedCombination(f"{env.kind} x {freq.form}")


def _product_tail(e1, e2, n):
    """Classify and bound sum_{k>n} env1(k) * env2(k)."""
    if e1.kind == "zero" or e2.kind == "zero":
        return True, 0.0
    kinds = {e1.kind, e2.kind}
    scale = e1.scale * e2.scale
    if kinds == {"exponential"}:
        rate = e1.rate + e2.rate
        if rate <= 0:
            return False, math.inf
        return True, scale * _geom_tail(math.exp(-rate), n)
    if kinds == {"exponential", "power"}:
        exp_env = e1 if e1.kind == "exponential" else e2
        pow_env = e2 if e1.kind == "exponential" else e1
        if exp_env.rate <= 0:
            return False, math.inf
        return True, scale * _powgeom_tail(-pow_env.rate, math.exp(-exp_env.rate), n)
    # power x power
    p = e1.rate + e2.rate
    if p > 1:
        return True, scale * _power_tail(p, n)
    return False, math.inf


# -- block flows --------------------------------------------------------------


@dataclass(frozen=True)
class BlockFlow:
    """One-parameter family of per-pair symplectic blocks (or a translation)."""

    kind: str  # "translation" | "harmonic" | "hyperbolic" | "custom"
    freq: FrequencySeq = None
    shift: PhasePoint = None
    blocks: tuple = ()
    domain: str = "extended"  # or "hilbert"

    @classmethod
    def translation(cls, shift, domain="extended"):
        if shift.tail.kind != "zero":
            raise UnsupportedCombination("translation shifts must have finite support")
        return cls("translation", shift=shift, domain=domain)

    @classmethod
    def harmonic(cls, freq, domain="extended"):
        return cls("harmonic", freq=freq, domain=domain)

    @classmethod
    def hyperbolic(cls, freq, domain="extended"):
        return cls("hyperbolic", freq=freq, domain=domain)

    @classmethod
    def custom(cls, blocks, domain="extended"):
        items = []
        for k, m in dict(blocks).items():
            if not m.is_symplectic():
                raise ValueError(f"block at index {k} is not determinant-one")
            items.append((int(k), m))
        return cls("custom", blocks=tuple(sorted(items)), domain=domain)

    def block_matrix(self, k, t):
        """The 2x2 map applied to mode k at time t.

        ``t`` is a float/Fraction, or a Matrix2 read as the unit-frequency
        block at the desired time (then a_k must be an integer).
        """
        if self.kind == "translation":
            raise ValueError("translation flows have no linear block")
        if self.kind == "custom":
            n = _as_int(t, "custom flow time")
            m = dict(self.blocks).get(int(k))
            return Matrix2.identity() if m is None else m ** n
        a_k = self.freq.value(k)
        if isinstance(t, Matrix2):
            if self.kind == "harmonic" and not t.is_rotation_form():
                raise ValueError("harmonic flows take rotation-form time blocks")
            if self.kind == "hyperbolic" and not t.is_hyperbolic_form():
                raise ValueError("hyperbolic flows take hyperbolic-form time blocks")
            if not t.is_symplectic():
                raise ValueError("time block must have determinant one")
            return t ** _as_int(a_k, "frequency for matrix-power times")
        theta = float(a_k) * float(t)
        if self.kind == "harmonic":
            return Matrix2.rotation_angle(theta)
        return Matrix2.hyperbolic_angle(theta)

    def abs_time(self, t):
        if isinstance(t, Matrix2):
            if self.kind == "harmonic":
                return abs(t.rotation_time())
            return abs(t.hyperbolic_time())
        return abs(float(t))

    def signed_time(self, t):
        if isinstance(t, Matrix2):
            if self.kind == "harmonic":
                return t.rotation_time()
            return t.hyperbolic_time()
        return float(t)

    def nontrivial_indices(self, t):
        """Finite set of indices where the block at time t is not the identity.

        Returns None when the flow acts nontrivially at infinitely many
        indices.  Finite-support frequencies are reported conservatively
        (every index with a_k != 0), ignoring accidental full turns.
        """
        if self.kind == "translation":
            if t == 0 or self.shift is None:
                return frozenset()
            return frozenset(
                k + 1 for k, (q, p) in enumerate(self.shift.head) if q != 0 or p != 0
            )
        if self.kind == "custom":
            n = _as_int(t, "custom flow time")
            if n == 0:
                return frozenset()
            return frozenset(k for k, m in self.blocks if not (m ** n).is_identity())
        if isinstance(t, Matrix2):
            if t.is_identity():
                return frozenset()
        elif float(t) == 0.0:
            return frozenset()
        if self.freq.is_zero():
            return frozenset()
        if self.freq.form == "finite":
            return frozenset(k + 1 for k, v in enumerate(self.freq.values) if v != 0)
        return None

    def to_dict(self):
        out = {"kind": self.kind, "domain": self.domain}
        if self.freq is not None:
            out["frequency"] = self.freq.to_dict()
        if self.shift is not None:
            out["shift"] = self.shift.to_dict()
        if self.blocks:
            out["blocks"] = {str(k): m.to_dict() for k, m in self.blocks}
        return out

    @classmethod
    def from_dict(cls, data):
        kind = data["kind"]
        domain = data.get("domain", "extended")
        if kind == "translation":
            return cls.translation(PhasePoint.from_dict(data["shift"]), domain)
        if kind == "custom":
            blocks = {int(k): Matrix2.from_dict(m) for k, m in data["blocks"].items()}
            return cls.custom(blocks, domain)
        freq = FrequencySeq.from_dict(data["frequency"])
        if kind == "harmonic":
            return cls.harmonic(freq, domain)
        if kind == "hyperbolic":
            return cls.hyperbolic(freq, domain)
        raise ValueError(f"unknown flow kind {kind!r}")


# -- trajectories -------------------------------------------------------------


def _hyperbolic_envelope(env, freq, abs_t, head_len):
    if env.kind == "zero":
        return env
    if freq.is_bounded():
        return env.scaled(math.exp(freq.tail_sup(head_len) * abs_t))
    if env.kind == "exponential":
        if freq.form == "linear" or (
            freq.form == "power" and float(freq.exponent) == 1.0
        ):
            new_rate = env.rate - abs(float(freq.c)) * abs_t
            return TailEnvelope("exponential", env.scale, new_rate)
    raise UnsupportedCombination(
        f"no envelope update for {env.kind} envelope under {freq.form} frequencies"
    )


def trajectory(flow, z0, t):
    """Flow z0 for time t; exact on the head at matrix-valued times."""
    if flow.kind == "translation":
        t = as_number(t)
        shift_head = flow.shift.head if flow.shift is not None else ()
        n = max(len(z0.head), len(shift_head))
        head = []
        for k in range(n):
            q, p = z0.head[k] if k < len(z0.head) else (Fraction(0), Fraction(0))
            hq, hp = shift_head[k] if k < len(shift_head) else (Fraction(0), Fraction(0))
            head.append((q + t * hq, p + t * hp))
        if flow.domain == "hilbert" and not z0.in_l2():
            raise LeftPhaseSpace("initial point is not in the l2 phase space")
        return PhasePoint(tuple(head), z0.tail)

    if flow.domain == "hilbert":
        if not z0.in_l2():
            raise LeftPhaseSpace("initial point is not in the l2 phase space")
        if flow.kind == "hyperbolic":
            lo, hi = existence_interval(z0, flow.freq)
            tf = flow.signed_time(t)
            if not lo < tf < hi:
                raise LeftPhaseSpace(
                    f"t={tf} is outside the existence interval ({lo}, {hi})"
                )

    head = []
    for k in range(1, len(z0.head) + 1):
        m = flow.block_matrix(k, t)
        head.append(m.apply(z0.head[k - 1]))

    if flow.kind == "harmonic":
        tail = z0.tail
    elif flow.kind == "hyperbolic":
        tail = _hyperbolic_envelope(z0.tail, flow.freq, flow.abs_time(t), len(z0.head))
    else:  # custom: finitely many blocks, identity beyond them
        tail = z0.tail
        beyond = [m for k, m in flow.blocks if k > len(z0.head)]
        if beyond and tail.kind != "zero":
            n = _as_int(t, "custom flow time")
            growth = max(
                math.sqrt(sum(float(v) ** 2 for v in (m ** n).entries())) for m in beyond
            )
            tail = tail.scaled(max(growth, 1.0))
    return PhasePoint(tuple(head), tail)


def existence_interval(z0, freq):
    """Maximal open time interval on which the hyperbolic trajectory stays in l2.

    (-inf, inf) for bounded frequencies; otherwise classified in closed form
    from the envelope and frequency forms, with the envelope read as the
    actual order of magnitude of the initial tail.
    """
    if not z0.in_l2():
        raise ValueError("initial point is not in the l2 phase space")
    env = z0.tail
    if env.kind == "zero" or freq.is_bounded():
        return (-math.inf, math.inf)
    if env.kind == "exponential":
        b = env.rate
        if freq.form == "linear":
            t_max = b / abs(float(freq.c))
            return (-t_max, t_max)
        if freq.form == "power":
            s = float(freq.exponent)
            if s < 1:
                return (-math.inf, math.inf)
            if s == 1:
                t_max = b / abs(float(freq.c))
                return (-t_max, t_max)
            return (0.0, 0.0)
        if freq.form == "geometric":
            return (0.0, 0.0)
    if env.kind == "power":
        return (0.0, 0.0)
    raise UnsupportedCombination(
        f"no existence classification for {env.kind} x {freq.form}"
    )


# -- energies -----------------------------------------------------------------


def mode_energy(z, k, kind, freq):
    """Energy of mode k; for tail modes, an upper bound on its absolute value."""
    if kind not in ("harmonic", "hyperbolic"):
        raise ValueError(f"unknown oscillator kind {kind!r}")
    a_k = freq.value(k)
    m = z.mode(k)
    if m is not None:
        q, p = m
        if kind == "harmonic":
            return a_k * (p * p + q * q)
        return a_k * (p * p - q * q) / 2
    b = z.tail.bound(k)
    bound = abs(float(a_k)) * b * b
    return bound if kind == "harmonic" else bound / 2


@dataclass(frozen=True)
class EnergyEstimate:
    """Head sum plus a classified tail; converges=False marks divergence."""

    head_value: object
    tail_bound: float
    converges: bool


def total_energy(z, kind, freq):
    head = Fraction(0)
    for k in range(1, len(z.head) + 1):
        head = head + mode_energy(z, k, kind, freq)
    converges, bound = _weighted_tail(z.tail, freq, len(z.head))
    if kind == "hyperbolic":
        bound = bound / 2 if converges else bound
    return EnergyEstimate(head, bound, converges)


def energy_growth_table(z0, freq, ts, truncations):
    """Partial sums sum_{k<=N} (q_k(t)^2 + p_k(t)^2) under the hyperbolic flow.

    Tail modes are realized at their envelope magnitude, q_k = env(k), p_k = 0,
    so the table is deterministic and witnesses the blow-up classification.
    """
    if isinstance(truncations, int):
        truncations = [truncations]
    wanted = sorted({int(n) for n in truncations})
    if not wanted or wanted[0] < 1:
        raise ValueError("truncations must be positive integers")
    rows = []
    for t in ts:
        tf = float(t)
        acc = 0.0
        cuts = iter(wanted)
        next_cut = next(cuts)
        for k in range(1, wanted[-1] + 1):
            m = z0.mode(k)
            q, p = (float(m[0]), float(m[1])) if m is not None else (z0.tail.bound(k), 0.0)
            theta = float(freq.value(k)) * tf
            if abs(theta) > 700:
                sk = 0.0 if q == 0.0 and p == 0.0 else math.inf
            else:
                ch, sh = math.cosh(theta), math.sinh(theta)
                qt = q * ch + p * sh
                pt = p * ch + q * sh
                sk = qt * qt + pt * pt
            acc += sk
            if k == next_cut:
                rows.append((tf, k, acc))
                next_cut = next(cuts, None)
    return rows


def energy_series_bound(z0, freq, t):
    """Closed-form bound on the full energy series at time t.

    Supports exponential envelopes with linear frequencies strictly inside
    the existence interval (the blow-up demonstration setting); head modes
    are summed directly.
    """
    tf = abs(float(t))
    total = 0.0
    for k in range(1, len(z0.head) + 1):
        q, p = (float(v) for v in z0.head[k - 1])
        theta = float(freq.value(k)) * tf
        ch, sh = math.cosh(theta), math.sinh(theta)
        total += (q * ch + p * sh) ** 2 + (p * ch + q * sh) ** 2
    env = z0.tail
    if env.kind == "zero":
        return total
    if env.kind == "exponential" and freq.form == "linear":
        r = math.exp(2 * (abs(float(freq.c)) * tf - env.rate))
        if r >= 1:
            return math.inf
        return total + env.scale ** 2 * _geom_tail(r, len(z0.head))
    raise UnsupportedCombination(
        f"no closed-form energy bound for {env.kind} x {freq.form}"
    )


# -- pseudosymplectic pairing -------------------------------------------------


@dataclass(frozen=True)
class PseudoSymplecticValue:
    value: object
    domain_status: str  # "in-domain" | "not-in-domain"
    tail_bound: float

    def in_domain(self):
        return self.domain_status == "in-domain"


def pseudo_symplectic(z, w):
    """Pairing sum_k (q_k p'_k - q'_k p_k) with an l1 domain check on the tails.

    The head part is exact; beyond the common head the terms are bounded by
    the product of mode radii, and the pairing is declared in-domain exactly
    when that bounding series converges.
    """
    n = min(len(z.head), len(w.head))
    value = Fraction(0)
    for k in range(n):
        q, p = z.head[k]
        q2, p2 = w.head[k]
        value = value + q * p2 - q2 * p
    big = max(len(z.head), len(w.head))
    residual = 0.0
    for k in range(n + 1, big + 1):
        residual += z.mode_bound(k) * w.mode_bound(k)
    converges, tail = _product_tail(z.tail, w.tail, big)
    if not converges:
        return PseudoSymplecticValue(value, "not-in-domain", math.inf)
    return PseudoSymplecticValue(value, "in-domain", residual + tail)


# -- hyperbolic action-angle chart --------------------------------------------


def _signed_sqrt(x, sign):
    if not isinstance(x, float):
        f = Fraction(x)
        rn, rd = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return sign * Fraction(rn, rd)
    return sign * math.sqrt(float(x))


def to_action_angle(z):
    """Chart (q, p) -> (r, phi) with q = r ch(phi), p = r sh(phi).

    Defined per head mode on |q| > |p|; the origin maps to (0, 0) by
    convention, and anything else off the chart raises DegenerateSet.
    """
    rs, phis = [], []
    for i, (q, p) in enumerate(z.head):
        if q == 0 and p == 0:
            rs.append(Fraction(0))
            phis.append(0.0)
            continue
        if q * q <= p * p:
            raise DegenerateSet(f"mode {i + 1} has |q| <= |p|; outside the chart")
        r = _signed_sqrt(q * q - p * p, 1 if q > 0 else -1)
        phis.append(math.atanh(float(p) / float(q)))
        rs.append(r)
    return rs, phis


def from_action_angle(rs, phis):
    head = []
    for r, phi in zip(rs, phis):
        if phi == 0:
            head.append((r, 0 * r))
        else:
            ch, sh = math.cosh(float(phi)), math.sinh(float(phi))
            head.append((float(r) * ch, float(r) * sh))
    return PhasePoint(tuple(head))


def flow_in_action_angle(rs, phis, freq, t):
    """The flow as a pure angle shift: (r, phi) -> (r, phi + a t)."""
    shifted = [phi + float(freq.value(k + 1)) * float(t) for k, phi in enumerate(phis)]
    return list(rs), shifted
