"""Laurent series in 1/T over F_q with sparse unbounded-integer exponents.

A Series maps exponents n to nonzero coefficients of T^(-n) (negative n
encode positive powers of T).  Every series carries a *horizon* K: the
coefficient map is complete for all n <= K.  A series may also carry a
*generator*, a pure rule able to produce the coefficient at any exponent,
in which case the horizon can be advanced at will; `materialized` returns
the advanced copy (values are immutable snapshots).

Exact objects (polynomials, finite term sums, results of arithmetic on
them) have an infinite horizon.  Results of arithmetic on truncated data
keep the tightest horizon justified by the inputs:

    add/sub : min(K_x, K_y)
    mul     : min(K_x + N_y, K_y + N_x)   (N = valuation lower bound)

Absolute values are symbolic: |x| = q^(-N) is stored as the pair (q, N),
and an unresolved value (all known coefficients zero but more unknown)
is reported as `below q^(-(K+1))`, never silently as zero.
"""

from __future__ import annotations

import heapq
import math

from .algebra import FieldDesc, FqElem, TPoly, same_field
from .errors import (
    BeyondHorizon,
    BudgetExceeded,
    DivisionByZeroPoly,
    NotAPowerOfCharacteristic,
    NotAPthPower,
    PrecisionExhausted,
)

INF = math.inf

# hard cap on dense digit extension (rational expansions and the like)
DENSE_EXTENSION_CAP = 1 << 24


class AbsValue:
    """Symbolic non-archimedean absolute value: q^(-exponent), zero, or a bound.

    kind "exact": value is exactly q^(-exponent).
    kind "zero" : value is exactly 0.
    kind "below": value is <= q^(-exponent); undetermined past the horizon.
    """

    __slots__ = ("q", "kind", "exponent")

    def __init__(self, q, kind, exponent=None):
        self.q = q
        self.kind = kind
        self.exponent = exponent

    @classmethod
    def exact(cls, q, exponent):
        return cls(q, "exact", exponent)

    @classmethod
    def zero(cls, q):
        return cls(q, "zero")

    @classmethod
    def below(cls, q, exponent):
        return cls(q, "below", exponent)

    @property
    def is_exact(self):
        return self.kind == "exact"

    @property
    def is_zero(self):
        return self.kind == "zero"

    @property
    def is_below(self):
        return self.kind == "below"

    def log_q(self):
        """log_q of the value (only for exact values)."""
        if not self.is_exact:
            raise ValueError(f"log_q undefined for {self.kind} absolute value")
        return -self.exponent

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return AbsValue.zero(self.q)
        kind = "exact" if (self.is_exact and other.is_exact) else "below"
        return AbsValue(self.q, kind, self.exponent + other.exponent)

    def __eq__(self, other):
        return (
            isinstance(other, AbsValue)
            and self.q == other.q
            and self.kind == other.kind
            and self.exponent == other.exponent
        )

    def __hash__(self):
        return hash((self.q, self.kind, self.exponent))

    def le(self, other) -> bool:
        """Certified self <= other; raises if the comparison is undetermined."""
        if self.is_zero:
            return True
        if other.is_zero:
            return False  # nonzero-or-unknown vs zero: exact nonzero fails, below unknown
        if self.is_exact and other.is_exact:
            return self.exponent >= other.exponent
        if self.is_below and other.is_exact:
            if self.exponent >= other.exponent:
                return True
            raise PrecisionExhausted(f"cannot compare {self} <= {other}")
        raise PrecisionExhausted(f"cannot compare {self} <= {other}")

    def render(self) -> str:
        if self.is_zero:
            return "0"
        mag = f"q^{-self.exponent}"
        return mag if self.is_exact else f"<={mag}"

    def __repr__(self):
        return f"AbsValue({self.render()})"


def _merge_supports(iters):
    last = None
    for n in heapq.merge(*iters):
        if n != last:
            yield n
            last = n


def _ceildiv(a, b):
    return -((-a) // b)


# ---------------------------------------------------------------------------
# coefficient generators (pure, shareable)
# ---------------------------------------------------------------------------


class DictGen:
    """Generator view of an exact finite term map."""

    __slots__ = ("field", "terms", "lo")

    def __init__(self, field, terms):
        self.field = field
        self.terms = terms
        self.lo = min(terms) if terms else None

    def coeff(self, n):
        return self.terms.get(n, self.field.zero)

    def support(self, lo, hi):
        return iter(sorted(k for k in self.terms if lo <= k <= hi))


class SumGen:
    """Signed sum of component generators."""

    __slots__ = ("field", "parts", "lo")

    def __init__(self, field, parts):
        self.field = field
        flat = []
        for plus, g in parts:
            if isinstance(g, SumGen):
                for p2, g2 in g.parts:
                    flat.append((p2 if plus else not p2, g2))
            else:
                flat.append((plus, g))
        self.parts = flat
        los = [g.lo for _, g in flat if g.lo is not None]
        self.lo = min(los) if los else None

    def coeff(self, n):
        acc = self.field.zero
        for plus, g in self.parts:
            c = g.coeff(n)
            acc = acc + c if plus else acc - c
        return acc

    def support(self, lo, hi):
        return _merge_supports([g.support(lo, hi) for _, g in self.parts])


class ScaleGen:
    """Frobenius power: exponents scaled by t = p^s, coefficients raised to t."""

    __slots__ = ("field", "base", "t", "s", "lo")

    def __init__(self, field, base, t, s):
        self.field = field
        self.base = base
        self.t = t
        self.s = s
        self.lo = None if base.lo is None else base.lo * t

    def coeff(self, n):
        if n % self.t:
            return self.field.zero
        return self.base.coeff(n // self.t).frobenius(self.s)

    def support(self, lo, hi):
        for m in self.base.support(_ceildiv(lo, self.t), hi // self.t):
            yield m * self.t


class PthRootGen:
    """Inverse Frobenius: exponents divided by p, coefficients p-th rooted."""

    __slots__ = ("field", "base", "lo")

    def __init__(self, field, base):
        self.field = field
        self.base = base
        self.lo = None if base.lo is None else _ceildiv(base.lo, field.p)

    def coeff(self, n):
        return self.base.coeff(n * self.field.p).pth_root()

    def support(self, lo, hi):
        p = self.field.p
        for m in self.base.support(lo * p, hi * p):
            if m % p == 0:
                yield m // p
            elif self.base.coeff(m):
                raise NotAPthPower(f"nonzero coefficient at exponent {m} not divisible by {p}")


class PolyMulGen:
    """Product of an exact finite term map with an extendable series."""

    __slots__ = ("field", "terms", "base", "lo")

    def __init__(self, field, terms, base):
        self.field = field
        self.terms = terms
        self.base = base
        self.lo = None
        if terms and base.lo is not None:
            self.lo = min(terms) + base.lo

    def coeff(self, n):
        acc = self.field.zero
        for e, c in self.terms.items():
            acc = acc + c * self.base.coeff(n - e)
        return acc

    def support(self, lo, hi):
        cands = set()
        for e in self.terms:
            for m in self.base.support(lo - e, hi - e):
                cands.add(e + m)
                if len(cands) > 1_000_000:
                    raise BudgetExceeded("product support enumeration too large")
        return iter(sorted(c for c in cands if lo <= c <= hi))


class RationalGen:
    """Expansion of a/b at T = infinity by cached long division.

    The polynomial part is split off exactly; tail digits are produced one
    exponent at a time, keeping the remainder invariant
    value_left = R * T^(-n) / b with deg R <= deg b.
    """

    __slots__ = ("field", "num", "den", "head", "start", "_digits", "_R", "lo")

    def __init__(self, num: TPoly, den: TPoly):
        if den.is_zero():
            raise DivisionByZeroPoly("rational expansion with zero denominator")
        self.field = num.field
        self.num = num
        self.den = den
        quot, rem = divmod(num, den)
        self.head = {-k: v for k, v in quot.terms.items()}
        if rem.is_zero():
            self.start = None
            self._R = None
        else:
            self.start = den.degree() - rem.degree()
            self._R = rem.shift(self.start)
        self._digits = []
        if self.head:
            self.lo = min(self.head)
        else:
            self.lo = self.start

    def _extend_to(self, idx):
        if idx - len(self._digits) > DENSE_EXTENSION_CAP:
            raise BudgetExceeded("rational expansion digit extension beyond dense cap")
        db = self.den.degree()
        lb_inv = self.den.leading().inverse()
        while len(self._digits) <= idx:
            R = self._R
            if R.degree() == db:
                c = R.leading() * lb_inv
                R = R - self.den.scale(c)
            else:
                c = self.field.zero
            self._R = R.shift(1)
            self._digits.append(c)

    def coeff(self, n):
        c = self.head.get(n)
        if c is not None:
            return c
        if self.start is None or n < self.start:
            return self.field.zero
        self._extend_to(n - self.start)
        return self._digits[n - self.start]

    def support(self, lo, hi):
        keys = sorted(k for k in self.head if lo <= k <= hi)
        if self.start is None:
            return iter(keys)
        return _merge_supports([iter(keys), iter(range(max(lo, self.start), hi + 1))])


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------


class Series:
    """Immutable sparse Laurent series snapshot with a precision horizon."""

    __slots__ = ("field", "terms", "horizon", "gen")

    def __init__(self, field: FieldDesc, terms, horizon, gen=None):
        self.field = field
        self.terms = {n: c for n, c in terms.items() if c}
        self.horizon = horizon
        self.gen = gen

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, {}, INF)

    @classmethod
    def from_terms(cls, field, terms):
        """Exact finite series (known everywhere)."""
        return cls(field, terms, INF)

    @classmethod
    def from_tpoly(cls, a: TPoly):
        return cls(a.field, {-k: v for k, v in a.terms.items()}, INF)

    @classmethod
    def monomial(cls, field, n, coeff=None):
        c = field.one if coeff is None else coeff
        return cls(field, {n: c} if c else {}, INF)

    @classmethod
    def from_gen(cls, field, gen, horizon=None):
        if horizon is None:
            horizon = (gen.lo - 1) if gen.lo is not None else 0
        s = cls(field, {}, horizon, gen)
        if gen.lo is not None and horizon >= gen.lo:
            return cls(field, {}, gen.lo - 1, gen).materialized(horizon)
        return s

    @classmethod
    def from_rational(cls, num: TPoly, den: TPoly, horizon: int):
        return cls.from_gen(num.field, RationalGen(num, den), horizon)

    # -- basic views -------------------------------------------------------

    @property
    def is_exact(self):
        """True when every coefficient (out to infinity) is known."""
        return self.horizon == INF

    @property
    def extendable(self):
        return self.gen is not None or self.is_exact

    def _as_gen(self):
        return self.gen if self.gen is not None else DictGen(self.field, self.terms)

    def coeff(self, n) -> FqElem:
        if n <= self.horizon:
            return self.terms.get(n, self.field.zero)
        if self.gen is not None:
            return self.gen.coeff(n)
        raise BeyondHorizon(f"coefficient at {n} beyond horizon {self.horizon}")

    def support(self):
        return sorted(self.terms)

    def materialized(self, hi) -> "Series":
        """Snapshot with the horizon advanced to hi (needs a generator)."""
        if hi <= self.horizon or self.is_exact:
            return self
        if self.gen is None:
            raise BeyondHorizon(f"cannot advance horizon {self.horizon} -> {hi} without a generator")
        terms = dict(self.terms)
        for n in self.gen.support(self.horizon + 1, hi):
            c = self.gen.coeff(n)
            if c:
                terms[n] = c
        return Series(self.field, terms, hi, self.gen)

    def abs(self) -> AbsValue:
        q = self.field.q
        if self.terms:
            return AbsValue.exact(q, min(self.terms))
        if self.is_exact:
            return AbsValue.zero(q)
        return AbsValue.below(q, self.horizon + 1)

    def abs_refined(self, cap, budget=1_000_000) -> AbsValue:
        """Search for the first nonzero coefficient out to exponent cap."""
        a = self.abs()
        if not a.is_below or self.gen is None:
            return a
        count = 0
        for n in self.gen.support(self.horizon + 1, cap):
            count += 1
            if count > budget:
                raise BudgetExceeded("support enumeration budget exceeded in abs refinement")
            if self.gen.coeff(n):
                return AbsValue.exact(self.field.q, n)
        return AbsValue.below(self.field.q, cap + 1)

    def valuation(self):
        a = self.abs()
        if not a.is_exact:
            raise PrecisionExhausted(f"valuation undetermined: {a.render()}")
        return a.exponent

    def polynomial_part(self) -> TPoly:
        """The terms with exponent <= 0, as a polynomial in T."""
        if self.horizon < 0 and self.gen is None:
            raise BeyondHorizon("polynomial part unknown at this horizon")
        src = self if self.horizon >= 0 else self.materialized(0)
        return TPoly(self.field, {-n: c for n, c in src.terms.items() if n <= 0})

    # -- arithmetic --------------------------------------------------------

    def _addsub(self, other, subtract):
        same_field(self.field, other.field)
        K = min(self.horizon, other.horizon)
        terms = {n: c for n, c in self.terms.items() if n <= K}
        for n, c in other.terms.items():
            if n > K:
                continue
            d = c if not subtract else -c
            s = terms.get(n)
            s = d if s is None else s + d
            if s:
                terms[n] = s
            else:
                terms.pop(n, None)
        gen = None
        if self.extendable and other.extendable and K != INF:
            gen = SumGen(self.field, [(True, self._as_gen()), (not subtract, other._as_gen())])
        return Series(self.field, terms, K, gen)

    def __add__(self, other):
        return self._addsub(other, False)

    def __sub__(self, other):
        return self._addsub(other, True)

    def __neg__(self):
        return Series.zero(self.field) - self

    def _val_lower_bound(self):
        # valuation if visible, else everything known is zero: val >= K+1
        if self.terms:
            return min(self.terms)
        if self.is_exact:
            return None  # exactly zero
        return self.horizon + 1

    def __mul__(self, other):
        same_field(self.field, other.field)
        if self.is_exact and other.is_exact:
            return Series(self.field, _convolve(self, other, None), INF)
        for f, g in ((self, other), (other, self)):
            if f.is_exact:
                if not f.terms:
                    return Series.zero(self.field)
                K = g.horizon + min(f.terms)
                terms = _convolve(f, g, K)
                gen = PolyMulGen(self.field, f.terms, g._as_gen()) if g.extendable else None
                return Series(self.field, terms, K, gen)
        nx = self._val_lower_bound()
        ny = other._val_lower_bound()
        K = min(self.horizon + ny, other.horizon + nx)
        return Series(self.field, _convolve(self, other, K), K)

    def frobenius(self, t: int) -> "Series":
        """x -> x^t for t a power of the characteristic (exponents scale by t)."""
        p = self.field.p
        s = 0
        tt = t
        while tt > 1 and tt % p == 0:
            tt //= p
            s += 1
        if tt != 1 or t < 1:
            raise NotAPowerOfCharacteristic(f"{t} is not a power of {p}")
        if t == 1:
            return self
        terms = {n * t: c.frobenius(s) for n, c in self.terms.items()}
        gen = ScaleGen(self.field, self.gen, t, s) if self.gen is not None else None
        return Series(self.field, terms, self.horizon * t, gen)

    def pth_root(self) -> "Series":
        p = self.field.p
        terms = {}
        for n, c in self.terms.items():
            if n % p:
                raise NotAPthPower(f"nonzero coefficient at exponent {n} not divisible by {p}")
            terms[n // p] = c.pth_root()
        K = self.horizon if self.horizon == INF else self.horizon // p
        gen = PthRootGen(self.field, self.gen) if self.gen is not None else None
        return Series(self.field, terms, K, gen)

    def __eq__(self, other):
        # exact snapshot equality (same knowledge, same content)
        return (
            isinstance(other, Series)
            and self.field == other.field
            and self.terms == other.terms
            and self.horizon == other.horizon
        )

    def __hash__(self):
        return hash((self.field, tuple(sorted((n, c.coords) for n, c in self.terms.items()))))

    def render(self, max_terms=12) -> str:
        if not self.terms:
            if self.is_exact:
                return "0"
            return f"O(T^-{self.horizon + 1})"
        parts = []
        for n in sorted(self.terms)[:max_terms]:
            c = self.terms[n].render()
            if n == 0:
                parts.append(c if "+" not in c else f"({c})")
                continue
            var = f"T^{-n}" if n < 0 else (f"T^-{n}" if n > 1 else "T^-1")
            parts.append(var if c == "1" else f"({c})*{var}" if "+" in c else f"{c}*{var}")
        if len(self.terms) > max_terms:
            parts.append("...")
        elif not self.is_exact:
            parts.append(f"O(T^-{self.horizon + 1})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Series({self.render()})"


def _convolve(x: Series, y: Series, K):
    terms = {}
    for i, a in x.terms.items():
        for j, b in y.terms.items():
            n = i + j
            if K is not None and n > K:
                continue
            c = a * b
            s = terms.get(n)
            s = c if s is None else s + c
            if s:
                terms[n] = s
            else:
                terms.pop(n, None)
    return terms


def distance(x: Series, y: Series) -> AbsValue:
    """|x - y| at the current horizons."""
    return (x - y).abs()


def distance_refined(x: Series, y: Series, cap, budget=1_000_000) -> AbsValue:
    return (x - y).abs_refined(cap, budget)


def require_exact_abs(s: Series, cap, budget=1_000_000) -> AbsValue:
    """Refined absolute value, raising PrecisionExhausted if still unresolved."""
    a = s.abs_refined(cap, budget)
    if a.is_below:
        raise PrecisionExhausted(f"absolute value unresolved through exponent {cap}")
    return a
