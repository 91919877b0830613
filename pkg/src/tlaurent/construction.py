"""Sparse layered series over F_q whose algebraic approximants make them
T-numbers, together with all the finite data attached to them.

The ingredients, for a characteristic-p field, a power r of p, and an
integer sequence m_0 = 1, m_j >= 2:

    M(i,j)   = m_i ... m_j              (empty product 1 for i > j)
    r_j      = r^M(0,j)
    block_j  = sum_{n>=1} T^(-r_j^n)
    xi       = sum_j a_j block_j        (mask a optional, default all ones)

and, per level j and cut k >= 1:

    head coefficients a(j,n): sum_{t<=j} block_t = sum_n a(j,n) T^(-r^n)
    tail coefficients b(j,n): sum_{t>j}  block_t = sum_n b(j,n) T^(-r_{j+1}^n)
    approximant(j,k) = sum_{t<=j} block_t + sum_{n<=k} b(j,n) T^(-r_{j+1}^n)

The closed divisibility-counting forms used by the coefficient generators
are gated behind the direct-summation oracles (`*_by_summation`), which
recompute the same numbers from the block definitions with plain big-int
power arithmetic.
"""

from __future__ import annotations

from .algebra import FieldDesc, FqElem, TPoly
from .errors import BudgetExceeded, ExponentBudgetExceeded
from .series import Series, _merge_supports
from .xpoly import XPoly

DEFAULT_EXPONENT_BUDGET = 1 << 24


def _ilog(n: int, b: int) -> int:
    """Largest t >= 0 with b^t <= n (n >= 1, b >= 2). Exact integer arithmetic."""
    if n < b:
        return 0
    powers = [b]
    while powers[-1] * powers[-1] <= n:
        powers.append(powers[-1] * powers[-1])
    t = 0
    cur = 1
    for i in range(len(powers) - 1, -1, -1):
        cand = cur * powers[i]
        if cand <= n:
            cur = cand
            t += 1 << i
    return t


def power_exponent(n: int, b: int):
    """t >= 1 with b^t == n, or None."""
    if n < b:
        return None
    t = _ilog(n, b)
    return t if b**t == n else None


class MahlerSpec:
    """Parameters of the construction: field, r = p^s, m-sequence, optional mask.

    The m-sequence is a finite prefix (starting with m_0 = 1) followed by a
    constant tail; the mask, when present, is a 0/1 prefix followed by a
    constant tail that must be 1 (so that infinitely many blocks survive).
    """

    def __init__(self, field: FieldDesc, r_exponent: int, m_prefix=(1,), m_tail=2,
                 mask_prefix=None, mask_tail=1):
        if r_exponent < 1:
            raise ValueError("r must be a power of p with exponent >= 1")
        m_prefix = tuple(int(m) for m in m_prefix)
        if not m_prefix or m_prefix[0] != 1:
            raise ValueError("m_0 must equal 1")
        if any(m < 2 for m in m_prefix[1:]) or m_tail < 2:
            raise ValueError("m_j must be >= 2 for j >= 1")
        self.field = field
        self.r_exponent = r_exponent
        self.r = field.p**r_exponent
        self.m_prefix = m_prefix
        self.m_tail = int(m_tail)
        if mask_prefix is None:
            self.mask_prefix = None
            self.mask_tail = 1
        else:
            self.mask_prefix = tuple(int(a) for a in mask_prefix)
            self.mask_tail = int(mask_tail)
            if any(a not in (0, 1) for a in self.mask_prefix) or self.mask_tail not in (0, 1):
                raise ValueError("mask entries must be 0 or 1")
            if self.mask_tail != 1:
                raise ValueError("mask tail must be 1 (infinitely many blocks required)")

    def m(self, j: int) -> int:
        if j < 0:
            raise ValueError("m index must be >= 0")
        return self.m_prefix[j] if j < len(self.m_prefix) else self.m_tail

    def m_product(self, i: int, j: int) -> int:
        """M(i,j) = m_i ... m_j, with the empty product 1 for i > j."""
        out = 1
        for t in range(i, j + 1):
            out *= self.m(t)
        return out

    def block_base(self, j: int) -> int:
        """r_j = r^M(0,j)."""
        return self.r ** self.m_product(0, j)

    def mask(self, j: int) -> int:
        if self.mask_prefix is None:
            return 1
        return self.mask_prefix[j] if j < len(self.mask_prefix) else self.mask_tail

    @property
    def masked(self) -> bool:
        return self.mask_prefix is not None and any(a == 0 for a in self.mask_prefix)

    def demask(self) -> "MahlerSpec":
        """Equivalent unmasked parameters: dropping blocks renames the sequence.

        With kept indices j_1 < j_2 < ..., the masked series equals the
        unmasked construction for r' = r_{j_1} and m'_t = M(j_t + 1, j_{t+1}).
        """
        if not self.masked:
            return MahlerSpec(self.field, self.r_exponent, self.m_prefix, self.m_tail)
        stable = max(len(self.mask_prefix), len(self.m_prefix)) + 1
        kept = [j for j in range(stable + 1) if self.mask(j) == 1]
        j1 = kept[0]
        new_prefix = [1]
        for a, b in zip(kept, kept[1:]):
            new_prefix.append(self.m_product(a + 1, b))
        return MahlerSpec(
            self.field,
            self.r_exponent * self.m_product(0, j1),
            tuple(new_prefix),
            self.m_tail,
        )

    def to_dict(self):
        d = {
            "schema": 1,
            "kind": "mahler",
            "p": self.field.p,
            "e": self.field.e,
            "r_exponent": self.r_exponent,
            "m_prefix": list(self.m_prefix),
            "m_tail": self.m_tail,
        }
        if self.field.modulus is not None:
            d["modulus"] = list(self.field.modulus)
        if self.mask_prefix is not None:
            d["mask_prefix"] = list(self.mask_prefix)
            d["mask_tail"] = self.mask_tail
        return d

    def __repr__(self):
        mask = "" if self.mask_prefix is None else f", mask={self.mask_prefix}+{self.mask_tail}..."
        return (
            f"MahlerSpec(q={self.field.q}, r={self.r}, "
            f"m={self.m_prefix}+{self.m_tail}...{mask})"
        )


# ---------------------------------------------------------------------------
# coefficient generators
# ---------------------------------------------------------------------------


class _PowersGen:
    """Support iterator over powers b^t, t >= 1."""

    __slots__ = ("field", "base", "lo")

    def __init__(self, field, base):
        self.field = field
        self.base = base
        self.lo = base

    def support(self, lo, hi):
        pw = self.base
        while pw < lo:
            pw *= self.base
        while pw <= hi:
            yield pw
            pw *= self.base

    def coeff(self, n):
        raise NotImplementedError


class BlockGen(_PowersGen):
    """Coefficients of a single block: 1 exactly on positive powers of the base."""

    def coeff(self, n):
        if n >= self.base and power_exponent(n, self.base) is not None:
            return self.field.one
        return self.field.zero


class XiGen(_PowersGen):
    """Closed form for the full layered sum (mask-aware).

    The coefficient of T^(-r^t) is the number of kept levels j with
    M(0,j) | t, reduced mod p; all other exponents carry 0.
    """

    __slots__ = ("spec",)

    def __init__(self, spec: MahlerSpec):
        self.spec = spec
        first = 0
        while spec.mask(first) == 0:
            first += 1
        super().__init__(spec.field, spec.r)
        self.lo = spec.block_base(first)

    def coeff(self, n):
        spec = self.spec
        t = power_exponent(n, spec.r)
        if t is None:
            return self.field.zero
        count = 0
        j = 0
        prod = 1
        while prod <= t:
            if spec.mask(j) and t % prod == 0:
                count += 1
            j += 1
            prod *= spec.m(j)
        return self.field.from_int(count)


def block_series(spec: MahlerSpec, j: int) -> Series:
    """The level-j block sum_{n>=1} T^(-r_j^n) as a generator series."""
    return Series.from_gen(spec.field, BlockGen(spec.field, spec.block_base(j)))


def t_number(spec: MahlerSpec) -> Series:
    """The full construction (a T-number for every admissible parameter set)."""
    return Series.from_gen(spec.field, XiGen(spec))


def partial_sum(spec: MahlerSpec, j: int) -> Series:
    """Blocks 0..j summed by definition (no closed form involved)."""
    acc = block_series(spec, 0)
    for t in range(1, j + 1):
        acc = acc + block_series(spec, t)
    return acc


def head_coeff(spec: MahlerSpec, j: int, n: int) -> FqElem:
    """a(j,n): coefficient of T^(-r^n) in blocks 0..j, by divisibility counting."""
    if n < 1:
        raise ValueError("head coefficients are indexed from n = 1")
    count = sum(1 for t in range(j + 1) if n % spec.m_product(0, t) == 0)
    return spec.field.from_int(count)


def tail_coeff(spec: MahlerSpec, j: int, n: int) -> FqElem:
    """b(j,n): coefficient of T^(-r_{j+1}^n) in blocks j+1, j+2, ...

    Equals l mod p for the unique l >= 1 with M(j+2, j+l) | n and
    M(j+2, j+l+1) not | n; the divisibility set is an initial segment.
    """
    if n < 1:
        raise ValueError("tail coefficients are indexed from n = 1")
    ell = 1
    prod = spec.m(j + 2)  # M(j+2, j+ell+1) for ell = 1
    while n % prod == 0:
        ell += 1
        prod *= spec.m(j + ell + 1)
    return spec.field.from_int(ell)


# -- direct-summation oracles (independent recomputation from the blocks) --


def t_number_coeff_by_summation(spec: MahlerSpec, n: int) -> FqElem:
    """Coefficient of T^(-n) in the layered sum, by testing each block."""
    if n < spec.r:
        return spec.field.zero
    count = 0
    j = 0
    while spec.block_base(j) <= n:
        if spec.mask(j) and power_exponent(n, spec.block_base(j)) is not None:
            count += 1
        j += 1
    return spec.field.from_int(count)


def head_coeff_by_summation(spec: MahlerSpec, j: int, n: int) -> FqElem:
    target = spec.r**n
    count = 0
    for t in range(j + 1):
        if spec.block_base(t) <= target and power_exponent(target, spec.block_base(t)):
            count += 1
    return spec.field.from_int(count)


def tail_coeff_by_summation(spec: MahlerSpec, j: int, n: int) -> FqElem:
    target = spec.block_base(j + 1) ** n
    count = 0
    t = j + 1
    while spec.block_base(t) <= target:
        if power_exponent(target, spec.block_base(t)):
            count += 1
        t += 1
    return spec.field.from_int(count)


# ---------------------------------------------------------------------------
# approximants and their annihilating polynomials
# ---------------------------------------------------------------------------


def approximant(spec: MahlerSpec, j: int, k: int, horizon=None) -> Series:
    """The degree-(<= r_j) algebraic approximant at level j, cut k >= 1."""
    if j < 0 or k < 1:
        raise ValueError("approximants need j >= 0 and k >= 1")
    base = spec.block_base(j + 1)
    tail_terms = {}
    for n in range(1, k + 1):
        c = tail_coeff(spec, j, n)
        if c:
            tail_terms[base**n] = c
    out = partial_sum(spec, j) + Series.from_terms(spec.field, tail_terms)
    if horizon is not None:
        out = out.materialized(horizon)
    return out


def annihilator(spec: MahlerSpec, j: int, k: int,
                budget: int = DEFAULT_EXPONENT_BUDGET) -> XPoly:
    """Integral polynomial of X-degree r_j annihilating approximant(j, k).

    Clearing denominators multiplies by T^D, D = r_{j+1}^k' * r_j with k'
    the last index <= k where the tail coefficient is nonzero; the result
    is primitive with monic leading coefficient T^D and exact height q^D.
    """
    if j < 0 or k < 1:
        raise ValueError("annihilators need j >= 0 and k >= 1")
    f = spec.field
    rj = spec.block_base(j)
    base = spec.block_base(j + 1)
    bvals = {n: tail_coeff(spec, j, n) for n in range(1, k + 1)}
    kprime = max(n for n, c in bvals.items() if c)  # n = 1 always has b = 1
    D = base**kprime * rj
    if D > budget:
        raise ExponentBudgetExceeded(
            f"cleared-denominator degree {D} exceeds exponent budget {budget}"
        )
    if rj > (1 << 16):
        raise ExponentBudgetExceeded(f"X-degree {rj} beyond desk scale")
    const = {}
    for n in range(1, spec.m_product(1, j) + 1):
        c = head_coeff(spec, j, n)
        if c:
            const[D - spec.r**n] = c
    for n, c in bvals.items():
        if not c:
            continue
        e = D - base**n
        const[e] = const.get(e, f.zero) + c
        e = D - base**n * rj
        const[e] = const.get(e, f.zero) - c
    coeffs = [TPoly.zero(f) for _ in range(rj + 1)]
    coeffs[0] = TPoly(f, const)
    coeffs[1] = TPoly(f, {D: -f.one})
    coeffs[rj] = TPoly(f, {D: f.one})
    return XPoly(f, coeffs)


def equality_indices(spec: MahlerSpec, j: int, count: int):
    """First `count` elements of the index set where the outer distance bound
    is attained exactly: k >= 1 with M(j+2, j+p) | (k+1), M(j+2, j+p+1) not |."""
    p = spec.field.p
    lo = spec.m_product(j + 2, j + p)
    hi = lo * spec.m(j + p + 1)
    out = []
    k = 1
    while len(out) < count:
        if (k + 1) % lo == 0 and (k + 1) % hi != 0:
            out.append(k)
        k += 1
    return out


def gap_bound(spec: MahlerSpec, j: int) -> int:
    """Upper bound 2*M(j+2, j+p) for gaps between consecutive equality indices."""
    return 2 * spec.m_product(j + 2, j + spec.field.p)


def check_exact_distance(spec: MahlerSpec, j: int, i: int, budget: int = 1_000_000):
    """Compare |xi - approximant(j, k_i)| against the claimed q^(-r_{j+1}^(k_i+2)).

    Returns (k_i, claimed exponent, measured AbsValue, pass).
    """
    spec = spec.demask()
    k = equality_indices(spec, j, i + 1)[i]
    claimed = spec.block_base(j + 1) ** (k + 2)
    if (j + 2) * (_ilog(claimed, spec.r) + 1) > budget:
        raise ExponentBudgetExceeded("distance support enumeration beyond budget")
    diff = t_number(spec) - approximant(spec, j, k)
    measured = diff.abs_refined(claimed, budget)
    ok = measured.is_exact and measured.exponent == claimed
    return k, claimed, measured, ok


def check_distance_bounds(spec: MahlerSpec, j: int, k: int, budget: int = 1_000_000):
    """Two-sided bound r_{j+1}^(k+1) <= valuation <= r_{j+1}^(k+2) for any k >= 1.

    Returns (lower, measured AbsValue, upper, pass).
    """
    spec = spec.demask()
    base = spec.block_base(j + 1)
    lower, upper = base ** (k + 1), base ** (k + 2)
    if (j + 2) * (_ilog(upper, spec.r) + 1) > budget:
        raise ExponentBudgetExceeded("distance support enumeration beyond budget")
    diff = t_number(spec) - approximant(spec, j, k)
    measured = diff.abs_refined(upper, budget)
    ok = measured.is_exact and lower <= measured.exponent <= upper
    return lower, measured, upper, ok


def telescope_residual(spec: MahlerSpec, t: int, j: int, horizon: int):
    """|block_t^(r_j) + sum_{i<=M(t+1,j)} T^(-r_t^i) - block_t| probed to horizon.

    The Frobenius power telescopes block_t down to itself minus a finite sum,
    so the residual must stay below every tested horizon.
    """
    if not 0 <= t <= j:
        raise ValueError("telescoping needs 0 <= t <= j")
    rt = spec.block_base(t)
    rj = spec.block_base(j)
    blk = block_series(spec, t)
    finite = Series.from_terms(
        spec.field, {rt**i: spec.field.one for i in range(1, spec.m_product(t + 1, j) + 1)}
    )
    residual = blk.frobenius(rj) + finite - blk
    return residual.abs_refined(horizon)
