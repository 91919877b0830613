"""Polynomials in X over F_q[T]: heights, arithmetic, and evaluation at series.

The height of a nonzero P is the maximum of the absolute values of its
F_q[T] coefficients, i.e. q^(max coefficient degree); it is kept as a
symbolic AbsValue.  Evaluation at a Series follows the series precision
contract: powers X^i with i a power of the characteristic go through the
exact Frobenius path, so annihilator-shaped polynomials evaluate with a
composed generator and their vanishing can be probed to any exponent.
"""

from __future__ import annotations

from .algebra import TPoly, content_primitive, same_field
from .errors import ZeroPolynomial
from .series import AbsValue, Series


def _is_char_power(i, p):
    if i < 1:
        return False
    while i % p == 0:
        i //= p
    return i == 1


class XPoly:
    """Element of (F_q[T])[X] as a trimmed ascending coefficient list."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def from_coeff_lists(cls, field, lists):
        return cls(field, [TPoly.from_coeffs(field, cs) for cs in lists])

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    def is_zero(self):
        return not self.coeffs

    def deg_x(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def coeff(self, i) -> TPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return TPoly.zero(self.field)

    def height_exponent(self) -> int:
        """log_q of the height: the maximum coefficient degree."""
        if self.is_zero():
            raise ZeroPolynomial("height of the zero polynomial")
        return max(c.degree() for c in self.coeffs if not c.is_zero())

    def height(self) -> AbsValue:
        return AbsValue.exact(self.field.q, -self.height_exponent())

    def __add__(self, other):
        same_field(self.field, other.field)
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.field, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return XPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        same_field(self.field, other.field)
        if self.is_zero() or other.is_zero():
            return XPoly.zero(self.field)
        out = [TPoly.zero(self.field) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XPoly(self.field, out)

    def scale(self, c: TPoly) -> "XPoly":
        return XPoly(self.field, [a * c for a in self.coeffs])

    def content_primitive(self):
        g, prim = content_primitive(self.coeffs)
        return g, XPoly(self.field, prim)

    def is_primitive(self) -> bool:
        g, _ = content_primitive(self.coeffs)
        return g.degree() == 0

    def leading(self) -> TPoly:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def derivative_x(self) -> "XPoly":
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i].scale(self.field.from_int(i)))
        return XPoly(self.field, out)

    def evaluate(self, s: Series) -> Series:
        """P(s) in series arithmetic (Frobenius path for char-power exponents)."""
        acc = Series.zero(self.field)
        powers = {0: None, 1: s}
        cur = s
        cur_i = 1
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = Series.from_tpoly(c)
            if i == 0:
                acc = acc + cs
                continue
            if i not in powers:
                if _is_char_power(i, self.field.p):
                    powers[i] = s.frobenius(i)
                else:
                    while cur_i < i:
                        cur = cur * s
                        cur_i += 1
                        powers.setdefault(cur_i, cur)
            acc = acc + cs * powers[i]
        return acc

    def key(self):
        """Lexicographic witness order: (deg_X, coeff degree vector, coeff values)."""
        degs = []
        values = []
        for c in self.coeffs:
            d = c.degree()
            degs.append(-1 if d is None else d)
            values.append(tuple(e.coords for e in c.coeff_list()))
        return (len(self.coeffs) - 1, tuple(degs), tuple(values))

    def __eq__(self, other):
        return (
            isinstance(other, XPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(c.key() for c in self.coeffs)))

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            cs = c.render()
            multi = (" + " in cs) or ("*" in cs)
            if i == 0:
                parts.append(f"({cs})" if multi else cs)
                continue
            var = "X" if i == 1 else f"X^{i}"
            if cs == "1":
                parts.append(var)
            else:
                parts.append(f"({cs})*{var}" if multi else f"{cs}*{var}")
        return " + ".join(parts)

    def __repr__(self):
        return f"XPoly({self.render()})"


def eval_abs(P: XPoly, s: Series, cap, start=64, budget=1_000_000):
    """(|P(s)|, P(s)) with adaptive refinement out to exponent `cap`.

    When the value keeps a composed generator the refinement is a support
    search; otherwise the whole evaluation is redone at doubled horizons.
    A `below` result at the cap means "potentially zero": the caller decides
    whether that is a skip, a report, or an error.
    """
    v = P.evaluate(s)
    a = v.abs_refined(cap, budget)
    if not a.is_below or not s.extendable or v.gen is not None:
        return a, v
    h = start
    if s.horizon != float("inf") and s.horizon > 0:
        h = max(h, 2 * int(s.horizon))
    while True:
        h = min(h, cap)
        v = P.evaluate(s.materialized(h))
        a = v.abs()
        if not a.is_below or h >= cap:
            return a, v
        h *= 2
