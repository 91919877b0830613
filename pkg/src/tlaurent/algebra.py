"""Exact arithmetic in F_q (q = p^e, e small) and in the polynomial ring F_q[T].

Field elements are coordinate vectors in the power basis of a monic
irreducible modulus over F_p (a single residue for prime fields).
Polynomials over F_q are kept as sparse exponent->coefficient maps so that
degrees far beyond desk scale (annihilators reach degrees ~ 10^6 and more)
stay cheap; only the support is ever touched.

The absolute value |a| = q^(deg a) is never produced as a float: see
AbsValue in the series module, which stores (q, exponent) symbolically.
"""

from __future__ import annotations

import itertools

from .errors import (
    AllZero,
    DivisionByZeroPoly,
    FieldMismatch,
    NonPrimeCharacteristic,
    ReducibleModulus,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# modular polynomial helpers over F_p (coefficient tuples, ascending degree)
# ---------------------------------------------------------------------------


def _fp_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _fp_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        c = (a[-1] * inv_lb) % p
        q[da - db] = c
        for i, bc in enumerate(b):
            a[da - db + i] = (a[da - db + i] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
    return _fp_trim(q), _fp_trim(a)


def _fp_is_irreducible(coeffs, p):
    # exhaustive trial division by all monic polynomials of degree <= deg/2
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = tuple(tail) + (1,)
            _, rem = _fp_divmod(coeffs, div, p)
            if not rem:
                return False
    return True


def _fp_smallest_irreducible(p, e):
    # monic T^e + tail, tails ordered lexicographically from the constant up
    for tail in itertools.product(range(p), repeat=e):
        cand = tuple(tail) + (1,)
        if _fp_is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible modulus of degree {e} over F_{p}")  # unreachable


class FieldDesc:
    """Descriptor of F_q, q = p^e, with element arithmetic.

    For e > 1 the modulus is a monic irreducible over F_p of degree e,
    given as a coefficient tuple in ascending degree (constant first).
    """

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if e < 1:
            raise ReducibleModulus("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            if modulus is not None:
                raise ReducibleModulus("prime fields carry no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = _fp_smallest_irreducible(p, e)
            else:
                modulus = tuple(int(c) % p for c in modulus)
                modulus = _fp_trim(modulus)
                if len(modulus) - 1 != e:
                    raise ReducibleModulus("modulus degree does not match extension degree")
                if modulus[-1] != 1:
                    raise ReducibleModulus("modulus must be monic")
                if not _fp_is_irreducible(modulus, p):
                    raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
            # reduction table: T^k mod modulus for k = e .. 2e-2
            self._red = []
            cur = [(-c) % p for c in modulus[:-1]]
            for _ in range(e - 1):
                self._red.append(tuple(cur))
                cur = [0] + cur
                top = cur.pop()
                if top:
                    cur = [(c + top * r) % p for c, r in zip(cur, self._red[0])]
        self.zero = FqElem(self, (0,) * e)
        self.one = FqElem(self, (1,) + (0,) * (e - 1))

    def elem(self, coords) -> "FqElem":
        coords = tuple(int(c) % self.p for c in coords)
        if len(coords) != self.e:
            raise ValueError(f"expected {self.e} coordinates, got {len(coords)}")
        return FqElem(self, coords)

    def from_int(self, k: int) -> "FqElem":
        """Image of the integer k under Z -> F_p c F_q."""
        return FqElem(self, (k % self.p,) + (0,) * (self.e - 1))

    def elements(self):
        for coords in itertools.product(range(self.p), repeat=self.e):
            yield FqElem(self, coords)

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldDesc(p={self.p}, e={self.e})"


def field(p: int, e: int = 1, modulus=None) -> FieldDesc:
    """Build a validated field descriptor for F_{p^e}."""
    return FieldDesc(p, e, modulus)


def same_field(a: FieldDesc, b: FieldDesc):
    if a != b:
        raise FieldMismatch(f"{a} vs {b}")


class FqElem:
    """Element of F_q as a coordinate tuple in the power basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldDesc, coords):
        self.field = field
        self.coords = coords

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        same_field(self.field, other.field)
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        same_field(self.field, other.field)
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        same_field(self.field, other.field)
        f = self.field
        p = f.p
        if f.e == 1:
            return FqElem(f, ((self.coords[0] * other.coords[0]) % p,))
        e = f.e
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] = (prod[i + j] + a * b) % p
        # fold T^k (k >= e) down using the reduction table
        for k in range(2 * e - 2, e - 1, -1):
            top = prod[k]
            if top:
                red = f._red[k - e]
                for i in range(e):
                    prod[i] = (prod[i] + top * red[i]) % p
            prod[k] = 0
        return FqElem(f, tuple(prod[:e]))

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_zero():
            return self.field.zero if n else self.field.one
        n %= self.field.q - 1
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, s: int = 1) -> "FqElem":
        """Iterate x -> x^p s times (s may be any integer >= 0)."""
        s %= self.field.e
        out = self
        for _ in range(s):
            out = out**self.field.p
        return out

    def pth_root(self) -> "FqElem":
        # Frobenius is an automorphism of order e, so its inverse is phi^(e-1)
        return self.frobenius(self.field.e - 1)

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.field == other.field
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"FqElem({self.render()})"

    def render(self) -> str:
        if self.field.e == 1:
            return str(self.coords[0])
        parts = []
        for k in range(self.field.e - 1, -1, -1):
            c = self.coords[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                var = "g" if k == 1 else f"g^{k}"
                parts.append(var if c == 1 else f"{c}{var}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# F_q[T]
# ---------------------------------------------------------------------------


class TPoly:
    """Polynomial in T over F_q, stored sparsely as {exponent: nonzero coeff}.

    Scan-level polynomials have tiny degree, but annihilator coefficients
    carry isolated terms at degrees ~ r^k, so density is never assumed.
    """

    __slots__ = ("field", "terms", "_key")

    def __init__(self, field: FieldDesc, terms=None):
        self.field = field
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v
        self._key = None

    @classmethod
    def from_coeffs(cls, field: FieldDesc, coeffs) -> "TPoly":
        """Build from a dense ascending coefficient list of ints or FqElems."""
        terms = {}
        for k, c in enumerate(coeffs):
            if isinstance(c, int):
                c = field.from_int(c)
            if c:
                terms[k] = c
        return cls(field, terms)

    @classmethod
    def zero(cls, field: FieldDesc) -> "TPoly":
        return cls(field, {})

    @classmethod
    def one(cls, field: FieldDesc) -> "TPoly":
        return cls(field, {0: field.one})

    @classmethod
    def monomial(cls, field: FieldDesc, deg: int, coeff=None) -> "TPoly":
        c = field.one if coeff is None else coeff
        return cls(field, {deg: c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Degree, or None for the zero polynomial."""
        return max(self.terms) if self.terms else None

    def leading(self) -> FqElem:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.terms[max(self.terms)]

    def coeff(self, k: int) -> FqElem:
        return self.terms.get(k, self.field.zero)

    def coeff_list(self):
        """Dense ascending coefficient list (empty for zero)."""
        d = self.degree()
        if d is None:
            return []
        return [self.coeff(k) for k in range(d + 1)]

    def __add__(self, other):
        same_field(self.field, other.field)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            s = terms.get(k)
            s = v if s is None else s + v
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return TPoly(self.field, terms)

    def __neg__(self):
        return TPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        same_field(self.field, other.field)
        terms = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                c = a * b
                s = terms.get(k)
                s = c if s is None else s + c
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return TPoly(self.field, terms)

    def scale(self, c: FqElem) -> "TPoly":
        if not c:
            return TPoly.zero(self.field)
        return TPoly(self.field, {k: v * c for k, v in self.terms.items()})

    def shift(self, n: int) -> "TPoly":
        """Multiply by T^n (n >= 0)."""
        return TPoly(self.field, {k + n: v for k, v in self.terms.items()})

    def __divmod__(self, other):
        same_field(self.field, other.field)
        if other.is_zero():
            raise DivisionByZeroPoly("division by the zero polynomial")
        db = other.degree()
        inv_lb = other.leading().inverse()
        rem = dict(self.terms)
        quot = {}
        while rem:
            da = max(rem)
            if da < db:
                break
            c = rem[da] * inv_lb
            quot[da - db] = c
            for j, b in other.terms.items():
                k = da - db + j
                s = rem.get(k, self.field.zero) - c * b
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return TPoly(self.field, quot), TPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "TPoly":
        if self.is_zero():
            return self
        return self.scale(self.leading().inverse())

    def evaluate(self, x: FqElem) -> FqElem:
        acc = self.field.zero
        for k in sorted(self.terms, reverse=True):
            acc = acc + self.terms[k] * x**k
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, TPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Deterministic total-order key (degree, then coefficients ascending)."""
        if self._key is None:
            d = self.degree()
            if d is None:
                self._key = (-1, ())
            else:
                self._key = (d, tuple(self.coeff(k).coords for k in range(d + 1)))
        return self._key

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            cs = c.render()
            needs_paren = ("+" in cs) or ("g" in cs and k > 0 and cs != "g")
            if k == 0:
                parts.append(f"({cs})" if "+" in cs else cs)
                continue
            var = "T" if k == 1 else f"T^{k}"
            if cs == "1":
                parts.append(var)
            elif needs_paren:
                parts.append(f"({cs})*{var}")
            else:
                parts.append(f"{cs}*{var}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TPoly({self.render()})"


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Monic gcd in F_q[T]."""
    same_field(a.field, b.field)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def content_primitive(vec):
    """Monic gcd of a vector of TPoly plus the vector divided by it."""
    vec = list(vec)
    nonzero = [v for v in vec if not v.is_zero()]
    if not nonzero:
        raise AllZero("content of an all-zero vector")
    g = nonzero[0]
    for v in nonzero[1:]:
        g = tpoly_gcd(g, v)
        if g.degree() == 0:
            break
    g = g.monic()
    return g, [v // g for v in vec]
