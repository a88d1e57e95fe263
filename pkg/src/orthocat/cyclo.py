"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

A scalar is stored as its coordinate vector in the power basis
``1, zeta, ..., zeta^(phi(N)-1)`` of ``Q[x]/(Phi_N)``, kept as integers over a
single positive denominator.  Every operation is exact; no floats appear
anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class OrderMismatchError(ValueError):
    """Arithmetic between cyclotomic numbers of different root orders."""


def _poly_divexact(num, den):
    # den is monic with integer coefficients; division must be remainder-free
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(quot) - 1, -1, -1):
        c = num[i + dn]
        quot[i] = c
        if c:
            for j in range(dn + 1):
                num[i + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(order: int) -> tuple[int, ...]:
    """Coefficients (ascending, monic) of the cyclotomic polynomial Phi_N.

    Computed by exact division of x^N - 1 by the product of Phi_d over the
    proper divisors d of N.
    """
    if order < 1:
        raise ValueError(f"root order must be >= 1, got {order}")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def get_field(order: int) -> "CyclotomicField":
    return CyclotomicField(order)


class CyclotomicField:
    """The field Q(zeta_N) with precomputed reduction tables.

    Prefer :func:`get_field`, which caches one instance per order.
    """

    def __init__(self, order: int):
        self.order = order
        self.poly = cyclotomic_poly(order)
        self.degree = len(self.poly) - 1
        # x^d mod Phi_N for d = degree .. 2*degree-2, used to fold products
        base = tuple(-c for c in self.poly[:-1])
        rows = [base]
        for _ in range(self.degree - 2):
            rows.append(tuple(self._times_x(rows[-1])))
        self._red_rows = tuple(rows)
        # zeta^e for every e in [0, N)
        powers = [(1,) + (0,) * (self.degree - 1)]
        for _ in range(order - 1):
            powers.append(tuple(self._times_x(powers[-1])))
        self.zeta_powers = tuple(powers)

    def _times_x(self, vec):
        top = vec[-1]
        out = [0] + list(vec[:-1])
        if top:
            base = tuple(-c for c in self.poly[:-1])
            for i, b in enumerate(base):
                if b:
                    out[i] += top * b
        return out

    def reduce_vec(self, prod):
        """Fold a raw product vector (length <= 2*degree-1) back below Phi_N."""
        deg = self.degree
        vec = list(prod[:deg])
        vec += [0] * (deg - len(vec))
        for d in range(deg, len(prod)):
            c = prod[d]
            if c:
                row = self._red_rows[d - deg]
                for i, r in enumerate(row):
                    if r:
                        vec[i] += c * r
        return vec

    def mul_vec(self, a, b):
        deg = self.degree
        prod = [0] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return self.reduce_vec(prod)

    # constructors ---------------------------------------------------------

    @property
    def zero(self):
        return CycNum(self, (0,) * self.degree)

    @property
    def one(self):
        return CycNum(self, (1,) + (0,) * (self.degree - 1))

    def from_rational(self, value) -> "CycNum":
        frac = Fraction(value)
        vec = [frac.numerator] + [0] * (self.degree - 1)
        return CycNum(self, vec, frac.denominator)

    def zeta_pow(self, exponent: int) -> "CycNum":
        return CycNum(self, self.zeta_powers[exponent % self.order])

    def from_power_dict(self, terms) -> "CycNum":
        """Integer combination sum_e terms[e] * zeta^e, reduced mod Phi_N."""
        vec = [0] * self.degree
        for e, c in terms.items():
            if c:
                row = self.zeta_powers[e % self.order]
                for i, r in enumerate(row):
                    if r:
                        vec[i] += c * r
        return CycNum(self, vec)

    def from_fractions(self, coeffs) -> "CycNum":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise ValueError(
                f"expected {self.degree} coefficients, got {len(coeffs)}")
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        vec = [c.numerator * (den // c.denominator) for c in coeffs]
        return CycNum(self, vec, den)

    def __repr__(self):
        return f"CyclotomicField({self.order})"


class CycNum:
    """An element of Q(zeta_N): integer coordinates over one denominator."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    # helpers --------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.field.order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("cyclotomic number is not rational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"mixed root orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        da, db = self.den, other.den
        g = gcd(da, db)
        ma, mb = db // g, da // g
        vec = [a * ma + b * mb for a, b in zip(self.num, other.num)]
        return CycNum(self.field, vec, da * mb)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycNum(self.field, [-c for c in self.num], self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            frac = Fraction(other)
            return CycNum(self.field, [c * frac.numerator for c in self.num],
                          self.den * frac.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vec = self.field.mul_vec(self.num, other.num)
        return CycNum(self.field, vec, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = self.field.one
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in Q(zeta_{self.order})")
        r0 = [Fraction(c) for c in self.field.poly]
        r1 = [Fraction(c, self.den) for c in self.num]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _poly_deg(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[_poly_deg(r1)]  # nonzero since Phi_N is irreducible over Q
        inv = [s / c for s in s1]
        inv += [Fraction(0)] * (self.field.degree - len(inv))
        return self.field.from_fractions(inv[:self.field.degree])

    def galois(self, t: int) -> "CycNum":
        """Apply the automorphism zeta -> zeta^t; t must be coprime to N."""
        n = self.order
        if gcd(t, n) != 1:
            raise ValueError(f"galois exponent {t} is not coprime to {n}")
        vec = [0] * self.field.degree
        for i, c in enumerate(self.num):
            if c:
                row = self.field.zeta_powers[(i * t) % n]
                for j, r in enumerate(row):
                    if r:
                        vec[j] += c * r
        return CycNum(self.field, vec, self.den)

    def conjugate(self) -> "CycNum":
        return self.galois(self.order - 1)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return (self.order == other.order and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        return hash((self.order, self.num, self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                frac = Fraction(c, self.den)
                terms.append(f"{frac}*z^{i}" if i else f"{frac}")
        body = " + ".join(terms) if terms else "0"
        return f"CycNum[{self.order}]({body})"


# polynomial helpers over Q, ascending coefficient lists ---------------------

def _poly_deg(p):
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    db = _poly_deg(b)
    rem = list(a) + [Fraction(0)] * max(0, db + 1 - len(a))
    da = _poly_deg(rem)
    if da < db:
        return [Fraction(0)], rem
    quot = [Fraction(0)] * (da - db + 1)
    lead = b[db]
    for i in range(da - db, -1, -1):
        c = rem[i + db] / lead
        quot[i] = c
        if c:
            for j in range(db + 1):
                rem[i + j] -= c * b[j]
    return quot, rem


# operation surface ----------------------------------------------------------

def zeta_pow(order: int, exponent: int) -> CycNum:
    """The class of x^(exponent mod N) in Q[x]/(Phi_N)."""
    return get_field(order).zeta_pow(exponent)


def field_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    """Exact field arithmetic; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def conjugate(a: CycNum) -> CycNum:
    """The Galois involution zeta -> zeta^(N-1)."""
    return a.conjugate()


def galois_apply(a: CycNum, t: int) -> CycNum:
    """The automorphism zeta -> zeta^t for t coprime to the root order."""
    return a.galois(t)
