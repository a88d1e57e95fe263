"""Root systems of types B and D, weight combinatorics, simple-object sets.

Weights are stored in doubled coordinates ``d_i = 2*lambda_i`` so that all
bookkeeping stays in integers; the parity of the entries encodes the grade
(even = integer partition, odd = half-integer "spinor" partition).  For the
even family a weight with nonzero last coordinate additionally carries a sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .cyclo import CyclotomicField, get_field

FAMILIES = ("B", "D")
MAX_RANK = 8
MAX_SIMPLES = 20000


class GuardRailError(ValueError):
    """Input exceeds the hard enumeration limits of this desk-scale tool."""


@dataclass(frozen=True)
class CatSpec:
    """A category of the odd (B) or even (D) orthogonal family.

    ``n`` is the rank, ``k`` the level parameter.  The root order of the
    working cyclotomic field is chosen so that v = zeta^4 satisfies v^2 = q
    with q of the family's prescribed order, and so that quarter powers of v
    exist (twist exponents need them).
    """

    family: str
    n: int
    k: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.k < 1:
            raise ValueError(f"level parameter k must be >= 1, got {self.k}")
        min_rank = 1 if self.family == "B" else 2
        if self.n < min_rank:
            raise ValueError(
                f"rank n must be >= {min_rank} for family {self.family}, got {self.n}")
        if self.n > MAX_RANK:
            raise GuardRailError(
                f"rank {self.n} exceeds the hard limit {MAX_RANK}")

    @property
    def q_order(self) -> int:
        if self.family == "B":
            return 4 * self.n + 4 * self.k
        return 2 * self.n + 2 * self.k - 2

    @property
    def zeta_order(self) -> int:
        # 4 * 2 * q_order: v = zeta^4 and q = v^2 of order q_order
        return 8 * self.q_order

    @property
    def field(self) -> CyclotomicField:
        return get_field(self.zeta_order)

    @property
    def pair_bound(self) -> int:
        """Bound on d_1 + d_2 defining the simple set."""
        return 4 * self.k + 2 if self.family == "B" else 4 * self.k

    def __str__(self):
        return f"{self.family}({self.n},{self.k})"


@dataclass(frozen=True)
class Weight:
    """A dominant weight in doubled coordinates, with a sign for family D."""

    d: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        d = self.d
        if not d:
            raise ValueError("weight needs at least one coordinate")
        if any(a < b for a, b in zip(d, d[1:])) or d[-1] < 0:
            raise ValueError(f"coordinates must be non-increasing and >= 0: {d}")
        parity = d[0] & 1
        if any((c & 1) != parity for c in d):
            raise ValueError(f"coordinates must have uniform parity: {d}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.sign == -1 and d[-1] == 0:
            raise ValueError("sign is only meaningful when the last coordinate is nonzero")

    @property
    def grade(self) -> int:
        return self.d[0] & 1

    @property
    def rows(self) -> int:
        return sum(1 for c in self.d if c)

    def signed_d(self) -> tuple[int, ...]:
        if self.sign == 1:
            return self.d
        return self.d[:-1] + (-self.d[-1],)

    def halves(self) -> tuple[Fraction, ...]:
        """The weight itself (signed), as exact rationals."""
        return tuple(Fraction(c, 2) for c in self.signed_d())

    def magnitudes(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.d)

    def sort_key(self):
        return (self.grade, tuple(-c for c in self.d), 0 if self.sign == 1 else 1)

    def __str__(self):
        parts = [str(c // 2) if c % 2 == 0 else f"{c}/2" for c in self.d]
        tag = "" if self.sign == 1 else ",-"
        return "(" + ",".join(parts) + tag + ")"


def make_weight(parts, n: int, sign: int = 1) -> Weight:
    """Build a Weight from a partition (ints or halves), padded to rank n."""
    fracs = [Fraction(p) for p in parts]
    if len(fracs) > n:
        raise ValueError(f"partition {parts} has more than {n} rows")
    fracs += [Fraction(0)] * (n - len(fracs))
    d = []
    for x in fracs:
        twice = 2 * x
        if twice.denominator != 1:
            raise ValueError(f"entries must be integers or half-integers: {parts}")
        d.append(twice.numerator)
    return Weight(tuple(d), sign)


@dataclass(frozen=True)
class WeylElement:
    """A signed permutation; sn is its determinant."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    sn: int

    def act(self, vec):
        return tuple(s * vec[p] for s, p in zip(self.signs, self.perm))


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def _weyl_group(family: str, n: int) -> tuple[WeylElement, ...]:
    if n > MAX_RANK:
        raise GuardRailError(f"rank {n} exceeds the hard limit {MAX_RANK}")
    elements = []
    for perm in permutations(range(n)):
        ps = _perm_sign(perm)
        for signs in product((1, -1), repeat=n):
            flips = signs.count(-1)
            if family == "D" and flips % 2:
                continue
            sn = ps * (-1 if flips % 2 else 1)
            elements.append(WeylElement(perm, signs, sn))
    return tuple(elements)


def weyl_group(spec: CatSpec) -> tuple[WeylElement, ...]:
    """All signed permutations of the family (even sign changes only for D)."""
    return _weyl_group(spec.family, spec.n)


def rho_doubled(spec: CatSpec) -> tuple[int, ...]:
    n = spec.n
    if spec.family == "B":
        return tuple(2 * (n - i) - 1 for i in range(n))
    return tuple(2 * (n - 1 - i) for i in range(n))


def rho(spec: CatSpec) -> tuple[Fraction, ...]:
    """Half-sum of the positive roots."""
    return tuple(Fraction(c, 2) for c in rho_doubled(spec))


def inner(spec: CatSpec, x, y) -> Fraction:
    """The invariant pairing: 2*sum(x_i y_i) for B, sum(x_i y_i) for D."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    s = sum((Fraction(a) * Fraction(b) for a, b in zip(x, y)), Fraction(0))
    return 2 * s if spec.family == "B" else s


def positive_roots(spec: CatSpec) -> list[tuple[int, ...]]:
    n = spec.n
    roots = []
    if spec.family == "B":
        for i in range(n):
            e = [0] * n
            e[i] = 1
            roots.append(tuple(e))
    for i in range(n):
        for j in range(i + 1, n):
            for sj in (-1, 1):
                e = [0] * n
                e[i] = 1
                e[j] = sj
                roots.append(tuple(e))
    return roots


def _dominant_vectors(n, parity, first_max, pair_bound=None):
    """Non-increasing vectors of fixed parity with d_1 <= first_max and,
    optionally, d_1 + d_2 <= pair_bound (d_2 read as 0 when n == 1)."""
    if pair_bound is not None and n == 1:
        first_max = min(first_max, pair_bound)
    lo = parity
    out = []

    def extend(prefix):
        i = len(prefix)
        if i == n:
            out.append(tuple(prefix))
            return
        hi = prefix[-1] if prefix else first_max
        if i == 1 and pair_bound is not None:
            hi = min(hi, pair_bound - prefix[0])
        for c in range(hi - (hi - parity) % 2, lo - 1, -2):
            extend(prefix + [c])

    extend([])
    return out


class SimpleSet:
    """The canonically ordered simple objects of a spec, with gamma1 marked."""

    def __init__(self, spec, items, gamma1):
        self.spec = spec
        self.items = tuple(items)
        self.index = {w: i for i, w in enumerate(self.items)}
        self.gamma1 = tuple(gamma1)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, w):
        return w in self.index

    def position(self, w) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise ValueError(f"weight {w} is not a simple object of {self.spec}") from None

    def grade_indices(self, grade: int):
        return [i for i, w in enumerate(self.items) if w.grade == grade]


def in_simple_set(spec: CatSpec, w: Weight) -> bool:
    if len(w.d) != spec.n:
        return False
    second = w.d[1] if spec.n > 1 else 0
    return w.d[0] + second <= spec.pair_bound


@lru_cache(maxsize=None)
def enumerate_simples(spec: CatSpec) -> SimpleSet:
    """All simple objects, canonically ordered and stable across runs."""
    pb = spec.pair_bound
    items = []
    for parity in (0, 1):
        first_max = pb if spec.n == 1 else pb - parity
        for d in _dominant_vectors(spec.n, parity, first_max, pair_bound=pb):
            if spec.family == "D" and d[-1] > 0:
                items.append(Weight(d, 1))
                items.append(Weight(d, -1))
            else:
                items.append(Weight(d))
    if len(items) > MAX_SIMPLES:
        raise GuardRailError(
            f"{spec} has {len(items)} simple objects, over the limit {MAX_SIMPLES}")
    items.sort(key=Weight.sort_key)
    if spec.family == "B":
        gamma1 = [i for i, w in enumerate(items) if w.d[0] == 2 * spec.k + 1]
    else:
        gamma1 = [i for i, w in enumerate(items)
                  if w.d[0] == 2 * spec.k and w.d[-1] == 0]
    return SimpleSet(spec, items, gamma1)


def j_tensor(spec: CatSpec, w: Weight) -> Weight:
    """Tensoring with the invertible object J; an involution on the simple set."""
    if not in_simple_set(spec, w):
        raise ValueError(f"weight {w} is not a simple object of {spec}")
    first = spec.pair_bound - w.d[0]
    d = (first,) + w.d[1:]
    if spec.family == "B":
        return Weight(d)
    if d[-1] == 0:
        return Weight(d)
    return Weight(d, -w.sign)


def transpose(w: Weight, n: int | None = None) -> Weight:
    """Conjugate Young diagram of an integer-partition weight."""
    if w.grade != 0:
        raise ValueError("transpose is defined for integer partitions only")
    parts = [c // 2 for c in w.d if c]
    n_out = len(w.d) if n is None else n
    if parts and parts[0] > n_out:
        raise ValueError(f"transpose of {w} does not fit in rank {n_out}")
    cols = [sum(1 for p in parts if p >= j) for j in range(1, (parts[0] if parts else 0) + 1)]
    cols += [0] * (n_out - len(cols))
    return Weight(tuple(2 * c for c in cols))


def quantum_group_levelset(spec: CatSpec) -> list[Weight]:
    """Dominant weights below the level cut of the quantum-group construction.

    Enumerated independently from the inner-product condition against the
    highest root, then asserted equal (as a set) to :func:`enumerate_simples`.
    """
    n = spec.n
    if spec.family == "B":
        d_coef, hvee, r = 2, 2 * n - 1, spec.q_order
        level = r // 2 - hvee
    else:
        d_coef, hvee, r = 1, 2 * n - 2, spec.q_order
        level = r - hvee
    beta0 = tuple(1 if i < min(2, n) else 0 for i in range(n))
    cut = Fraction(d_coef * level)
    first_max = 2 * level
    found = []
    for parity in (0, 1):
        for d in _dominant_vectors(n, parity, first_max):
            mags = tuple(Fraction(c, 2) for c in d)
            if inner(spec, mags, beta0) > cut:
                continue
            if spec.family == "D" and d[-1] > 0:
                found.append(Weight(d, 1))
                found.append(Weight(d, -1))
            else:
                found.append(Weight(d))
    expected = enumerate_simples(spec)
    if set(found) != set(expected.items):
        raise ArithmeticError(
            f"level-set enumeration disagrees with the simple set for {spec}")
    found.sort(key=Weight.sort_key)
    return found
