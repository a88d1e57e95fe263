"""Quantum dimensions, twists, S-matrix, fusion and the exact identity checks.

Every scalar lives in the spec's cyclotomic field with v = zeta^4, so all
exponents appearing in the character sums are integers in zeta units:

* pairing terms v^(2(x|w y))  ->  zeta exponent  c * sum(dx_i * (w dy)_i)
* root pairings v^((x|alpha)) ->  zeta exponent  c * sum(dx_i * alpha_i)
* twists v^((mu+2rho|mu))     ->  zeta exponent  (c/2) * sum((dmu_i+2drho_i)*dmu_i)

with doubled coordinates dx and c = 4 for family B, c = 2 for family D.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycNum
from .roots import (CatSpec, SimpleSet, Weight, enumerate_simples,
                    in_simple_set, positive_roots, rho_doubled, transpose,
                    weyl_group)


def _scale(spec: CatSpec) -> int:
    return 4 if spec.family == "B" else 2


def _weyl_sum(spec: CatSpec, dx, dy) -> CycNum:
    """sum over W of sn(w) * zeta^(c * <dx, w(dy)>), dx and dy doubled."""
    c = _scale(spec)
    n = spec.field.order
    acc: dict[int, int] = {}
    for w in weyl_group(spec):
        dot = 0
        for s, p, a in zip(w.signs, w.perm, dx):
            dot += a * s * dy[p]
        e = (c * dot) % n
        acc[e] = acc.get(e, 0) + w.sn
    return spec.field.from_power_dict(acc)


@lru_cache(maxsize=None)
def psi(spec: CatSpec) -> CycNum:
    """The Weyl denominator, computed both as a group sum and as a product
    over positive roots; the two must agree exactly."""
    drho = rho_doubled(spec)
    as_sum = _weyl_sum(spec, drho, drho)
    c = _scale(spec)
    f = spec.field
    as_product = f.one
    for alpha in positive_roots(spec):
        e = c * sum(a * b for a, b in zip(drho, alpha))
        as_product = as_product * (f.zeta_pow(e) - f.zeta_pow(-e))
    if as_sum != as_product:
        raise ArithmeticError(f"Weyl denominator mismatch for {spec}")
    return as_sum


@lru_cache(maxsize=None)
def _inv_psi(spec: CatSpec) -> CycNum:
    return psi(spec).inverse()


def _qdim_formal(spec: CatSpec, sd) -> CycNum:
    """Dimension formula applied to an arbitrary signed doubled vector."""
    drho = rho_doubled(spec)
    dx = tuple(a + b for a, b in zip(sd, drho))
    return _weyl_sum(spec, dx, drho) * _inv_psi(spec)


def _require_simple(spec: CatSpec, w: Weight):
    if not in_simple_set(spec, w):
        raise ValueError(f"weight {w} is not a simple object of {spec}")


def qdim_sum(spec: CatSpec, w: Weight) -> CycNum:
    """Quantum dimension by the Weyl-group character sum."""
    _require_simple(spec, w)
    return _qdim_formal(spec, w.signed_d())


@lru_cache(maxsize=None)
def _root_factors(spec: CatSpec):
    """Inverted denominator factor for each positive root."""
    c = _scale(spec)
    f = spec.field
    drho = rho_doubled(spec)
    out = []
    for alpha in positive_roots(spec):
        e = c * sum(a * b for a, b in zip(drho, alpha))
        den = f.zeta_pow(e) - f.zeta_pow(-e)
        if den.is_zero():
            raise ArithmeticError(
                f"degenerate root factor for {spec}; root order too small")
        out.append((alpha, den.inverse()))
    return tuple(out)


def qdim_product(spec: CatSpec, w: Weight) -> CycNum:
    """Quantum dimension by the product over positive roots; independent of
    :func:`qdim_sum` and used as its cross-oracle."""
    _require_simple(spec, w)
    c = _scale(spec)
    f = spec.field
    dx = tuple(a + b for a, b in zip(w.signed_d(), rho_doubled(spec)))
    value = f.one
    for alpha, inv_den in _root_factors(spec):
        e = c * sum(a * b for a, b in zip(dx, alpha))
        value = value * ((f.zeta_pow(e) - f.zeta_pow(-e)) * inv_den)
    return value


def _twist_exp(spec: CatSpec, sd) -> int:
    half = _scale(spec) // 2
    drho = rho_doubled(spec)
    return half * sum((a + 2 * b) * a for a, b in zip(sd, drho))


def twist(spec: CatSpec, w: Weight) -> CycNum:
    """Twist coefficient v^((mu+2rho|mu)), a pure root of unity."""
    _require_simple(spec, w)
    return spec.field.zeta_pow(_twist_exp(spec, w.signed_d()))


def smatrix_entry(spec: CatSpec, mu: Weight, nu: Weight) -> CycNum:
    """Invariant of the Hopf link colored by mu and nu; symmetric."""
    _require_simple(spec, mu)
    _require_simple(spec, nu)
    drho = rho_doubled(spec)
    dx = tuple(a + b for a, b in zip(mu.signed_d(), drho))
    dy = tuple(a + b for a, b in zip(nu.signed_d(), drho))
    return _weyl_sum(spec, dx, dy) * _inv_psi(spec)


def _as_nonneg_int(value: CycNum, what: str) -> int:
    if not value.is_rational():
        raise ArithmeticError(f"{what} is not rational: {value!r}")
    frac = value.as_fraction()
    if frac.denominator != 1 or frac < 0:
        raise ArithmeticError(f"{what} is not a nonnegative integer: {frac}")
    return int(frac)


class CategoryTable:
    """All numerical data of one category: dims, twists, S-matrix, Kirby colors.

    Built once per spec (see :func:`get_table`) and immutable afterwards;
    derived caches (inverse dims, character matrix, fusion rows) fill in
    lazily.
    """

    def __init__(self, spec: CatSpec, _parts=None):
        self.spec = spec
        self.simples: SimpleSet = enumerate_simples(spec)
        m = len(self.simples)
        sds = [w.signed_d() for w in self.simples]
        self.twist_exps = tuple(_twist_exp(spec, sd) for sd in sds)
        f = spec.field
        if _parts is None:
            self.psi = psi(spec)
            ip = _inv_psi(spec)
            drho = rho_doubled(spec)
            xs = [tuple(a + b for a, b in zip(sd, drho)) for sd in sds]
            self.dims = tuple(_weyl_sum(spec, x, drho) * ip for x in xs)
            self.twists = tuple(f.zeta_pow(e) for e in self.twist_exps)
            rows = [[None] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    entry = _weyl_sum(spec, xs[i], xs[j]) * ip
                    rows[i][j] = entry
                    rows[j][i] = entry
            self.smatrix = tuple(tuple(r) for r in rows)
        else:
            self.psi, self.dims, self.twists, self.smatrix = _parts
            expected = tuple(f.zeta_pow(e) for e in self.twist_exps)
            if self.twists != expected:
                raise ValueError("loaded twists disagree with the spec")
        self.dimsq = tuple(d * d for d in self.dims)
        zero = f.zero
        self.omega_norm = sum(self.dimsq, zero)
        self.u_plus = sum((dq * t for dq, t in zip(self.dimsq, self.twists)), zero)
        self.u_minus = sum((dq * f.zeta_pow(-e)
                            for dq, e in zip(self.dimsq, self.twist_exps)), zero)
        for name, val in (("<Omega>", self.omega_norm),
                          ("F(U+)", self.u_plus), ("F(U-)", self.u_minus)):
            if val.is_zero():
                raise ArithmeticError(f"{name} vanishes for {spec}")
        self._inv_dims = None
        self._inv_omega = None
        self._inv_u = {}
        self._chi = None
        self._conj_chi = None
        self._ddbar = None
        self._fusion_rows = {}

    # lookups ---------------------------------------------------------------

    def index(self, w: Weight) -> int:
        return self.simples.position(w)

    def dim(self, w: Weight) -> CycNum:
        return self.dims[self.index(w)]

    def twist_of(self, w: Weight) -> CycNum:
        return self.twists[self.index(w)]

    def s_entry(self, mu: Weight, nu: Weight) -> CycNum:
        return self.smatrix[self.index(mu)][self.index(nu)]

    # lazy derived data ------------------------------------------------------

    @property
    def inv_dims(self):
        if self._inv_dims is None:
            self._inv_dims = tuple(d.inverse() for d in self.dims)
        return self._inv_dims

    @property
    def inv_omega(self) -> CycNum:
        if self._inv_omega is None:
            self._inv_omega = self.omega_norm.inverse()
        return self._inv_omega

    def inv_u(self, sign: int) -> CycNum:
        if sign not in self._inv_u:
            u = self.u_plus if sign > 0 else self.u_minus
            self._inv_u[sign] = u.inverse()
        return self._inv_u[sign]

    def _character_data(self):
        # chi[l][x] = S[l][x] / dim[x]: algebraic integers, denominator 1
        if self._chi is None:
            m = len(self.simples)
            inv_dims = self.inv_dims
            chi = []
            for l in range(m):
                row = []
                for x in range(m):
                    val = self.smatrix[l][x] * inv_dims[x]
                    if val.den != 1:
                        raise ArithmeticError("character value is not integral")
                    row.append(val.num)
                chi.append(tuple(row))
            self._chi = tuple(chi)
            self._conj_chi = tuple(
                tuple(CycNum(self.spec.field, r, 1).conjugate().num for r in row)
                for row in self._chi)
            ddbar = []
            for d in self.dims:
                v = d * d.conjugate()
                if v.den != 1:
                    raise ArithmeticError("dim * conj(dim) is not integral")
                ddbar.append(v.num)
            self._ddbar = tuple(ddbar)
        return self._chi, self._conj_chi, self._ddbar


@lru_cache(maxsize=None)
def get_table(spec: CatSpec) -> CategoryTable:
    return CategoryTable(spec)


# spinors and projectors ------------------------------------------------------

def spinor_weight(spec: CatSpec, which: str = "S") -> Weight:
    d = (1,) * spec.n
    if spec.family == "B":
        return Weight(d)
    return Weight(d, 1 if which in ("S", "S+") else -1)


def _box_weight(spec: CatSpec, sign: int = 1) -> Weight:
    """The rectangular object with k columns in every row."""
    return Weight((2 * spec.k,) * spec.n, sign if spec.family == "D" else 1)


def spinor_encircle_sign(spec: CatSpec, b: Weight, variant: str = "plus") -> CycNum:
    """Scalar produced by encircling the spinor b with the rectangular object
    (its plus or minus component for family D); asserted against the exact
    closed form before returning."""
    if b.grade != 1:
        raise ValueError(f"{b} is not a spinor weight")
    _require_simple(spec, b)
    f = spec.field
    bsum = sum((c - 1) // 2 for c in b.d)
    if spec.family == "B":
        box = _box_weight(spec)
        expected = f.one if bsum % 2 == 0 else -f.one
    else:
        box = _box_weight(spec, 1 if variant == "plus" else -1)
        quarter = f.order // 4
        # i = v^(n+k-1) = zeta^(order/4); -i = zeta^(3*order/4)
        plus_i = variant == "plus"
        if b.sign == -1:
            plus_i = not plus_i
        e = quarter if plus_i else 3 * quarter
        expected = f.zeta_pow(e * spec.n)
        if bsum % 2:
            expected = -expected
    ratio = smatrix_entry(spec, b, box) / qdim_sum(spec, b)
    if ratio != expected:
        raise ArithmeticError(
            f"encircling scalar for {b} in {spec} deviates from the closed form")
    return ratio


def projector_action(spec: CatSpec, b: Weight, sign) -> int:
    """Eigenvalue (0 or 1) of the parity projector on the spinor b."""
    if sign in ("+", "plus"):
        sign = 1
    elif sign in ("-", "minus"):
        sign = -1
    if sign not in (1, -1):
        raise ValueError(f"projector sign must be +1 or -1, got {sign!r}")
    if b.grade != 1:
        raise ValueError(f"{b} is not a spinor weight")
    f = spec.field
    ratio = spinor_encircle_sign(spec, b, "plus")
    if spec.family == "D":
        minus_i_n = f.zeta_pow(3 * (f.order // 4) * spec.n)
        ratio = minus_i_n * ratio
    value = (f.one + ratio * sign) * Fraction(1, 2)
    if value == f.one:
        return 1
    if value.is_zero():
        return 0
    raise ArithmeticError(f"projector eigenvalue is not 0 or 1: {value!r}")


def tensor_with_spinor(spec: CatSpec, w: Weight, spinor: str = "S") -> list[Weight]:
    """Simple summands of (w tensor spinor): the sign-hypercube rule, with
    non-dominant contributions dropped and out-of-set summands required to
    have zero dimension."""
    if w.grade != 0:
        raise ValueError("the spinor tensor rule applies to 0-graded weights")
    _require_simple(spec, w)
    if spec.family == "B":
        if spinor != "S":
            raise ValueError(f"family B has the single spinor 'S', got {spinor!r}")
        want_parity = None
    else:
        if spinor not in ("S+", "S-"):
            raise ValueError(f"family D tensors with 'S+' or 'S-', got {spinor!r}")
        want_parity = 0 if spinor == "S+" else 1
    from itertools import product as iproduct
    n = spec.n
    sd = w.signed_d()
    results = []
    for eps in iproduct((1, -1), repeat=n):
        if want_parity is not None and eps.count(-1) % 2 != want_parity:
            continue
        y = tuple(a + e for a, e in zip(sd, eps))
        if spec.family == "B":
            if any(y[i] < y[i + 1] for i in range(n - 1)) or y[-1] < 0:
                continue
        else:
            if any(y[i] < y[i + 1] for i in range(n - 2)) or y[n - 2] < abs(y[-1]):
                continue
        mag = y[:-1] + (abs(y[-1]),)
        sign = -1 if (spec.family == "D" and y[-1] < 0) else 1
        cand = Weight(mag, sign)
        if in_simple_set(spec, cand):
            results.append(cand)
        elif not _qdim_formal(spec, y).is_zero():
            raise ArithmeticError(
                f"summand {cand} of {w} x {spinor} leaves the simple set "
                f"with nonzero dimension")
    results.sort(key=Weight.sort_key)
    return results


def verify_spinor_identities(spec: CatSpec, w: Weight) -> dict:
    """Exact checks of dimension multiplicativity and the twist identity for
    (w tensor spinor), over the full sign hypercube with formal dimensions."""
    if w.grade != 0:
        raise ValueError("identities apply to 0-graded weights")
    _require_simple(spec, w)
    from itertools import product as iproduct
    f = spec.field
    n = spec.n
    sd = w.signed_d()
    dim_w = qdim_sum(spec, w)
    e_w = _twist_exp(spec, sd)
    classes = [("S", None)] if spec.family == "B" else [("S+", 0), ("S-", 1)]
    mult_ok = True
    twist_ok = True
    for name, parity in classes:
        sw = spinor_weight(spec, name)
        dim_s = qdim_sum(spec, sw)
        e_s = _twist_exp(spec, sw.signed_d())
        total = f.zero
        tw_acc = f.zero
        for eps in iproduct((1, -1), repeat=n):
            if parity is not None and eps.count(-1) % 2 != parity:
                continue
            y = tuple(a + e for a, e in zip(sd, eps))
            dim_y = _qdim_formal(spec, y)
            total = total + dim_y
            if dim_y.is_zero():
                continue
            e_y = _twist_exp(spec, y)
            term = f.zeta_pow(e_y - e_s - e_w) - f.zeta_pow(e_s + e_w - e_y)
            tw_acc = tw_acc + term * dim_y
        mult_ok = mult_ok and total == dim_s * dim_w
        twist_ok = twist_ok and tw_acc.is_zero()
    return {"multiplicativity": mult_ok, "twist_identity": twist_ok}


# global structure -------------------------------------------------------------

def transparent_objects(table: CategoryTable) -> list[Weight]:
    """Objects braiding trivially with everything; modularity holds iff the
    list is exactly the trivial object."""
    out = []
    m = len(table.simples)
    for i, w in enumerate(table.simples):
        row = table.smatrix[i]
        di = table.dims[i]
        if all(row[j] == di * table.dims[j] for j in range(m)):
            out.append(w)
    return out


def _conv_add(acc, a, b):
    for i, ai in enumerate(a):
        if ai:
            off = i
            for j, bj in enumerate(b):
                if bj:
                    acc[off + j] += ai * bj


def fusion_row(table: CategoryTable, lam: Weight, mu: Weight) -> tuple[int, ...]:
    """All fusion coefficients N(lam, mu -> nu), indexed like the simple set."""
    ia, ib = table.index(lam), table.index(mu)
    key = (ia, ib) if ia <= ib else (ib, ia)
    cached = table._fusion_rows.get(key)
    if cached is not None:
        return cached
    chi, conj_chi, ddbar = table._character_data()
    f = table.spec.field
    m = len(table.simples)
    weights = []
    for x in range(m):
        t = f.mul_vec(chi[ia][x], chi[ib][x])
        weights.append(f.mul_vec(t, ddbar[x]))
    inv_omega = table.inv_omega
    row = []
    width = 2 * f.degree - 1
    for nu in range(m):
        acc = [0] * width
        for x in range(m):
            _conv_add(acc, weights[x], conj_chi[nu][x])
        val = CycNum(f, f.reduce_vec(acc)) * inv_omega
        row.append(_as_nonneg_int(val, "fusion coefficient"))
    row = tuple(row)
    table._fusion_rows[key] = row
    return row


def fusion_coeff(table: CategoryTable, lam: Weight, mu: Weight, nu: Weight) -> int:
    """Fusion multiplicity from the S-matrix; asserted a nonnegative integer."""
    return fusion_row(table, lam, mu)[table.index(nu)]


def kirby_colors(table: CategoryTable):
    """Graded Kirby colors (as weight/coefficient pairs), the norm <Omega>,
    and the framing-change scalars F(U+), F(U-)."""
    omega0 = [(w, table.dims[i]) for i, w in enumerate(table.simples)
              if w.grade == 0]
    omega1 = [(w, table.dims[i]) for i, w in enumerate(table.simples)
              if w.grade == 1]
    return omega0, omega1, table.omega_norm, table.u_plus, table.u_minus


def level_rank_check(spec: CatSpec) -> dict:
    """Compare dims and twists of integer partitions under the duality that
    swaps rank and level, twists v into -1/v and transposes diagrams.
    Mismatches are reported, not raised; items on the boundary of the
    fundamental domain are flagged."""
    if spec.family != "D":
        raise ValueError("level-rank check applies to family D")
    dual = CatSpec("D", spec.k, spec.n)
    f = spec.field
    t = 2 * (spec.n + spec.k - 1) - 1
    if f.zeta_pow(4 * t) != -f.zeta_pow(-4):
        raise ArithmeticError("galois exponent does not send v to -1/v")
    entries = []
    for w in enumerate_simples(spec):
        if w.grade != 0 or w.sign != 1 or w.d[0] > 2 * spec.k:
            continue
        wt = transpose(w, n=spec.k)
        boundary = w.d[0] == 2 * spec.k or w.rows == spec.n
        dim_ok = qdim_sum(spec, w).galois(t) == qdim_sum(dual, wt)
        twist_ok = twist(spec, w).galois(t) == twist(dual, wt)
        entries.append({"weight": w, "transpose": wt, "boundary": boundary,
                        "dim_match": dim_ok, "twist_match": twist_ok})
    mismatches = [e for e in entries if not (e["dim_match"] and e["twist_match"])]
    interior_ok = all(e["dim_match"] and e["twist_match"]
                      for e in entries if not e["boundary"])
    return {"spec": spec, "dual": dual, "galois_exponent": t,
            "entries": entries, "mismatches": mismatches,
            "interior_ok": interior_ok}
