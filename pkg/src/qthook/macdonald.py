"""Macdonald symmetric polynomials in finitely many variables.

P and Q are constructed through horizontal-strip chains (the tableau form of
the Pieri rule), so every coefficient is an explicit product of the phi/psi
coefficients from :mod:`qthook.qtcore`.  A Gram-Schmidt construction against
the (q, t) power-sum scalar product is kept as an independent oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .partitions import (
    EMPTY,
    Partition,
    horizontal_strips_above,
    partitions_of,
    partitions_up_to,
)
from .qtcore import (
    BI_ONE,
    BiPoly,
    QTFactored,
    b_el,
    b_lambda,
    b_oa,
    f_series_coeff,
    phi_skew,
    psi_skew,
)
from .series import (
    CoeffRing,
    MultiSeries,
    QTCoeff,
    VarSet,
    mono_mul,
    series_equals,
    series_f,
    total_degree,
)

EXACT = CoeffRing("exact")

# Constructors verify that accumulated coefficients are symmetric under
# permutations of the exponent slots.  Flip off to speed up long sweeps.
CHECK_SYMMETRY = True


class SymPoly:
    """Symmetric polynomial in n variables, coefficients in Q(q, t)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = {}
        for exps, c in (coeffs or {}).items():
            if not c.is_zero():
                self.coeffs[exps] = c

    @staticmethod
    def zero(n: int) -> "SymPoly":
        return SymPoly(n)

    @staticmethod
    def one(n: int) -> "SymPoly":
        return SymPoly(n, {(0,) * n: QTCoeff.one()})

    def add_term(self, exps: tuple[int, ...], c):
        if isinstance(c, QTFactored):
            c = QTCoeff.from_qtf(c)
        s = self.coeffs.get(exps, QTCoeff.zero()) + c
        if s.is_zero():
            self.coeffs.pop(exps, None)
        else:
            self.coeffs[exps] = s

    def __add__(self, other: "SymPoly") -> "SymPoly":
        assert self.n == other.n
        out = SymPoly(self.n, self.coeffs)
        for e, c in other.coeffs.items():
            out.add_term(e, c)
        return out

    def __mul__(self, other: "SymPoly") -> "SymPoly":
        assert self.n == other.n
        out = SymPoly(self.n)
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out.add_term(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return out

    def scale(self, f) -> "SymPoly":
        if isinstance(f, QTFactored):
            f = QTCoeff.from_qtf(f)
        out = SymPoly(self.n)
        for e, c in self.coeffs.items():
            out.add_term(e, c * f)
        return out

    def coefficient(self, exps: tuple[int, ...]) -> QTCoeff:
        return self.coeffs.get(exps, QTCoeff.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def equals(self, other: "SymPoly") -> bool:
        assert self.n == other.n
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k).equals(other.coefficient(k)) for k in keys)

    def degree(self):
        return max((sum(e) for e in self.coeffs), default=None)

    def check_symmetric(self):
        groups = {}
        for e in self.coeffs:
            groups.setdefault(tuple(sorted(e, reverse=True)), []).append(e)
        for rep, members in groups.items():
            base = self.coefficient(members[0])
            count = _n_permutations(rep, self.n)
            if len(members) != count:
                raise AssertionError(f"missing orbit members for {rep}")
            for m in members[1:]:
                if not self.coefficient(m).equals(base):
                    raise AssertionError(f"asymmetric coefficients at {m}")
        return self

    def m_expansion(self) -> dict[Partition, QTCoeff]:
        """Coefficients on the monomial symmetric basis (needs n >= degree)."""
        out = {}
        for e, c in self.coeffs.items():
            key = tuple(sorted(e, reverse=True))
            if key == e:
                out[Partition(key)] = c
        return out


def _n_permutations(sorted_exps, n):
    from math import factorial

    counts = {}
    for v in sorted_exps:
        counts[v] = counts.get(v, 0) + 1
    total = factorial(n)
    for v, k in counts.items():
        total //= factorial(k)
    return total


def _strip_chains(lam: Partition, mu: Partition, n: int):
    """All chains mu = nu_0 < nu_1 < ... < nu_n = lam by horizontal strips."""
    results = []
    target = lam.parts

    def feasible(nu: Partition, steps_left: int) -> bool:
        if not lam.contains(nu):
            return False
        # each remaining strip can cover one cell per column
        conj_l, conj_n = lam.conjugate(), nu.conjugate()
        for c in range(1, lam[1] + 1):
            if conj_l[c] - conj_n[c] > steps_left:
                return False
        return True

    def rec(i, nu, acc):
        if i == n:
            if nu.parts == target:
                results.append(acc)
            return
        room = lam.weight() - nu.weight()
        for k in range(room + 1):
            for nxt in horizontal_strips_above(nu, k):
                if feasible(nxt, n - i - 1):
                    rec(i + 1, nxt, acc + [nxt])

    if feasible(mu, n):
        rec(0, mu, [mu])
    return results


@lru_cache(maxsize=None)
def _skew_cached(lam_parts, mu_parts, n, kind):
    lam, mu = Partition(lam_parts), Partition(mu_parts)
    coeff_fun = psi_skew if kind == "P" else phi_skew
    out = SymPoly(n)
    for chain in _strip_chains(lam, mu, n):
        w = QTFactored.one()
        exps = []
        for prev, nxt in zip(chain, chain[1:]):
            w = w * coeff_fun(nxt, prev)
            exps.append(nxt.weight() - prev.weight())
        if not w.is_zero():
            out.add_term(tuple(exps), w)
    if CHECK_SYMMETRY:
        out.check_symmetric()
    return out


def skew_p(lam: Partition, mu: Partition, n: int) -> SymPoly:
    """P_{lam/mu}(x_1..x_n; q, t); zero when no strip chain exists."""
    if not lam.contains(mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    return _skew_cached(lam.parts, mu.parts, n, "P")


def skew_q(lam: Partition, mu: Partition, n: int) -> SymPoly:
    """Q_{lam/mu}(x_1..x_n; q, t) = (b_lam / b_mu) P_{lam/mu}."""
    if not lam.contains(mu):
        raise ValueError(f"{mu} is not contained in {lam}")
    return _skew_cached(lam.parts, mu.parts, n, "Q")


def macdonald_p(lam: Partition, n: int) -> SymPoly:
    return skew_p(lam, EMPTY, n)


def macdonald_q(lam: Partition, n: int) -> SymPoly:
    return skew_q(lam, EMPTY, n)


def g_r(r: int, n: int) -> SymPoly:
    """g_r = Q_(r), the one-row Macdonald Q polynomial; g_0 = 1."""
    if r == 0:
        return SymPoly.one(n)
    return macdonald_q(Partition([r]), n)


# ---------------------------------------------------------------------------
# Expansion in the P basis (triangular, dominance-compatible lex order).
# ---------------------------------------------------------------------------

def expand_in_p(poly: SymPoly, degree: int, n: int) -> dict[Partition, QTCoeff]:
    """Write a homogeneous symmetric polynomial as sum c_lam P_lam.

    Ties between dominance-incomparable partitions are broken
    lexicographically (any linear extension works).
    """
    rest = SymPoly(n, poly.coeffs)
    out = {}
    candidates = sorted(partitions_of(degree, None, n),
                        key=lambda p: p.parts, reverse=True)
    for lam in candidates:
        exps = lam.parts + (0,) * (n - lam.length())
        c = rest.coefficient(exps)
        if c.is_zero():
            continue
        out[lam] = c
        rest = rest + macdonald_p(lam, n).scale(c).scale(QTFactored(-1))
    if not rest.is_zero():
        raise AssertionError("P-basis expansion left a nonzero remainder")
    return out


def structure_constants(mu: Partition, nu: Partition, n: int) -> dict[Partition, QTCoeff]:
    """Coefficients f^lam_{mu nu} of P_mu P_nu = sum f^lam P_lam."""
    if n < mu.length() + nu.length():
        raise ValueError("need n >= l(mu) + l(nu) for a faithful expansion")
    prod = macdonald_p(mu, n) * macdonald_p(nu, n)
    return expand_in_p(prod, mu.weight() + nu.weight(), n)


def skew_q_via_structure(lam: Partition, mu: Partition, n: int) -> SymPoly:
    """Q_{lam/mu} = sum_nu f^lam_{mu nu} Q_nu, the defining expansion."""
    d = lam.weight() - mu.weight()
    out = SymPoly.zero(n)
    for nu in partitions_of(d):
        if nu.length() > n:
            continue  # Q_nu vanishes in n variables
        consts = structure_constants(mu, nu, max(n, mu.length() + nu.length(),
                                                 lam.length()))
        c = consts.get(lam)
        if c is not None and not c.is_zero():
            out = out + macdonald_q(nu, n).scale(c)
    return out


# ---------------------------------------------------------------------------
# The power-sum scalar product and the Gram-Schmidt oracle.
# ---------------------------------------------------------------------------

def _is_const(p: BiPoly) -> bool:
    return not p.terms or set(p.terms) == {(0, 0)}


class RatFunc:
    """Rational function num/den over Q[q, t], kept fully reduced.

    Arithmetic uses Henrici's scheme: with reduced operands, each operation
    only needs gcds of small cross pieces and yields a reduced result, which
    keeps the Gram-Schmidt oracle out of large polynomial gcd work.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly = BI_ONE):
        from .polyops import divexact_bipoly, gcd_bipoly

        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = BiPoly(), BI_ONE
        else:
            if not _is_const(den):
                g = gcd_bipoly(num, den)
                if not _is_const(g):
                    num = divexact_bipoly(num, g)
                    den = divexact_bipoly(den, g)
            lead = den.terms[min(den.terms)]
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def _raw(num: BiPoly, den: BiPoly) -> "RatFunc":
        """Trusted constructor: operands already coprime."""
        out = RatFunc.__new__(RatFunc)
        if num.is_zero():
            num, den = BiPoly(), BI_ONE
        else:
            lead = den.terms[min(den.terms)]
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        out.num, out.den = num, den
        return out

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(BiPoly.const(c))

    @staticmethod
    def from_qtcoeff(c: QTCoeff) -> "RatFunc":
        return RatFunc(c.num, c._den_poly())

    def is_zero(self):
        return self.num.is_zero()

    def _addsub(self, other: "RatFunc", sign: int) -> "RatFunc":
        from .polyops import divexact_bipoly, gcd_bipoly

        if self.is_zero():
            return other if sign > 0 else RatFunc._raw(-other.num, other.den)
        if other.is_zero():
            return self
        if _is_const(self.den) and _is_const(other.den):
            num = self.num * other.den
            num = num + (other.num * self.den if sign > 0
                         else -(other.num * self.den))
            return RatFunc._raw(num, self.den * other.den)
        g = gcd_bipoly(self.den, other.den)
        if _is_const(g):
            num = self.num * other.den
            num = num + (other.num * self.den if sign > 0
                         else -(other.num * self.den))
            return RatFunc._raw(num, self.den * other.den)
        d1 = divexact_bipoly(self.den, g)
        d2 = divexact_bipoly(other.den, g)
        num = self.num * d2
        num = num + (other.num * d1 if sign > 0 else -(other.num * d1))
        den = self.den * d2
        t = gcd_bipoly(num, g)
        if not _is_const(t):
            num = divexact_bipoly(num, t)
            den = divexact_bipoly(den, t)
        return RatFunc._raw(num, den)

    def __add__(self, other):
        return self._addsub(other, +1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __mul__(self, other):
        from .polyops import divexact_bipoly, gcd_bipoly

        if self.is_zero() or other.is_zero():
            return RF_ZERO
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not _is_const(d2):
            g = gcd_bipoly(n1, d2)
            if not _is_const(g):
                n1, d2 = divexact_bipoly(n1, g), divexact_bipoly(d2, g)
        if not _is_const(d1):
            g = gcd_bipoly(n2, d1)
            if not _is_const(g):
                n2, d1 = divexact_bipoly(n2, g), divexact_bipoly(d1, g)
        return RatFunc._raw(n1 * n2, d1 * d2)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError
        return self * RatFunc(other.den, other.num)

    def scale(self, c) -> "RatFunc":
        if c == 0:
            return RF_ZERO
        return RatFunc._raw(self.num.scale(c), self.den)

    def equals(self, other) -> bool:
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        return f"({self.num})/({self.den})"


RF_ZERO = RatFunc(BiPoly())
RF_ONE = RatFunc(BI_ONE)


def _power_sum_poly(r: int, n: int) -> SymPoly:
    out = SymPoly(n)
    for i in range(n):
        e = [0] * n
        e[i] = r
        out.add_term(tuple(e), QTCoeff.one())
    return out


@lru_cache(maxsize=None)
def _p_to_m_matrix(d: int):
    """Integer expansion of p_lam over m_mu for lam, mu |- d (in d variables)."""
    parts = sorted(partitions_of(d), key=lambda p: p.parts, reverse=True)
    rows = {}
    for lam in parts:
        poly = SymPoly.one(d)
        for r in lam:
            poly = poly * _power_sum_poly(r, d)
        exp = poly.m_expansion()
        rows[lam] = {mu: _qtcoeff_to_fraction(c) for mu, c in exp.items()}
    return parts, rows


def _qtcoeff_to_fraction(c: QTCoeff) -> Fraction:
    # integer-coefficient helper for the p->m matrix
    if c.is_zero():
        return Fraction(0)
    if set(c.num.terms) != {(0, 0)} or c.den or c.dq or c.dt:
        raise AssertionError("expected a constant coefficient")
    return c.num.terms[(0, 0)]


@lru_cache(maxsize=None)
def _m_to_p_matrix(d: int):
    """Inverse of the p->m matrix, exact rational entries."""
    parts, rows = _p_to_m_matrix(d)
    k = len(parts)
    idx = {p: i for i, p in enumerate(parts)}
    a = [[Fraction(0)] * (2 * k) for _ in range(k)]
    for lam in parts:
        i = idx[lam]
        for mu, v in rows[lam].items():
            a[i][idx[mu]] = v
        a[i][k + i] = Fraction(1)
    # Gauss-Jordan over the rationals
    for col in range(k):
        piv = next(r for r in range(col, k) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(k):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inverse = {}
    for mu in parts:  # m_mu = sum_lam inverse[mu][lam] p_lam
        r = idx[mu]
        inverse[mu] = {lam: a[r][k + idx[lam]] for lam in parts}
    # note: rows of the inverse matrix live on the m side
    return parts, inverse


def _z_weight(lam: Partition) -> RatFunc:
    """z_lam * prod (1 - q^{lam_i}) / (1 - t^{lam_i})."""
    from math import factorial

    mult = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    z = 1
    for v, m in mult.items():
        z *= (v ** m) * factorial(m)
    num = BiPoly.const(z)
    den = BI_ONE
    for p in lam:
        num = num * BiPoly({(0, 0): Fraction(1), (p, 0): Fraction(-1)})
        den = den * BiPoly({(0, 0): Fraction(1), (0, p): Fraction(-1)})
    return RatFunc(num, den)


@lru_cache(maxsize=None)
def _gram_matrix(d: int):
    """B[mu][nu] = <m_mu, m_nu>_{q,t} for mu, nu |- d."""
    parts, inverse = _m_to_p_matrix(d)
    weights = {lam: _z_weight(lam) for lam in parts}
    b = {}
    for mu in parts:
        for nu in parts:
            acc = RF_ZERO
            for lam in parts:
                c = inverse[mu].get(lam, Fraction(0)) * inverse[nu].get(lam, Fraction(0))
                if c:
                    acc = acc + weights[lam].scale(c)
            b[(mu, nu)] = acc
    return parts, b


def scalar_product(f: dict[Partition, RatFunc], g: dict[Partition, RatFunc],
                   d: int) -> RatFunc:
    """Macdonald scalar product of two degree-d elements in the m basis."""
    parts, b = _gram_matrix(d)
    acc = RF_ZERO
    for mu, cf in f.items():
        if cf.is_zero():
            continue
        for nu, cg in g.items():
            if cg.is_zero():
                continue
            acc = acc + cf * cg * b[(mu, nu)]
    return acc


@lru_cache(maxsize=None)
def _gram_p_basis(d: int):
    """Gram-Schmidt of the m basis in degree d: the P_lam in m coordinates."""
    if d == 0:
        return {EMPTY: {EMPTY: RF_ONE}}
    parts = sorted(partitions_of(d), key=lambda p: p.parts)  # lex ascending
    built = {}
    norms = {}
    for lam in parts:
        vec = {lam: RF_ONE}
        m_lam = {lam: RF_ONE}
        for mu in list(built):
            coef = scalar_product(m_lam, built[mu], d) / norms[mu]
            if coef.is_zero():
                continue
            for nu, v in built[mu].items():
                vec[nu] = vec.get(nu, RF_ZERO) - coef * v
        built[lam] = {nu: v for nu, v in vec.items() if not v.is_zero()}
        norms[lam] = scalar_product(built[lam], built[lam], d)
    return built


def gram_p(lam: Partition, n: int) -> SymPoly:
    """Oracle construction of P_lam by Gram-Schmidt; budget |lam| <= 6."""
    if lam.weight() > 6:
        raise ValueError("gram_p oracle budget is |lam| <= 6")
    if lam.length() > n:
        raise ValueError("gram_p needs l(lam) <= n")
    coords = _gram_p_basis(lam.weight())[lam]
    out = SymPoly(n)
    for mu, c in coords.items():
        if mu.length() > n:
            continue
        qc = _ratfunc_to_qtcoeff(c)
        for e in _distinct_permutations(mu, n):
            out.add_term(e, qc)
    return out


def _ratfunc_to_qtcoeff(r: RatFunc) -> "_RatQTCoeff":
    return _RatQTCoeff(r)


class _RatQTCoeff(QTCoeff):
    """QTCoeff backed by a general rational function (oracle use only)."""

    __slots__ = ("rat",)

    def __init__(self, rat: RatFunc):
        self.rat = rat
        super().__init__(rat.num)

    def _den_poly(self):
        return self.rat.den

    def is_zero(self):
        return self.rat.is_zero()

    def equals(self, other):
        if isinstance(other, _RatQTCoeff):
            return self.rat.equals(other.rat)
        return self.rat.num * other._den_poly() == other.num * self.rat.den

    def __add__(self, other):
        if isinstance(other, _RatQTCoeff):
            return _RatQTCoeff(self.rat + other.rat)
        return _RatQTCoeff(self.rat + RatFunc.from_qtcoeff(other))

    def __neg__(self):
        return _RatQTCoeff(RF_ZERO - self.rat)

    def __mul__(self, other):
        if isinstance(other, _RatQTCoeff):
            return _RatQTCoeff(self.rat * other.rat)
        return _RatQTCoeff(self.rat * RatFunc.from_qtcoeff(other))

    def evaluate(self, point):
        den = self.rat.den.evaluate(point.q0, point.t0)
        if den == 0:
            from .qtcore import VanishingFactor
            raise VanishingFactor("oracle denominator vanishes at point")
        return self.rat.num.evaluate(point.q0, point.t0) / den


def _distinct_permutations(mu: Partition, n: int):
    base = mu.parts + (0,) * (n - mu.length())
    return set(itertools.permutations(base))


def m_coeffs_of(poly: SymPoly) -> dict[Partition, RatFunc]:
    return {mu: RatFunc.from_qtcoeff(c) for mu, c in poly.m_expansion().items()}


def orthonormality_check(lam: Partition, mu: Partition, n: int) -> bool:
    """<P_lam, Q_mu> = delta via power-sum expansion (needs n >= degrees)."""
    if lam.weight() != mu.weight():
        return True  # different degrees are orthogonal for free
    d = lam.weight()
    if d == 0:
        return True
    val = scalar_product(m_coeffs_of(macdonald_p(lam, n)),
                         m_coeffs_of(macdonald_q(mu, n)), d)
    target = RF_ONE if lam == mu else RF_ZERO
    return val.equals(target)


# ---------------------------------------------------------------------------
# Series-level identity checks (Cauchy kernel, Pieri, branching, the skew
# interchange lemma, the generalized MacMahon formula and Warnaar's sums).
# ---------------------------------------------------------------------------

def _group_varset(groups: list[tuple[str, int]]) -> tuple[VarSet, dict[str, list[int]]]:
    """Build a VarSet from named groups, e.g. [("x", 2), ("y", 3)]."""
    names, slots = [], {}
    for prefix, size in groups:
        slots[prefix] = list(range(len(names), len(names) + size))
        names.extend(f"{prefix}{i + 1}" for i in range(size))
    return VarSet(names), slots


def inject_sympoly(poly: SymPoly, slot: list[int], varset: VarSet,
                   trunc: int, ring: CoeffRing) -> MultiSeries:
    """Place a SymPoly on the chosen variable positions of a larger VarSet."""
    assert poly.n == len(slot)
    out = MultiSeries(varset, trunc, ring)
    nvars = len(varset)
    for exps, c in poly.coeffs.items():
        mono = [0] * nvars
        for pos, e in zip(slot, exps):
            mono[pos] = e
        out.add_term(tuple(mono), c)
    return out


def _product_series(factors, varset, trunc, ring) -> MultiSeries:
    """Product of (SymPoly, slot) pairs as a truncated series."""
    out = MultiSeries.constant(1, varset, trunc, ring)
    for poly, slot in factors:
        out = out * inject_sympoly(poly, slot, varset, trunc, ring)
        if out.is_zero():
            break
    return out


def _kernel_series(xs: list[int], ys: list[int], varset, trunc, ring) -> MultiSeries:
    """Pi(x; y) = prod F(x_i y_j) truncated."""
    out = MultiSeries.constant(1, varset, trunc, ring)
    for i in xs:
        for j in ys:
            mono = [0] * len(varset)
            mono[i] += 1
            mono[j] += 1
            out = out * series_f(tuple(mono), varset, trunc, ring)
    return out


def cauchy_check(n: int, m: int, trunc: int, ring: CoeffRing = EXACT):
    """sum_lam P_lam(x) Q_lam(y) = prod F(x_i y_j), truncated."""
    varset, slots = _group_varset([("x", n), ("y", m)])
    lhs = MultiSeries(varset, trunc, ring)
    for lam in partitions_up_to(trunc, max_length=min(n, m)):
        contrib = _product_series(
            [(macdonald_p(lam, n), slots["x"]), (macdonald_q(lam, m), slots["y"])],
            varset, trunc, ring)
        md = contrib.min_total_degree()
        if md is not None:
            assert md >= lam.weight()  # so summing |lam| <= trunc is enough
        lhs = lhs + contrib
    rhs = _kernel_series(slots["x"], slots["y"], varset, trunc, ring)
    return series_equals(lhs, rhs)


def pieri_check(mu: Partition, r: int, n: int, kind: str):
    """Expand P_mu g_r (phi) or Q_mu g_r (psi) and compare Pieri coefficients."""
    if mu.length() > n:
        raise ValueError("need l(mu) <= n")
    d = mu.weight() + r
    if kind == "phi":
        prod = macdonald_p(mu, n) * g_r(r, n)
        coeffs = expand_in_p(prod, d, n)
        reference = phi_skew
    elif kind == "psi":
        prod = macdonald_q(mu, n) * g_r(r, n)
        p_coeffs = expand_in_p(prod, d, n)
        coeffs = {lam: c.mul_qtf(b_lambda(lam).inverse())
                  for lam, c in p_coeffs.items()}
        reference = psi_skew
    else:
        raise ValueError(f"unknown Pieri kind {kind!r}")
    strips = set(horizontal_strips_above(mu, r, n))
    for lam in partitions_of(d, None, n):
        expected = reference(lam, mu) if lam in strips else QTFactored.zero()
        got = coeffs.get(lam, QTCoeff.zero())
        if not got.equals(QTCoeff.from_qtf(expected)):
            return False, {"lam": str(lam), "mu": str(mu), "r": r, "kind": kind}
    return True, None


def branching_check(lam: Partition, nx: int, nz: int):
    """P_lam(x, z) = sum_mu P_{lam/mu}(x) P_mu(z), and the Q analogue."""
    n = nx + nz
    for skew, label in ((skew_p, "P"), (skew_q, "Q")):
        whole = skew(lam, EMPTY, n)
        total = SymPoly.zero(n)
        for d in range(lam.weight() + 1):
            for mu in partitions_of(d):
                if not lam.contains(mu):
                    continue
                outer = skew(lam, mu, nx)
                inner = skew(mu, EMPTY, nz)
                if outer.is_zero() or inner.is_zero():
                    continue
                for e1, c1 in outer.coeffs.items():
                    for e2, c2 in inner.coeffs.items():
                        total.add_term(e1 + e2, c1 * c2)
        if not whole.equals(total):
            return False, {"lam": str(lam), "basis": label}
    return True, None


def qp_lemma_check(mu: Partition, nu: Partition, nx: int, ny: int, trunc: int,
                   ring: CoeffRing = EXACT):
    """sum_lam Q_{lam/mu}(x) P_{lam/nu}(y) = Pi(x;y) sum_tau Q_{nu/tau}(x) P_{mu/tau}(y)."""
    varset, slots = _group_varset([("x", nx), ("y", ny)])
    lhs = MultiSeries(varset, trunc, ring)
    max_weight = (trunc + mu.weight() + nu.weight()) // 2
    for w in range(max_weight + 1):
        for lam in partitions_of(w):
            if not (lam.contains(mu) and lam.contains(nu)):
                continue
            if (lam.weight() - mu.weight()) + (lam.weight() - nu.weight()) > trunc:
                continue
            contrib = _product_series(
                [(skew_q(lam, mu, nx), slots["x"]), (skew_p(lam, nu, ny), slots["y"])],
                varset, trunc, ring)
            md = contrib.min_total_degree()
            if md is not None:
                assert md >= (lam.weight() - mu.weight()) + (lam.weight() - nu.weight())
            lhs = lhs + contrib
    tau_sum = MultiSeries(varset, trunc, ring)
    for w in range(min(mu.weight(), nu.weight()) + 1):
        for tau in partitions_of(w):
            if not (mu.contains(tau) and nu.contains(tau)):
                continue
            tau_sum = tau_sum + _product_series(
                [(skew_q(nu, tau, nx), slots["x"]), (skew_p(mu, tau, ny), slots["y"])],
                varset, trunc, ring)
    rhs = _kernel_series(slots["x"], slots["y"], varset, trunc, ring) * tau_sum
    return series_equals(lhs, rhs)


def gmacmahon_check(t_steps: int, mu0: Partition, muT: Partition,
                    var_sizes: tuple[list[int], list[int]], trunc: int,
                    ring: CoeffRing = EXACT):
    """The generalized MacMahon formula over up-down chains of partitions.

    var_sizes is ([|x^0|, ..., |x^(T-1)|], [|y^1|, ..., |y^T|]).
    """
    x_sizes, y_sizes = var_sizes
    assert len(x_sizes) == t_steps and len(y_sizes) == t_steps
    groups = [(f"x{i}_", x_sizes[i]) for i in range(t_steps)]
    groups += [(f"y{j}_", y_sizes[j - 1]) for j in range(1, t_steps + 1)]
    varset, slots = _group_varset(groups)
    xslot = lambda i: slots[f"x{i}_"]
    yslot = lambda j: slots[f"y{j}_"]

    lhs = MultiSeries(varset, trunc, ring)

    def walk(i, prev_mu, used, factors):
        nonlocal lhs
        if i > t_steps:
            lhs = lhs + _product_series(factors, varset, trunc, ring)
            return
        top = muT if i == t_steps else None
        for w in range(prev_mu.weight(), prev_mu.weight() + (trunc - used) + 1):
            for lam in partitions_of(w):
                if not lam.contains(prev_mu):
                    continue
                if top is not None and not lam.contains(top):
                    continue
                cost_up = lam.weight() - prev_mu.weight()
                fac_up = (skew_q(lam, prev_mu, len(xslot(i - 1))), xslot(i - 1))
                if i == t_steps:
                    cost_down = lam.weight() - muT.weight()
                    if used + cost_up + cost_down > trunc:
                        continue
                    fac_down = (skew_p(lam, muT, len(yslot(i))), yslot(i))
                    walk(i + 1, muT, used + cost_up + cost_down,
                         factors + [fac_up, fac_down])
                else:
                    for wd in range(lam.weight() + 1):
                        for mu in partitions_of(wd):
                            if not lam.contains(mu):
                                continue
                            cost_down = lam.weight() - mu.weight()
                            if used + cost_up + cost_down > trunc:
                                continue
                            fac_down = (skew_p(lam, mu, len(yslot(i))), yslot(i))
                            walk(i + 1, mu, used + cost_up + cost_down,
                                 factors + [fac_up, fac_down])

    walk(1, mu0, 0, [])

    rhs_kernel = MultiSeries.constant(1, varset, trunc, ring)
    for i in range(t_steps):
        for j in range(i + 1, t_steps + 1):
            rhs_kernel = rhs_kernel * _kernel_series(xslot(i), yslot(j),
                                                     varset, trunc, ring)
    all_x = [p for i in range(t_steps) for p in xslot(i)]
    all_y = [p for j in range(1, t_steps + 1) for p in yslot(j)]
    nu_sum = MultiSeries(varset, trunc, ring)
    for w in range(min(mu0.weight(), muT.weight()) + 1):
        for nu in partitions_of(w):
            if not (mu0.contains(nu) and muT.contains(nu)):
                continue
            nu_sum = nu_sum + _product_series(
                [(skew_q(muT, nu, len(all_x)), all_x),
                 (skew_p(mu0, nu, len(all_y)), all_y)],
                varset, trunc, ring)
    rhs = rhs_kernel * nu_sum
    return series_equals(lhs, rhs)


def partition_sum_check(eps: tuple[int, ...], lam0: Partition, lamN: Partition,
                        var_sizes: list[int], trunc: int,
                        ring: CoeffRing = EXACT):
    """Both bracket-product partition sums against their kernel forms."""
    n = len(eps)
    assert len(var_sizes) == n and n >= 1
    groups = [(f"x{i}_", var_sizes[i - 1]) for i in range(1, n + 1)]
    varset, slots = _group_varset(groups)
    slot = lambda i: slots[f"x{i}_"]

    def bracket_factor(kind, prev, cur, i):
        """P^eps or Q^eps bracket on the i-th variable group."""
        if eps[i - 1] == +1:
            outer, inner = prev, cur
            use_p = (kind == "P")
        else:
            outer, inner = cur, prev
            use_p = (kind != "P")
        skew = skew_p if use_p else skew_q
        return (skew(outer, inner, len(slot(i))), slot(i))

    results = []
    for kind in ("P", "Q"):
        lhs = MultiSeries(varset, trunc, ring)

        def walk(i, prev, used, factors):
            nonlocal lhs
            if i > n:
                lhs = lhs + _product_series(factors, varset, trunc, ring)
                return
            target = lamN if i == n else None
            if eps[i - 1] == +1:
                candidates = [p for w in range(prev.weight() + 1)
                              for p in partitions_of(w) if prev.contains(p)]
            else:
                candidates = [p for w in range(prev.weight(),
                                               prev.weight() + trunc - used + 1)
                              for p in partitions_of(w) if p.contains(prev)]
            for cur in candidates:
                if target is not None and cur != target:
                    continue
                cost = abs(cur.weight() - prev.weight())
                if used + cost > trunc:
                    continue
                walk(i + 1, cur, used + cost,
                     factors + [bracket_factor(kind, prev, cur, i)])

        walk(1, lam0, 0, [])

        kernel = MultiSeries.constant(1, varset, trunc, ring)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if eps[i - 1] == -1 and eps[j - 1] == +1:
                    kernel = kernel * _kernel_series(slot(i), slot(j),
                                                     varset, trunc, ring)
        minus = [p for i in range(1, n + 1) if eps[i - 1] == -1 for p in slot(i)]
        plus = [p for i in range(1, n + 1) if eps[i - 1] == +1 for p in slot(i)]
        nu_sum = MultiSeries(varset, trunc, ring)
        for w in range(min(lam0.weight(), lamN.weight()) + 1):
            for nu in partitions_of(w):
                if not (lam0.contains(nu) and lamN.contains(nu)):
                    continue
                if kind == "P":
                    fs = [(skew_q(lamN, nu, len(minus)), minus),
                          (skew_p(lam0, nu, len(plus)), plus)]
                else:
                    fs = [(skew_p(lamN, nu, len(minus)), minus),
                          (skew_q(lam0, nu, len(plus)), plus)]
                nu_sum = nu_sum + _product_series(fs, varset, trunc, ring)
        rhs = kernel * nu_sum
        ok, mismatch = series_equals(lhs, rhs)
        results.append((ok, mismatch, kind))
    for ok, mismatch, kind in results:
        if not ok:
            return False, {"bracket": kind, **mismatch}
    return True, None


def _oa_diagonal_coeff(k: int) -> QTFactored:
    """Degree-2k coefficient of (qt x^2; q^2)_inf / (x^2; q^2)_inf."""
    out = QTFactored.one()
    for j in range(k):
        out = out * QTFactored.binomial(2 * j + 1, 1)      # 1 - qt q^{2j}
        out = out * QTFactored.binomial(2 * j + 2, 0, -1)  # 1 / (1 - q^{2j+2})
    return out


def warnaar_check(variant: str, n: int, trunc: int, with_w: bool = True,
                  ring: CoeffRing = EXACT):
    """Warnaar-type lambda sums against their product sides.

    variant: "oa" (odd arms, w^{r(lam)}), "el" (even legs, w^{r(lam')}),
    "odd" (w^{(|lam|+r(lam'))/2}) or "even" (w^{(|lam|-r(lam'))/2}).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    groups = ([("w", 1)] if with_w else []) + [("x", n)]
    varset, slots = _group_varset(groups)
    xs = slots["x"]

    def w_exponent(lam: Partition) -> int:
        if variant == "oa":
            return lam.odd_rows()
        if variant == "el":
            return lam.odd_columns()
        if variant == "odd":
            return (lam.weight() + lam.odd_columns()) // 2
        if variant == "even":
            return (lam.weight() - lam.odd_columns()) // 2
        raise ValueError(f"unknown variant {variant!r}")

    b_fun = b_oa if variant == "oa" else b_el

    lhs = MultiSeries(varset, trunc, ring)
    for lam in partitions_up_to(trunc, max_length=n):
        term = inject_sympoly(macdonald_p(lam, n), xs, varset, trunc, ring)
        term = term.scale(b_fun(lam))
        if with_w:
            shift = [0] * len(varset)
            shift[slots["w"][0]] = w_exponent(lam)
            term = term.shift_monomial(tuple(shift))
        lhs = lhs + term

    def mono(parts_list):
        m = [0] * len(varset)
        for p in parts_list:
            m[p] += 1
        return tuple(m)

    w_slot = slots["w"] if with_w else []
    rhs = MultiSeries.constant(1, varset, trunc, ring)
    if variant == "oa":
        for i in xs:
            # (1 + w x_i) * (qt x_i^2; q^2)_inf / (x_i^2; q^2)_inf
            diag = MultiSeries(varset, trunc, ring)
            k = 0
            while 2 * k <= trunc:
                diag.add_term(mono([i] * (2 * k)), _oa_diagonal_coeff(k))
                k += 1
            lin = MultiSeries.constant(1, varset, trunc, ring)
            lin.add_term(mono(w_slot + [i]), QTFactored.one())
            rhs = rhs * diag * lin
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                rhs = rhs * series_f(mono([xs[a], xs[b]]), varset, trunc, ring)
    else:
        if variant == "el":
            single = [mono(w_slot + [i]) for i in xs]
            pair_w = []
        elif variant == "odd":
            single = [mono(w_slot + [i]) for i in xs]
            pair_w = w_slot
        else:  # even
            single = [mono([i]) for i in xs]
            pair_w = w_slot
        for m in single:
            rhs = rhs * series_f(m, varset, trunc, ring)
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                rhs = rhs * series_f(mono(list(pair_w) + [xs[a], xs[b]]),
                                     varset, trunc, ring)
    return series_equals(lhs, rhs)
