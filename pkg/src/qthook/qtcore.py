"""Exact arithmetic in the field Q(q, t) tuned for products of (1 - q^a t^b).

Every weight and coefficient formula in this package is a product of factors
(1 - q^a t^b)^(+-1) times a rational scalar, so the primary value type
``QTFactored`` keeps that factored shape: multiplication and division are
dictionary merges and never expand anything.  Equality testing expands to
bivariate polynomials (``BiPoly``) and cross-multiplies, or evaluates both
sides at rational sample points.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition

ZERO = Fraction(0)
ONE = Fraction(1)


class BiPoly:
    """Sparse polynomial in q, t with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict (qdeg, tdeg) -> Fraction, zero coefficients dropped
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @staticmethod
    def const(c) -> "BiPoly":
        c = Fraction(c)
        return BiPoly({(0, 0): c} if c else {})

    @staticmethod
    def monomial(c, a: int, b: int) -> "BiPoly":
        c = Fraction(c)
        return BiPoly({(a, b): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = BiPoly.__new__(BiPoly)
        res.terms = out
        return res

    def __neg__(self) -> "BiPoly":
        res = BiPoly.__new__(BiPoly)
        res.terms = {k: -v for k, v in self.terms.items()}
        return res

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = BiPoly.__new__(BiPoly)
        res.terms = out
        return res

    def scale(self, c) -> "BiPoly":
        c = Fraction(c)
        if not c:
            return BiPoly()
        res = BiPoly.__new__(BiPoly)
        res.terms = {k: v * c for k, v in self.terms.items()}
        return res

    def shift(self, a: int, b: int) -> "BiPoly":
        """Multiply by q^a t^b (a, b >= 0)."""
        if a == 0 and b == 0:
            return self
        res = BiPoly.__new__(BiPoly)
        res.terms = {(i + a, j + b): v for (i, j), v in self.terms.items()}
        return res

    def evaluate(self, q0: Fraction, t0: Fraction) -> Fraction:
        total = ZERO
        for (a, b), c in self.terms.items():
            total += c * q0 ** a * t0 ** b
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            mono = "".join(
                (f"q^{a}" if a > 1 else "q" if a == 1 else "",
                 f"t^{b}" if b > 1 else "t" if b == 1 else ""))
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append("-" + mono)
            else:
                bits.append(f"{c}*{mono}")
        out = bits[0]
        for piece in bits[1:]:
            out += ("+" + piece) if not piece.startswith("-") else piece
        return out

    __repr__ = __str__


BI_ONE = BiPoly.const(1)


@lru_cache(maxsize=None)
def _binomial_poly(a: int, b: int) -> BiPoly:
    """The polynomial 1 - q^a t^b."""
    return BiPoly({(0, 0): ONE, (a, b): -ONE})


@lru_cache(maxsize=None)
def _binomial_power(a: int, b: int, e: int) -> BiPoly:
    if e == 0:
        return BI_ONE
    return _binomial_power(a, b, e - 1) * _binomial_poly(a, b)


class VanishingFactor(Exception):
    """A factor (1 - q^a t^b) vanished at an evaluation point."""


class EvalPoint:
    """Exact rational sample point (q0, t0) for one-sided identity testing."""

    __slots__ = ("q0", "t0", "_cache")

    def __init__(self, q0, t0):
        q0, t0 = Fraction(q0), Fraction(t0)
        for v in (q0, t0):
            if v in (0, 1, -1) or abs(v) == 1:
                raise ValueError(f"degenerate evaluation coordinate {v}")
        self.q0 = q0
        self.t0 = t0
        self._cache = {}

    def __repr__(self):
        return f"EvalPoint({self.q0}, {self.t0})"

    def __eq__(self, other):
        return isinstance(other, EvalPoint) and (self.q0, self.t0) == (other.q0, other.t0)

    def __hash__(self):
        return hash((self.q0, self.t0))

    def factor_value(self, a: int, b: int) -> Fraction:
        v = self._cache.get((a, b))
        if v is None:
            v = 1 - self.q0 ** a * self.t0 ** b
            self._cache[(a, b)] = v
        if v == 0:
            raise VanishingFactor(f"(1 - q^{a} t^{b}) vanishes at {self}")
        return v


def sample_points(count: int, seed: int) -> list[EvalPoint]:
    """Deterministic evaluation points; numerators/denominators in 2..7.

    Points where some factor later vanishes are rejected by the caller
    (VanishingFactor) and replaced via ``next_point``.
    """
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        pts.append(_draw_point(rng))
    return pts


def _draw_point(rng: random.Random) -> EvalPoint:
    while True:
        qn, qd = rng.randint(2, 7), rng.randint(2, 7)
        tn, td = rng.randint(2, 7), rng.randint(2, 7)
        q0, t0 = Fraction(qn, qd), Fraction(tn, td)
        if q0 == 1 or t0 == 1 or q0 == t0:
            continue
        if q0 * t0 == 1:  # cheap guard against the most common vanishing q^a t^a = 1
            continue
        return EvalPoint(q0, t0)


def resample_point(seed: int, attempt: int) -> EvalPoint:
    """Replacement point when an earlier draw hit a vanishing factor."""
    return _draw_point(random.Random((seed, attempt)))


class QTFactored:
    """coeff * q^qexp * t^texp * prod (1 - q^a t^b)^e, all exact.

    The canonical zero has coeff == 0, empty factors and zero exponents.
    Factors are not irreducible, so multiset equality of factors is only a
    sufficient test; real equality goes through :func:`qt_equals`.
    """

    __slots__ = ("coeff", "qexp", "texp", "factors")

    def __init__(self, coeff=1, qexp=0, texp=0, factors=None):
        coeff = Fraction(coeff)
        if coeff == 0:
            self.coeff, self.qexp, self.texp, self.factors = ZERO, 0, 0, {}
            return
        self.coeff = coeff
        self.qexp = qexp
        self.texp = texp
        self.factors = {}
        for (a, b), e in (factors or {}).items():
            if e == 0:
                continue
            if a == 0 and b == 0:
                raise ValueError("factor (1 - q^0 t^0) is zero")
            self.factors[(a, b)] = e

    @staticmethod
    def zero() -> "QTFactored":
        return QTFactored(0)

    @staticmethod
    def one() -> "QTFactored":
        return QTFactored(1)

    @staticmethod
    def binomial(a: int, b: int, e: int = 1) -> "QTFactored":
        """(1 - q^a t^b)^e."""
        return QTFactored(1, 0, 0, {(a, b): e})

    def is_zero(self) -> bool:
        return self.coeff == 0

    def is_one(self) -> bool:
        return self.coeff == 1 and self.qexp == 0 and self.texp == 0 and not self.factors

    def __mul__(self, other: "QTFactored") -> "QTFactored":
        if self.coeff == 0 or other.coeff == 0:
            return QTFactored.zero()
        out = QTFactored.__new__(QTFactored)
        out.coeff = self.coeff * other.coeff
        out.qexp = self.qexp + other.qexp
        out.texp = self.texp + other.texp
        f = dict(self.factors)
        for k, e in other.factors.items():
            s = f.get(k, 0) + e
            if s:
                f[k] = s
            else:
                del f[k]
        out.factors = f
        return out

    def __truediv__(self, other: "QTFactored") -> "QTFactored":
        return self * other.inverse()

    def inverse(self) -> "QTFactored":
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of zero QTFactored")
        out = QTFactored.__new__(QTFactored)
        out.coeff = 1 / self.coeff
        out.qexp = -self.qexp
        out.texp = -self.texp
        out.factors = {k: -e for k, e in self.factors.items()}
        return out

    def __pow__(self, n: int) -> "QTFactored":
        if n < 0:
            return self.inverse() ** (-n)
        out = QTFactored.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "QTFactored":
        return QTFactored(self.coeff * Fraction(c), self.qexp, self.texp, self.factors)

    def num_den(self) -> tuple[BiPoly, BiPoly]:
        """Expand into a (numerator, denominator) pair of polynomials."""
        if self.coeff == 0:
            return BiPoly(), BI_ONE
        num = BiPoly.monomial(self.coeff, max(self.qexp, 0), max(self.texp, 0))
        den = BiPoly.monomial(1, max(-self.qexp, 0), max(-self.texp, 0))
        for (a, b), e in self.factors.items():
            if e > 0:
                num = num * _binomial_power(a, b, e)
            else:
                den = den * _binomial_power(a, b, -e)
        return num, den

    def evaluate(self, point: EvalPoint) -> Fraction:
        if self.coeff == 0:
            return ZERO
        val = self.coeff * point.q0 ** self.qexp * point.t0 ** self.texp
        for (a, b), e in self.factors.items():
            val *= point.factor_value(a, b) ** e
        return val

    def __eq__(self, other):
        if not isinstance(other, QTFactored):
            if other in (0, 1):
                other = QTFactored(other)
            else:
                return NotImplemented
        return qt_equals(self, other)

    def __hash__(self):
        raise TypeError("QTFactored is unhashable; compare via qt_equals")

    def __repr__(self):
        if self.coeff == 0:
            return "QTF(0)"
        bits = [str(self.coeff)]
        if self.qexp:
            bits.append(f"q^{self.qexp}")
        if self.texp:
            bits.append(f"t^{self.texp}")
        for (a, b), e in sorted(self.factors.items()):
            base = f"(1-q^{a}t^{b})"
            bits.append(base if e == 1 else f"{base}^{e}")
        return "QTF(" + "*".join(bits) + ")"


def qt_equals(x: QTFactored, y: QTFactored, mode: str = "exact",
              points: list[EvalPoint] | None = None, seed: int = 0) -> bool:
    """Decide x == y.

    Exact mode cross-multiplies expanded numerator/denominator pairs and is a
    decision procedure.  Eval mode compares values at every sample point
    (resampling a point when a factor vanishes there) and is one-sided:
    agreement everywhere reports equality.
    """
    if mode == "exact":
        # quick win: identical factored forms
        if (x.coeff == y.coeff and x.qexp == y.qexp and x.texp == y.texp
                and x.factors == y.factors):
            return True
        xn, xd = x.num_den()
        yn, yd = y.num_den()
        return xn * yd == yn * xd
    if mode == "eval":
        if not points:
            raise ValueError("eval mode requires at least one point")
        for idx, pt in enumerate(points):
            attempt = 0
            while True:
                try:
                    if x.evaluate(pt) != y.evaluate(pt):
                        return False
                    break
                except VanishingFactor:
                    attempt += 1
                    pt = resample_point(seed + idx, attempt)
        return True
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# The building-block functions of every weight formula.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _f_fun_cached(n: int, m: int) -> QTFactored:
    if n < 0:
        return QTFactored.zero()
    factors = {}

    def bump(a, b, e):
        k = (a, b)
        s = factors.get(k, 0) + e
        if s:
            factors[k] = s
        else:
            factors.pop(k, None)

    for k in range(n):
        bump(k, m + 1, +1)       # (1 - q^k t^(m+1))
        bump(k + 1, m, -1)       # 1 / (1 - q^(k+1) t^m)
    return QTFactored(1, 0, 0, factors)


def f_fun(n: int, m: int) -> QTFactored:
    """f(n; m) = (t^(m+1); q)_n / (q t^m; q)_n, and 0 for n < 0.

    The denominator (q t^m; q)_n is the corrected reading: the naive
    (t^m; q)_n is identically zero at m = 0, which would make every
    single-cell weight undefined.
    """
    if m < 0:
        raise ValueError("f(n; m) needs m >= 0")
    return _f_fun_cached(n, m)


def f_series_coeff(k: int) -> QTFactored:
    """Degree-k coefficient of F(x) = (tx; q)_inf / (x; q)_inf, i.e. f(k; 0)."""
    if k < 0:
        raise ValueError("series coefficient index must be >= 0")
    return f_fun(k, 0)


def b_cell(lam: Partition, i: int, j: int) -> QTFactored:
    """(1 - q^a t^(l+1)) / (1 - q^(a+1) t^l) for one cell."""
    a = lam.arm(i, j)
    l = lam.leg(i, j)
    return QTFactored.binomial(a, l + 1) * QTFactored.binomial(a + 1, l, -1)


def b_lambda(lam: Partition) -> QTFactored:
    out = QTFactored.one()
    for (i, j) in lam.cells():
        out = out * b_cell(lam, i, j)
    return out


def b_lambda_f_form(lam: Partition) -> QTFactored:
    """b_lambda as the double product of f-ratios over rows and gaps."""
    out = QTFactored.one()
    n = lam.length()
    for i in range(1, n + 1):
        for m in range(0, n - i + 1):
            out = out * f_fun(lam[i] - lam[i + m + 1], m)
            out = out / f_fun(lam[i] - lam[i + m], m)
    return out


def b_el(lam: Partition) -> QTFactored:
    """Product of b-cell factors over cells with even leg length."""
    out = QTFactored.one()
    for (i, j) in lam.cells():
        if lam.leg(i, j) % 2 == 0:
            out = out * b_cell(lam, i, j)
    return out


def b_el_f_form(lam: Partition) -> QTFactored:
    """b^el as the f-ratio product restricted to even gaps."""
    out = QTFactored.one()
    n = lam.length()
    for i in range(1, n + 1):
        for m in range(0, n - i + 1, 2):
            out = out * f_fun(lam[i] - lam[i + m + 1], m)
            out = out / f_fun(lam[i] - lam[i + m], m)
    return out


def b_oa(lam: Partition) -> QTFactored:
    """Product of b-cell factors over cells with odd arm length."""
    out = QTFactored.one()
    for (i, j) in lam.cells():
        if lam.arm(i, j) % 2 == 1:
            out = out * b_cell(lam, i, j)
    return out


def phi_skew(lam: Partition, mu: Partition) -> QTFactored:
    """Pieri coefficient phi_{lam/mu}; 0 when lam/mu is not a horizontal strip."""
    from .partitions import is_horizontal_strip

    if not (lam.contains(mu) and is_horizontal_strip(lam, mu)):
        return QTFactored.zero()
    out = QTFactored.one()
    n = lam.length()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = j - i
            out = out * f_fun(lam[i] - mu[j], m) * f_fun(mu[i] - lam[j + 1], m)
            out = out / (f_fun(lam[i] - lam[j], m) * f_fun(mu[i] - mu[j + 1], m))
    return out


def psi_skew(lam: Partition, mu: Partition) -> QTFactored:
    """Pieri coefficient psi_{lam/mu}; 0 when lam/mu is not a horizontal strip."""
    from .partitions import is_horizontal_strip

    if not (lam.contains(mu) and is_horizontal_strip(lam, mu)):
        return QTFactored.zero()
    out = QTFactored.one()
    n = mu.length()
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = j - i
            out = out * f_fun(lam[i] - mu[j], m) * f_fun(mu[i] - lam[j + 1], m)
            out = out / (f_fun(mu[i] - mu[j], m) * f_fun(lam[i] - lam[j + 1], m))
    return out
