"""Truncated formal power series in named commuting variables.

Coefficients are exact: in ``exact`` mode they are ratios of a bivariate
polynomial in (q, t) by a product of binomials (1 - q^a t^b) (``QTCoeff``);
in ``eval`` mode they are rational numbers obtained by evaluating every
factor at a fixed :class:`~qthook.qtcore.EvalPoint`.  Truncation is by total
degree across all variables, which matches the weight |pi| of a P-partition.
"""

from __future__ import annotations

from fractions import Fraction

from .qtcore import (
    BI_ONE,
    BiPoly,
    EvalPoint,
    QTFactored,
    _binomial_power,
    f_series_coeff,
)

ZERO = Fraction(0)


class QTCoeff:
    """num / (q^dq t^dt * prod (1 - q^a t^b)^e) with num an exact polynomial."""

    __slots__ = ("num", "dq", "dt", "den")

    def __init__(self, num: BiPoly, dq: int = 0, dt: int = 0, den=None):
        self.num = num
        self.dq = dq
        self.dt = dt
        self.den = {k: e for k, e in (den or {}).items() if e}
        if any(e < 0 for e in self.den.values()):
            raise ValueError("denominator exponents must be positive")

    @staticmethod
    def zero() -> "QTCoeff":
        return QTCoeff(BiPoly())

    @staticmethod
    def one() -> "QTCoeff":
        return QTCoeff(BI_ONE)

    @staticmethod
    def from_qtf(f: QTFactored) -> "QTCoeff":
        if f.is_zero():
            return QTCoeff.zero()
        num = BiPoly.monomial(f.coeff, max(f.qexp, 0), max(f.texp, 0))
        den = {}
        for (a, b), e in f.factors.items():
            if e > 0:
                num = num * _binomial_power(a, b, e)
            else:
                den[(a, b)] = -e
        return QTCoeff(num, max(-f.qexp, 0), max(-f.texp, 0), den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _den_poly(self) -> BiPoly:
        out = BiPoly.monomial(1, self.dq, self.dt)
        for (a, b), e in self.den.items():
            out = out * _binomial_power(a, b, e)
        return out

    def __add__(self, other: "QTCoeff") -> "QTCoeff":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        dq = max(self.dq, other.dq)
        dt = max(self.dt, other.dt)
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = max(den.get(k, 0), e)
        a = self.num.shift(dq - self.dq, dt - self.dt)
        for k, e in den.items():
            gap = e - self.den.get(k, 0)
            if gap:
                a = a * _binomial_power(*k, gap)
        b = other.num.shift(dq - other.dq, dt - other.dt)
        for k, e in den.items():
            gap = e - other.den.get(k, 0)
            if gap:
                b = b * _binomial_power(*k, gap)
        return QTCoeff(a + b, dq, dt, den)

    def __neg__(self) -> "QTCoeff":
        return QTCoeff(-self.num, self.dq, self.dt, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "QTCoeff") -> "QTCoeff":
        if self.is_zero() or other.is_zero():
            return QTCoeff.zero()
        den = dict(self.den)
        for k, e in other.den.items():
            den[k] = den.get(k, 0) + e
        return QTCoeff(self.num * other.num, self.dq + other.dq,
                       self.dt + other.dt, den)

    def mul_qtf(self, f: QTFactored) -> "QTCoeff":
        return self * QTCoeff.from_qtf(f)

    def equals(self, other: "QTCoeff") -> bool:
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return False
        return self.num * other._den_poly() == other.num * self._den_poly()

    def evaluate(self, point: EvalPoint) -> Fraction:
        val = self.num.evaluate(point.q0, point.t0)
        val /= point.q0 ** self.dq * point.t0 ** self.dt
        for (a, b), e in self.den.items():
            val /= point.factor_value(a, b) ** e
        return val

    def num_den_strings(self) -> tuple[str, str]:
        return str(self.num), str(self._den_poly())

    def __repr__(self):
        n, d = self.num_den_strings()
        return f"({n})/({d})" if d != "1" else f"({n})"


class CoeffRing:
    """Uniform coefficient operations for one series mode."""

    def __init__(self, mode: str, point: EvalPoint | None = None):
        if mode not in ("exact", "eval"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "eval" and point is None:
            raise ValueError("eval mode requires an EvalPoint")
        self.mode = mode
        self.point = point

    def from_qtf(self, f: QTFactored):
        if self.mode == "exact":
            return QTCoeff.from_qtf(f)
        return f.evaluate(self.point)

    def zero(self):
        return QTCoeff.zero() if self.mode == "exact" else ZERO

    def one(self):
        return QTCoeff.one() if self.mode == "exact" else Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def eq(self, a, b) -> bool:
        if self.mode == "exact":
            return a.equals(b)
        return a == b

    def is_zero(self, a) -> bool:
        if self.mode == "exact":
            return a.is_zero()
        return a == 0

    def coerce(self, c):
        """Accept QTFactored, QTCoeff, Fraction or int."""
        if isinstance(c, QTFactored):
            return self.from_qtf(c)
        if isinstance(c, QTCoeff):
            if self.mode == "exact":
                return c
            return c.evaluate(self.point)
        if self.mode == "eval":
            return Fraction(c)
        if isinstance(c, int):
            return QTCoeff.from_qtf(QTFactored(c))
        raise TypeError(f"cannot coerce {type(c)} into {self.mode} coefficients")

    def describe(self, a) -> str:
        if self.mode == "exact":
            n, d = a.num_den_strings()
            return f"({n})/({d})"
        return str(a)

    def same(self, other: "CoeffRing") -> bool:
        return self.mode == other.mode and self.point == other.point


class VarSet:
    """Ordered, unique variable names; fixes the monomial encoding."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarSet{self.names}"

    def monomial(self, exps: dict[str, int]) -> tuple[int, ...]:
        v = [0] * len(self.names)
        for name, e in exps.items():
            v[self.index[name]] += e
        return tuple(v)

    def unit(self) -> tuple[int, ...]:
        return (0,) * len(self.names)


def total_degree(mono: tuple[int, ...]) -> int:
    return sum(mono)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_pow(a, k: int):
    return tuple(x * k for x in a)


def mono_str(mono, varset: VarSet) -> str:
    bits = [f"{n}^{e}" if e > 1 else n
            for n, e in zip(varset.names, mono) if e]
    return "*".join(bits) if bits else "1"


class MultiSeries:
    """Power series truncated at total degree D with exact coefficients."""

    __slots__ = ("varset", "trunc", "ring", "terms")

    def __init__(self, varset: VarSet, trunc: int, ring: CoeffRing, terms=None):
        self.varset = varset
        self.trunc = trunc
        self.ring = ring
        self.terms = {}
        for mono, c in (terms or {}).items():
            if total_degree(mono) > trunc or ring.is_zero(c):
                continue
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in stored monomial {mono}")
            self.terms[mono] = c

    @staticmethod
    def constant(c, varset: VarSet, trunc: int, ring: CoeffRing) -> "MultiSeries":
        c = ring.coerce(c)
        s = MultiSeries(varset, trunc, ring)
        if not ring.is_zero(c):
            s.terms[varset.unit()] = c
        return s

    def _check_compatible(self, other: "MultiSeries"):
        if self.varset != other.varset:
            raise ValueError("variable set mismatch")
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")
        if not self.ring.same(other.ring):
            raise ValueError("coefficient mode mismatch")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        ring = self.ring
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = ring.add(out.get(mono, ring.zero()), c)
            if ring.is_zero(s):
                out.pop(mono, None)
            else:
                out[mono] = s
        res = MultiSeries(self.varset, self.trunc, ring)
        res.terms = out
        return res

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + other.scale(-1)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_compatible(other)
        ring = self.ring
        out = {}
        for m1, c1 in self.terms.items():
            d1 = total_degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + total_degree(m2) > self.trunc:
                    continue
                k = mono_mul(m1, m2)
                prod = ring.mul(c1, c2)
                if k in out:
                    s = ring.add(out[k], prod)
                    if ring.is_zero(s):
                        del out[k]
                    else:
                        out[k] = s
                elif not ring.is_zero(prod):
                    out[k] = prod
        res = MultiSeries(self.varset, self.trunc, ring)
        res.terms = out
        return res

    def scale(self, c) -> "MultiSeries":
        ring = self.ring
        c = ring.coerce(c)
        res = MultiSeries(self.varset, self.trunc, ring)
        if ring.is_zero(c):
            return res
        res.terms = {m: ring.mul(v, c) for m, v in self.terms.items()}
        return res

    def add_term(self, mono, c):
        """Accumulate c * x^mono in place (trusted internal constructor)."""
        ring = self.ring
        if total_degree(mono) > self.trunc:
            return
        c = ring.coerce(c)
        s = ring.add(self.terms.get(mono, ring.zero()), c)
        if ring.is_zero(s):
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = s

    def shift_monomial(self, shift: tuple[int, ...]) -> "MultiSeries":
        """Multiply by x^shift where shift may have negative entries.

        Every shifted monomial must come out nonnegative; used for the
        Laurent prefactors that are provably cleared by the series part.
        """
        res = MultiSeries(self.varset, self.trunc, self.ring)
        for mono, c in self.terms.items():
            new = mono_mul(mono, shift)
            if any(e < 0 for e in new):
                raise ValueError(f"monomial shift {shift} drives {mono} negative")
            if total_degree(new) <= self.trunc:
                res.terms[new] = c
        return res

    def min_total_degree(self):
        return min((total_degree(m) for m in self.terms), default=None)

    def truncated(self, new_trunc: int) -> "MultiSeries":
        """Copy with a different degree bound (dropping higher terms)."""
        res = MultiSeries(self.varset, new_trunc, self.ring)
        res.terms = {m: c for m, c in self.terms.items()
                     if total_degree(m) <= new_trunc}
        return res

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(mono, self.ring.zero())

    def evaluate_exact_at(self, point: EvalPoint) -> "MultiSeries":
        """Project an exact-mode series to eval mode at the given point."""
        if self.ring.mode != "exact":
            raise ValueError("only exact-mode series can be projected")
        ring = CoeffRing("eval", point)
        res = MultiSeries(self.varset, self.trunc, ring)
        for mono, c in self.terms.items():
            v = c.evaluate(point)
            if v:
                res.terms[mono] = v
        return res

    def to_json(self) -> dict:
        terms = []
        for mono in sorted(self.terms):
            c = self.terms[mono]
            if self.ring.mode == "exact":
                num, den = c.num_den_strings()
            else:
                frac = Fraction(c)
                num, den = str(frac.numerator), str(frac.denominator)
            terms.append({"exps": list(mono), "num": num, "den": den})
        return {
            "vars": list(self.varset.names),
            "truncation": self.trunc,
            "mode": self.ring.mode,
            "terms": terms,
        }

    def __repr__(self):
        bits = [f"{self.ring.describe(c)}*{mono_str(m, self.varset)}"
                for m, c in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "0"


def series_f(mono: tuple[int, ...], varset: VarSet, trunc: int,
             ring: CoeffRing) -> MultiSeries:
    """F(x) = (tx; q)_inf / (x; q)_inf at x = the given monomial, truncated.

    Expanded through its binomial coefficients f(k; 0).
    """
    deg = total_degree(mono)
    if deg < 1:
        raise ValueError("series_f needs a monomial of degree >= 1")
    if any(e < 0 for e in mono):
        raise ValueError("series_f needs nonnegative exponents")
    res = MultiSeries(varset, trunc, ring)
    k = 0
    while k * deg <= trunc:
        res.add_term(mono_pow(mono, k), ring.from_qtf(f_series_coeff(k)))
        k += 1
    return res


def product_of_f(monos, varset: VarSet, trunc: int, ring: CoeffRing) -> MultiSeries:
    """prod_m F(x^m) truncated; the right-hand side shape of every hook formula."""
    out = MultiSeries.constant(1, varset, trunc, ring)
    for m in monos:
        out = out * series_f(m, varset, trunc, ring)
    return out


def substitute_monomials(poly: dict, images: list[tuple[int, ...]],
                         varset: VarSet, trunc: int, ring: CoeffRing) -> MultiSeries:
    """Substitute variable i of a polynomial by the monomial images[i].

    ``poly`` maps exponent vectors (over its own variables) to QTFactored or
    QTCoeff coefficients.  Image monomials must be nonnegative of degree >= 1.
    """
    for img in images:
        if total_degree(img) < 1 or any(e < 0 for e in img):
            raise ValueError(f"bad substitution image {img}")
    res = MultiSeries(varset, trunc, ring)
    for exps, c in poly.items():
        mono = varset.unit()
        for e, img in zip(exps, images):
            if e:
                mono = mono_mul(mono, mono_pow(img, e))
        res.add_term(mono, c)
    return res


def series_equals(a: MultiSeries, b: MultiSeries):
    """Compare two series; on inequality report the lex-first differing monomial.

    Returns (equal, mismatch) where mismatch is None or a dict with the
    monomial and both coefficient strings.
    """
    a._check_compatible(b)
    ring = a.ring
    monos = sorted(set(a.terms) | set(b.terms))
    for mono in monos:
        ca = a.coefficient(mono)
        cb = b.coefficient(mono)
        if not ring.eq(ca, cb):
            return False, {
                "monomial": mono_str(mono, a.varset),
                "lhs": ring.describe(ca),
                "rhs": ring.describe(cb),
            }
    return True, None
