"""Terminating basic hypergeometric series over exact rationals.

Everything here is a finite sum of exact rational terms: q-shifted
factorials, the r+1_phi_r series, very-well-poised W series evaluated
through their square-root-free per-term form, Gasper's transformation, and
the two summation identities that close the hook-formula proof.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .partitions import Partition
from .qtcore import b_el, b_lambda, f_fun, qt_equals
from .report import VerificationReport, timed
from .series import QTCoeff

TERM_CAP = 512


class DegenerateDraw(Exception):
    """A random parameter draw hit a pole or lost its termination witness."""


def q_poch(a: Fraction, q: Fraction, n: int) -> Fraction:
    """(a; q)_n for any integer n, via the finite-product reading."""
    a, q = Fraction(a), Fraction(q)
    if n >= 0:
        out = Fraction(1)
        for k in range(n):
            out *= 1 - a * q ** k
        return out
    out = Fraction(1)
    for k in range(1, -n + 1):
        factor = 1 - a * q ** -k
        if factor == 0:
            raise ZeroDivisionError(f"(a;q)_{n} hits a vanishing factor")
        out /= factor
    return out


def _termination_bound(uppers, q, cap=TERM_CAP):
    """Smallest n with some upper equal to q^-n, or None."""
    best = None
    for a in uppers:
        if a == 0:
            continue
        val = Fraction(a)
        for n in range(cap + 1):
            if val * q ** n == 1:
                best = n if best is None else min(best, n)
                break
    return best


def is_balanced(uppers, lowers, q, z) -> bool:
    """q * prod(uppers) == prod(lowers) and z == q."""
    prod_u = Fraction(1)
    for a in uppers:
        prod_u *= Fraction(a)
    prod_l = Fraction(1)
    for b in lowers:
        prod_l *= Fraction(b)
    return Fraction(q) * prod_u == prod_l and Fraction(z) == Fraction(q)


def phi_series(uppers, lowers, q, z, term_cap: int | None = None) -> Fraction:
    """Terminating r+1_phi_r as an exact rational number."""
    q, z = Fraction(q), Fraction(z)
    bound = _termination_bound(uppers, q)
    if bound is None:
        if term_cap is None:
            raise DegenerateDraw("no termination witness q^-n among uppers")
        bound = term_cap
    total = Fraction(0)
    term = Fraction(1)
    for n in range(bound + 1):
        total += term
        ratio = z / (1 - q ** (n + 1))
        for a in uppers:
            ratio *= 1 - Fraction(a) * q ** n
        for b in lowers:
            den = 1 - Fraction(b) * q ** n
            if den == 0:
                raise DegenerateDraw(f"lower parameter pole at step {n}")
            ratio /= den
        term *= ratio
    return total


def w_series(a1, tail, q, z, term_cap: int | None = None) -> Fraction:
    """Very-well-poised series by its square-root-free per-term form.

    tail entries are ("plain", a) for an ordinary parameter a, or
    ("sqrtpair", v) standing for the pair (+v^(1/2), -v^(1/2)); a pair
    contributes (v; q^2)_n / (q^2 a1^2 / v; q^2)_n per term.
    """
    a1, q, z = Fraction(a1), Fraction(q), Fraction(z)
    if a1 == 1:
        raise DegenerateDraw("a1 = 1 degenerates the W prefactor")
    plains = [Fraction(v) for kind, v in tail if kind == "plain"]
    pairs = [Fraction(v) for kind, v in tail if kind == "sqrtpair"]
    bound = _termination_bound(plains, q)
    if bound is None:
        bound = _termination_bound(pairs, q * q)
        if bound is None:
            if term_cap is None:
                raise DegenerateDraw("no termination witness in W tail")
            bound = term_cap
    q2 = q * q
    total = Fraction(0)
    for n in range(bound + 1):
        term = (1 - a1 * q ** (2 * n)) / (1 - a1)
        term *= q_poch(a1, q, n) / q_poch(q, q, n)
        for a in plains:
            den = q_poch(q * a1 / a, q, n)
            if den == 0:
                raise DegenerateDraw("W lower parameter pole")
            term *= q_poch(a, q, n) / den
        for v in pairs:
            den = q_poch(q2 * a1 * a1 / v, q2, n)
            if den == 0:
                raise DegenerateDraw("W pair parameter pole")
            term *= q_poch(v, q2, n) / den
        total += term * z ** n
    return total


def w_series_phi_form(a1, tail, q, z) -> Fraction:
    """The W series through its phi definition; needs exact square roots.

    Shares the per-term form's termination bound so that the two evaluations
    sum the same index range; 0/0 collisions inside the range surface as
    DegenerateDraw through the lower-pole check.
    """
    q = Fraction(q)
    plains = [Fraction(v) for kind, v in tail if kind == "plain"]
    pairs = [Fraction(v) for kind, v in tail if kind == "sqrtpair"]
    bound = _termination_bound(plains, q)
    if bound is None:
        bound = _termination_bound(pairs, q * q)
    if bound is None:
        raise DegenerateDraw("no termination witness in W tail")
    s = _exact_sqrt(a1)
    uppers = [Fraction(a1), q * s, -q * s]
    lowers = [s, -s]
    for kind, v in tail:
        if kind == "plain":
            uppers.append(Fraction(v))
            lowers.append(q * Fraction(a1) / Fraction(v))
        else:
            u = _exact_sqrt(v)
            uppers.extend([u, -u])
            lowers.extend([q * Fraction(a1) / u, -q * Fraction(a1) / u])
    return _phi_partial(uppers, lowers, q, Fraction(z), bound)


def _phi_partial(uppers, lowers, q, z, bound: int) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    for n in range(bound + 1):
        total += term
        ratio = z / (1 - q ** (n + 1))
        for a in uppers:
            ratio *= 1 - Fraction(a) * q ** n
        for b in lowers:
            den = 1 - Fraction(b) * q ** n
            if den == 0:
                raise DegenerateDraw(f"lower parameter pole at step {n}")
            ratio /= den
        term *= ratio
    return total


def _exact_sqrt(v) -> Fraction:
    v = Fraction(v)
    if v < 0:
        raise DegenerateDraw("negative value has no rational square root")
    from math import isqrt

    num, den = isqrt(v.numerator), isqrt(v.denominator)
    if num * num != v.numerator or den * den != v.denominator:
        raise DegenerateDraw(f"{v} has no exact rational square root")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# Gasper's transformation.
# ---------------------------------------------------------------------------

def _is_neg_q_power(x, q, cap: int) -> bool:
    x = Fraction(x)
    if x == 0:
        return False
    for j in range(cap + 1):
        if x * q ** j == 1:
            return True
    return False


def gasper_both_sides(a, b, d, q, n: int, perturb: Fraction = Fraction(1)):
    """(lhs, rhs) of Gasper's identity with c = q^-n; raises DegenerateDraw.

    Draws where a parameter other than c is an exact q^-j (so that one side
    truncates earlier than the other, or a lower parameter hits a pole) are
    rejected for resampling.
    """
    a, b, d, q = (Fraction(v) for v in (a, b, d, q))
    if 0 in (a, b, d, q) or 1 in (abs(a), abs(q)):
        raise DegenerateDraw("degenerate core parameter")
    c = q ** (-n)
    a1_pre = b * c / d
    cap = 2 * n + 6
    side_params = [b * q / a, c * q / a, d * q / a,       # 4phi3 lowers
                   a, b, d,                               # 4phi3 uppers
                   a * b / d, a * c / d, a1_pre,          # W uppers
                   q * a1_pre / a, q * b / d, q * c / d, q * b / a]  # W lowers
    if any(_is_neg_q_power(x, q, cap) for x in side_params):
        raise DegenerateDraw("parameter collides with a q power")
    if _is_neg_q_power(b * c * q / (a * d), q * q, cap) or \
            _is_neg_q_power(q * q * a1_pre / a, q * q, cap) or \
            _is_neg_q_power(a * a1_pre, q * q, cap) or \
            _is_neg_q_power(q * a * a1_pre, q * q, cap):
        raise DegenerateDraw("pair parameter collides with a q^2 power")
    lhs = phi_series([a, b, c, d], [b * q / a, c * q / a, d * q / a],
                     q, q * q / (a * a))
    prefactor = (q_poch(c * q / d, q, n) * q_poch(a * b * c / d, q, n)
                 / (q_poch(a * c / d, q, n) * q_poch(b * c * q / d, q, n)))
    if prefactor == 0:
        raise DegenerateDraw("vanishing Gasper prefactor")
    a1 = b * c / d
    # the second pair is +-q (bc/(ad))^(1/2): the printed q (bc/d)^(1/2)
    # breaks the very-well-poised pairing x <-> q a1 / x and the identity
    tail = [("sqrtpair", b * c * q / (a * d)),
            ("sqrtpair", q * q * a1 / a),
            ("plain", a * b / d),
            ("plain", a * c / d),
            ("plain", a),
            ("plain", b),
            ("plain", c)]
    rhs = perturb * prefactor * w_series(a1, tail, q, q / a)
    return lhs, rhs


def gasper_check(a, b, d, q, n: int) -> bool:
    lhs, rhs = gasper_both_sides(a, b, d, q, n)
    return lhs == rhs


def _draw_fraction(rng: random.Random) -> Fraction:
    v = Fraction(rng.randint(2, 9), rng.randint(2, 9))
    if rng.random() < 0.5:
        v = 1 / v
    return v


def gasper_sweep(trials: int, seed: int, max_n: int = 6,
                 perturb: Fraction = Fraction(1)) -> VerificationReport:
    """Seeded random sweep of Gasper's identity; exact equality each draw."""
    report = VerificationReport(check="gasper", mode="exact",
                                extra={"trials": trials, "seed": seed})
    rng = random.Random(seed)
    with timed(report):
        done = 0
        while done < trials:
            try:
                lhs, rhs = gasper_both_sides(
                    _draw_fraction(rng), _draw_fraction(rng),
                    _draw_fraction(rng), _draw_fraction(rng),
                    rng.randint(0, max_n), perturb)
            except (DegenerateDraw, ZeroDivisionError):
                continue
            if lhs != rhs:
                report.result = "fail"
                report.mismatch = {"trial": done, "lhs": str(lhs), "rhs": str(rhs)}
                break
            done += 1
    return report


# ---------------------------------------------------------------------------
# The summation identities behind the Final equations.
# ---------------------------------------------------------------------------

def _qsum(values) -> QTCoeff:
    total = QTCoeff.zero()
    for v in values:
        total = total + QTCoeff.from_qtf(v)
    return total


def _coeff_equal(lhs: QTCoeff, rhs: QTCoeff, mode: str = "exact",
                 points=None, seed: int = 0) -> bool:
    """Compare two summed coefficients, exactly or at sample points."""
    from .qtcore import VanishingFactor, resample_point

    if mode == "exact":
        return lhs.equals(rhs)
    if mode != "eval":
        raise ValueError(f"unknown mode {mode!r}")
    if not points:
        raise ValueError("eval mode requires at least one point")
    for idx, pt in enumerate(points):
        attempt = 0
        while True:
            try:
                if lhs.evaluate(pt) != rhs.evaluate(pt):
                    return False
                break
            except VanishingFactor:
                attempt += 1
                pt = resample_point(seed + idx, attempt)
    return True


def lemma_both_sides(m: int, k0: int, rho0: int, theta0: int, gamma: int):
    """Both sides of the single-step summation lemma as exact coefficients."""
    if not 0 <= k0 <= rho0 <= theta0:
        raise ValueError("need 0 <= k0 <= rho0 <= theta0")
    lhs_terms = []
    for rho in range(k0, rho0 + 1):
        theta = gamma + rho0 + theta0 - rho
        t = (f_fun(rho - k0, 0) * f_fun(theta - k0, m + 1)
             * f_fun(rho0 - rho, 0) * f_fun(theta0 - rho, m)
             * f_fun(theta - rho0, m) * f_fun(theta - theta0, 0)
             / (f_fun(theta - rho, m) * f_fun(theta - rho, m + 1)))
        lhs_terms.append(t)
    rhs_terms = []
    for k in range(0, rho0 - k0 + 1):
        rhs_terms.append(f_fun(rho0 - k0 - k, 0) * f_fun(theta0 - k0 - k, m)
                         * f_fun(k, 0) * f_fun(k + gamma, 0))
    return _qsum(lhs_terms), _qsum(rhs_terms)


def lemma_check(m, k0, rho0, theta0, gamma, mode: str = "exact",
                points=None) -> bool:
    lhs, rhs = lemma_both_sides(m, k0, rho0, theta0, gamma)
    return _coeff_equal(lhs, rhs, mode, points)


def _rho_chains(k0: int, rho0: int, n: int):
    """All (rho_1 >= ... >= rho_n) with k0 <= rho_n and rho_1 <= rho0."""
    if n == 0:
        return [[]]
    out = []

    def rec(i, prev, acc):
        if i > n:
            out.append(list(acc))
            return
        for v in range(k0, prev + 1):
            rec(i + 1, v, acc + [v])

    rec(1, rho0, [])
    return out


def general_both_sides(m: int, n: int, k0: int, rho0: int, theta0: int,
                       gamma: list[int]):
    """Both sides of the multi-step summation identity.

    The right-hand bound is read as sum k_i <= rho0 - k0 (the display's
    rho_{m+1} is undefined; the proof's final sum fixes the reading).
    """
    if not 0 <= k0 <= rho0 <= theta0:
        raise ValueError("need 0 <= k0 <= rho0 <= theta0")
    if len(gamma) != n:
        raise ValueError("gamma must have length n")
    lhs_terms = []
    for chain in _rho_chains(k0, rho0, n):
        rho = {0: rho0}
        theta = {0: theta0}
        for i in range(1, n + 1):
            rho[i] = chain[i - 1]
            theta[i] = gamma[i - 1] + theta[i - 1] + rho[i - 1] - rho[i]
        t = f_fun(rho[n] - k0, 0) * f_fun(theta[n] - k0, m + n)
        for i in range(1, n + 1):
            t = t * (f_fun(rho[i - 1] - rho[i], 0)
                     * f_fun(theta[i - 1] - rho[i], i + m - 1)
                     * f_fun(theta[i] - rho[i - 1], i + m - 1)
                     * f_fun(theta[i] - theta[i - 1], 0)
                     / (f_fun(theta[i] - rho[i], i + m - 1)
                        * f_fun(theta[i] - rho[i], i + m)))
        lhs_terms.append(t)
    rhs_terms = []
    for ks in _bounded_tuples(n, rho0 - k0):
        s = k0 + sum(ks)
        t = f_fun(rho0 - s, 0) * f_fun(theta0 - s, m)
        for i in range(1, n + 1):
            t = t * f_fun(ks[i - 1], 0) * f_fun(ks[i - 1] + gamma[i - 1], 0)
        rhs_terms.append(t)
    return _qsum(lhs_terms), _qsum(rhs_terms)


def _bounded_tuples(n: int, cap: int):
    if n == 0:
        return [[]]
    out = []
    for first in range(cap + 1):
        for rest in _bounded_tuples(n - 1, cap - first):
            out.append([first] + rest)
    return out


def general_check(m, n, k0, rho0, theta0, gamma, mode: str = "exact",
                  points=None) -> bool:
    lhs, rhs = general_both_sides(m, n, k0, rho0, theta0, gamma)
    return _coeff_equal(lhs, rhs, mode, points)


def birds_final_both_sides(rho0: int, theta0: int, f: int, r: list[int]):
    """Both sides of the birds-closing identity."""
    from .hookformula import phi_hat

    if not 0 <= rho0 <= theta0:
        raise ValueError("need 0 <= rho0 <= theta0")
    if len(r) != f:
        raise ValueError("r must have length f")
    lhs_terms = []
    for chain in _rho_chains(0, rho0, f):
        rho = {0: rho0}
        theta = {0: theta0}
        for i in range(1, f + 1):
            rho[i] = chain[i - 1]
            theta[i] = rho[i - 1] + theta[i - 1] + r[i - 1] - rho[i]
        lhs_terms.append(phi_hat(rho, theta, 0, f))
    rhs_terms = []
    boundary = (f_fun(rho0, 0) * f_fun(theta0, 1)).inverse()
    for ls in _bounded_tuples(f, rho0):
        l = sum(ls)
        t = f_fun(rho0 - l, 0) * f_fun(theta0 - l, 1) * boundary
        for i in range(1, f + 1):
            t = t * f_fun(ls[i - 1], 0) * f_fun(ls[i - 1] + r[i - 1], 0)
        rhs_terms.append(t)
    return _qsum(lhs_terms), _qsum(rhs_terms)


def birds_final_check(rho0, theta0, f, r, mode: str = "exact",
                      points=None) -> bool:
    lhs, rhs = birds_final_both_sides(rho0, theta0, f, r)
    return _coeff_equal(lhs, rhs, mode, points)


def banners_final_both_sides(lam: Partition, f: int, r: list[int]):
    """Both sides of the banners-closing identity; r is indexed 2..f."""
    from .hookformula import phi_hat

    if lam.length() > 4:
        raise ValueError("lam must have at most 4 parts")
    if len(r) != f - 1:
        raise ValueError("r must have length f - 1")
    l4, l2 = lam[4], lam[2]
    lhs_terms = []
    for chain in _rho_chains(0, l4, f - 1):
        rho = {1: l4}
        theta = {1: l2}
        for i in range(2, f + 1):
            rho[i] = chain[i - 2]
            theta[i] = rho[i - 1] + theta[i - 1] + r[i - 2] - rho[i]
        lhs_terms.append(phi_hat(rho, theta, 1, f))
    rhs_terms = []
    boundary = (f_fun(l4, 0) * f_fun(l2, 2)).inverse()
    for ls in _bounded_tuples(f - 1, l4):
        l = sum(ls)
        t = f_fun(l4 - l, 0) * f_fun(l2 - l, 2) * boundary
        for i in range(2, f + 1):
            t = t * f_fun(ls[i - 2], 0) * f_fun(ls[i - 2] + r[i - 2], 0)
        rhs_terms.append(t)
    return _qsum(lhs_terms), _qsum(rhs_terms)


def banners_final_check(lam, f, r, mode: str = "exact", points=None) -> bool:
    lhs, rhs = banners_final_both_sides(lam, f, r)
    return _coeff_equal(lhs, rhs, mode, points)


def b_ratio_checks(max_size: int = 4) -> bool:
    """The two b-ratio displays feeding the Final identities, via b_lambda."""
    for theta0 in range(max_size + 1):
        for rho0 in range(theta0 + 1):
            base = b_lambda(Partition((theta0, rho0)))
            expect = (f_fun(theta0 - rho0, 0) * f_fun(theta0, 1)
                      * f_fun(rho0, 0) / f_fun(theta0 - rho0, 1))
            if not qt_equals(base, expect):
                return False
            for l in range(rho0 + 1):
                ratio = b_lambda(Partition((theta0 - l, rho0 - l))) / base
                expect = (f_fun(rho0 - l, 0) * f_fun(theta0 - l, 1)
                          / (f_fun(rho0, 0) * f_fun(theta0, 1)))
                if not qt_equals(ratio, expect):
                    return False
    for lam_parts in _weak_quads(max_size):
        lam = Partition(lam_parts)
        l4, l2 = lam[4], lam[2]
        for l in range(l4 + 1):
            ratio = b_el(lam.sub_rectangle(l, 4)) / b_el(lam)
            expect = (f_fun(l4 - l, 0) * f_fun(l2 - l, 2)
                      / (f_fun(l4, 0) * f_fun(l2, 2)))
            if not qt_equals(ratio, expect):
                return False
    return True


def _weak_quads(cap: int):
    out = []
    for a in range(cap + 1):
        for b in range(a + 1):
            for c in range(b + 1):
                for d in range(c + 1):
                    out.append((a, b, c, d))
    return out
