import random
from fractions import Fraction

import pytest

from qthook.qtcore import EvalPoint, QTFactored, f_fun
from qthook.series import (
    CoeffRing,
    MultiSeries,
    QTCoeff,
    VarSet,
    series_equals,
    series_f,
    substitute_monomials,
)

XYZ = VarSet(["z0", "z1", "z2"])
EXACT = CoeffRing("exact")


def z(name, k=1):
    return XYZ.monomial({name: k})


def test_series_f_single_variable():
    s = series_f(z("z0"), XYZ, 2, EXACT)
    assert s.coefficient(XYZ.unit()).equals(QTCoeff.one())
    assert s.coefficient(z("z0")).equals(QTCoeff.from_qtf(f_fun(1, 0)))
    assert s.coefficient(z("z0", 2)).equals(QTCoeff.from_qtf(f_fun(2, 0)))
    assert len(s.terms) == 3


def test_series_f_degree_two_monomial():
    m = XYZ.monomial({"z0": 1, "z1": 1})
    s = series_f(m, XYZ, 3, EXACT)
    # only k = 0, 1 fit under total degree 3
    assert len(s.terms) == 2
    assert s.coefficient(m).equals(QTCoeff.from_qtf(f_fun(1, 0)))


def test_series_f_rejects_unit_and_negative():
    with pytest.raises(ValueError):
        series_f(XYZ.unit(), XYZ, 3, EXACT)
    with pytest.raises(ValueError):
        series_f((1, -1, 0), XYZ, 3, EXACT)


def test_series_f_at_t_equals_q_is_geometric():
    # f(k;0) telescopes to 1 at t = q; permitted only for this check
    pt = EvalPoint(Fraction(2, 3), Fraction(2, 3))
    ring = CoeffRing("eval", pt)
    s = series_f(z("z0"), XYZ, 5, ring)
    for k in range(6):
        assert s.coefficient(z("z0", k)) == 1


def test_mul_and_add_basics():
    s = series_f(z("z0"), XYZ, 3, EXACT)
    one = MultiSeries.constant(1, XYZ, 3, EXACT)
    eq, _ = series_equals(s * one, s)
    assert eq
    prod = series_f(z("z0"), XYZ, 3, EXACT) * series_f(z("z1"), XYZ, 3, EXACT)
    c = prod.coefficient(XYZ.monomial({"z0": 1, "z1": 1}))
    f1 = QTCoeff.from_qtf(f_fun(1, 0) * f_fun(1, 0))
    assert c.equals(f1)
    diff = s + s.scale(-1)
    assert diff.is_zero()


def test_substitute_monomials():
    # polynomial x1 + x2 in its own two variables
    poly = {(1, 0): QTFactored.one(), (0, 1): QTFactored.one()}
    out = substitute_monomials(poly, [z("z0"), z("z1")], XYZ, 4, EXACT)
    assert set(out.terms) == {z("z0"), z("z1")}
    sq = substitute_monomials({(2,): QTFactored.one()},
                              [XYZ.monomial({"z0": 1, "z1": 1})], XYZ, 4, EXACT)
    assert set(sq.terms) == {XYZ.monomial({"z0": 2, "z1": 2})}
    with pytest.raises(ValueError):
        substitute_monomials(poly, [XYZ.unit(), z("z1")], XYZ, 4, EXACT)


def test_incompatible_operands_are_rejected():
    other_vars = VarSet(["w0", "w1"])
    s = series_f(z("z0"), XYZ, 3, EXACT)
    t = series_f(other_vars.monomial({"w0": 1}), other_vars, 3, EXACT)
    with pytest.raises(ValueError):
        s * t
    with pytest.raises(ValueError):
        s + series_f(z("z0"), XYZ, 2, EXACT)  # truncation mismatch
    from qthook.qtcore import EvalPoint
    from fractions import Fraction
    ring_eval = CoeffRing("eval", EvalPoint(Fraction(2, 3), Fraction(3, 5)))
    with pytest.raises(ValueError):
        s + series_f(z("z0"), XYZ, 3, ring_eval)  # mode mismatch


def test_series_equals_reports_first_mismatch():
    s = series_f(z("z0"), XYZ, 3, EXACT)
    t = series_f(z("z0"), XYZ, 3, EXACT)
    t.add_term(z("z0", 3), QTFactored.one())
    eq, mismatch = series_equals(s, t)
    assert not eq
    assert mismatch["monomial"] == "z0^3"
    eq, mismatch = series_equals(s, s)
    assert eq and mismatch is None


def test_q_difference_relation():
    # (1 - x) F(x) = (1 - t x) F(q x), read off coefficientwise:
    # c_k - c_{k-1} = q^k c_k - t q^{k-1} c_{k-1}
    D = 6
    s = series_f(z("z0"), XYZ, D, EXACT)
    for k in range(1, D + 1):
        ck = s.coefficient(z("z0", k))
        ck1 = s.coefficient(z("z0", k - 1))
        lhs = ck - ck1
        rhs = (ck.mul_qtf(QTFactored(1, k, 0))
               - ck1.mul_qtf(QTFactored(1, k - 1, 1)))
        assert lhs.equals(rhs), k


def _random_series(rng, varset, trunc, ring):
    s = MultiSeries(varset, trunc, ring)
    for _ in range(rng.randint(1, 6)):
        mono = tuple(rng.randint(0, 2) for _ in varset.names)
        if sum(mono) > trunc:
            continue
        f = QTFactored(Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3)),
                       rng.randint(0, 1), rng.randint(0, 1),
                       {(1, 0): rng.randint(-1, 1), (0, 1): rng.randint(0, 1)})
        s.add_term(mono, f)
    return s


def test_ring_axioms_on_random_series():
    rng = random.Random(5)
    for _ in range(8):
        a = _random_series(rng, XYZ, 4, EXACT)
        b = _random_series(rng, XYZ, 4, EXACT)
        c = _random_series(rng, XYZ, 4, EXACT)
        eq, _ = series_equals((a * b) * c, a * (b * c))
        assert eq
        eq, _ = series_equals(a * (b + c), a * b + a * c)
        assert eq
        eq, _ = series_equals(a * b, b * a)
        assert eq


def test_exact_and_eval_commute():
    rng = random.Random(11)
    from qthook.qtcore import sample_points
    pts = sample_points(3, seed=2)
    for trial in range(20):
        pt = pts[trial % len(pts)]
        ring_e = CoeffRing("eval", pt)
        a = _random_series(rng, XYZ, 4, EXACT)
        b = _random_series(rng, XYZ, 4, EXACT)
        exact = (a * b + a).evaluate_exact_at(pt)
        a2 = MultiSeries(XYZ, 4, ring_e,
                         {m: c.evaluate(pt) for m, c in a.terms.items()})
        b2 = MultiSeries(XYZ, 4, ring_e,
                         {m: c.evaluate(pt) for m, c in b.terms.items()})
        eq, _ = series_equals(exact, a2 * b2 + a2)
        assert eq


def test_json_dump_shape():
    s = series_f(z("z0"), XYZ, 2, EXACT)
    d = s.to_json()
    assert d["vars"] == ["z0", "z1", "z2"]
    assert d["truncation"] == 2 and d["mode"] == "exact"
    assert all(set(t) == {"exps", "num", "den"} for t in d["terms"])
