"""Hypothesis property tests for the arithmetic core."""

from hypothesis import given, settings
from hypothesis import strategies as st

from qthook.partitions import Partition, is_horizontal_strip
from qthook.qtcore import BiPoly, QTFactored, qt_equals, sample_points
from qthook.polyops import divexact_bipoly, gcd_bipoly

partitions = st.lists(st.integers(1, 6), max_size=5).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


@given(partitions)
def test_conjugate_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().weight() == lam.weight()
    assert lam.odd_columns() == lam.conjugate().odd_rows()


@given(partitions)
def test_parse_round_trip(lam):
    assert Partition.parse(str(lam)) == lam


@given(partitions, partitions)
def test_horizontal_strip_symmetry(lam, mu):
    if is_horizontal_strip(lam, mu):
        assert lam.contains(mu)
        conj_l, conj_m = lam.conjugate(), mu.conjugate()
        for c in range(1, lam[1] + 1):
            assert conj_l[c] - conj_m[c] <= 1  # one cell per column


coeffs = st.fractions(min_value=-4, max_value=4).filter(lambda c: c != 0)
factor_keys = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(
    lambda ab: ab != (0, 0))
qtf = st.builds(
    QTFactored,
    coeffs,
    st.integers(-2, 2),
    st.integers(-2, 2),
    st.dictionaries(factor_keys, st.integers(-2, 2), max_size=3),
)


@settings(max_examples=60, deadline=None)
@given(qtf, qtf)
def test_mul_div_round_trip(x, y):
    prod = x * y
    assert qt_equals(prod / y, x)
    assert qt_equals(prod / x, y)


@settings(max_examples=60, deadline=None)
@given(qtf)
def test_num_den_consistency(x):
    num, den = x.num_den()
    pts = sample_points(2, seed=1)
    for pt in pts:
        lhs = num.evaluate(pt.q0, pt.t0)
        rhs = x.evaluate(pt) * den.evaluate(pt.q0, pt.t0)
        assert lhs == rhs


polys = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)),
    st.fractions(min_value=-3, max_value=3),
    min_size=1, max_size=5,
).map(BiPoly)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(p, q):
    g = gcd_bipoly(p, q)
    if g.is_zero():
        assert p.is_zero() and q.is_zero()
        return
    if not p.is_zero():
        assert (divexact_bipoly(p, g) * g) == p
    if not q.is_zero():
        assert (divexact_bipoly(q, g) * g) == q


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_gcd_of_common_multiple(p, q, r):
    if r.is_zero():
        return
    g = gcd_bipoly(p * r, q * r)
    # r divides the gcd of (pr, qr)
    if not (p.is_zero() and q.is_zero()):
        assert (divexact_bipoly(g, r) * r) == g
