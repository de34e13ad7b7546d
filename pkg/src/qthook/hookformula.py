"""(q, t)-weights of P-partitions and the hook product identity itself.

The generic weight (one f-factor per color-adjacent pair, divided by the
equal-color pairs) is the ground truth; the per-family closed forms, the
trace decompositions and the Macdonald-form rewrites of both sides are all
validated against it.
"""

from __future__ import annotations

from .dposet import ColoredPoset, enumerate_p_partitions, hook_monomials
from .partitions import Partition, is_horizontal_strip, partitions_of
from .qtcore import QTFactored, b_el, b_lambda, f_fun, phi_skew, psi_skew
from .report import VerificationReport, timed
from .series import (
    CoeffRing,
    MultiSeries,
    VarSet,
    mono_mul,
    series_equals,
    series_f,
    total_degree,
)

HAT = "__hat__"
NO_TRUNC = 10 ** 9

# Middle f-argument convention of the head/tail chain product Phi: the
# "shifted" reading uses argument i at step i (forced by the generic weight);
# "verbatim" uses the displayed 0 and survives only as a negative control.
PHI_CONVENTION = "shifted"


# ---------------------------------------------------------------------------
# Generic weight.
# ---------------------------------------------------------------------------

def _color_adjacency(poset: ColoredPoset) -> set[frozenset]:
    edges = poset.top_tree_adjacency()
    edges.add(frozenset((HAT, poset.color[poset.top])))
    return edges


def weight_generic(poset: ColoredPoset, pi: dict) -> QTFactored:
    """W_P(pi; q, t) straight from the pair-product definition."""
    edges = _color_adjacency(poset)
    rank = poset.rank
    color = poset.color
    out = QTFactored.one()
    elements = poset.elements
    for xi, x in enumerate(elements):
        for y in elements:
            if x == y or not poset.le(x, y):
                continue
            cx, cy = color[x], color[y]
            diff = rank[x] - rank[y]
            if frozenset((cx, cy)) in edges:
                if diff % 2 != 1:
                    raise AssertionError(f"odd-rank parity fails at {x} < {y}")
                out = out * f_fun(pi[x] - pi[y], (diff - 1) // 2)
            elif cx == cy:
                if diff % 2 != 0:
                    raise AssertionError(f"even-rank parity fails at {x} < {y}")
                e = diff // 2
                out = out / (f_fun(pi[x] - pi[y], e) * f_fun(pi[x] - pi[y], e - 1))
    top_color = color[poset.top]
    for x in elements:  # pairs (x, 1-hat); the hat carries value 0, rank -1
        if color[x] == top_color:
            d = rank[x]  # (rank[x] - (-1) - 1) / 2 doubled: rank is even here
            if d % 2 != 0:
                raise AssertionError(f"hat parity fails at {x}")
            out = out * f_fun(pi[x], d // 2)
    return out


# ---------------------------------------------------------------------------
# Closed forms on shifted arrays.
# ---------------------------------------------------------------------------

def _entry(pi: dict, i: int, j: int) -> int:
    """Array access with the boundary convention pi[i,j] = 0 off the edge."""
    if i <= 0 or j <= 0:
        return 0
    return pi[(i, j)]


def f_nd(alpha: Partition, pi: dict) -> QTFactored:
    """Off-diagonal factor of the shifted-shape weight."""
    out = QTFactored.one()
    for (i, j) in _shifted_cells(alpha):
        if i >= j:
            continue
        v = pi[(i, j)]
        for m in range(0, i + 1):
            out = out * f_fun(v - _entry(pi, i - m, j - m - 1), m)
            out = out * f_fun(v - _entry(pi, i - m - 1, j - m), m)
            out = out / f_fun(v - _entry(pi, i - m, j - m), m)
            out = out / f_fun(v - _entry(pi, i - m - 1, j - m - 1), m)
    return out


def f_d(alpha: Partition, pi: dict) -> QTFactored:
    """Diagonal factor of the shifted-shape weight (even depths only)."""
    out = QTFactored.one()
    for i in range(1, alpha.length() + 1):
        v = pi[(i, i)]
        for m in range(0, i + 1, 2):
            out = out * f_fun(v - _entry(pi, i - m - 1, i - m), m)
            out = out * f_fun(v - _entry(pi, i - m - 2, i - m - 1), m + 1)
            out = out / f_fun(v - _entry(pi, i - m, i - m), m)
            out = out / f_fun(v - _entry(pi, i - m - 2, i - m - 2), m + 1)
    return out


def _shifted_cells(alpha: Partition):
    for i in range(1, alpha.length() + 1):
        for j in range(i, alpha[i] + i):
            yield (i, j)


def weight_shifted(alpha: Partition, pi: dict) -> QTFactored:
    return f_d(alpha, pi) * f_nd(alpha, pi)


# ---------------------------------------------------------------------------
# The head/tail chain product Phi and its hatted/tilded variants.
# ---------------------------------------------------------------------------

def _check_rho_theta(rho: dict, theta: dict, m: int, n: int):
    for i in range(m, n):
        if not rho[i + 1] <= rho[i]:
            raise ValueError("rho must decrease along the chain")
        if not theta[i] <= theta[i + 1]:
            raise ValueError("theta must increase along the chain")
    if not 0 <= rho[n] or not rho[m] <= theta[m]:
        raise ValueError("need 0 <= rho_n <= ... <= rho_m <= theta_m <= ...")


def phi_chain(rho: dict, theta: dict, m: int, n: int,
              convention: str | None = None) -> QTFactored:
    """Phi_m^n(rho, theta)."""
    convention = convention or PHI_CONVENTION
    _check_rho_theta(rho, theta, m, n)
    out = QTFactored.one()
    for i in range(m + 1, n + 1):
        mid = i if convention == "shifted" else 0
        out = out * f_fun(rho[i - 1] - rho[i], 0)
        out = out * f_fun(theta[i - 1] - rho[i], mid)
        out = out * f_fun(theta[i] - rho[i - 1], mid)
        out = out * f_fun(theta[i] - theta[i - 1], 0)
        out = out / (f_fun(theta[i] - rho[i], i) * f_fun(theta[i] - rho[i], i + 1))
    return out


def phi_hat(rho: dict, theta: dict, m: int, n: int,
            convention: str | None = None) -> QTFactored:
    """Phi-hat: Phi with its boundary f-ratio."""
    boundary = (f_fun(rho[n], 0) * f_fun(theta[n], n + 1)
                / (f_fun(rho[m], 0) * f_fun(theta[m], m + 1)))
    return boundary * phi_chain(rho, theta, m, n, convention)


def phi_tilde_monomial(rho: dict, theta: dict, m: int, n: int) -> dict:
    """The x-tilde exponents attached to Phi-hat: index -> exponent."""
    return {i: rho[i] + theta[i] - rho[i - 1] - theta[i - 1]
            for i in range(m + 1, n + 1)}


def phi_tilde(rho: dict, theta: dict, m: int, n: int, xt: dict,
              convention: str | None = None):
    """Phi-tilde: (Phi-hat value, monomial) with x-tilde aliases expanded."""
    mono = {}
    for i, e in phi_tilde_monomial(rho, theta, m, n).items():
        if e:
            mono = _mono_add(mono, xt[i], e)
    return phi_hat(rho, theta, m, n, convention), mono


# ---------------------------------------------------------------------------
# Bird and banner closed forms.
# ---------------------------------------------------------------------------

def bird_views(poset: ColoredPoset, pi: dict):
    """(sigma, tau, rho, theta) views of a bird P-partition."""
    alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
    sigma = {(i, j): pi[(i, j)] for (i, j) in _shifted_cells(alpha)}
    tau = {(i, j): pi[(j, i)] for (i, j) in _shifted_cells(beta)}
    rho = {i: pi[(1, -i + 1)] for i in range(0, f + 1)}
    theta = {i: pi[(i + 2, i + 2)] for i in range(0, f + 1)}
    return sigma, tau, rho, theta


def weight_bird(poset: ColoredPoset, pi: dict) -> QTFactored:
    alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
    sigma, tau, rho, theta = bird_views(poset, pi)
    num = (f_fun(sigma[(2, 2)] - sigma[(1, 2)], 0)
           * f_fun(tau[(2, 2)] - tau[(1, 2)], 0)
           * f_fun(rho[f], 0) * f_fun(theta[f], f + 1))
    den = (f_fun(theta[0] - rho[0], 0) * f_fun(theta[0] - rho[0], 1))
    return (num / den * phi_chain(rho, theta, 0, f)
            * f_nd(alpha, sigma) * f_nd(beta, tau))


def banner_views(poset: ColoredPoset, pi: dict):
    """(sigma, rho, theta) views of a banner P-partition."""
    alpha, f = poset.params["alpha"], poset.params["f"]
    sigma = {(i, j): pi[(i, j)] for (i, j) in _shifted_cells(alpha)}
    rho = {i: pi[(1, -i + 2)] for i in range(1, f + 1)}
    theta = {i: pi[(i + 2, 3)] for i in range(1, f + 1)}
    return sigma, rho, theta


def weight_banner(poset: ColoredPoset, pi: dict) -> QTFactored:
    # Phi-hat carries the boundary ratio f(rho_f;0) f(theta_f;f+1) /
    # (f(rho_1;0) f(theta_1;2)); its denominator cancels the two virtual-top
    # factors that f_d manufactures on the odd wing diagonals.
    alpha, f = poset.params["alpha"], poset.params["f"]
    sigma, rho, theta = banner_views(poset, pi)
    return (phi_hat(rho, theta, 1, f)
            * f_d(alpha, sigma) * f_nd(alpha, sigma))


def weight_closed_form(poset: ColoredPoset, pi: dict) -> QTFactored:
    if poset.family == "shifted":
        return weight_shifted(poset.params["alpha"], pi)
    if poset.family == "bird":
        return weight_bird(poset, pi)
    if poset.family == "banner":
        return weight_banner(poset, pi)
    raise ValueError(f"no closed form for family {poset.family!r}")


# ---------------------------------------------------------------------------
# Traces and the bracketed Pieri products.
# ---------------------------------------------------------------------------

def epsilon_seq(alpha: Partition, n: int) -> tuple[int, ...]:
    """+1 at positions that are parts of alpha, else -1."""
    if n < alpha[1]:
        raise ValueError("need n >= alpha_1")
    parts = set(alpha.parts)
    return tuple(+1 if k in parts else -1 for k in range(1, n + 1))


def traces(alpha: Partition, array: dict, n: int) -> list[Partition]:
    """Diagonal traces pi[0..n] of a shifted array, read SE to NW."""
    out = []
    for k in range(n + 1):
        vals = []
        i = 1
        while (i, k + i) in array:
            vals.append(array[(i, k + i)])
            i += 1
        out.append(Partition(sorted(vals, reverse=True)))
    return out


def bracket_psi(chain: list[Partition], eps: tuple[int, ...]) -> QTFactored:
    """psi^eps over a trace chain (psi on +1 steps, phi on -1 steps)."""
    return _bracket(chain, eps, psi_first=True)


def bracket_phi(chain: list[Partition], eps: tuple[int, ...]) -> QTFactored:
    """phi^eps over a trace chain (phi on +1 steps, psi on -1 steps)."""
    return _bracket(chain, eps, psi_first=False)


def _bracket(chain, eps, psi_first: bool) -> QTFactored:
    if len(chain) != len(eps) + 1:
        raise ValueError("chain length must be len(eps) + 1")
    out = QTFactored.one()
    for i, e in enumerate(eps, start=1):
        prev, cur = chain[i - 1], chain[i]
        if e == +1:
            if not (prev.contains(cur) and is_horizontal_strip(prev, cur)):
                raise ValueError(f"chain not compatible with eps at step {i}")
            out = out * (psi_skew(prev, cur) if psi_first else phi_skew(prev, cur))
        else:
            if not (cur.contains(prev) and is_horizontal_strip(cur, prev)):
                raise ValueError(f"chain not compatible with eps at step {i}")
            out = out * (phi_skew(cur, prev) if psi_first else psi_skew(cur, prev))
    return out


def weight_via_traces(poset: ColoredPoset, pi: dict, horizon: int | None = None):
    """(weight, monomial-exponent-dict) in trace form, per family."""
    from .dposet import _alias_tables

    fam = poset.family
    al = _alias_tables(poset)
    if fam == "shifted":
        alpha = poset.params["alpha"]
        n = horizon if horizon is not None else alpha[1]
        tr = traces(alpha, pi, n)
        eps = epsilon_seq(alpha, n)
        weight = b_el(tr[0]) * bracket_psi(tr, eps)
        wexp = (tr[0].weight() - tr[0].odd_columns()) // 2
        mono = _scaled(al["w"], wexp)
        for i in range(1, n + 1):
            exp = tr[i - 1].weight() - tr[i].weight()
            if exp:  # horizons beyond alpha_1 pad with empty traces
                mono = _mono_add(mono, al["zt"][i], exp)
        return weight, mono
    if fam == "bird":
        alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
        sigma, tau, rho, theta = bird_views(poset, pi)
        m = horizon if horizon is not None else alpha[1]
        n = horizon if horizon is not None else beta[1]
        tr_s = traces(alpha, sigma, m)
        tr_t = traces(beta, tau, n)
        weight = (phi_hat(rho, theta, 0, f)
                  * bracket_psi(tr_s, epsilon_seq(alpha, m))
                  * bracket_phi(tr_t, epsilon_seq(beta, n)))
        mono = _scaled(al["xt"][0], rho[0] + theta[0])
        for i in range(1, m + 1):
            exp = tr_s[i - 1].weight() - tr_s[i].weight()
            if exp:
                mono = _mono_add(mono, al["zt"][i], exp)
        for i in range(1, n + 1):
            exp = tr_t[i - 1].weight() - tr_t[i].weight()
            if exp:
                mono = _mono_add(mono, al["yt"][i], exp)
        for i in range(1, f + 1):
            mono = _mono_add(mono, al["xt"][i],
                             rho[i] + theta[i] - rho[i - 1] - theta[i - 1])
        return weight, mono
    if fam == "banner":
        alpha, f = poset.params["alpha"], poset.params["f"]
        sigma, rho, theta = banner_views(poset, pi)
        n = horizon if horizon is not None else alpha[1]
        tr = traces(alpha, sigma, n)
        weight = (phi_hat(rho, theta, 1, f) * b_el(tr[0])
                  * bracket_psi(tr, epsilon_seq(alpha, n)))
        mono = _scaled(_mono_add(al["xt"][2] if f >= 2 else {}, al["w"], 1),
                       sigma[(1, 1)] + sigma[(3, 3)])
        for i in range(2, f + 1):
            mono = _mono_add(mono, al["xt"][i],
                             rho[i] + theta[i] - rho[i - 1] - theta[i - 1])
        for i in range(1, n + 1):
            exp = tr[i - 1].weight() - tr[i].weight()
            if exp:
                mono = _mono_add(mono, al["zt"][i], exp)
        return weight, mono
    raise ValueError(f"no trace form for family {poset.family!r}")


def _scaled(mono: dict, k: int) -> dict:
    return {name: e * k for name, e in mono.items() if e * k}


def _mono_add(base: dict, extra: dict, mult: int = 1) -> dict:
    out = dict(base)
    for name, e in extra.items():
        s = out.get(name, 0) + e * mult
        if s:
            out[name] = s
        else:
            out.pop(name, None)
    return out


def z_monomial(poset: ColoredPoset, pi: dict) -> dict:
    """z^pi as a color-name exponent dictionary."""
    out = {}
    for e, v in pi.items():
        if v:
            out[poset.color[e]] = out.get(poset.color[e], 0) + v
    return out


# ---------------------------------------------------------------------------
# Both sides of the hook formula as truncated series.
# ---------------------------------------------------------------------------

def _mono_to_varset(mono: dict, varset: VarSet) -> tuple[int, ...]:
    return varset.monomial(mono)


def lhs_terms(poset: ColoredPoset, trunc: int,
              weight_fun=None) -> list[tuple[tuple[int, ...], QTFactored]]:
    """Symbolic (monomial, weight) pairs of the P-partition sum."""
    weight_fun = weight_fun or weight_generic
    out = []
    for pi in enumerate_p_partitions(poset, trunc):
        out.append((_mono_to_varset(z_monomial(poset, pi), poset.varset),
                    weight_fun(poset, pi)))
    return out


def lhs_series(poset: ColoredPoset, trunc: int, ring: CoeffRing,
               terms=None) -> MultiSeries:
    """Sum over P-partitions of weight <= trunc of W(pi) z^pi."""
    out = MultiSeries(poset.varset, trunc, ring)
    for mono, w in (terms if terms is not None else lhs_terms(poset, trunc)):
        out.add_term(mono, w)
    return out


def rhs_series(poset: ColoredPoset, trunc: int, ring: CoeffRing,
               hooks=None) -> MultiSeries:
    """Product of F(hook monomial) over the vertices, truncated."""
    if hooks is None:
        hooks = hook_monomials(poset, verify_choices=False)
    out = MultiSeries.constant(1, poset.varset, trunc, ring)
    for v, mono in hooks.items():
        out = out * series_f(_mono_to_varset(mono, poset.varset),
                             poset.varset, trunc, ring)
    return out


def verify_okada(poset: ColoredPoset, trunc: int, mode: str = "exact",
                 points=None, seed: int = 0) -> VerificationReport:
    """seriesEquals(lhs, rhs) with full diagnostics; the theorem instance."""
    from .qtcore import VanishingFactor, resample_point

    report = VerificationReport(
        check="hook", family=poset.family,
        params={k: str(v) for k, v in poset.params.items()},
        degree=trunc, mode=mode,
        points=[[str(p.q0), str(p.t0)] for p in (points or [])])
    with timed(report):
        terms = lhs_terms(poset, trunc)
        hooks = hook_monomials(poset, verify_choices=False)
        if mode == "exact":
            point_list = [None]
        elif points:
            point_list = list(points)
        else:
            raise ValueError("eval mode requires points")
        for idx, pt in enumerate(point_list):
            attempt = 0
            while True:
                ring = CoeffRing("exact") if pt is None else CoeffRing("eval", pt)
                try:
                    lhs = lhs_series(poset, trunc, ring, terms)
                    rhs = rhs_series(poset, trunc, ring, hooks)
                    break
                except VanishingFactor:
                    attempt += 1
                    pt = resample_point(seed + idx, attempt)
            equal, mismatch = series_equals(lhs, rhs)
            if not equal:
                report.result = "fail"
                report.mismatch = mismatch
                break
    return report


# ---------------------------------------------------------------------------
# Macdonald-form rewrites of both sides (the two structure theorems).
# ---------------------------------------------------------------------------

def _aliases_for(poset: ColoredPoset):
    from .dposet import _alias_tables, _complement

    return _alias_tables(poset)


def _kernel_f_args(tilde: dict, parts: Partition, n: int) -> list[dict]:
    """F-arguments z~_{a_c}^(-1) z~_{a_j} over complement pairs below parts."""
    from .dposet import _complement

    comp = _complement(parts, n)
    args = []
    for c in comp:
        for a in parts:
            if c < a:
                args.append(_mono_add(tilde[a], tilde[c], -1))
    return args


def _series_from_poly(poly, images: list[dict], varset: VarSet, trunc: int,
                      ring: CoeffRing) -> MultiSeries:
    """Substitute a SymPoly at alias monomials (kept exact, no truncation)."""
    out = MultiSeries(varset, trunc, ring)
    for exps, c in poly.coeffs.items():
        mono = {}
        for e, img in zip(exps, images):
            if e:
                mono = _mono_add(mono, img, e)
        out.add_term(_mono_to_varset(mono, varset), c)
    return out


def lhs_macdonald_form(poset: ColoredPoset, trunc: int,
                       ring: CoeffRing) -> MultiSeries:
    """The trace-resummed left-hand side (kernel times Macdonald sums)."""
    from .macdonald import macdonald_p, macdonald_q

    al = _aliases_for(poset)
    varset = poset.varset
    fam = poset.family
    if fam == "shifted":
        alpha = poset.params["alpha"]
        r, n = alpha.length(), al["n"]
        out = MultiSeries.constant(1, varset, trunc, ring)
        for arg in _kernel_f_args(al["zt"], alpha, n):
            out = out * series_f(_mono_to_varset(arg, varset), varset, trunc, ring)
        lam_sum = MultiSeries(varset, trunc, ring)
        for d in range(trunc + 1):
            for lam in partitions_of(d, None, r):
                term = _series_from_poly(
                    macdonald_p(lam, r),
                    [al["zt"][alpha[i]] for i in range(1, r + 1)],
                    varset, NO_TRUNC, ring)
                md = term.min_total_degree()
                if md is not None:
                    assert md >= lam.weight()
                wexp = (lam.weight() - lam.odd_columns()) // 2
                shift = _mono_to_varset(_scaled(al["w"], wexp), varset)
                term = term.scale(b_el(lam)).shift_monomial(shift)
                lam_sum = lam_sum + term.truncated(trunc)
        return out * lam_sum
    if fam == "bird":
        alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
        m, n = al["m"], al["n"]
        out = MultiSeries.constant(1, varset, trunc, ring)
        for arg in (_kernel_f_args(al["zt"], alpha, m)
                    + _kernel_f_args(al["yt"], beta, n)):
            out = out * series_f(_mono_to_varset(arg, varset), varset, trunc, ring)
        the_sum = MultiSeries(varset, trunc, ring)
        for rho, theta in _bird_rho_theta_chains(f, trunc):
            lam = Partition((theta[0], rho[0]))
            scal, shift = phi_tilde(rho, theta, 0, f, al["xt"])
            p_part = _series_from_poly(
                macdonald_p(lam, 2),
                [_mono_add(al["xt"][0], al["zt"][alpha[i]]) for i in (1, 2)],
                varset, NO_TRUNC, ring)
            q_part = _series_from_poly(
                macdonald_q(lam, 2),
                [al["yt"][beta[i]] for i in (1, 2)],
                varset, NO_TRUNC, ring)
            term = (p_part * q_part).scale(scal)
            term = term.shift_monomial(_mono_to_varset(shift, varset))
            md = term.min_total_degree()
            if md is not None:
                floor = sum(rho.values()) + sum(theta.values())
                assert md >= floor
            the_sum = the_sum + term.truncated(trunc)
        return out * the_sum
    if fam == "banner":
        alpha, f = poset.params["alpha"], poset.params["f"]
        n = al["n"]
        out = MultiSeries.constant(1, varset, trunc, ring)
        for arg in _kernel_f_args(al["zt"], alpha, n):
            out = out * series_f(_mono_to_varset(arg, varset), varset, trunc, ring)
        the_sum = MultiSeries(varset, trunc, ring)
        for lam, rho, theta in _banner_lam_rho_theta(f, trunc):
            hat, shift = phi_tilde(rho, theta, 1, f, al["xt"])
            term = _series_from_poly(
                macdonald_p(lam, 4),
                [al["zt"][alpha[i]] for i in range(1, 5)],
                varset, NO_TRUNC, ring).scale(hat * b_el(lam))
            shift = _mono_add(shift, _scaled(_mono_add(al["xt"][2], al["w"]),
                                             lam[2] + lam[4]))
            term = term.shift_monomial(_mono_to_varset(shift, varset))
            md = term.min_total_degree()
            if md is not None:
                floor = lam.weight() + sum(rho[i] + theta[i]
                                           for i in range(2, f + 1))
                assert md >= floor
            the_sum = the_sum + term.truncated(trunc)
        return out * the_sum
    raise ValueError(f"no Macdonald form for family {fam!r}")


def _bird_rho_theta_chains(f: int, budget: int):
    """(rho, theta) chains with sum(rho_i + theta_i) <= budget."""
    out = []

    def rec_theta(i, theta, used):
        if used > budget:
            return
        if i > f:
            out.append((dict(rho), dict(theta)))
            return
        t = theta[i - 1]
        while used + t <= budget:
            theta[i] = t
            rec_theta(i + 1, theta, used + t)
            t += 1
        theta.pop(i, None)

    def rec_rho(i, rho, used):
        if used > budget:
            return
        if i > f:
            rec_theta(1, {0: theta0}, used + theta0)
            return
        for r in range(0, rho[i - 1] + 1):
            rho[i] = r
            rec_rho(i + 1, rho, used + r)
        rho.pop(i, None)

    rho: dict = {}
    for theta0 in range(0, budget + 1):
        for rho0 in range(0, theta0 + 1):
            rho = {0: rho0}
            rec_rho(1, rho, rho0)
    return out


def _banner_lam_rho_theta(f: int, budget: int):
    """(lam, rho, theta) triples per the banner sum constraints."""
    out = []
    for d in range(budget + 1):
        for lam in partitions_of(d, None, 4):
            l4, l2 = lam[4], lam[2]
            chains_r = _decreasing_chains(l4, f - 1)
            chains_t = _increasing_chains(l2, f - 1, budget)
            for rs in chains_r:
                rho = {1: l4}
                rho.update({i + 2: v for i, v in enumerate(rs)})
                for ts in chains_t:
                    theta = {1: l2}
                    theta.update({i + 2: v for i, v in enumerate(ts)})
                    if sum(rho[i] + theta[i] for i in range(2, f + 1)) \
                            + lam.weight() <= budget:
                        out.append((lam, rho, theta))
    return out


def _decreasing_chains(start: int, steps: int):
    if steps == 0:
        return [[]]
    out = []
    for v in range(start + 1):
        for rest in _decreasing_chains(v, steps - 1):
            out.append([v] + rest)
    return out


def _increasing_chains(start: int, steps: int, cap: int):
    if steps == 0:
        return [[]]
    out = []
    for v in range(start, cap + 1):
        for rest in _increasing_chains(v, steps - 1, cap):
            out.append([v] + rest)
    return out


def rhs_macdonald_form(poset: ColoredPoset, trunc: int,
                       ring: CoeffRing) -> MultiSeries:
    """The hook-product right-hand side rewritten through Macdonald sums."""
    from .macdonald import macdonald_p, macdonald_q

    al = _aliases_for(poset)
    varset = poset.varset
    fam = poset.family
    if fam == "bird":
        alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
        m, n = al["m"], al["n"]
        out = MultiSeries.constant(1, varset, trunc, ring)
        for arg in (_kernel_f_args(al["zt"], alpha, m)
                    + _kernel_f_args(al["yt"], beta, n)):
            out = out * series_f(_mono_to_varset(arg, varset), varset, trunc, ring)
        xdeg = {i: sum(al["xt"][i].values()) for i in range(1, f + 1)}
        the_sum = MultiSeries(varset, trunc, ring)
        for lam_w in range(0, 2 * trunc + 1):
            for lam in partitions_of(lam_w, None, 2):
                # the hook table (checked against the diamond recursion)
                # puts x~_0 inside the Cauchy arguments, not x~_1
                p_part = _series_from_poly(
                    macdonald_p(lam, 2),
                    [_mono_add(al["xt"][0], al["zt"][alpha[i]]) for i in (1, 2)],
                    varset, NO_TRUNC, ring)
                q_part = _series_from_poly(
                    macdonald_q(lam, 2),
                    [al["yt"][beta[i]] for i in (1, 2)],
                    varset, NO_TRUNC, ring)
                pq = p_part * q_part
                for l in range(0, lam[2] + 1):
                    b_ratio = b_lambda(lam.sub_rectangle(l, 2)) / b_lambda(lam)
                    for ls in _compositions(l, f):
                        neg = sum(xdeg[i] * ls[i - 1] for i in range(1, f + 1))
                        for ks in _graded_boxes(
                                [xdeg[i] for i in range(1, f + 1)],
                                trunc + neg):
                            coeff = b_ratio
                            for i in range(1, f + 1):
                                coeff = coeff * f_fun(ks[i - 1], 0) \
                                    * f_fun(ls[i - 1], 0)
                            shift = {}
                            for i in range(1, f + 1):
                                shift = _mono_add(shift, al["xt"][i],
                                                  ks[i - 1] - ls[i - 1])
                            term = pq.scale(coeff).shift_monomial(
                                _mono_to_varset(shift, varset))
                            the_sum = the_sum + term.truncated(trunc)
        return out * the_sum
    if fam == "banner":
        alpha, f = poset.params["alpha"], poset.params["f"]
        n = al["n"]
        out = MultiSeries.constant(1, varset, trunc, ring)
        for arg in _kernel_f_args(al["zt"], alpha, n):
            out = out * series_f(_mono_to_varset(arg, varset), varset, trunc, ring)
        xdeg = {i: sum(al["xt"][i].values()) for i in range(2, f + 1)}
        the_sum = MultiSeries(varset, trunc, ring)
        for lam_w in range(0, trunc + 1):
            for lam in partitions_of(lam_w, None, 4):
                p_series = _series_from_poly(
                    macdonald_p(lam, 4),
                    [al["zt"][alpha[i]] for i in range(1, 5)],
                    varset, NO_TRUNC, ring)
                for l in range(0, lam[4] + 1):
                    b_ratio = b_el(lam.sub_rectangle(l, 4))
                    for ls in _compositions(l, f - 1):
                        neg = sum(xdeg[i] * ls[i - 2] for i in range(2, f + 1))
                        for ks in _graded_boxes(
                                [xdeg[i] for i in range(2, f + 1)],
                                trunc + neg):
                            coeff = b_ratio
                            for i in range(2, f + 1):
                                coeff = coeff * f_fun(ks[i - 2], 0) \
                                    * f_fun(ls[i - 2], 0)
                            shift = _scaled(_mono_add(al["xt"][2], al["w"]),
                                            lam[2] + lam[4])
                            for i in range(2, f + 1):
                                shift = _mono_add(shift, al["xt"][i],
                                                  ks[i - 2] - ls[i - 2])
                            term = p_series.scale(coeff).shift_monomial(
                                _mono_to_varset(shift, varset))
                            the_sum = the_sum + term.truncated(trunc)
        return out * the_sum
    raise ValueError(f"no Macdonald RHS for family {fam!r}")


def _compositions(total: int, parts: int):
    if parts == 0:
        return [[]] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append([first] + rest)
    return out


def _graded_boxes(weights: list[int], budget: int):
    """All tuples (k_i >= 0) with sum weights[i] * k_i <= budget."""
    out = [([], 0)]
    for w in weights:
        out = [(xs + [v], used + w * v) for xs, used in out
               for v in range((budget - used) // w + 1)]
    return [xs for xs, _ in out]