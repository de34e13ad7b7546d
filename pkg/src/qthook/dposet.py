"""The three d-complete poset families: shifted shapes, birds and banners.

Coordinates follow the matrix convention (a northwest vertex is larger).
Colors are variable names: z0, z1, ... for integer colors, zm1, zm2, ... for
negative ones and z1p, z2p, ... (z0p) for primed ones.
"""

from __future__ import annotations

from .partitions import Partition
from .series import VarSet


def color_name(k: int, primed: bool = False) -> str:
    if primed:
        return f"z{k}p"
    return f"z{k}" if k >= 0 else f"zm{-k}"


def _color_sort_key(name: str):
    if name.startswith("zm"):
        return (0, -int(name[2:]))
    if name.endswith("p"):
        return (2, int(name[1:-1]))
    return (1, int(name[1:]))


class ColoredPoset:
    """Finite poset with coordinates, a d-complete coloring and rank data."""

    def __init__(self, family: str, params: dict, elements, block_of, color_of,
                 strict: bool = True):
        """elements: coordinate list; block_of(e) labels the order block;
        color_of(e) gives the color name.  Order: (i1,j1) >= (i2,j2) iff
        i1 <= i2 and j1 <= j2, applied only inside a block, then closed
        transitively.  strict demands a unique maximum and a well-defined
        rank (true for every connected d-complete poset)."""
        self.family = family
        self.params = params
        self.elements = sorted(set(elements))
        self.index = {e: k for k, e in enumerate(self.elements)}
        n = len(self.elements)

        geq = [[False] * n for _ in range(n)]  # geq[a][b]: a >= b
        for a, ea in enumerate(self.elements):
            for b, eb in enumerate(self.elements):
                if block_of(ea) & block_of(eb):
                    if ea[0] <= eb[0] and ea[1] <= eb[1]:
                        geq[a][b] = True
        for k in range(n):  # transitive closure
            gk = geq[k]
            for a in range(n):
                if geq[a][k]:
                    ga = geq[a]
                    for b in range(n):
                        if gk[b]:
                            ga[b] = True
        self._geq = geq
        self.color = {e: color_of(e) for e in self.elements}

        self.covers = []  # (lower, upper) pairs
        for a, ea in enumerate(self.elements):
            for b, eb in enumerate(self.elements):
                if a == b or not geq[a][b]:
                    continue
                if any(geq[a][c] and geq[c][b] and c not in (a, b)
                       for c in range(n)):
                    continue
                self.covers.append((eb, ea))

        self._upper = {e: [] for e in self.elements}
        self._lower = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            self._upper[lo].append(hi)
            self._lower[hi].append(lo)

        maxima = [e for e in self.elements if not self._upper[e]]
        if strict and len(maxima) != 1:
            raise ValueError(f"poset has {len(maxima)} maximal elements")
        self.top = maxima[0] if len(maxima) == 1 else None

        # rank: depth from the maxima; in strict mode every saturated chain
        # to the top must agree (Proctor's rank property)
        self.rank = {}
        pending = sorted(self.elements, key=lambda e: len(self.upset(e)))
        for e in pending:
            uppers = self._upper[e]
            if not uppers:
                self.rank[e] = 0
                continue
            ranks = {self.rank[u] + 1 for u in uppers}
            if strict and len(ranks) != 1:
                raise ValueError(f"rank is not well defined at {e}")
            self.rank[e] = max(ranks)

        self.top_tree = self._compute_top_tree()
        self.varset = VarSet(sorted({self.color[e] for e in self.elements},
                                    key=_color_sort_key))

    # -- order primitives --------------------------------------------------

    def le(self, x, y) -> bool:
        """x <= y in the poset order."""
        return self._geq[self.index[y]][self.index[x]]

    def downset(self, e):
        a = self.index[e]
        return [f for f in self.elements if self._geq[a][self.index[f]]]

    def upset(self, e):
        a = self.index[e]
        return [f for f in self.elements if self._geq[self.index[f]][a]]

    def lower_covers(self, e):
        return self._lower[e]

    def upper_covers(self, e):
        return self._upper[e]

    def _compute_top_tree(self):
        multi = {e for e in self.elements if len(self._upper[e]) > 1}
        tree = []
        for e in self.elements:
            if all(u not in multi for u in self.upset(e)):
                tree.append(e)
        return set(tree)

    def top_tree_adjacency(self) -> set[frozenset]:
        """Color pairs adjacent in the top tree (Hasse edges inside T)."""
        edges = set()
        for lo, hi in self.covers:
            if lo in self.top_tree and hi in self.top_tree:
                edges.add(frozenset((self.color[lo], self.color[hi])))
        return edges

    def interval(self, w, v):
        iw, iv = self.index[w], self.index[v]
        return [e for e in self.elements
                if self._geq[self.index[e]][iw] and self._geq[iv][self.index[e]]]

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"ColoredPoset({self.family}, {self.params}, {len(self)} elements)"


# ---------------------------------------------------------------------------
# Builders.
# ---------------------------------------------------------------------------

def build_shifted(alpha: Partition) -> ColoredPoset:
    """Shifted shape S(alpha) with its d-complete coloring."""
    if not alpha.is_strict() or alpha.length() == 0:
        raise ValueError("shifted shapes need a nonempty strict partition")
    cells = [(i, j) for i in range(1, alpha.length() + 1)
             for j in range(i, alpha[i] + i)]

    def color_of(e):
        i, j = e
        if i < j:
            return color_name(j - i)
        return color_name(0, primed=(i % 2 == 0))

    return ColoredPoset("shifted", {"alpha": alpha}, cells,
                        lambda e: {1}, color_of)


def build_bird(alpha: Partition, beta: Partition, f: int) -> ColoredPoset:
    """Bird: head + two shifted wings + tail hanging under the branch cell."""
    if alpha.length() != 2 or not alpha.is_strict():
        raise ValueError("bird needs a strict alpha of length 2")
    if beta.length() != 2 or not beta.is_strict():
        raise ValueError("bird needs a strict beta of length 2")
    if f < 1:
        raise ValueError("bird needs f >= 1")
    head = [(1, j) for j in range(-f + 1, 2)]
    right = [(i, j) for i in (1, 2) for j in range(i, alpha[i] + i)]
    left = [(i, j) for j in (1, 2) for i in range(j, beta[j] + j)]
    tail = [(i, i) for i in range(2, f + 3)]
    elements = set(head) | set(right) | set(left) | set(tail)
    tail_only = set(tail) - set(right) - set(left)

    def block_of(e):
        blocks = set()
        if e not in tail_only:
            blocks.add(1)  # head + both wings
        if e[0] == e[1] and e[0] >= 2:
            blocks.add(2)  # tail diagonal, shares (2,2) with the wings
        return blocks

    def color_of(e):
        i, j = e
        if i < j:
            return color_name(j - i)
        if 1 <= j < i:
            return color_name(i - j, primed=True)
        if i == 1 and j <= 1:
            return color_name(j - 1)
        return color_name(-i + 2)  # tail diagonal, includes (2,2) -> 0

    return ColoredPoset("bird", {"alpha": alpha, "beta": beta, "f": f},
                        elements, block_of, color_of)


def build_banner(alpha: Partition, f: int) -> ColoredPoset:
    """Banner: head + four-row shifted wing + tail under (3,3) in column 3."""
    if alpha.length() != 4 or not alpha.is_strict():
        raise ValueError("banner needs a strict alpha of length 4")
    if f < 2:
        raise ValueError("banner needs f >= 2")
    head = [(1, j) for j in range(-f + 2, 2)]
    wing = [(i, j) for i in range(1, 5) for j in range(i, alpha[i] + i)]
    tail = [(i, 3) for i in range(3, f + 3)]
    elements = set(head) | set(wing) | set(tail)
    tail_set = set(tail)
    wing_set = set(wing) | set(head)

    def block_of(e):
        blocks = set()
        if e in wing_set:
            blocks.add(1)
        if e in tail_set:
            blocks.add(2)
        return blocks

    def color_of(e):
        i, j = e
        if i != j:
            return color_name(j - i)
        return color_name(0, primed=(i % 2 == 0))

    return ColoredPoset("banner", {"alpha": alpha, "f": f},
                        elements, block_of, color_of)


def build_family(family: str, alpha: Partition, beta: Partition | None = None,
                 f: int | None = None) -> ColoredPoset:
    if family == "shifted":
        return build_shifted(alpha)
    if family == "bird":
        if beta is None or f is None:
            raise ValueError("bird needs alpha, beta and f")
        return build_bird(alpha, beta, f)
    if family == "banner":
        if f is None:
            raise ValueError("banner needs alpha and f")
        return build_banner(alpha, f)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Double-tailed diamond intervals and the d-completeness test.
# ---------------------------------------------------------------------------

class DkInterval:
    """[w, v] isomorphic to d_k(1): one incomparable pair plus two chains."""

    __slots__ = ("bottom", "top", "k", "sides")

    def __init__(self, bottom, top, k, sides):
        self.bottom = bottom
        self.top = top
        self.k = k
        self.sides = frozenset(sides)

    def __repr__(self):
        return f"DkInterval(k={self.k}, [{self.bottom}, {self.top}])"

    def __eq__(self, other):
        return (self.bottom, self.top, self.k, self.sides) == \
            (other.bottom, other.top, other.k, other.sides)

    def __hash__(self):
        return hash((self.bottom, self.top, self.k, self.sides))


def _diamond_shape(poset: ColoredPoset, members):
    """Classify a convex set: (k, sides, chain) if shaped like d_k(1)."""
    incomp = [(a, b) for idx, a in enumerate(members) for b in members[idx + 1:]
              if not poset.le(a, b) and not poset.le(b, a)]
    if len(incomp) != 1:
        return None
    x, y = incomp[0]
    chain = [e for e in members if e not in (x, y)]
    below = [e for e in chain if poset.le(e, x)]
    above = [e for e in chain if poset.le(x, e)]
    if len(below) + len(above) != len(chain):
        return None
    if any(not poset.le(e, y) for e in below):
        return None
    if any(not poset.le(y, e) for e in above):
        return None
    return (x, y), below, above


def find_dk_intervals(poset: ColoredPoset) -> list[DkInterval]:
    """All intervals isomorphic to some d_k(1), k >= 3."""
    out = []
    for w in poset.elements:
        for v in poset.elements:
            if w == v or not poset.le(w, v):
                continue
            members = poset.interval(w, v)
            size = len(members)
            if size < 4 or size % 2 != 0:
                continue
            k = (size + 2) // 2
            shape = _diamond_shape(poset, members)
            if shape is None:
                continue
            (x, y), below, above = shape
            if len(below) == k - 2 and len(above) == k - 2:
                out.append(DkInterval(w, v, k, (x, y)))
    return out


def _find_dk_minus(poset: ColoredPoset):
    """All d_k^- configurations: (k, elements, maximal elements)."""
    out = []
    # k = 3: any w covered by two distinct elements
    for w in poset.elements:
        ups = poset.upper_covers(w)
        for i in range(len(ups)):
            for j in range(i + 1, len(ups)):
                members = frozenset((w, ups[i], ups[j]))
                out.append((3, members, frozenset((ups[i], ups[j])), w))
    # k >= 4: intervals shaped like d_k(1) minus its top
    for w in poset.elements:
        for u in poset.elements:
            if w == u or not poset.le(w, u):
                continue
            members = poset.interval(w, u)
            size = len(members)
            if size < 5 or size % 2 == 0:
                continue
            k = (size + 3) // 2
            shape = _diamond_shape(poset, members)
            if shape is None:
                continue
            sides, below, above = shape
            if len(below) == k - 2 and len(above) == k - 3:
                out.append((k, frozenset(members), frozenset((u,)), w))
    return out


def d_complete_check(poset: ColoredPoset):
    """Exhaustive (D1)-(D3) verification; returns (ok, failure_reason)."""
    intervals = find_dk_intervals(poset)
    by_top = {}
    for iv in intervals:
        by_top.setdefault(iv.top, []).append(iv)

    minus = _find_dk_minus(poset)
    for k, members, maxima, w in minus:
        completed = False
        for v in poset.elements:
            if v in members:
                continue
            if not all(any(lo == m for lo in poset.lower_covers(v))
                       for m in maxima):
                continue
            candidate = poset.interval(w, v)
            if set(candidate) != set(members) | {v}:
                continue
            if any(iv.bottom == w and iv.top == v and iv.k == k
                   for iv in by_top.get(v, [])):
                completed = True
                break
        if not completed:
            return False, f"(D1) fails for d_{k}^- at bottom {w}"

    for iv in intervals:
        members = set(poset.interval(iv.bottom, iv.top))
        for u in poset.lower_covers(iv.top):
            if u not in members:
                return False, f"(D2) fails for {iv}: top covers {u} outside"

    seen = {}
    for k, members, maxima, w in minus:
        key = (k, frozenset(members - {w}))
        if key in seen and seen[key] != members:
            return False, f"(D3) fails: d_{k}^- duplicated above {w}"
        seen[key] = members
    return True, None


# ---------------------------------------------------------------------------
# Hook monomials: the diamond recursion and the closed-form tables.
# ---------------------------------------------------------------------------

def _mono_mul(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, e in b.items():
        s = out.get(k, 0) + sign * e
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def hook_monomials(poset: ColoredPoset, verify_choices: bool = True) -> dict:
    """Hook monomial of every element by the bottom-up diamond recursion.

    Elements topping a d_k-interval get hook(x) hook(y) / hook(w); for
    d-complete posets the result is independent of the chosen interval,
    which is asserted when verify_choices is set.
    """
    intervals = find_dk_intervals(poset)
    by_top = {}
    for iv in intervals:
        by_top.setdefault(iv.top, []).append(iv)
    hooks = {}
    for v in sorted(poset.elements, key=lambda e: -poset.rank[e]):
        tops = by_top.get(v)
        if not tops:
            mono = {}
            for w in poset.downset(v):
                mono = _mono_mul(mono, {poset.color[w]: 1})
            hooks[v] = mono
            continue
        tops = sorted(tops, key=lambda iv: -iv.k)
        results = []
        for iv in (tops if verify_choices else tops[:1]):
            x, y = sorted(iv.sides)
            mono = _mono_mul(_mono_mul(hooks[x], hooks[y]), hooks[iv.bottom], -1)
            results.append(mono)
        if verify_choices and any(r != results[0] for r in results[1:]):
            raise AssertionError(f"diamond rule disagrees at {v}")
        if any(e < 0 for e in results[0].values()):
            raise ValueError(f"negative hook exponent at {v}")
        hooks[v] = results[0]
    return hooks


def _alias_tables(poset: ColoredPoset):
    """The w / x-tilde / y-tilde / z-tilde alias monomials of each family."""
    fam = poset.family
    if fam == "shifted":
        alpha = poset.params["alpha"]
        r = alpha.length()
        n = alpha[1]
        if r % 2 == 1:
            w = {"z0p": 1, "z0": -1}
            zt = {i: _range_mono(["z0"] + [color_name(k) for k in range(1, i)])
                  for i in range(1, n + 1)}
        else:
            w = {"z0": 1, "z0p": -1}
            zt = {i: _range_mono(["z0p"] + [color_name(k) for k in range(1, i)])
                  for i in range(1, n + 1)}
        return {"w": w, "zt": zt, "n": n}
    if fam == "bird":
        alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
        m, n = alpha[1], beta[1]
        xt = {i: _range_mono(["z0" if k == 0 else color_name(-k)
                              for k in range(i, f + 1)]) for i in range(0, f + 1)}
        yt = {i: _range_mono([color_name(k, True) for k in range(1, i)])
              for i in range(1, n + 1)}
        zt = {i: _range_mono([color_name(k) for k in range(1, i)])
              for i in range(1, m + 1)}
        return {"xt": xt, "yt": yt, "zt": zt, "m": m, "n": n, "f": f}
    if fam == "banner":
        alpha, f = poset.params["alpha"], poset.params["f"]
        n = alpha[1]
        w = {"z0": 1, "z0p": -1}
        xt = {i: _range_mono(["z0" if k == 1 else color_name(-k + 1)
                              for k in range(i, f + 1)]) for i in range(1, f + 1)}
        zt = {i: _range_mono(["z0p"] + [color_name(k) for k in range(1, i)])
              for i in range(1, n + 1)}
        return {"w": w, "xt": xt, "zt": zt, "n": n, "f": f}
    raise ValueError(f"no closed form for family {fam!r}")


def _range_mono(names) -> dict:
    out = {}
    for nm in names:
        out[nm] = out.get(nm, 0) + 1
    return out


def _complement(alpha: Partition, n: int) -> Partition:
    present = set(alpha.parts)
    return Partition(sorted((k for k in range(1, n + 1) if k not in present),
                            reverse=True))


def hook_monomials_closed_form(poset: ColoredPoset) -> dict:
    """Hook monomials from the per-family product tables."""
    fam = poset.family
    al = _alias_tables(poset)
    hooks = {}
    if fam == "shifted":
        alpha = poset.params["alpha"]
        r, n = alpha.length(), al["n"]
        comp = _complement(alpha, n)
        for (i, j) in poset.elements:
            if j < r:
                mono = _mono_mul(al["w"], al["zt"][alpha[i]])
                mono = _mono_mul(mono, al["zt"][alpha[j + 1]])
            elif j == r:
                mono = dict(al["zt"][alpha[i]])
            else:
                mono = _mono_mul(al["zt"][alpha[i]],
                                 al["zt"][comp[alpha[1] - j + 1]], -1)
            hooks[(i, j)] = mono
        return hooks
    if fam == "bird":
        alpha, beta, f = (poset.params[k] for k in ("alpha", "beta", "f"))
        m, n = al["m"], al["n"]
        compa, compb = _complement(alpha, m), _complement(beta, n)
        for (i, j) in poset.elements:
            if i == 1 and j <= 0:
                mono = _mono_mul(_mono_mul(al["xt"][0], al["xt"][0]),
                                 al["xt"][-j + 1], -1)
                for part in (beta[1], beta[2]):
                    mono = _mono_mul(mono, al["yt"][part])
                for part in (alpha[1], alpha[2]):
                    mono = _mono_mul(mono, al["zt"][part])
            elif 1 <= i <= 2 and 1 <= j <= 2:
                mono = _mono_mul(al["xt"][0], al["yt"][beta[j]])
                mono = _mono_mul(mono, al["zt"][alpha[i]])
            elif 1 <= i <= 2 < j:
                mono = _mono_mul(al["zt"][alpha[i]],
                                 al["zt"][compa[alpha[1] - j + 1]], -1)
            elif 1 <= j <= 2 < i:
                mono = _mono_mul(al["yt"][beta[j]],
                                 al["yt"][compb[beta[1] - i + 1]], -1)
            else:  # tail
                mono = dict(al["xt"][i - 2])
            hooks[(i, j)] = mono
        return hooks
    if fam == "banner":
        alpha, f = poset.params["alpha"], poset.params["f"]
        n = al["n"]
        comp = _complement(alpha, n)
        for (i, j) in poset.elements:
            if i == 1 and j <= 0:
                mono = _mono_mul(_mono_mul(al["xt"][2], al["xt"][2]),
                                 al["xt"][-j + 2], -1)
                mono = _mono_mul(mono, al["w"])
                mono = _mono_mul(mono, al["w"])
                for part in alpha.parts:
                    mono = _mono_mul(mono, al["zt"][part])
            elif i <= j < 4 and not (j == 3 and i > 3):
                mono = _mono_mul(al["w"], al["xt"][2])
                mono = _mono_mul(mono, al["zt"][alpha[i]])
                mono = _mono_mul(mono, al["zt"][alpha[j + 1]])
            elif i <= j == 4:
                mono = dict(al["zt"][alpha[i]])
            elif i <= 4 < j:
                mono = _mono_mul(al["zt"][alpha[i]],
                                 al["zt"][comp[alpha[1] - j + 1]], -1)
            else:  # tail (i, 3) with i > 3
                mono = dict(al["xt"][i - 2])
            hooks[(i, j)] = mono
        return hooks
    raise ValueError(f"no closed form for family {fam!r}")


# ---------------------------------------------------------------------------
# P-partition enumeration.
# ---------------------------------------------------------------------------

def enumerate_p_partitions(poset: ColoredPoset, bound: int):
    """All order-reversing maps P -> N of weight <= bound, deterministically.

    Elements are filled top-down along a fixed linear extension; each value
    is at least the maximum over the upper covers.
    """
    order = sorted(poset.elements, key=lambda e: (poset.rank[e], e))
    uppers = {e: [u for u in poset.upper_covers(e)] for e in order}
    values = {}

    def rec(pos, used):
        if pos == len(order):
            yield dict(values)
            return
        e = order[pos]
        lo = max((values[u] for u in uppers[e]), default=0)
        for v in range(lo, bound - used + 1):
            values[e] = v
            yield from rec(pos + 1, used + v)
        values.pop(e, None)

    yield from rec(0, 0)
