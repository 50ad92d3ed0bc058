"""Homotopy Lie algebras of augmented DGAs.

``quillen_G`` dualises a finite DGA with A^0 = Q into a free graded Lie
algebra with a degree -1 differential; ``pi_n`` reads off
pi_n(A) = H_{n-1} G(A) after cutting the Lie algebra at a bracket length.

Generators: one x_i for each basis vector a_i of A^{>=1}, in chain degree
|a_i| - 1 and with the weight of a_i.  Writing d a_j = sum_i D^i_j a_i and
a_j a_k = sum_i c^i_{jk} a_i, the differential is

    d x_i = -(-1)^{|a_i|} ( sum_j D^i_j x_j
                            + 1/2 sum_{j,k} (-1)^{|x_j||a_k|} c^i_{jk} [x_j, x_k] ),

which squares to zero exactly when A is a DGA; this is asserted on every
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .dga import DGA
from .errors import InvariantError, RejectionError, TruncationError
from .exact import LinearMap, Subspace, relative_quotient
from .freelie import FreeLie, build_blocks


@dataclass
class LiePresentation:
    lie: FreeLie
    sources: tuple            # DGA basis index behind each generator
    differential: dict        # generator -> element of the tensor algebra
    cap: int
    d_squared_zero: bool
    _blocks: dict = field(default_factory=dict, repr=False)   # degree -> blocks up to cap

    @property
    def generator_degrees(self):
        return self.lie.degrees

    def d(self, u: dict) -> dict:
        return self.lie.derivation(self.differential, -1)(u)

    def blocks_in_degree(self, m: int) -> dict:
        """Basis blocks {(length, m): block} up to the presentation's cap, built on demand."""
        if m not in self._blocks:
            self._blocks[m] = build_blocks(self.lie, self.cap, {m}) if m >= 0 else {}
        return self._blocks[m]


def quillen_G(A: DGA, cap: int = 6) -> LiePresentation:
    if A.unit is None or A.indices_in_degree(0) != [A.unit]:
        raise RejectionError("G(A) needs A^0 to be the ground field",
                             witness={"degree_zero": A.indices_in_degree(0)})
    if any(x < 0 for x in A.degrees):
        raise RejectionError("negative degrees are not allowed")
    if cap < 1:
        raise TruncationError("bracket-length cap must be at least 1", witness=cap)
    pos = [i for i, deg in enumerate(A.degrees) if deg >= 1]
    index = {a: t for t, a in enumerate(pos)}
    degs = [A.degrees[a] - 1 for a in pos]
    weights = [A.weights[a] for a in pos] if A.weights is not None else None
    lie = FreeLie(degs, weights)
    half = mpq(1, 2)
    diff = {}
    for t, ai in enumerate(pos):
        out = {}
        for t2, aj in enumerate(pos):
            c = A.diff.rows[ai][aj]
            if c:
                out = lie.add(out, lie.gen(t2), c)
        for (aj, ak), prod in A.products:
            if aj not in index or ak not in index:
                continue
            c = dict(prod).get(ai, 0)
            if not c:
                continue
            j, k = index[aj], index[ak]
            s = -1 if (degs[j] * A.degrees[ak]) % 2 else 1
            out = lie.add(out, lie.bracket(lie.gen(j), lie.gen(k)), half * s * c)
        sign = 1 if A.degrees[ai] % 2 else -1     # -(-1)^{|a_i|}
        diff[t] = lie.scale(out, sign)
    der = lie.derivation(diff, -1)
    dd_zero = all(not der(diff[t]) for t in diff)
    if not dd_zero:
        bad = next(t for t in diff if der(diff[t]))
        raise InvariantError("differential on G(A) does not square to zero", witness={"generator": bad})
    return LiePresentation(lie, tuple(pos), diff, cap, dd_zero)


# -- homology of the truncated complex ---------------------------------------------------

class _TruncatedComplex:
    """Chain complex G / (brackets of length > cap), graded by chain degree."""

    def __init__(self, pres: LiePresentation, cap: int):
        if cap > pres.cap:
            raise TruncationError("cap exceeds the presentation's cap", witness=cap)
        self.pres, self.cap = pres, cap
        self.lie = pres.lie
        self._items = {}
        self._dcache = {}

    def blocks(self, m: int):
        return sorted((k, b) for k, b in self.pres.blocks_in_degree(m).items() if k[0] <= self.cap)

    def items(self, m: int):
        if m not in self._items:
            self._items[m] = [(length, lab, el) for (length, _), b in self.blocks(m)
                              for lab, el in zip(b.labels, b.elements)]
        return self._items[m]

    def dim(self, m: int) -> int:
        return len(self.items(m))

    def coords(self, u: dict, m: int):
        """Coordinates in the degree-m basis of u truncated at the cap."""
        out = []
        by_len = {}
        for w, c in u.items():
            if len(w) <= self.cap:
                by_len.setdefault(len(w), {})[w] = c
        for (length, _), b in self.blocks(m):
            part = by_len.get(length, {})
            out.extend(b.coordinates(part) if part else (mpq(0),) * len(b.labels))
        return tuple(out)

    def d(self, m: int) -> LinearMap:
        """d : C_m -> C_{m-1}."""
        if m in self._dcache:
            return self._dcache[m]
        src = self.items(m)
        cols = [self.coords(self.pres.d(el), m - 1) for _, _, el in src]
        tgt = self.dim(m - 1)
        mat = LinearMap.from_columns(cols, tgt) if cols else LinearMap.zero(tgt, 0)
        self._dcache[m] = mat
        return mat

    def homology(self, m: int):
        """(cycles, boundaries, quotient) in degree m."""
        n = self.dim(m)
        Z = self.d(m).kernel() if n else Subspace.zero(0)
        B = self.d(m + 1).image() if n else Subspace.zero(0)
        return Z, B, relative_quotient(Z, B)

    def element(self, vec, m: int) -> dict:
        out = {}
        for c, (_, _, el) in zip(vec, self.items(m)):
            if c:
                out = self.lie.add(out, el, c)
        return out


@dataclass(frozen=True)
class PiReport:
    n: int
    rank: int
    weights: dict | None            # {weight: dim} of gr of the induced weight filtration
    weight_filtration: str | None   # "increasing" | "decreasing" | "graded" | None
    stability: dict                 # {"ranks": [...], "stable_from": c, "stable": bool, "cap": L}
    hurewicz_rank: int
    cohomology_dim: int
    brackets: tuple                 # ((a, b, rank of [pi_a, pi_b] -> pi_n), ...)

    @property
    def stable(self) -> bool:
        return self.stability["stable"]


def _weight_direction(pres: LiePresentation):
    w = pres.lie.weights
    if w is None:
        return None
    up = down = True
    for t, img in pres.differential.items():
        for word in img:
            ww = pres.lie.word_weight(word)
            if ww < w[t]:
                up = False
            if ww > w[t]:
                down = False
    if up and down:
        return "graded"
    if up:
        return "decreasing"
    if down:
        return "increasing"
    return None


def _gr_weights(cx: _TruncatedComplex, m: int, direction: str) -> dict:
    Z, B, _ = cx.homology(m)
    items = cx.items(m)
    n = len(items)
    wts = [cx.lie.word_weight(next(iter(el))) for _, _, el in items]
    out = {}
    levels = sorted(set(wts))
    if direction == "decreasing":
        def step(k):
            return Subspace.coordinate(n, [i for i, x in enumerate(wts) if x >= k])
        for k in levels:
            a = ((Z & step(k)) + B).dim
            b = ((Z & step(k + 1)) + B).dim
            if a > b:
                out[k] = a - b
    else:
        def step(k):
            return Subspace.coordinate(n, [i for i, x in enumerate(wts) if x <= k])
        for k in levels:
            a = ((Z & step(k)) + B).dim
            b = ((Z & step(k - 1)) + B).dim
            if a > b:
                out[k] = a - b
    return out


def _hurewicz(A: DGA, pres: LiePresentation, cx: _TruncatedComplex, n: int):
    """Rank of pi_n -> H^n(A)^∨ given by the length-one part of cycles."""
    idx = A.indices_in_degree(n)
    Zc = A.restricted_diff(n).kernel()
    Bc = A.restricted_diff(n - 1).image() if n > 0 else Subspace.zero(len(idx))
    hq = relative_quotient(Zc, Bc)
    Z, B, q = cx.homology(n - 1)
    reps = [cx.element(col, n - 1) for col in q.section.columns()]
    gen_of = {a: t for t, a in enumerate(pres.sources)}
    rows = []
    for cocycle in hq.section.columns():
        row = []
        for z in reps:
            val = mpq(0)
            for k, a in enumerate(idx):
                val += cocycle[k] * z.get((gen_of[a],), 0)
            row.append(val)
        rows.append(tuple(row))
    rank = LinearMap(tuple(rows), len(reps), len(rows)).rank() if rows and reps else 0
    return rank, hq.dim


def _bracket_rank(cx: _TruncatedComplex, a: int, b: int, n: int) -> int:
    """Rank of the induced bracket pi_a x pi_b -> pi_n, a + b = n + 1."""
    _, _, qa = cx.homology(a - 1)
    _, _, qb = cx.homology(b - 1)
    _, _, qn = cx.homology(n - 1)
    if not (qa.dim and qb.dim and qn.dim):
        return 0
    ra = [cx.element(c, a - 1) for c in qa.section.columns()]
    rb = [cx.element(c, b - 1) for c in qb.section.columns()]
    cols = []
    for x in ra:
        for y in rb:
            br = cx.lie.bracket(x, y)
            cols.append(qn.projection.apply(cx.coords(br, n - 1)))
    return LinearMap.from_columns(cols, qn.dim).rank()


def pi_n(A: DGA, n: int, cap: int = 6, pres: LiePresentation | None = None) -> PiReport:
    if n < 1:
        raise ValueError("homotopy groups are indexed from 1")
    pres = pres or quillen_G(A, cap)
    ranks = []
    for c in range(1, cap + 1):
        cx = _TruncatedComplex(pres, c)
        Z, B, q = cx.homology(n - 1)
        ranks.append(q.dim)
    stable_from = cap
    while stable_from > 1 and ranks[stable_from - 2] == ranks[-1]:
        stable_from -= 1
    stability = {"ranks": ranks, "stable_from": stable_from, "stable": stable_from < cap, "cap": cap}
    cx = _TruncatedComplex(pres, cap)
    direction = _weight_direction(pres)
    weights = _gr_weights(cx, n - 1, direction) if direction else None
    h_rank, h_dim = _hurewicz(A, pres, cx, n)
    brackets = []
    for a in range(1, n + 1):
        b = n + 1 - a
        if a <= b and b >= 1:
            brackets.append((a, b, _bracket_rank(cx, a, b, n)))
    return PiReport(n, ranks[-1], weights, direction, stability, h_rank, h_dim, tuple(brackets))


def homotopy_ranks(A: DGA, max_n: int, cap: int = 6) -> dict:
    pres = quillen_G(A, cap)
    return {n: pi_n(A, n, cap, pres) for n in range(1, max_n + 1)}
