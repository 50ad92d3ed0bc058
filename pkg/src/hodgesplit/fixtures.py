"""Named example objects and seeded random generators.

Everything here is deterministic given the ``random.Random`` instance passed
in, so test suites and demo scripts reproduce byte for byte.
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .exact import QI, LinearMap, Subspace
from .hodge import MHS, BigradedSpace, WeightGradedSpace
from .splittings import SHSObject, STSObject, _beta_keys_for, _Frame


def small_rational(rng: random.Random, num: int = 3, den: int = 2):
    return mpq(rng.randint(-num, num), rng.randint(1, den))


def random_invertible(rng: random.Random, n: int, entries: int = 2) -> LinearMap:
    while True:
        m = LinearMap.from_rows([[rng.randint(-entries, entries) for _ in range(n)] for _ in range(n)], n)
        if n == 0 or m.rank() == n:
            return m


# -- Hodge side -------------------------------------------------------------------

def kummer_grading() -> BigradedSpace:
    """e0 of type (0,0) and e1 of type (-1,-1)."""
    return BigradedSpace.build(2, {(0, 0): Subspace.span([(1, 0)], 2),
                                   (-1, -1): Subspace.span([(0, 1)], 2)})


def kummer_shs(c) -> SHSObject:
    E = LinearMap.from_rows([[0, 0], [c, 0]])
    return SHSObject.build(kummer_grading(), {(0, 0): E})


def kummer_E() -> LinearMap:
    return LinearMap.from_rows([[0, 0], [1, 0]])


def random_bigrading(rng: random.Random, max_dim: int = 8, weights=(-6, 6)) -> BigradedSpace:
    d = rng.randint(1, max_dim)
    types = []
    while len(types) < d:
        w = rng.randint(*weights)
        p = rng.randint(w // 2 - 2, w // 2 + 2)
        q = w - p
        if p == q:
            types.append((p, q))
        elif len(types) + 2 <= d:
            types.extend([(p, q), (q, p)])
    R = random_invertible(rng, d).columns()
    cols, k = {}, 0
    while k < d:
        p, q = types[k]
        if p == q:
            cols.setdefault((p, q), []).append(R[k])
            k += 1
        else:
            v = tuple(QI(x, y) for x, y in zip(R[k], R[k + 1]))
            cols.setdefault((p, q), []).append(v)
            cols.setdefault((q, p), []).append(tuple(x.conj() for x in v))
            k += 2
    return BigradedSpace.build(d, {t: Subspace.span(vs, d) for t, vs in cols.items()})


def random_shs(rng: random.Random, max_dim: int = 8, weights=(-6, 6), density: float = 0.6) -> SHSObject:
    g = random_bigrading(rng, max_dim, weights)
    frame = _Frame(g)
    beta_local = {}
    for a, b in _beta_keys_for(g):
        if a > b:
            continue
        for elt in frame.beta_spanning(a, b):
            if rng.random() > density:
                continue
            c = small_rational(rng)
            for key, loc in elt.items():
                beta_local[key] = beta_local[key] + loc.scale(c) if key in beta_local else loc.scale(c)
    return SHSObject.build(g, {k: frame.to_ambient(v) for k, v in beta_local.items()})


def single_component_shs(rng: random.Random, max_dim: int = 6, weights=(-4, 4)) -> SHSObject:
    """A random object whose beta has exactly one conjugation-closed component."""
    for _ in range(200):
        s = random_shs(rng, max_dim, weights)
        keys = sorted({tuple(sorted(k)) for k, _ in s.beta})
        if keys:
            a, b = keys[rng.randrange(len(keys))]
            keep = {(a, b), (b, a)}
            return SHSObject.build(s.grading, {k: m for k, m in s.beta if k in keep})
    return s


def transport_mhs(m: MHS, g: LinearMap) -> MHS:
    """Image of an MHS under a real linear automorphism."""
    return MHS(m.dim, m.W.image_under(g), m.F.image_under(g.complexify()))


# -- twistor side ------------------------------------------------------------------

def pure_sts(dim: int, weight: int) -> STSObject:
    return STSObject.build(WeightGradedSpace.build(dim, {weight: Subspace.full(dim)}))


def random_sts(rng: random.Random, max_dim: int = 6, weights=(-4, 4), density: float = 0.5) -> STSObject:
    d = rng.randint(1, max_dim)
    ws = [rng.randint(*weights) for _ in range(d)]
    R = random_invertible(rng, d).columns()
    pieces = {}
    for w, c in zip(ws, R):
        pieces.setdefault(w, []).append(c)
    g = WeightGradedSpace.build(d, {w: Subspace.span(v, d) for w, v in pieces.items()})
    B, labels = g.adapted_basis()
    Binv = B.inverse()
    beta = {}
    for i in range(d):
        for j in range(d):
            drop = labels[j] - labels[i]
            if drop < 2:
                continue
            for m in range(drop - 1):
                if rng.random() > density:
                    continue
                key = (m, drop - 2 - m)
                e = LinearMap.from_rows([[small_rational(rng) if (r, s) == (i, j) else 0
                                          for s in range(d)] for r in range(d)])
                beta[key] = beta[key] + e if key in beta else e
    return STSObject.build(g, {k: B @ v @ Binv for k, v in beta.items()})


# -- filtered complexes ---------------------------------------------------------------

def random_filtered_complex(rng: random.Random, max_total: int = 20, degrees: int = 4, levels=(0, 3)):
    """A bounded filtered complex assembled from random bars, then scrambled.

    Each bar is either a single cocycle or a pair x -> y with dx = y and
    level(y) <= level(x).  A random filtration-preserving change of basis in
    every degree hides the bar decomposition.
    """
    from .spectral import FilteredComplex
    from .filtrations import INC, FilteredSpace

    total = rng.randint(1, max_total)
    basis = {n: [] for n in range(degrees)}   # level per basis vector
    arrows = []                               # (n, index in C^n, index in C^{n+1})
    while sum(len(v) for v in basis.values()) < total:
        n = rng.randrange(degrees)
        s = rng.randint(*levels)
        if n + 1 < degrees and rng.random() < 0.6 and sum(len(v) for v in basis.values()) + 2 <= total:
            t = rng.randint(levels[0], s)
            basis[n].append(s)
            basis[n + 1].append(t)
            arrows.append((n, len(basis[n]) - 1, len(basis[n + 1]) - 1))
        else:
            basis[n].append(s)
    dims = [len(basis[n]) for n in range(degrees)]
    raw = []
    for n in range(degrees - 1):
        rows = [[0] * dims[n] for _ in range(dims[n + 1])]
        for m, i, j in arrows:
            if m == n:
                rows[j][i] = 1
        raw.append(LinearMap.from_rows(rows, dims[n]) if dims[n + 1] else LinearMap.zero(0, dims[n]))
    # filtration-preserving automorphisms: column j may pick up columns of lower or equal level
    gs = []
    for n in range(degrees):
        d, lv = dims[n], basis[n]
        rows = [[(1 if i == j else (rng.randint(-1, 1) if lv[i] <= lv[j] and i != j else 0))
                 for j in range(d)] for i in range(d)]
        g = LinearMap.from_rows(rows, d) if d else LinearMap.zero(0, 0)
        while d and g.rank() < d:
            rows = [[(1 if i == j else (rng.randint(-1, 1) if lv[i] <= lv[j] and i != j else 0))
                     for j in range(d)] for i in range(d)]
            g = LinearMap.from_rows(rows, d)
        gs.append(g)
    diffs = []
    for n in range(degrees - 1):
        if dims[n] and dims[n + 1]:
            diffs.append(gs[n + 1] @ raw[n] @ gs[n].inverse())
        else:
            diffs.append(LinearMap.zero(dims[n + 1], dims[n]))
    filt = []
    for n in range(degrees):
        d, lv = dims[n], basis[n]
        steps = {}
        for s in range(levels[0] - 1, levels[1] + 1):
            cols = [gs[n].columns()[j] for j in range(d) if lv[j] <= s]
            steps[s] = Subspace.span(cols, d)
        filt.append(FilteredSpace.from_steps(d, INC, steps))
    return FilteredComplex.build(0, dims, diffs, filt)
