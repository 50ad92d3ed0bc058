"""Thom-Whitney totalisation of level-truncated cosimplicial DGAs.

Polynomial forms on the n-simplex are written in the coordinates t_1..t_n
(with t_0 = 1 - t_1 - ... - t_n).  A monomial is a pair (exponents, dt-set);
its *polynomial degree* counts every t and every dt once.  Face and
degeneracy pullbacks are affine substitutions, so they never raise this
degree, and neither does d.  Capping at degree P therefore gives a
subcomplex Th_P of the totalisation that is cut out by finitely many linear
equations.  The cap is compared against P + 1 to flag instability.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping

from gmpy2 import mpq

from .dga import DGA
from .errors import InvariantError, TruncationError
from .exact import LinearMap, Subspace, solve


# -- polynomial forms ----------------------------------------------------------------------

def _exponents(n: int, max_total: int):
    if n == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in _exponents(n - 1, max_total - first):
            yield (first,) + rest


class Forms:
    """Polynomial forms on the n-simplex of polynomial degree <= cap."""

    def __init__(self, n: int, cap: int):
        self.n, self.cap = n, cap
        monos = []
        for k in range(n + 1):
            for S in combinations(range(n), k):
                for e in _exponents(n, cap - k):
                    monos.append((e, S))
        monos.sort(key=lambda m: (len(m[1]), sum(m[0]) + len(m[1]), m[1], m[0]))
        self.monos = monos
        self.index = {m: i for i, m in enumerate(monos)}

    def degree(self, mono) -> int:
        return len(mono[1])

    def one(self):
        return ((0,) * self.n, ())

    def d(self, mono) -> dict:
        e, S = mono
        out = {}
        for k in range(self.n):
            if e[k] == 0 or k in S:
                continue
            e2 = e[:k] + (e[k] - 1,) + e[k + 1:]
            pos = sum(1 for s in S if s < k)
            S2 = tuple(sorted(S + (k,)))
            key = (e2, S2)
            out[key] = out.get(key, 0) + (-1) ** pos * e[k]
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def mul(m1, m2):
        """(sign, monomial) or None when the dt-sets overlap."""
        (e1, S1), (e2, S2) = m1, m2
        if set(S1) & set(S2):
            return None
        inversions = sum(1 for a in S1 for b in S2 if a > b)
        e = tuple(x + y for x, y in zip(e1, e2))
        return (-1) ** inversions, (e, tuple(sorted(S1 + S2)))


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _affine_from_barycentric(rows, m: int):
    """Affine expressions in s_1..s_m for u_1..u_n given u_k = sum_j rows[k][j] s_j (barycentric)."""
    out = []
    for k in range(1, len(rows)):
        r = rows[k]
        const = r[0]
        lin = tuple(r[j] - r[0] for j in range(1, m + 1))
        out.append((const, lin))
    return out


def _pullback_matrix(src: Forms, tgt: Forms, affine) -> LinearMap:
    """Matrix of the pullback src-forms -> tgt-forms along the affine map given on coordinates."""
    m = tgt.n
    zero = (0,) * m
    polys = []
    for const, lin in affine:
        p = {}
        if const:
            p[zero] = mpq(const)
        for j, c in enumerate(lin):
            if c:
                e = tuple(1 if i == j else 0 for i in range(m))
                p[e] = p.get(e, 0) + mpq(c)
        polys.append(p)
    cols = []
    for e, S in src.monos:
        poly = {zero: mpq(1)}
        for k, ek in enumerate(e):
            for _ in range(ek):
                poly = _poly_mul(poly, polys[k])
        forms = {(): mpq(1)}
        for k in S:
            nxt = {}
            for T, c in forms.items():
                for j, a in enumerate(affine[k][1]):
                    if not a or j in T:
                        continue
                    pos = sum(1 for t in T if t > j)
                    T2 = tuple(sorted(T + (j,)))
                    nxt[T2] = nxt.get(T2, 0) + c * a * (-1) ** pos
            forms = {k2: v for k2, v in nxt.items() if v}
        col = [mpq(0)] * len(tgt.monos)
        for T, c in forms.items():
            for pe, pc in poly.items():
                col[tgt.index[(pe, T)]] += c * pc
        cols.append(tuple(col))
    return LinearMap.from_columns(cols, len(tgt.monos))


def coface_pullback(n: int, i: int, cap: int) -> LinearMap:
    """Forms on Delta^n -> forms on Delta^{n-1} along the i-th coface (vertex i omitted)."""
    rows = []
    for k in range(n + 1):
        r = [0] * n
        if k < i:
            r[k] = 1
        elif k > i:
            r[k - 1] = 1
        rows.append(r)
    return _pullback_matrix(Forms(n, cap), Forms(n - 1, cap), _affine_from_barycentric(rows, n - 1))


def codegeneracy_pullback(n: int, j: int, cap: int) -> LinearMap:
    """Forms on Delta^n -> forms on Delta^{n+1} along the j-th codegeneracy (vertices j, j+1 merged)."""
    rows = []
    for k in range(n + 1):
        r = [0] * (n + 2)
        if k < j:
            r[k] = 1
        elif k == j:
            r[j] = r[j + 1] = 1
        else:
            r[k + 1] = 1
        rows.append(r)
    return _pullback_matrix(Forms(n, cap), Forms(n + 1, cap), _affine_from_barycentric(rows, n + 1))


# -- cosimplicial input ---------------------------------------------------------------------

@dataclass(frozen=True)
class CosimplicialDGA:
    """Levels A^0..A^L with cofaces A^{n-1} -> A^n and codegeneracies A^{n+1} -> A^n.

    ``cofaces[(n, i)]`` for 1 <= n <= L, 0 <= i <= n; ``codegeneracies[(n, j)]``
    for 0 <= n < L, 0 <= j <= n.  Normalised cochains above level L are
    assumed to vanish.
    """

    levels: tuple
    cofaces: Mapping
    codegeneracies: Mapping

    @property
    def top(self) -> int:
        return len(self.levels) - 1

    def coface(self, n, i) -> LinearMap:
        return self.cofaces[(n, i)]

    def codegeneracy(self, n, j) -> LinearMap:
        return self.codegeneracies[(n, j)]

    def check(self):
        """Raise InvariantError naming the first failing identity."""
        L = self.top
        for n in range(1, L + 1):
            for i in range(n + 1):
                if (n, i) not in self.cofaces:
                    raise InvariantError("missing coface", witness=[n, i])
        for n in range(L):
            for j in range(n + 1):
                if (n, j) not in self.codegeneracies:
                    raise InvariantError("missing codegeneracy", witness=[n, j])
        # maps are morphisms of DGAs
        maps = [(("coface", n, i), self.levels[n - 1], self.levels[n], m) for (n, i), m in self.cofaces.items()]
        maps += [(("codegeneracy", n, j), self.levels[n + 1], self.levels[n], m)
                 for (n, j), m in self.codegeneracies.items()]
        for tag, A, B, m in maps:
            if m.shape != (B.dim, A.dim):
                raise InvariantError("structure map has the wrong shape", witness=list(tag))
            for c in range(A.dim):
                for r in range(B.dim):
                    if m.rows[r][c] != 0 and A.degrees[c] != B.degrees[r]:
                        raise InvariantError("structure map does not preserve degree", witness=list(tag))
            if not (m @ A.diff - B.diff @ m).is_zero():
                raise InvariantError("structure map is not a chain map", witness=list(tag))
            for a in range(A.dim):
                for b in range(A.dim):
                    lhs = m.apply(A.mul(A.e(a), A.e(b)))
                    rhs = B.mul(m.apply(A.e(a)), m.apply(A.e(b)))
                    if lhs != rhs:
                        raise InvariantError("structure map is not multiplicative", witness=list(tag) + [a, b])
        # cosimplicial identities
        for n in range(2, L + 1):
            for j in range(n + 1):
                for i in range(j):
                    if self.coface(n, j) @ self.coface(n - 1, i) != self.coface(n, i) @ self.coface(n - 1, j - 1):
                        raise InvariantError("coface identity fails", witness=[n, i, j])
        for n in range(L - 1):
            # sigma^j sigma^i = sigma^i sigma^{j+1} on A^{n+2} -> A^n, i <= j <= n
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = self.codegeneracy(n, j) @ self.codegeneracy(n + 1, i)
                    rhs = self.codegeneracy(n, i) @ self.codegeneracy(n + 1, j + 1)
                    if lhs != rhs:
                        raise InvariantError("codegeneracy identity fails", witness=[n, i, j])
        for n in range(L):
            # sigma^j : A^{n+1} -> A^n composed with delta^i : A^n -> A^{n+1}
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = self.codegeneracy(n, j) @ self.coface(n + 1, i)
                    if i in (j, j + 1):
                        rhs = LinearMap.identity(self.levels[n].dim)
                    elif n == 0:
                        continue
                    elif i < j:
                        rhs = self.coface(n, i) @ self.codegeneracy(n - 1, j - 1)
                    else:
                        rhs = self.coface(n, i - 1) @ self.codegeneracy(n - 1, j)
                    if lhs != rhs:
                        raise InvariantError("mixed cosimplicial identity fails", witness=[n, i, j])


# -- totalisation -----------------------------------------------------------------------------

@dataclass
class ThomWhitneyResult:
    poly_cap: int
    levels: int
    dims: dict              # total degree -> dim Th_P
    cohomology: dict        # total degree -> dim H(Th_P)
    stable: bool            # cohomology unchanged at poly_cap + 1
    bases: dict             # total degree -> list of families (vectors over the unknown index)
    closed_under_products: bool
    _ctx: object = None

    def as_dga(self) -> DGA:
        if not self.closed_under_products:
            raise TruncationError("Th_P is not closed under products at this cap; raise poly_cap",
                                  witness=self.poly_cap)
        return self._ctx.to_dga(self)


class _Totaliser:
    def __init__(self, C: CosimplicialDGA, cap: int):
        self.C, self.cap = C, cap
        L = C.top
        self.forms = [Forms(n, cap) for n in range(L + 1)]
        self.var = []        # (n, a, mono index)
        for n in range(L + 1):
            A = C.levels[n]
            for a in range(A.dim):
                for mi in range(len(self.forms[n].monos)):
                    self.var.append((n, a, mi))
        self.var_index = {v: k for k, v in enumerate(self.var)}
        self.face_pb = {(n, i): coface_pullback(n, i, cap) for n in range(1, L + 1) for i in range(n + 1)}
        self.degen_pb = {(n, j): codegeneracy_pullback(n, j, cap) for n in range(L) for j in range(n + 1)}

    def tdeg(self, v) -> int:
        n, a, mi = v
        return self.C.levels[n].degrees[a] + self.forms[n].degree(self.forms[n].monos[mi])

    def equations(self):
        C, L = self.C, self.C.top
        eqs = []
        # faces: (delta^i (x) 1) a_{n-1} - (1 (x) face_i^*) a_n = 0 in A^n (x) Omega_{n-1}
        for n in range(1, L + 1):
            for i in range(n + 1):
                m, pb = C.coface(n, i), self.face_pb[(n, i)]
                F = self.forms[n - 1]
                rows = {}
                for a in range(C.levels[n - 1].dim):
                    for mi in range(len(F.monos)):
                        v = self.var_index[(n - 1, a, mi)]
                        for b in range(C.levels[n].dim):
                            c = m.rows[b][a]
                            if c:
                                rows.setdefault((b, mi), {})[v] = rows.get((b, mi), {}).get(v, 0) + c
                for b in range(C.levels[n].dim):
                    for mj in range(len(self.forms[n].monos)):
                        v = self.var_index[(n, b, mj)]
                        for mi in range(len(F.monos)):
                            c = pb.rows[mi][mj]
                            if c:
                                rows.setdefault((b, mi), {})[v] = rows.get((b, mi), {}).get(v, 0) - c
                eqs.extend(rows.values())
        # degeneracies: (sigma^j (x) 1) a_{n+1} - (1 (x) degen_j^*) a_n = 0 in A^n (x) Omega_{n+1}
        for n in range(L):
            for j in range(n + 1):
                m, pb = C.codegeneracy(n, j), self.degen_pb[(n, j)]
                F = self.forms[n + 1]
                rows = {}
                for a in range(C.levels[n + 1].dim):
                    for mi in range(len(F.monos)):
                        v = self.var_index[(n + 1, a, mi)]
                        for b in range(C.levels[n].dim):
                            c = m.rows[b][a]
                            if c:
                                rows.setdefault((b, mi), {})[v] = rows.get((b, mi), {}).get(v, 0) + c
                for b in range(C.levels[n].dim):
                    for mj in range(len(self.forms[n].monos)):
                        v = self.var_index[(n, b, mj)]
                        for mi in range(len(F.monos)):
                            c = pb.rows[mi][mj]
                            if c:
                                rows.setdefault((b, mi), {})[v] = rows.get((b, mi), {}).get(v, 0) - c
                eqs.extend(rows.values())
        return [e for e in eqs if any(e.values())]

    def differential(self, vec_global: dict) -> dict:
        """d on prod_n A^n (x) Omega_n, vectors as {var index: coef}."""
        out = {}
        for g, c in vec_global.items():
            n, a, mi = self.var[g]
            A, F = self.C.levels[n], self.forms[n]
            for b in range(A.dim):
                x = A.diff.rows[b][a]
                if x:
                    t = self.var_index[(n, b, mi)]
                    out[t] = out.get(t, 0) + c * x
            s = -1 if A.degrees[a] % 2 else 1
            for mono, x in F.d(F.monos[mi]).items():
                t = self.var_index[(n, a, F.index[mono])]
                out[t] = out.get(t, 0) + s * c * x
        return {k: v for k, v in out.items() if v}

    def product(self, u: dict, v: dict):
        """Levelwise product; returns None if the result exceeds the polynomial cap."""
        out = {}
        for g1, c1 in u.items():
            n1, a, m1 = self.var[g1]
            for g2, c2 in v.items():
                n2, b, m2 = self.var[g2]
                if n1 != n2:
                    continue
                A, F = self.C.levels[n1], self.forms[n1]
                mono1, mono2 = F.monos[m1], F.monos[m2]
                res = Forms.mul(mono1, mono2)
                if res is None:
                    continue
                sgn, mono = res
                ab = A.basis_mul(a, b)
                if not ab:
                    continue
                if mono not in F.index:
                    return None
                sgn *= -1 if (F.degree(mono1) * A.degrees[b]) % 2 else 1
                for k, c in ab.items():
                    t = self.var_index[(n1, k, F.index[mono])]
                    out[t] = out.get(t, 0) + sgn * c1 * c2 * c
        return {k: x for k, x in out.items() if x}

def _to_global(vars_k, vec):
    return {vars_k[i]: c for i, c in enumerate(vec) if c}


def _coords(vars_k, basis, glob: dict):
    if not basis:
        if glob:
            raise InvariantError("element outside Th")
        return ()
    local = {g: i for i, g in enumerate(vars_k)}
    vec = [mpq(0)] * len(vars_k)
    for g, c in glob.items():
        if g not in local:
            raise InvariantError("element has the wrong degree")
        vec[local[g]] = c
    return solve(LinearMap.from_columns(basis, len(vars_k)), tuple(vec))


class _Context:
    def __init__(self, tot: _Totaliser, spaces):
        self.tot, self.spaces = tot, spaces

    def to_dga(self, res: ThomWhitneyResult) -> DGA:
        tot, spaces = self.tot, self.spaces
        C = tot.C
        flat = []           # (degree, global vector)
        for k in sorted(spaces):
            vars_k, basis = spaces[k]
            for b in basis:
                flat.append((k, _to_global(vars_k, b)))
        N = len(flat)
        pos = {}
        for i, (k, _) in enumerate(flat):
            pos.setdefault(k, []).append(i)
        rows = [[mpq(0)] * N for _ in range(N)]
        for j, (k, u) in enumerate(flat):
            du = tot.differential(u)
            if du:
                vk, bk = spaces[k + 1]
                for c, i in zip(_coords(vk, bk, du), pos[k + 1]):
                    rows[i][j] = c
        prods = {}
        for i, (k1, u) in enumerate(flat):
            for j, (k2, v) in enumerate(flat):
                uv = tot.product(u, v)
                if not uv:
                    continue
                vk, bk = spaces[k1 + k2]
                prods[(i, j)] = {p: c for c, p in zip(_coords(vk, bk, uv), pos[k1 + k2]) if c}
        unit = None
        if all(A.unit is not None for A in C.levels):
            one = {}
            for n, A in enumerate(C.levels):
                one[tot.var_index[(n, A.unit, tot.forms[n].index[tot.forms[n].one()])]] = mpq(1)
            unit = next((i for i, (_, u) in enumerate(flat) if u == one), None)
        weights = None
        if all(A.weights is not None for A in C.levels):
            ws = []
            for _, u in flat:
                wset = {C.levels[tot.var[g][0]].weights[tot.var[g][1]] for g in u}
                ws.append(wset.pop() if len(wset) == 1 else None)
            weights = ws if None not in ws else None
        diff = LinearMap.from_rows(rows, N) if N else LinearMap.zero(0, 0)
        return DGA.build([k for k, _ in flat], diff, prods, weights, unit, check=False, complete=False)


def _vertex_normalised(tot: _Totaliser, spaces):
    """Rebase every degree so that level-0 restriction is the standard basis whenever it is injective."""
    C = tot.C
    A0 = C.levels[0]
    out = {}
    for k, (vars_k, basis) in spaces.items():
        if not basis:
            out[k] = (vars_k, basis)
            continue
        idx0 = [a for a in range(A0.dim) if A0.degrees[a] == k]
        restr = []
        for b in basis:
            g = _to_global(vars_k, b)
            restr.append(tuple(g.get(tot.var_index[(0, a, 0)], mpq(0)) for a in idx0))
        R = LinearMap.from_columns(restr, len(idx0))
        if len(idx0) != len(basis) or R.rank() != len(basis):
            out[k] = (vars_k, basis)
            continue
        Rinv = R.inverse()
        B = LinearMap.from_columns(basis, len(vars_k)) @ Rinv
        out[k] = (vars_k, [tuple(c) for c in B.columns()])
    return out


def _spaces(C: CosimplicialDGA, cap: int):
    tot = _Totaliser(C, cap)
    eqs = tot.equations()
    spaces = {}
    for k in sorted({tot.tdeg(v) for v in tot.var}):
        vars_k = [i for i, v in enumerate(tot.var) if tot.tdeg(v) == k]
        local = {g: l for l, g in enumerate(vars_k)}
        rows = []
        for e in eqs:
            r = [mpq(0)] * len(vars_k)
            hit = False
            for g, c in e.items():
                if g in local and c:
                    r[local[g]] += c
                    hit = True
            if hit and any(r):
                rows.append(tuple(r))
        M = LinearMap.from_rows(rows, len(vars_k)) if rows else LinearMap.zero(0, len(vars_k))
        K = M.kernel()
        spaces[k] = (vars_k, [tuple(c) for c in K.matrix().columns()] if K.dim else [])
    return tot, _vertex_normalised(tot, spaces)


def _cohomology(tot: _Totaliser, spaces) -> dict:
    ranks = {}
    for k, (vars_k, basis) in spaces.items():
        if not basis or k + 1 not in spaces:
            ranks[k] = 0
            continue
        vk, bk = spaces[k + 1]
        cols = [_coords(vk, bk, tot.differential(_to_global(vars_k, b))) for b in basis]
        ranks[k] = LinearMap.from_columns(cols, len(bk)).rank() if bk else 0
    return {k: len(spaces[k][1]) - ranks[k] - ranks.get(k - 1, 0) for k in sorted(spaces)}


def _closed(tot: _Totaliser, spaces) -> bool:
    flat = [(k, _to_global(vk, b)) for k, (vk, bs) in spaces.items() for b in bs]
    for k1, u in flat:
        for k2, v in flat:
            if tot.product(u, v) is None:
                return False
    return True


def thom_whitney(C: CosimplicialDGA, poly_cap: int | None = None, check: bool = True) -> ThomWhitneyResult:
    """Totalise ``C`` using polynomial forms of degree <= poly_cap (default: top level + 1)."""
    if check:
        C.check()
    P = C.top + 1 if poly_cap is None else poly_cap
    if P < 0:
        raise TruncationError("polynomial cap must be non-negative", witness=P)
    tot, spaces = _spaces(C, P)
    coh = _cohomology(tot, spaces)
    tot2, spaces2 = _spaces(C, P + 1)
    coh2 = _cohomology(tot2, spaces2)
    keys = set(coh) | set(coh2)
    stable = all(coh.get(k, 0) == coh2.get(k, 0) for k in keys)
    res = ThomWhitneyResult(P, C.top, {k: len(b) for k, (_, b) in spaces.items()},
                            {k: v for k, v in coh.items()}, stable,
                            {k: [_to_global(vk, b) for b in bs] for k, (vk, bs) in spaces.items()},
                            _closed(tot, spaces))
    res._ctx = _Context(tot, spaces)
    return res


# -- oracle ----------------------------------------------------------------------------------

def total_complex_cohomology(C: CosimplicialDGA) -> dict:
    """Cohomology of the normalised total complex (cochains killed by every codegeneracy)."""
    L = C.top
    pieces = {}   # (n, p) -> (indices in A^n of degree p, basis of N^{n,p} as vectors in those coordinates)
    for n in range(L + 1):
        A = C.levels[n]
        for p in sorted(set(A.degrees)):
            idx = A.indices_in_degree(p)
            sub = Subspace.full(len(idx))
            for j in range(n):
                s = C.codegeneracy(n - 1, j)
                rows = [tuple(s.rows[r][c] for c in idx) for r in range(s.cod)]
                sub = sub & LinearMap(tuple(rows), len(idx), s.cod).kernel()
            pieces[(n, p)] = (idx, sub)
    by_total = {}
    for (n, p), (idx, sub) in pieces.items():
        if sub.dim:
            by_total.setdefault(n + p, []).append((n, p))
    for k in by_total:
        by_total[k].sort()

    def embed(n, p):
        idx, sub = pieces[(n, p)]
        A = C.levels[n]
        out = []
        for v in sub.matrix().columns():
            full = [mpq(0)] * A.dim
            for c, i in zip(v, idx):
                full[i] = c
            out.append(tuple(full))
        return out

    def D(k):
        src = [(n, p, v) for n, p in by_total.get(k, []) for v in embed(n, p)]
        tgt_blocks = by_total.get(k + 1, [])
        tgt = [(n, p, v) for n, p in tgt_blocks for v in embed(n, p)]
        if not src or not tgt:
            return LinearMap.zero(len(tgt), len(src))
        cols = []
        for n, p, v in src:
            A = C.levels[n]
            images = {}
            dv = A.d(v)
            images[n] = tuple(((-1) ** n) * x for x in dv)
            if n < L:
                acc = [mpq(0)] * C.levels[n + 1].dim
                for i in range(n + 2):
                    w = C.coface(n + 1, i).apply(v)
                    acc = [a + (-1) ** i * b for a, b in zip(acc, w)]
                images[n + 1] = tuple(acc)
            # express in the target basis level by level
            col = []
            for n2, p2 in tgt_blocks:
                idx, sub = pieces[(n2, p2)]
                img = images.get(n2)
                if img is None:
                    col.extend([mpq(0)] * sub.dim)
                    continue
                local = tuple(img[i] for i in idx)
                col.extend(sub.coordinates(local) if any(local) else [mpq(0)] * sub.dim)
            cols.append(tuple(col))
        return LinearMap.from_columns(cols, len(tgt))

    out = {}
    ks = sorted(set(by_total) | {k + 1 for k in by_total})
    for k in ks:
        dim = sum(pieces[b][1].dim for b in by_total.get(k, []))
        r_out = D(k).rank() if dim else 0
        r_in = D(k - 1).rank() if by_total.get(k - 1) else 0
        if dim:
            out[k] = dim - r_out - r_in
    return out


# -- fixtures --------------------------------------------------------------------------------

def constant_cosimplicial(B: DGA, top: int = 2) -> CosimplicialDGA:
    ident = LinearMap.identity(B.dim)
    cof = {(n, i): ident for n in range(1, top + 1) for i in range(n + 1)}
    cod = {(n, j): ident for n in range(top) for j in range(n + 1)}
    return CosimplicialDGA(tuple([B] * (top + 1)), cof, cod)


@dataclass(frozen=True)
class Graph1D:
    """A one-dimensional simplicial set: vertices plus directed edges (src, tgt), loops allowed.

    The n-simplices are the vertices (fully degenerate) followed by pairs
    (edge, k) with 1 <= k <= n, where k counts the leading copies of the source.
    """

    vertices: int
    edges: tuple

    def simplices(self, n: int):
        out = [("v", v) for v in range(self.vertices)]
        out += [("e", e, k) for e in range(len(self.edges)) for k in range(1, n + 1)]
        return out

    def _normal(self, e, k, n):
        src, tgt = self.edges[e]
        if k == 0:
            return ("v", tgt)
        if k == n + 1:
            return ("v", src)
        return ("e", e, k)

    def face(self, n: int, i: int, x):
        if x[0] == "v":
            return x
        _, e, k = x
        return self._normal(e, k - 1 if i < k else k, n - 1)

    def degeneracy(self, n: int, j: int, x):
        if x[0] == "v":
            return x
        _, e, k = x
        return self._normal(e, k + 1 if j < k else k, n + 1)


def _function_dga(B: DGA, count: int) -> DGA:
    N = B.dim * count
    degs = [B.degrees[a] for _ in range(count) for a in range(B.dim)]
    rows = [[mpq(0)] * N for _ in range(N)]
    prods = {}
    for s in range(count):
        o = s * B.dim
        for r in range(B.dim):
            for c in range(B.dim):
                if B.diff.rows[r][c]:
                    rows[o + r][o + c] = B.diff.rows[r][c]
        for (i, j), out in B.products:
            prods[(o + i, o + j)] = {o + k: c for k, c in out}
    w = None if B.weights is None else [B.weights[a] for _ in range(count) for a in range(B.dim)]
    return DGA.build(degs, LinearMap.from_rows(rows, N) if N else LinearMap.zero(0, 0), prods, w,
                     unit=None, check=False, complete=False)


def _pullback_map(B: DGA, src_simplices, tgt_simplices, f) -> LinearMap:
    """Map Fun(src) (x) B -> Fun(tgt) (x) B induced by f: tgt -> src."""
    pos = {x: i for i, x in enumerate(src_simplices)}
    d = B.dim
    rows = [[mpq(0)] * (d * len(src_simplices)) for _ in range(d * len(tgt_simplices))]
    for t, x in enumerate(tgt_simplices):
        s = pos[f(x)]
        for a in range(d):
            rows[t * d + a][s * d + a] = mpq(1)
    return LinearMap.from_rows(rows, d * len(src_simplices))


def function_cosimplicial(B: DGA, X: Graph1D, top: int = 1) -> CosimplicialDGA:
    """The cosimplicial DGA n -> B (x) Fun(X_n), levels 0..top."""
    simp = [X.simplices(n) for n in range(top + 1)]
    levels = tuple(_function_dga(B, len(s)) for s in simp)
    cof = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            cof[(n, i)] = _pullback_map(B, simp[n - 1], simp[n], lambda x, n=n, i=i: X.face(n, i, x))
    cod = {}
    for n in range(top):
        for j in range(n + 1):
            cod[(n, j)] = _pullback_map(B, simp[n + 1], simp[n], lambda x, n=n, j=j: X.degeneracy(n, j, x))
    return CosimplicialDGA(levels, cof, cod)


def interval_cosimplicial(B: DGA | None = None, top: int = 1) -> CosimplicialDGA:
    """Ordered Cech nerve of a two-set cover of a point: the simplicial interval."""
    from .dga import ground_field
    return function_cosimplicial(B or ground_field(), Graph1D(2, ((0, 1),)), top)


def random_square_zero_dga(rng, max_dim: int = 4, max_degree: int = 2) -> DGA:
    """Q.1 plus a random complex M in degrees 1..max_degree with M.M = 0."""
    dims = [rng.randint(0, 2) for _ in range(max_degree)]
    while 1 + sum(dims) > max_dim:
        k = max(range(max_degree), key=lambda i: dims[i])
        dims[k] -= 1
    degs = [0] + [p + 1 for p in range(max_degree) for _ in range(dims[p])]
    N = len(degs)
    rows = [[mpq(0)] * N for _ in range(N)]
    for c in range(1, N):
        for r in range(1, N):
            if degs[r] == degs[c] + 1:
                rows[r][c] = mpq(rng.randint(-1, 1))
    diff = LinearMap.from_rows(rows, N)
    # force d^2 = 0 by zeroing d out of any degree whose image would be hit twice
    for p in range(1, max_degree):
        if not (diff @ diff).is_zero():
            for c in range(1, N):
                if degs[c] == p:
                    for r in range(N):
                        rows[r][c] = mpq(0)
            diff = LinearMap.from_rows(rows, N)
    return DGA.build(degs, diff, {}, None, 0)


def random_graph(rng, max_vertices: int = 3, max_edges: int = 3) -> Graph1D:
    v = rng.randint(1, max_vertices)
    e = rng.randint(0, max_edges)
    return Graph1D(v, tuple((rng.randrange(v), rng.randrange(v)) for _ in range(e)))
