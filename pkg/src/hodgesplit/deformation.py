"""Quadratic deformation cones over the E_2 page.

Unknowns are omega in H^1(X, j_* ad) and eta in H^0(X, R^1 j_* ad).  The cone
is cut out by

    d_2 eta + 1/2 [omega, omega] = 0,   [omega, eta] = 0,   [eta, eta] = 0,

valued in H^2(X, j_* ad), H^1(X, R^1 j_* ad) and H^0(X, R^2 j_* ad).

Two input modes are offered.  ``explicit_cone`` takes the dimensions and the
bracket tensors directly.  ``deformation_cone`` tensors a :class:`GysinInput`
with a Lie algebra g, using [a (x) X, b (x) Y] = ab (x) [X, Y].
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .dga import GysinInput, e2_builder
from .errors import InvariantError
from .exact import LinearMap, coerce_scalar, format_scalar


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants: ``brackets[i][j][k]`` is the e_k coefficient of [e_i, e_j]."""

    dim: int
    brackets: tuple

    @classmethod
    def build(cls, dim: int, table=None, check: bool = True) -> "LieAlgebra":
        br = [[[mpq(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in (table or {}).items():
            for k, c in dict(out).items():
                br[i][j][k] = coerce_scalar(c)
        g = cls(dim, tuple(tuple(tuple(r) for r in row) for row in br))
        if check:
            g.check()
        return g

    def bracket(self, i: int, j: int):
        return self.brackets[i][j]

    def is_abelian(self) -> bool:
        return all(c == 0 for row in self.brackets for r in row for c in r)

    def check(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.brackets[i][j][k] != -self.brackets[j][i][k]:
                        raise InvariantError("Lie bracket is not antisymmetric", witness=[i, j, k])
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    tot = [mpq(0)] * n
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        inner = self.brackets[y][z]
                        for m, cm in enumerate(inner):
                            if cm:
                                for k in range(n):
                                    tot[k] += cm * self.brackets[x][m][k]
                    if any(tot):
                        raise InvariantError("Jacobi identity fails", witness=[a, b, c])


def abelian_lie(n: int) -> LieAlgebra:
    return LieAlgebra.build(n)


def sl2() -> LieAlgebra:
    """Basis h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra.build(3, {(0, 1): {1: 2}, (1, 0): {1: -2},
                                (0, 2): {2: -2}, (2, 0): {2: 2},
                                (1, 2): {0: 1}, (2, 1): {0: -1}})


# -- polynomials --------------------------------------------------------------------------

def _padd(p: dict, mono: tuple, c):
    mono = tuple(sorted(mono))
    p[mono] = p.get(mono, 0) + c
    if p[mono] == 0:
        del p[mono]


def format_polynomial(p: dict) -> str:
    """Deterministic text: monomials by degree then name, 'c*x*y' with exact coefficients."""
    if not p:
        return "0"
    terms = []
    for mono in sorted(p, key=lambda m: (len(m), m)):
        c = p[mono]
        body = "*".join(mono)
        if not mono:
            terms.append(format_scalar(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{format_scalar(c)}*{body}")
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


@dataclass(frozen=True)
class DeformationCone:
    omega_vars: tuple
    eta_vars: tuple
    equations: tuple          # ((family, target index, polynomial dict), ...)
    d2: LinearMap             # H^0R^1 -> H^2
    action: tuple             # ((label, matrix on omega (+) eta), ...)
    lie_abelian: bool

    @property
    def tangent_dim(self) -> int:
        """Dimension of the ambient space H^1 (+) H^0 R^1 holding the cone."""
        return len(self.omega_vars) + len(self.eta_vars)

    @property
    def zariski_tangent_dim(self) -> int:
        """Tangent space of the cone at the origin: H^1 (+) ker d_2."""
        return len(self.omega_vars) + len(self.eta_vars) - self.d2.rank()

    def nonzero_equations(self):
        return tuple(e for e in self.equations if e[2])

    def is_linear(self) -> bool:
        return all(len(m) <= 1 for _, _, p in self.equations for m in p)

    def linear_part(self) -> LinearMap:
        """Rows: the H^2-valued equations; columns: omega then eta variables."""
        names = self.omega_vars + self.eta_vars
        rows = []
        for fam, _, p in self.equations:
            if fam != "d2eta":
                continue
            rows.append(tuple(p.get((v,), mpq(0)) for v in names))
        return LinearMap.from_rows(rows, len(names)) if rows else LinearMap.zero(0, len(names))

    def text(self) -> list:
        return [f"{fam}[{k}]: {format_polynomial(p)} = 0" for fam, k, p in self.equations]

    def evaluate(self, omega, eta):
        vals = dict(zip(self.omega_vars, omega))
        vals.update(zip(self.eta_vars, eta))
        out = []
        for _, _, p in self.equations:
            s = mpq(0)
            for mono, c in p.items():
                t = c
                for v in mono:
                    t *= vals[v]
                s += t
            out.append(s)
        return tuple(out)


def _check_symmetric(tensor, label):
    for k, mat in enumerate(tensor):
        n = len(mat)
        for i in range(n):
            for j in range(n):
                if mat[i][j] != mat[j][i]:
                    raise InvariantError(f"{label} is not graded-antisymmetric on degree-one classes",
                                         witness=[k, i, j])


def explicit_cone(h1: int, h0r1: int, b_ww=(), b_wn=(), b_nn=(), d2=None, h0_action=None) -> DeformationCone:
    """Cone from explicit data.

    ``b_ww[k][i][j]``: k-th H^2 coordinate of [omega_i, omega_j];
    ``b_wn[k][i][j]``: k-th H^1R^1 coordinate of [omega_i, eta_j];
    ``b_nn[k][i][j]``: k-th H^0R^2 coordinate of [eta_i, eta_j];
    ``d2``: matrix H^0R^1 -> H^2 (its row count fixes dim H^2 when b_ww is empty).
    ``h0_action``: optional list of (label, matrix on omega (+) eta).
    """
    b_ww = [[[coerce_scalar(x) for x in r] for r in m] for m in b_ww]
    b_wn = [[[coerce_scalar(x) for x in r] for r in m] for m in b_wn]
    b_nn = [[[coerce_scalar(x) for x in r] for r in m] for m in b_nn]
    _check_symmetric(b_ww, "[omega, omega]")
    _check_symmetric(b_nn, "[eta, eta]")
    n2 = len(b_ww) if b_ww else (d2.cod if d2 is not None else 0)
    if d2 is None:
        d2 = LinearMap.zero(n2, h0r1)
    if d2.shape != (n2, h0r1):
        raise InvariantError("d2 has the wrong shape", witness=list(d2.shape))
    om = tuple(f"omega{i}" for i in range(h1))
    et = tuple(f"eta{j}" for j in range(h0r1))
    eqs = []
    half = mpq(1, 2)
    for k in range(n2):
        p = {}
        for j in range(h0r1):
            if d2.rows[k][j]:
                _padd(p, (et[j],), d2.rows[k][j])
        if b_ww:
            for i in range(h1):
                for j in range(h1):
                    if b_ww[k][i][j]:
                        _padd(p, (om[i], om[j]), half * b_ww[k][i][j])
        eqs.append(("d2eta", k, p))
    for k, mat in enumerate(b_wn):
        p = {}
        for i in range(h1):
            for j in range(h0r1):
                if mat[i][j]:
                    _padd(p, (om[i], et[j]), mat[i][j])
        eqs.append(("omega_eta", k, p))
    for k, mat in enumerate(b_nn):
        p = {}
        for i in range(h0r1):
            for j in range(h0r1):
                if mat[i][j]:
                    _padd(p, (et[i], et[j]), mat[i][j])
        eqs.append(("eta_eta", k, p))
    action = tuple((lab, m) for lab, m in (h0_action or ()))
    abelian = not any(x for m in b_ww + b_wn + b_nn for r in m for x in r)
    return DeformationCone(om, et, tuple(eqs), d2, action, abelian)


def deformation_cone(G: GysinInput, g: LieAlgebra) -> DeformationCone:
    """Cone for the E_2 data of G with coefficients in the adjoint representation of g."""
    g.check()
    e2 = e2_builder(G)
    A = e2.dga
    off = G.offsets()

    def basis(a, b):
        o = off.get((a, b))
        return [] if o is None else list(range(o, o + G.entry_dim(a, b)))

    E00, H1, R1 = basis(0, 0), basis(1, 0), basis(1, 1)
    H2, H1R1, R2 = basis(2, 0), basis(2, 1), basis(2, 2)
    n = g.dim

    def pos(lst, idx, x):
        return lst.index(idx) * n + x

    def bracket_tensor(src1, src2, tgt):
        T = [[[mpq(0)] * (len(src2) * n) for _ in range(len(src1) * n)] for _ in range(len(tgt) * n)]
        for i in src1:
            for j in src2:
                for k, c in A.basis_mul(i, j).items():
                    if k not in tgt:
                        continue
                    for x in range(n):
                        for y in range(n):
                            for z, cz in enumerate(g.bracket(x, y)):
                                if cz:
                                    T[pos(tgt, k, z)][pos(src1, i, x)][pos(src2, j, y)] += c * cz
        return T

    b_ww = bracket_tensor(H1, H1, H2) if H2 else []
    b_wn = bracket_tensor(H1, R1, H1R1) if H1R1 else []
    b_nn = bracket_tensor(R1, R1, R2) if R2 else []
    rows = [[mpq(0)] * (len(R1) * n) for _ in range(len(H2) * n)]
    for j in R1:
        for i in H2:
            c = A.diff.rows[i][j]
            if c:
                for x in range(n):
                    rows[pos(H2, i, x)][pos(R1, j, x)] = c
    d2 = LinearMap.from_rows(rows, len(R1) * n) if rows else LinearMap.zero(0, len(R1) * n)
    action = []
    dim = (len(H1) + len(R1)) * n
    for u in E00:
        for x in range(n):
            m = [[mpq(0)] * dim for _ in range(dim)]
            for block, shift in ((H1, 0), (R1, len(H1) * n)):
                for j in block:
                    for k, c in A.basis_mul(u, j).items():
                        if k not in block:
                            continue
                        for y in range(n):
                            for z, cz in enumerate(g.bracket(x, y)):
                                if cz:
                                    m[shift + pos(block, k, z)][shift + pos(block, j, y)] += c * cz
            action.append((f"e{u - off[(0, 0)]}.g{x}", LinearMap.from_rows(m, dim) if dim else LinearMap.zero(0, 0)))
    return explicit_cone(len(H1) * n, len(R1) * n, b_ww, b_wn, b_nn, d2, action)


# -- fixtures -----------------------------------------------------------------------------

def punctured_curve_input(genus: int = 1, punctures: int = 2) -> GysinInput:
    """A curve of the given genus minus some points: H^1 symplectic, Gysin sums residues into H^2."""
    g2 = 2 * genus
    entries = {(0, 0): 1, (1, 0): g2, (2, 0): 1, (1, 1): punctures}
    h2 = 1 + g2 + punctures          # entries are numbered in (a, b) order
    prods = {}
    for i in range(genus):
        a, b = 1 + i, 1 + genus + i
        prods[(a, b)] = {h2: 1}
        prods[(b, a)] = {h2: -1}
    gysin = {(1, 1): LinearMap.from_rows([[1] * punctures])} if punctures else {}
    return GysinInput.build(entries, gysin, prods)
