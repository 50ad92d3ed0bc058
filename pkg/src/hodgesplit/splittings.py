"""Split presentations of mixed Hodge and mixed twistor structures.

An :class:`SHSObject` is a bigraded space together with operators
``beta[(a, b)]`` sending V^{pq} to V^{p-a-1, q-b-1}; the pair stands for the
derivation sum_{a,b} beta^{ab} (x - i)^a (x + i)^b dx.  The functions here move
between that presentation, mixed Hodge structures (``shs_to_mhs`` /
``mhs_to_shs``) and the unipotent-operator picture (``shs_to_frep`` /
``frep_to_shs``).  Twistor analogues use a weight grading and real operators
``beta[(m, n)]`` attached to the monomials x^m y^n.

Throughout, exponentials of the form exp(sum c_ab beta^{ab}) are plain
matrix exponentials of the summed operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from gmpy2 import mpq

from .errors import DimensionMismatch, InconsistentSystem, InvariantError, RejectionError
from .exact import (
    QI, LinearMap, Subspace, conj, nilpotent_exp, relative_quotient, solve, unipotent_log,
)
from .filtrations import FilteredSpace
from .hodge import MHS, BigradedSpace, MTSReport, WeightGradedSpace, mts_report, validate_mhs

ZERO_TO_I = "0i"
MINUS_I_TO_I = "mii"
_ENDPOINT_ALIASES = {"0i": ZERO_TO_I, "0->i": ZERO_TO_I, "mii": MINUS_I_TO_I, "-i->i": MINUS_I_TO_I}


# -- coefficient module ---------------------------------------------------------

def _poly_mul(f, g):
    out = [QI(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def coefficient_poly(a: int, b: int):
    """Coefficients (ascending in x) of (x - i)^a (x + i)^b."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    p = [QI(1)]
    for _ in range(a):
        p = _poly_mul(p, [QI(0, -1), QI(1)])
    for _ in range(b):
        p = _poly_mul(p, [QI(0, 1), QI(1)])
    return p


def _antiderivative_at(poly, t: QI) -> QI:
    acc, power = QI(0), t
    for k, c in enumerate(poly):
        acc = acc + c * power * mpq(1, k + 1)
        power = power * t
    return acc


def normalise_endpoints(endpoints: str) -> str:
    try:
        return _ENDPOINT_ALIASES[endpoints]
    except KeyError:
        raise ValueError(f"unknown endpoints {endpoints!r}") from None


def integral_pairing(a: int, b: int, endpoints: str = MINUS_I_TO_I) -> QI:
    """Exact value of the integral of (x - i)^a (x + i)^b dx between the endpoints."""
    ep = normalise_endpoints(endpoints)
    poly = coefficient_poly(a, b)
    top = _antiderivative_at(poly, QI(0, 1))
    bottom = QI(0) if ep == ZERO_TO_I else _antiderivative_at(poly, QI(0, -1))
    return top - bottom


def monomial_coefficients(a: int, b: int) -> dict:
    """{(m, n): coefficient of x^m y^n in (x - iy)^a (x + iy)^b}."""
    out = {}
    for r in range(a + 1):
        for s in range(b + 1):
            c = QI(comb(a, r) * comb(b, s)) * QI(0, -1) ** r * QI(0, 1) ** s
            key = (a + b - r - s, r + s)
            out[key] = out.get(key, QI(0)) + c
    return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True, order=True)
class CoefficientMonomial:
    """The symbol (x - i)^a (x + i)^b dx, of type (a+1, b+1)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("exponents must be non-negative")

    @property
    def type(self):
        return (self.a + 1, self.b + 1)

    @property
    def weight(self):
        return self.a + self.b + 2

    def conj(self) -> "CoefficientMonomial":
        return CoefficientMonomial(self.b, self.a)

    def pairing(self, endpoints: str = MINUS_I_TO_I) -> QI:
        return integral_pairing(self.a, self.b, endpoints)


# -- shared helpers -----------------------------------------------------------------

def _zero(n):
    return LinearMap.zero(n, n, QI)


def _elementary(n, i, j, c=QI(1)):
    z = QI(0)
    return LinearMap(tuple(tuple(c if (r == i and s == j) else z for s in range(n)) for r in range(n)), n, n)


def _conj_index(basis_cols):
    """Index permutation sending each basis vector to the position of its conjugate."""
    pos = {v: k for k, v in enumerate(basis_cols)}
    out = []
    for v in basis_cols:
        cv = tuple(conj(x) for x in v)
        if cv not in pos:
            raise InvariantError("adapted basis is not closed under conjugation")
        out.append(pos[cv])
    return out


class _Frame:
    """Adapted basis of a bigrading with its conjugation permutation."""

    def __init__(self, grading: BigradedSpace):
        self.grading = grading
        self.n = grading.dim
        self.B, self.labels = grading.adapted_basis()
        self.Binv = self.B.inverse()
        cols = [tuple(QI(x.re, x.im) for x in c) for c in self.B.columns()]
        self.sigma = _conj_index(cols)

    def to_ambient(self, local: LinearMap) -> LinearMap:
        return self.B @ local @ self.Binv

    def to_local(self, m: LinearMap) -> LinearMap:
        return self.Binv @ m.complexify() @ self.B

    def beta_spanning(self, a: int, b: int):
        """Real basis of the pairs (beta^{ab}, beta^{ba}) allowed by type and reality.

        Yields dicts {(a, b): local matrix, (b, a): local matrix}.
        """
        n = self.n
        shift = (-a - 1, -b - 1)
        pairs = [(i, j) for i in range(n) for j in range(n)
                 if (self.labels[i][0] - self.labels[j][0], self.labels[i][1] - self.labels[j][1]) == shift]
        out = []
        if a != b:
            for i, j in pairs:
                for c in (QI(1), QI(0, 1)):
                    out.append({(a, b): _elementary(n, i, j, c),
                                (b, a): _elementary(n, self.sigma[i], self.sigma[j], c.conj())})
            return out
        seen = set()
        for i, j in pairs:
            mate = (self.sigma[i], self.sigma[j])
            if (i, j) in seen:
                continue
            seen.add((i, j))
            seen.add(mate)
            if mate == (i, j):
                out.append({(a, a): _elementary(n, i, j)})
            else:
                for c in (QI(1), QI(0, 1)):
                    out.append({(a, a): _elementary(n, i, j, c) + _elementary(n, mate[0], mate[1], c.conj())})
        return out

    def type_preserving_spanning(self):
        """Real basis of the real maps preserving every V^{pq}, as local matrices."""
        n = self.n
        out, seen = [], set()
        for i in range(n):
            for j in range(n):
                if self.labels[i] != self.labels[j] or (i, j) in seen:
                    continue
                mate = (self.sigma[i], self.sigma[j])
                seen.add((i, j))
                seen.add(mate)
                if mate == (i, j):
                    out.append(_elementary(n, i, j))
                else:
                    for c in (QI(1), QI(0, 1)):
                        out.append(_elementary(n, i, j, c) + _elementary(n, mate[0], mate[1], c.conj()))
        return out


def _beta_keys_for(grading: BigradedSpace, target: BigradedSpace | None = None):
    """All (a, b) with a, b >= 0 for which some type can be hit."""
    target = target or grading
    keys = set()
    for p, q in grading.types():
        for r, s in target.types():
            a, b = p - r - 1, q - s - 1
            if a >= 0 and b >= 0:
                keys.add((a, b))
    return sorted(keys)


# -- SHS objects ------------------------------------------------------------------

@dataclass(frozen=True)
class SHSObject:
    grading: BigradedSpace
    beta: tuple = ()  # (((a, b), LinearMap over Q(i)), ...) sorted, nonzero components only

    @classmethod
    def build(cls, grading: BigradedSpace, beta: Mapping | None = None, check: bool = True) -> "SHSObject":
        items = []
        for k, m in sorted((beta or {}).items()):
            m = m.complexify()
            if m.shape != (grading.dim, grading.dim):
                raise DimensionMismatch(f"beta^{k} has shape {m.shape}, expected {grading.dim}x{grading.dim}")
            if not m.is_zero():
                items.append((tuple(k), m))
        out = cls(grading, tuple(items))
        if check:
            out.check()
        return out

    @property
    def dim(self) -> int:
        return self.grading.dim

    def component(self, a: int, b: int) -> LinearMap:
        return dict(self.beta).get((a, b), _zero(self.dim))

    def check(self):
        g = self.grading
        for (a, b), m in self.beta:
            if a < 0 or b < 0:
                raise InvariantError(f"beta^{a},{b} has a negative exponent", witness=(a, b))
            for (p, q), s in g.pieces:
                img = s.image_under(m)
                if not img <= g.piece(p - a - 1, q - b - 1):
                    raise InvariantError(f"beta^{a},{b} does not map V^{p},{q} into V^{p - a - 1},{q - b - 1}",
                                         witness={"component": [a, b], "source": [p, q]})
            if m.conj() != self.component(b, a):
                raise InvariantError(f"reality fails: conj(beta^{a},{b}) != beta^{b},{a}", witness=(a, b))

    def summed(self, endpoints: str) -> LinearMap:
        """sum_{ab} integral_pairing(a, b, endpoints) * beta^{ab}."""
        out = _zero(self.dim)
        for (a, b), m in self.beta:
            out = out + m.scale(integral_pairing(a, b, endpoints))
        return out

    def __eq__(self, other):
        if not isinstance(other, SHSObject):
            return NotImplemented
        return self.grading == other.grading and self.beta == other.beta

    def __hash__(self):
        return hash((self.grading, self.beta))


@dataclass(frozen=True)
class FRep:
    grading: BigradedSpace
    d: LinearMap

    def check(self):
        n = self.grading.dim
        ident = LinearMap.identity(n, QI)
        d = self.d.complexify()
        unipotent_log(d)  # raises when d is not unipotent
        if d.conj() @ d != ident:
            raise InvariantError("conj(d) is not the inverse of d")
        for (a, b), _ in self.grading.decompose(d - ident).items():
            if a >= 0 or b >= 0:
                raise InvariantError(f"d - id has a component of type shift ({a},{b})", witness=(a, b))

    def __eq__(self, other):
        if not isinstance(other, FRep):
            return NotImplemented
        return self.grading == other.grading and self.d.complexify() == other.d.complexify()

    def __hash__(self):
        return hash((self.grading, self.d.complexify()))


def shs_to_mhs(s: SHSObject) -> MHS:
    """W from the weight grading; F = exp(sum_{ab} (∫_0^i) beta^{ab}) applied to the Hodge filtration."""
    g = nilpotent_exp(s.summed(ZERO_TO_I))
    F = s.grading.hodge_filtration().complexify().image_under(g)
    return MHS(s.dim, s.grading.weight_filtration(), F)


def shs_to_frep(s: SHSObject) -> FRep:
    d = nilpotent_exp(s.summed(MINUS_I_TO_I))
    out = FRep(s.grading, d)
    out.check()
    return out


def frame_transport(s: SHSObject) -> LinearMap:
    """Composite of the transports -i -> 0 and 0 -> i, each a plain exponential."""
    lower = _zero(s.dim)
    for (a, b), m in s.beta:
        poly = coefficient_poly(a, b)
        lower = lower + m.scale(-_antiderivative_at(poly, QI(0, -1)))
    return nilpotent_exp(s.summed(ZERO_TO_I)) @ nilpotent_exp(lower)


def frep_to_shs(f: FRep) -> SHSObject:
    delta = unipotent_log(f.d.complexify())
    beta = {}
    for (sa, sb), comp in f.grading.decompose(delta).items():
        if sa >= 0 or sb >= 0:
            raise RejectionError(f"log d has a component of type shift ({sa},{sb})",
                                 witness={"shift": [sa, sb]})
        a, b = -sa - 1, -sb - 1
        beta[(a, b)] = comp.scale(QI(1) / integral_pairing(a, b, MINUS_I_TO_I))
    return SHSObject.build(f.grading, beta)


# -- MHS -> SHS ---------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingCertificate:
    """phi maps shs_to_mhs(shs) onto the input, preserves W and is the identity on gr^W."""

    shs: SHSObject
    phi: LinearMap
    weight_grading: WeightGradedSpace
    stages: tuple = ()  # ((k, unknowns, rank, beta_nullity), ...)

    @property
    def unique(self) -> bool:
        return all(st[3] == 0 for st in self.stages)


def default_weight_grading(W: FilteredSpace) -> WeightGradedSpace:
    """Real splitting of W from the echelon sections of each gr^W_n."""
    pieces = {}
    for n in range(W.lo, W.hi + 1):
        q = relative_quotient(W.step(n), W.step(n - 1))
        if q.dim:
            pieces[n] = Subspace.span(q.section.columns(), W.ambient)
    return WeightGradedSpace.build(W.ambient, pieces)


def _bigrading_on_splitting(m: MHS, g: WeightGradedSpace) -> BigradedSpace:
    pieces = {}
    for n, Gn in g.pieces:
        Gc = Gn.complexify()
        Wn, Wlow = m.W.step(n).complexify(), m.W.step(n - 1).complexify()

        def lift(p):
            return ((m.F.step(p) & Wn) + Wlow) & Gc

        for p in range(m.F.lo, m.F.hi + 2):
            piece = lift(p) & lift(n - p).conj()
            if piece.dim:
                pieces[(p, n - p)] = piece
    return BigradedSpace.build(m.dim, pieces)


def _check_grading_splits(W: FilteredSpace, g: WeightGradedSpace):
    for n in range(W.lo, W.hi + 1):
        low = W.step(n - 1)
        if (low + g.piece(n)) != W.step(n) or (low & g.piece(n)).dim:
            raise InvariantError(f"weight grading does not split W at {n}", witness=n)
    for n in g.weights():
        if n < W.lo or n > W.hi:
            raise InvariantError(f"weight grading has a piece outside W at {n}", witness=n)


def _realify(vals):
    out = []
    for x in vals:
        x = x if isinstance(x, QI) else QI(x)
        out.append(x.re)
    for x in vals:
        x = x if isinstance(x, QI) else QI(x)
        out.append(x.im)
    return out


def mhs_to_shs(m: MHS, grading: WeightGradedSpace | None = None) -> SplittingCertificate:
    """Split a mixed Hodge structure.

    ``grading`` fixes the real splitting of W used to realise gr^W inside V;
    by default the echelon sections are used.  The result lives on V itself:
    its bigrading refines ``grading`` and ``phi = exp(mu)`` with ``mu`` real and
    strictly lowering that grading.

    Stage k of the induction fixes the parts of mu and beta that lower the
    weight by exactly k; the condition there is linear in those parts.
    """
    rep = validate_mhs(m)
    if not rep.ok:
        raise InvariantError("input is not a mixed Hodge structure",
                             witness={"class": rep.failure_class, **rep.witness})
    wg = grading or default_weight_grading(m.W)
    _check_grading_splits(m.W, wg)
    bigr = _bigrading_on_splitting(m, wg)
    frame = _Frame(bigr)
    n = m.dim
    GB, glabels = wg.adapted_basis()
    GBinv = GB.inverse() if n else GB
    weights = wg.weights()
    span = (weights[-1] - weights[0]) if weights else 0

    mu = LinearMap.zero(n, n)
    beta_local = {}
    stages = []
    Wc = {w: m.W.step(w).complexify() for w in range(m.W.lo - span - 2, m.W.hi + 2)}

    def current_beta_ambient():
        return {k: frame.to_ambient(v) for k, v in beta_local.items()}

    for k in range(1, span + 1):
        # unknowns: real mu components of drop k, then beta pairs with a + b + 2 = k
        unknown_ops = []   # (kind, payload, ambient operator contributing to the drop-k part)
        for i in range(n):
            for j in range(n):
                if glabels[i] == glabels[j] - k:
                    e = GB @ _elementary(n, i, j, mpq(1)).real() @ GBinv
                    unknown_ops.append(("mu", (i, j), e.complexify()))
        for a in range(0, k - 1):
            b = k - 2 - a
            if a > b:
                continue
            for elt in frame.beta_spanning(a, b):
                op = _zero(n)
                for (x, y), loc in elt.items():
                    op = op + frame.to_ambient(loc).scale(integral_pairing(x, y, ZERO_TO_I))
                unknown_ops.append(("beta", elt, op))
        if not unknown_ops:
            continue
        X = _zero(n)
        for (x, y), loc in beta_local.items():
            X = X + frame.to_ambient(loc).scale(integral_pairing(x, y, ZERO_TO_I))
        g0 = nilpotent_exp(mu.complexify()) @ nilpotent_exp(X)
        rows, rhs = [], []
        nu = len(unknown_ops)
        for (p, q), piece in bigr.pieces:
            w = p + q
            target = m.F.step(p) + Wc.get(w - k - 1, Subspace.zero(n))
            ann = target.annihilator().basis
            if not ann:
                continue
            for v in piece.basis:
                base = g0.apply(v)
                contribs = [op.apply(v) for _, _, op in unknown_ops]
                for f in ann:
                    lhs = [sum((fi * ci for fi, ci in zip(f, c)), QI(0)) for c in contribs]
                    r0 = sum((fi * bi for fi, bi in zip(f, base)), QI(0))
                    flat = _realify(lhs)
                    rows.append(flat[:nu])
                    rows.append(flat[nu:])
                    rhs.append(-r0.re)
                    rhs.append(-r0.im)
        if not rows:
            theta = tuple(mpq(0) for _ in range(nu))
            rank = 0
            beta_null = sum(1 for kind, _, _ in unknown_ops if kind == "beta")
        else:
            A = LinearMap(tuple(tuple(r) for r in rows), nu, len(rows))
            try:
                theta = solve(A, rhs)
            except InconsistentSystem as exc:
                raise InvariantError(f"splitting equations inconsistent at weight drop {k}",
                                     witness=k) from exc
            null = A.kernel()
            rank = nu - null.dim
            beta_idx = [t for t, (kind, _, _) in enumerate(unknown_ops) if kind == "beta"]
            beta_null = Subspace.span([tuple(v[t] for t in beta_idx) for v in null.basis],
                                      len(beta_idx)).dim if beta_idx else 0
        stages.append((k, nu, rank, beta_null))
        for t, (kind, payload, op) in zip(theta, unknown_ops):
            if t == 0:
                continue
            if kind == "mu":
                i, j = payload
                mu = mu + (GB @ _elementary(n, i, j, mpq(1)).real() @ GBinv).scale(t)
            else:
                for key, loc in payload.items():
                    beta_local[key] = beta_local.get(key, _zero(n)) + loc.scale(t)

    shs = SHSObject.build(bigr, current_beta_ambient())
    phi = nilpotent_exp(mu)
    cert = SplittingCertificate(shs, phi, wg, tuple(stages))
    realised = shs_to_mhs(shs)
    if realised.F.image_under(phi.complexify()) != m.F:
        raise InvariantError("splitting certificate failed: phi(F') != F")
    if not cert.unique:
        raise InvariantError("splitting is not unique", witness=[list(s) for s in stages])
    return cert


# -- tensor, dual, Hom, Ext -----------------------------------------------------------

def _kron_sum(a: LinearMap, b: LinearMap) -> LinearMap:
    ia = LinearMap.identity(a.dom, QI if a._is_complex() or b._is_complex() else mpq)
    ib = LinearMap.identity(b.dom, QI if a._is_complex() or b._is_complex() else mpq)
    return a.kron(ib) + ia.kron(b)


def dual_beta(m: LinearMap) -> LinearMap:
    """beta^∨(f) = -f ∘ beta, written on the dual basis."""
    return -m.T


def tensor_dual_shs(kind: str, *args):
    if all(isinstance(x, STSObject) for x in args):
        return _tensor_dual_sts(kind, *args)
    if kind == "tensor":
        s, t = args
        keys = sorted(set(k for k, _ in s.beta) | set(k for k, _ in t.beta))
        beta = {k: _kron_sum(s.component(*k), t.component(*k)) for k in keys}
        return SHSObject.build(s.grading.tensor(t.grading), beta, check=False)
    if kind == "dual":
        (s,) = args
        return SHSObject.build(s.grading.dual(), {k: dual_beta(m) for k, m in s.beta}, check=False)
    raise ValueError(f"unknown operation {kind!r}")


def direct_sum_shs(s: SHSObject, t: SHSObject) -> SHSObject:
    n, m = s.dim, t.dim

    def embed(sub, offset, total):
        return Subspace.span([(QI(0),) * offset + tuple(v) + (QI(0),) * (total - offset - len(v))
                              for v in sub.basis], total)

    pieces = {}
    for k, sub in s.grading.pieces:
        pieces[k] = embed(sub, 0, n + m)
    for k, sub in t.grading.pieces:
        e = embed(sub, n, n + m)
        pieces[k] = pieces[k] + e if k in pieces else e
    keys = sorted(set(k for k, _ in s.beta) | set(k for k, _ in t.beta))
    beta = {k: _block(s.component(*k), t.component(*k)) for k in keys}
    return SHSObject.build(BigradedSpace.build(n + m, pieces), beta)


def _block(a: LinearMap, b: LinearMap) -> LinearMap:
    z = QI(0)
    rows = [tuple(r) + (z,) * b.dom for r in a.complexify().rows]
    rows += [(z,) * a.dom + tuple(r) for r in b.complexify().rows]
    return LinearMap(tuple(rows), a.dom + b.dom, a.cod + b.cod)


@dataclass(frozen=True)
class HomExt:
    hom_dim: int
    ext1_dim: int
    hom_s_dim: int       # dim of the grading-preserving maps
    target_dim: int      # dim of the space the obstruction map lands in
    rank: int            # rank of beta_* - alpha^*
    hom_basis: tuple = ()
    ext1_basis: tuple = ()   # representatives, each a tuple of ((a, b), LinearMap)

    def four_term_ok(self) -> bool:
        return (self.hom_s_dim - self.hom_dim == self.rank
                and self.target_dim - self.ext1_dim == self.rank)


def _flatten_real(mats):
    out = []
    for mm in mats:
        for r in mm.rows:
            for x in r:
                x = x if isinstance(x, QI) else QI(x)
                out.append(x.re)
                out.append(x.im)
    return out


def _hom_ext_from_spaces(source_ops, target_elts, apply_d, target_keys, dimU, dimV):
    """Shared linear algebra: columns are images of the source basis in target coordinates."""
    # coordinates on the target: flatten every component
    tgt_vecs = [_flatten_real([elt.get(k, LinearMap.zero(dimV, dimU, QI)) for k in target_keys])
                for elt in target_elts]
    nt = len(target_elts)
    if nt:
        T = LinearMap.from_columns(tgt_vecs, len(tgt_vecs[0]))
    images = []
    for f in source_ops:
        img = apply_d(f)
        vec = _flatten_real([img.get(k, LinearMap.zero(dimV, dimU, QI)) for k in target_keys])
        if nt:
            coords = solve(T, vec)
        else:
            if any(x != 0 for x in vec):
                raise InvariantError("obstruction lands outside the coefficient space")
            coords = ()
        images.append(coords)
    ns = len(source_ops)
    if ns and nt:
        D = LinearMap.from_columns(images, nt)
        rank = D.rank()
        ker = D.kernel()
        hom_basis = []
        for v in ker.basis:
            acc = None
            for c, f in zip(v, source_ops):
                if c != 0:
                    acc = f.scale(c) if acc is None else acc + f.scale(c)
            hom_basis.append(acc)
        img = D.image()
    else:
        rank = 0
        hom_basis = list(source_ops)
        img = Subspace.zero(nt)
    ext_basis = []
    if nt:
        q = relative_quotient(Subspace.full(nt), img)
        for col in q.section.columns():
            elt = {}
            for c, te in zip(col, target_elts):
                if c != 0:
                    for k, mm in te.items():
                        elt[k] = elt[k] + mm.scale(c) if k in elt else mm.scale(c)
            ext_basis.append(tuple(sorted(elt.items())))
    return ns, nt, rank, tuple(hom_basis), tuple(ext_basis)


def _hom_ext_shs(U: SHSObject, V: SHSObject) -> HomExt:
    # Work on Hom(U, V) = U^∨ ⊗ V as a bigraded space; maps are dimV x dimU matrices.
    H = U.grading.dual().tensor(V.grading)
    frame = _Frame(H)
    dimU, dimV = U.dim, V.dim

    def as_matrix(vec):
        return LinearMap(tuple(tuple(vec[i * dimV + j] for i in range(dimU)) for j in range(dimV)), dimU, dimV)

    # Hom_S: real type-(0,0) vectors of H, i.e. spanning set of V^{00}-real
    source = []
    B = frame.B
    for kidx, (lab, sig) in enumerate(zip(frame.labels, frame.sigma)):
        if lab != (0, 0) or sig < kidx:
            continue
        e = B.columns()[kidx]
        if sig == kidx:
            source.append(as_matrix(e))
        else:
            f = B.columns()[sig]
            for c in (QI(1), QI(0, 1)):
                source.append(as_matrix(tuple(c * x + c.conj() * y for x, y in zip(e, f))))
    # Target: real elements of ⊕_{ab} H^{-a-1,-b-1} paired with the monomials
    keys = sorted({(-p - 1, -q - 1) for p, q in H.types() if p <= -1 and q <= -1})
    target = []
    for a, b in keys:
        if a > b:
            continue
        vecs = [(idx, B.columns()[idx]) for idx, lab in enumerate(frame.labels) if lab == (-a - 1, -b - 1)]
        for idx, e in vecs:
            sig = frame.sigma[idx]
            f = B.columns()[sig]   # type (-b-1, -a-1)
            if a != b:
                for c in (QI(1), QI(0, 1)):
                    target.append({(a, b): as_matrix(tuple(c * x for x in e)),
                                   (b, a): as_matrix(tuple(c.conj() * y for y in f))})
            else:
                if sig < idx:
                    continue
                if sig == idx:
                    target.append({(a, a): as_matrix(e)})
                else:
                    for c in (QI(1), QI(0, 1)):
                        target.append({(a, a): as_matrix(tuple(c * x + c.conj() * y for x, y in zip(e, f)))})

    def apply_d(f):
        out = {}
        for k in keys:
            val = V.component(*k) @ f - f @ U.component(*k)
            if not val.is_zero():
                out[k] = val
        for k, _ in V.beta + U.beta:
            if k not in keys:
                val = V.component(*k) @ f - f @ U.component(*k)
                if not val.is_zero():
                    out[k] = val
        return out

    all_keys = sorted(set(keys) | {k for k, _ in V.beta + U.beta})
    ns, nt, rank, hb, eb = _hom_ext_from_spaces(source, target, apply_d, all_keys, dimU, dimV)
    return HomExt(ns - rank, nt - rank, ns, nt, rank, hb, eb)


# -- STS objects ----------------------------------------------------------------------

@dataclass(frozen=True)
class STSObject:
    grading: WeightGradedSpace
    beta: tuple = ()  # (((m, n), real LinearMap), ...) nonzero only

    @classmethod
    def build(cls, grading: WeightGradedSpace, beta: Mapping | None = None, check: bool = True) -> "STSObject":
        items = []
        for k, mat in sorted((beta or {}).items()):
            if mat._is_complex():
                if not mat.is_real():
                    raise InvariantError(f"beta^{k} has non-real entries", witness=list(k))
                mat = mat.real()
            if not mat.is_zero():
                items.append((tuple(k), mat))
        out = cls(grading, tuple(items))
        if check:
            out.check()
        return out

    @property
    def dim(self) -> int:
        return self.grading.dim

    def component(self, m: int, n: int) -> LinearMap:
        return dict(self.beta).get((m, n), LinearMap.zero(self.dim, self.dim))

    def check(self):
        g = self.grading
        for (m, n), mat in self.beta:
            if m < 0 or n < 0:
                raise InvariantError(f"beta^({m},{n}) has a negative exponent", witness=(m, n))
            drop = m + n + 2
            for w, s in g.pieces:
                if not s.image_under(mat) <= g.piece(w - drop):
                    raise InvariantError(f"beta^({m},{n}) does not lower weight {w} by {drop}",
                                         witness={"component": [m, n], "weight": w})

    def report(self) -> MTSReport:
        return mts_report(self.grading)


def shs_to_sts(s: SHSObject) -> STSObject:
    """Forget the Hodge types and expand each (x - iy)^a (x + iy)^b into monomials."""
    out = {}
    for (a, b), mat in s.beta:
        for key, c in monomial_coefficients(a, b).items():
            out[key] = out[key] + mat.scale(c) if key in out else mat.scale(c)
    return STSObject.build(s.grading.weight_grading(), out)


def _tensor_dual_sts(kind, *args):
    if kind == "tensor":
        s, t = args
        keys = sorted(set(k for k, _ in s.beta) | set(k for k, _ in t.beta))
        beta = {k: _kron_sum(s.component(*k), t.component(*k)) for k in keys}
        return STSObject.build(s.grading.tensor(t.grading), beta, check=False)
    if kind == "dual":
        (s,) = args
        return STSObject.build(s.grading.dual(), {k: dual_beta(m) for k, m in s.beta}, check=False)
    raise ValueError(f"unknown operation {kind!r}")


def _hom_ext_sts(U: STSObject, V: STSObject) -> HomExt:
    GU, lu = U.grading.adapted_basis()
    GV, lv = V.grading.adapted_basis()
    GUinv = GU.inverse()
    dimU, dimV = U.dim, V.dim

    def elem(i, j):
        z, o = mpq(0), mpq(1)
        loc = LinearMap(tuple(tuple(o if (r == i and c == j) else z for c in range(dimU)) for r in range(dimV)),
                        dimU, dimV)
        return GV @ loc @ GUinv

    source = [elem(i, j) for i in range(dimV) for j in range(dimU) if lv[i] == lu[j]]
    drops = sorted({lu[j] - lv[i] for i in range(dimV) for j in range(dimU) if lu[j] - lv[i] >= 2})
    keys = [(m, d - 2 - m) for d in drops for m in range(d - 1)]
    keys = sorted(set(keys) | {k for k, _ in U.beta + V.beta})
    target = []
    for (m, n) in keys:
        d = m + n + 2
        for i in range(dimV):
            for j in range(dimU):
                if lu[j] - lv[i] == d:
                    target.append({(m, n): elem(i, j)})

    def apply_d(f):
        out = {}
        for k in keys:
            val = V.component(*k) @ f - f @ U.component(*k)
            if not val.is_zero():
                out[k] = val
        return out

    ns, nt, rank, hb, eb = _hom_ext_from_spaces(source, target, apply_d, keys, dimU, dimV)
    return HomExt(ns - rank, nt - rank, ns, nt, rank, hb, eb)


def hom_ext(A, B) -> HomExt:
    """Hom and Ext^1 as kernel and cokernel of beta_* - alpha^*."""
    if isinstance(A, SHSObject) and isinstance(B, SHSObject):
        return _hom_ext_shs(A, B)
    if isinstance(A, STSObject) and isinstance(B, STSObject):
        return _hom_ext_sts(A, B)
    raise TypeError("hom_ext needs two objects of the same category")


# -- algebra objects -------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraCheck:
    ok: bool
    witness: dict = field(default_factory=dict)


def shs_algebra_check(s: SHSObject, product, unit) -> AlgebraCheck:
    """Leibniz rule for every beta^{ab} and beta(1) = 0.

    ``product`` is a ``dim x dim^2`` map on the basis e_i ⊗ e_j (index
    ``i * dim + j``); ``unit`` is the coordinate vector of 1.
    """
    n = s.dim
    product = product.complexify()
    basis = [tuple(QI(1) if k == i else QI(0) for k in range(n)) for i in range(n)]

    def mul(x, y):
        return product.apply(tuple(a * b for a in x for b in y))

    unit = tuple(QI(x) if not isinstance(x, QI) else x for x in unit)
    for (a, b), m in s.beta:
        if any(x != 0 for x in m.apply(unit)):
            return AlgebraCheck(False, {"component": [a, b], "unit": True})
        for i in range(n):
            for j in range(n):
                x, y = basis[i], basis[j]
                lhs = m.apply(mul(x, y))
                rhs = tuple(u + v for u, v in zip(mul(m.apply(x), y), mul(x, m.apply(y))))
                if lhs != rhs:
                    return AlgebraCheck(False, {"component": [a, b], "pair": [i, j]})
    return AlgebraCheck(True)


def tensor_product_algebra(p1: LinearMap, n1: int, p2: LinearMap, n2: int) -> LinearMap:
    """Structure map of A ⊗ B from those of A and B: (a⊗b)(a'⊗b') = aa' ⊗ bb'."""
    n = n1 * n2
    cols = []
    for i in range(n):
        a, b = divmod(i, n2)
        for j in range(n):
            c, d = divmod(j, n2)
            u = p1.columns()[a * n1 + c]
            v = p2.columns()[b * n2 + d]
            cols.append(tuple(x * y for x in u for y in v))
    return LinearMap.from_columns(cols, n)
