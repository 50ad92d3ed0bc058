"""Pure and mixed Hodge structures, bigradings and their validators.

Real spaces are Q^n; complexifications are Q(i)^n with the standard
conjugation.  A mixed Hodge structure is stored as the pair (W, F): ``W`` is an
increasing filtration by real subspaces and ``F`` is a decreasing filtration of
Q(i)^n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from gmpy2 import mpq

from .errors import DimensionMismatch, InvariantError
from .exact import QI, LinearMap, Subspace, relative_quotient
from .filtrations import (
    DEC, INC, FilteredSpace, dual_filtration, filtration_checks, kron_subspace, tensor_filtration,
)


# -- gradings -----------------------------------------------------------------

def _direct_sum_ok(subs, n: int) -> bool:
    total = Subspace.zero(n)
    for s in subs:
        total = total + s
    return total.dim == n and sum(s.dim for s in subs) == n


@dataclass(frozen=True)
class BigradedSpace:
    """V ⊗ Q(i) = ⊕ V^{pq}, with conj(V^{pq}) = V^{qp}.  Only nonzero pieces are kept."""

    dim: int
    pieces: tuple  # (((p, q), Subspace), ...) sorted by (p, q)

    @classmethod
    def build(cls, dim: int, pieces: Mapping, check: bool = True) -> "BigradedSpace":
        items = tuple(sorted(((tuple(k), v.complexify()) for k, v in pieces.items() if v.dim),
                             key=lambda kv: kv[0]))
        out = cls(dim, items)
        if check:
            out.check()
        return out

    @classmethod
    def pure_type(cls, dim: int, p: int, q: int) -> "BigradedSpace":
        """All of Q(i)^dim in the single type (p, q); needs p == q to be real."""
        return cls.build(dim, {(p, q): Subspace.full(dim, QI)})

    def check(self):
        for _, s in self.pieces:
            if s.ambient != self.dim:
                raise DimensionMismatch("bigraded piece in the wrong ambient space")
        if not _direct_sum_ok([s for _, s in self.pieces], self.dim):
            raise InvariantError("bigraded pieces do not form a direct sum decomposition",
                                 witness={"dims": {f"{p},{q}": s.dim for (p, q), s in self.pieces}})
        for (p, q), s in self.pieces:
            if s.conj() != self.piece(q, p):
                raise InvariantError(f"conj(V^{{{p},{q}}}) != V^{{{q},{p}}}", witness=(p, q))

    def piece(self, p: int, q: int) -> Subspace:
        for k, s in self.pieces:
            if k == (p, q):
                return s
        return Subspace.zero(self.dim)

    def types(self):
        return [k for k, _ in self.pieces]

    def weights(self):
        return sorted({p + q for p, q in self.types()})

    def weight_piece(self, n: int) -> Subspace:
        """𝒲_n = ⊕_{p+q=n} V^{pq}, returned as a real subspace."""
        acc = Subspace.zero(self.dim)
        for (p, q), s in self.pieces:
            if p + q == n:
                acc = acc + s
        return acc.real() if acc.dim else acc

    def weight_grading(self) -> "WeightGradedSpace":
        return WeightGradedSpace(self.dim, tuple((n, self.weight_piece(n)) for n in self.weights()))

    def hodge_filtration(self) -> FilteredSpace:
        ps = sorted({p for p, _ in self.types()}) or [0]
        steps = {}
        for p in range(ps[0], ps[-1] + 2):
            acc = Subspace.zero(self.dim)
            for (r, _), s in self.pieces:
                if r >= p:
                    acc = acc + s
            steps[p] = acc
        return FilteredSpace.from_steps(self.dim, DEC, steps)

    def weight_filtration(self) -> FilteredSpace:
        ws = self.weights() or [0]
        steps = {}
        for n in range(ws[0] - 1, ws[-1] + 1):
            acc = Subspace.zero(self.dim)
            for m in ws:
                if m <= n:
                    acc = acc + self.weight_piece(m)
            steps[n] = acc
        return FilteredSpace.from_steps(self.dim, INC, steps)

    def adapted_basis(self):
        """Columns listing a basis of each piece in type order, plus the type of each column."""
        cols, labels = [], []
        for k, s in self.pieces:
            for v in s.basis:
                cols.append(v)
                labels.append(k)
        return LinearMap.from_columns(cols, self.dim).complexify(), labels

    def decompose(self, m: LinearMap) -> dict:
        """Split an operator on Q(i)^n into components shifting type by (a, b).

        Returns {(a, b): component}, where a component maps V^{pq} into
        V^{p+a,q+b}.  Zero components are omitted.
        """
        basis, labels = self.adapted_basis()
        inv = basis.inverse()
        local = inv @ m.complexify() @ basis
        n = self.dim
        buckets = {}
        for i in range(n):
            for j in range(n):
                x = local.rows[i][j]
                if x != 0:
                    shift = (labels[i][0] - labels[j][0], labels[i][1] - labels[j][1])
                    buckets.setdefault(shift, {})[(i, j)] = x
        out = {}
        zero = QI(0)
        for shift, ent in sorted(buckets.items()):
            rows = tuple(tuple(ent.get((i, j), zero) for j in range(n)) for i in range(n))
            out[shift] = basis @ LinearMap(rows, n, n) @ inv
        return out

    def projector(self, p: int, q: int) -> LinearMap:
        basis, labels = self.adapted_basis()
        n = self.dim
        diag = tuple(tuple(QI(1) if (i == j and labels[i] == (p, q)) else QI(0) for j in range(n))
                     for i in range(n))
        return basis @ LinearMap(diag, n, n) @ basis.inverse()

    def twist(self, n: int) -> "BigradedSpace":
        return BigradedSpace(self.dim, tuple(((p - n, q - n), s) for (p, q), s in self.pieces))

    def tensor(self, other: "BigradedSpace") -> "BigradedSpace":
        out = {}
        for (p, q), s in self.pieces:
            for (r, t), u in other.pieces:
                key = (p + r, q + t)
                prod = kron_subspace(s, u)
                out[key] = out[key] + prod if key in out else prod
        return BigradedSpace.build(self.dim * other.dim, out, check=False)

    def dual(self) -> "BigradedSpace":
        """(V^∨)^{pq} annihilates every V^{rs} with (r,s) != (-p,-q)."""
        out = {}
        for (p, q), _ in self.pieces:
            others = Subspace.zero(self.dim)
            for k, s in self.pieces:
                if k != (p, q):
                    others = others + s
            out[(-p, -q)] = others.annihilator().complexify() if others.dim else Subspace.full(self.dim, QI)
        return BigradedSpace.build(self.dim, out, check=False)

    def as_mhs(self) -> "MHS":
        return MHS(self.dim, self.weight_filtration(), self.hodge_filtration())


@dataclass(frozen=True)
class WeightGradedSpace:
    """V = ⊕ 𝒲_n V over Q."""

    dim: int
    pieces: tuple  # ((n, Subspace), ...)

    @classmethod
    def build(cls, dim: int, pieces: Mapping, check: bool = True) -> "WeightGradedSpace":
        items = tuple(sorted((int(k), v) for k, v in pieces.items() if v.dim))
        out = cls(dim, items)
        if check:
            if not _direct_sum_ok([s for _, s in items], dim):
                raise InvariantError("weight pieces do not form a direct sum decomposition")
            for n, s in items:
                if not s.is_real():
                    raise InvariantError(f"weight piece {n} is not real", witness=n)
        return out

    def piece(self, n: int) -> Subspace:
        return dict(self.pieces).get(n, Subspace.zero(self.dim))

    def weights(self):
        return [n for n, _ in self.pieces]

    def adapted_basis(self):
        cols, labels = [], []
        for n, s in self.pieces:
            for v in s.basis:
                cols.append(v)
                labels.append(n)
        return LinearMap.from_columns(cols, self.dim), labels

    def weight_filtration(self) -> FilteredSpace:
        ws = self.weights() or [0]
        steps = {}
        for n in range(ws[0] - 1, ws[-1] + 1):
            acc = Subspace.zero(self.dim)
            for m, s in self.pieces:
                if m <= n:
                    acc = acc + s
            steps[n] = acc
        return FilteredSpace.from_steps(self.dim, INC, steps)

    def tensor(self, other: "WeightGradedSpace") -> "WeightGradedSpace":
        out = {}
        for m, s in self.pieces:
            for n, u in other.pieces:
                prod = kron_subspace(s, u)
                out[m + n] = out[m + n] + prod if m + n in out else prod
        return WeightGradedSpace.build(self.dim * other.dim, out, check=False)

    def dual(self) -> "WeightGradedSpace":
        out = {}
        for n, _ in self.pieces:
            others = Subspace.zero(self.dim)
            for m, s in self.pieces:
                if m != n:
                    others = others + s
            out[-n] = others.annihilator() if others.dim else Subspace.full(self.dim)
        return WeightGradedSpace.build(self.dim, out, check=False)


@dataclass(frozen=True)
class MTSReport:
    ranks: tuple   # ((n, rank of gr^W_n), ...)
    slopes: tuple  # ((n, slope), ...)

    @property
    def total_rank(self) -> int:
        return sum(r for _, r in self.ranks)

    def consistent(self) -> bool:
        return all(n == s for n, s in self.slopes)


def mts_report(grading: WeightGradedSpace) -> MTSReport:
    """Ranks of the weight-graded pieces; a pure piece of weight n has slope n."""
    return MTSReport(tuple((n, s.dim) for n, s in grading.pieces),
                     tuple((n, n) for n, _ in grading.pieces))


# -- mixed Hodge structures -----------------------------------------------------

@dataclass(frozen=True)
class MHS:
    dim: int
    W: FilteredSpace
    F: FilteredSpace

    def __post_init__(self):
        if self.W.direction != INC or self.F.direction != DEC:
            raise InvariantError("W must be increasing and F decreasing")
        if self.W.ambient != self.dim or self.F.ambient != self.dim:
            raise DimensionMismatch("filtrations live in the wrong ambient space")
        for i, s in self.W.steps:
            if not s.is_real():
                raise InvariantError(f"W_{i} is not defined over Q", witness=i)
        object.__setattr__(self, "W", FilteredSpace(self.dim, INC, tuple((i, s.real()) for i, s in self.W.steps)))
        object.__setattr__(self, "F", self.F.complexify())

    def weights(self):
        return [n for n in self.W.jumps()]

    def gr(self, n: int):
        """(quotient, induced F on gr^W_n)."""
        q = relative_quotient(self.W.step(n).complexify(), self.W.step(n - 1).complexify())
        steps = tuple((p, (s & self.W.step(n).complexify()).image_under(q.projection))
                      for p, s in self.F.steps)
        return q, FilteredSpace(q.dim, DEC, steps)

    def __eq__(self, other):
        if not isinstance(other, MHS):
            return NotImplemented
        return self.dim == other.dim and self.W == other.W and self.F == other.F

    def __hash__(self):
        return hash((self.dim, self.W, self.F))


@dataclass(frozen=True)
class PureCheck:
    ok: bool
    witness: int | None = None


def validate_pure(F: FilteredSpace, n: int) -> PureCheck:
    """Is (Q(i)^d, F) pure of weight n?  Witness: the largest failing p."""
    F = F.complexify()
    Fb = F.conj()
    d = F.ambient
    lo = min(F.lo, n - F.hi) - 1
    hi = max(F.hi, n - F.lo) + 2
    bad = None
    for p in range(lo, hi + 1):
        a, b = F.step(p), Fb.step(n + 1 - p)
        if a.dim + b.dim != d or (a + b).dim != d:
            bad = p
    return PureCheck(bad is None, bad)


@dataclass(frozen=True)
class MHSReport:
    ok: bool
    failure_class: str | None = None  # None | "non-hausdorff" | "non-exhaustive" | "opposedness"
    per_weight: tuple = ()            # ((n, PureCheck), ...)
    witness: dict = field(default_factory=dict)


def validate_mhs(m: MHS) -> MHSReport:
    wrep = filtration_checks(m.W)
    if not wrep.hausdorff:
        return MHSReport(False, "non-hausdorff", (), wrep.witness)
    frep = filtration_checks(m.F)
    if not wrep.exhaustive or not frep.exhaustive:
        wit = dict(wrep.witness)
        wit.update({f"F_{k}": v for k, v in frep.witness.items() if k == "exhaustive"})
        return MHSReport(False, "non-exhaustive", (), wit)
    per = []
    for n in range(m.W.lo, m.W.hi + 1):
        q, f = m.gr(n)
        if q.dim == 0:
            continue
        per.append((n, validate_pure(f, n)))
    ok = all(c.ok for _, c in per)
    wit = {} if ok else {"weights": [n for n, c in per if not c.ok]}
    return MHSReport(ok, None if ok else "opposedness", tuple(per), wit)


def tate_twist(m, n: int):
    """Shift types by (-n, -n): weights move by -2n."""
    if isinstance(m, BigradedSpace):
        return m.twist(n)
    if isinstance(m, MHS):
        return MHS(m.dim, m.W.shifted(2 * n), m.F.shifted(n))
    raise TypeError(f"cannot twist {type(m).__name__}")


def tate(n: int) -> MHS:
    """The one-dimensional structure R(n) of type (-n, -n)."""
    return BigradedSpace.pure_type(1, -n, -n).as_mhs()


def tensor_dual_mhs(kind: str, *args) -> MHS:
    if kind == "tensor":
        a, b = args
        return MHS(a.dim * b.dim, tensor_filtration(a.W, b.W), tensor_filtration(a.F, b.F))
    if kind == "dual":
        (a,) = args
        return MHS(a.dim, dual_filtration(a.W), dual_filtration(a.F))
    if kind == "hom":
        a, b = args
        return tensor_dual_mhs("tensor", tensor_dual_mhs("dual", a), b)
    raise ValueError(f"unknown operation {kind!r}")


def identity_vector(n: int):
    """The identity of Hom(V, V) in the coordinates of V^∨ ⊗ V."""
    return tuple(mpq(1) if i == j else mpq(0) for i in range(n) for j in range(n))


# -- Deligne splitting ------------------------------------------------------------

@dataclass(frozen=True)
class DeligneSplitting:
    dim: int
    pieces: tuple  # (((p, q), Subspace), ...) nonzero pieces only

    def piece(self, p: int, q: int) -> Subspace:
        return dict(self.pieces).get((p, q), Subspace.zero(self.dim))

    def types(self):
        return [k for k, _ in self.pieces]


def deligne_bigrading(m: MHS) -> DeligneSplitting:
    """I^{pq} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{j≥2} F̄^{q-j+1} ∩ W_{p+q-j}).

    The postconditions (direct sum, recovery of F and W) are checked before
    returning; a violation raises :class:`InvariantError`.
    """
    rep = validate_mhs(m)
    if not rep.ok:
        raise InvariantError("input is not a mixed Hodge structure",
                             witness={"class": rep.failure_class, **rep.witness})
    F, Fb = m.F, m.F.conj()
    W = m.W.complexify()
    hodge_idx = m.F.jumps()
    wlo = m.W.lo
    pieces = []
    for p in hodge_idx:
        for q in hodge_idx:
            n = p + q
            left = F.step(p) & W.step(n)
            if left.dim == 0:
                continue
            right = Fb.step(q) & W.step(n)
            j = 2
            while n - j >= wlo - 1:
                right = right + (Fb.step(q - j + 1) & W.step(n - j))
                j += 1
            piece = left & right
            if piece.dim:
                pieces.append(((p, q), piece))
    out = DeligneSplitting(m.dim, tuple(pieces))
    _check_deligne(m, out)
    return out


def _check_deligne(m: MHS, s: DeligneSplitting):
    n = m.dim
    if not _direct_sum_ok([v for _, v in s.pieces], n):
        raise InvariantError("Deligne pieces are not a direct sum decomposition")
    for p in range(m.F.lo, m.F.hi + 2):
        acc = Subspace.zero(n)
        for (r, _), v in s.pieces:
            if r >= p:
                acc = acc + v
        if acc != m.F.step(p):
            raise InvariantError(f"Deligne pieces do not recover F^{p}", witness=p)
    for w in range(m.W.lo, m.W.hi + 1):
        acc = Subspace.zero(n)
        for (p, q), v in s.pieces:
            if p + q <= w:
                acc = acc + v
        if acc != m.W.step(w).complexify():
            raise InvariantError(f"Deligne pieces do not recover W_{w}", witness=w)
