"""Filtered vector spaces and their Rees modules.

A :class:`FilteredSpace` stores one subspace per index over a finite window
``[lo, hi]``.  Outside the window the filtration is constant: indices below
``lo`` take the value at ``lo`` and indices above ``hi`` the value at ``hi``.
So an increasing filtration is exhaustive iff its top step is everything and
Hausdorff iff its bottom step is zero; for decreasing filtrations the roles
of the two ends swap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from gmpy2 import mpq

from .errors import DimensionMismatch, InvariantError
from .exact import QI, LinearMap, Quotient, Subspace, conj, relative_quotient

INC, DEC = "inc", "dec"


@dataclass(frozen=True)
class FilteredSpace:
    ambient: int
    direction: str
    steps: tuple  # ((index, Subspace), ...), contiguous indices in increasing order

    def __post_init__(self):
        if self.direction not in (INC, DEC):
            raise ValueError(f"direction must be {INC!r} or {DEC!r}")
        if not self.steps:
            raise InvariantError("a filtration needs at least one step")
        idx = [i for i, _ in self.steps]
        if idx != list(range(idx[0], idx[0] + len(idx))):
            raise InvariantError("filtration steps must be contiguous", witness=idx)
        for _, s in self.steps:
            if s.ambient != self.ambient:
                raise DimensionMismatch("step lives in the wrong ambient space")
        for (i, a), (_, b) in zip(self.steps, self.steps[1:]):
            ok = a <= b if self.direction == INC else b <= a
            if not ok:
                raise InvariantError(f"filtration is not monotone at index {i}", witness=i)

    @classmethod
    def from_steps(cls, ambient: int, direction: str, steps: Mapping[int, Subspace]) -> "FilteredSpace":
        """Fill gaps so the filtration only jumps at the given indices.

        For increasing filtrations a missing index copies the nearest given
        index below it; for decreasing ones, the nearest given index above.
        """
        if not steps:
            raise InvariantError("a filtration needs at least one step")
        keys = sorted(steps)
        out = []
        for n in range(keys[0], keys[-1] + 1):
            if n in steps:
                out.append((n, steps[n]))
            elif direction == INC:
                out.append((n, steps[max(k for k in keys if k <= n)]))
            else:
                out.append((n, steps[min(k for k in keys if k >= n)]))
        return cls(ambient, direction, tuple(out))

    @classmethod
    def trivial(cls, ambient: int, direction: str, index: int = 0, field=mpq) -> "FilteredSpace":
        """Everything sits at ``index``: F_index = V, F_{index-1} = 0 (resp. F^{index+1} = 0)."""
        full, zero = Subspace.full(ambient, field), Subspace.zero(ambient)
        if direction == INC:
            return cls(ambient, INC, ((index - 1, zero), (index, full)))
        return cls(ambient, DEC, ((index, full), (index + 1, zero)))

    @property
    def lo(self) -> int:
        return self.steps[0][0]

    @property
    def hi(self) -> int:
        return self.steps[-1][0]

    def step(self, n: int) -> Subspace:
        if n <= self.lo:
            return self.steps[0][1]
        if n >= self.hi:
            return self.steps[-1][1]
        return self.steps[n - self.lo][1]

    __getitem__ = step

    def indices(self):
        return range(self.lo, self.hi + 1)

    def jumps(self):
        """Indices where the graded piece is nonzero."""
        return [n for n in range(self.lo, self.hi + 2) if self._gr_dim(n) > 0]

    def _gr_dim(self, n: int) -> int:
        if self.direction == INC:
            return self.step(n).dim - self.step(n - 1).dim
        return self.step(n).dim - self.step(n + 1).dim

    # -- derived filtrations ------------------------------------------------

    def conj(self) -> "FilteredSpace":
        return FilteredSpace(self.ambient, self.direction, tuple((i, s.conj()) for i, s in self.steps))

    def complexify(self) -> "FilteredSpace":
        return FilteredSpace(self.ambient, self.direction, tuple((i, s.complexify()) for i, s in self.steps))

    def image_under(self, m: LinearMap) -> "FilteredSpace":
        return FilteredSpace(m.cod, self.direction, tuple((i, s.image_under(m)) for i, s in self.steps))

    def shifted(self, k: int) -> "FilteredSpace":
        """Reindex so that the new step n is the old step n + k."""
        return FilteredSpace(self.ambient, self.direction, tuple((i - k, s) for i, s in self.steps))

    def induced_on_quotient(self, q: Quotient) -> "FilteredSpace":
        return self.image_under(q.projection)

    def induced_on_subspace(self, sub: Subspace) -> "FilteredSpace":
        """F ∩ sub, written in the coordinates of ``sub``'s stored basis."""
        steps = []
        for i, s in self.steps:
            meet = s & sub
            steps.append((i, Subspace.span([sub.coordinates(v) for v in meet.basis], sub.dim)))
        return FilteredSpace(sub.dim, self.direction, tuple(steps))

    def __eq__(self, other):
        if not isinstance(other, FilteredSpace):
            return NotImplemented
        if (self.ambient, self.direction) != (other.ambient, other.direction):
            return False
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.step(n) == other.step(n) for n in range(lo, hi + 1))

    def __hash__(self):
        return hash((self.ambient, self.direction, tuple(self.step(n) for n in self.indices())))


@dataclass(frozen=True)
class FiltrationReport:
    exhaustive: bool
    hausdorff: bool
    bounds: tuple  # (lowest index with nonzero graded piece, highest), or None if no jumps
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.exhaustive and self.hausdorff


def filtration_checks(f: FilteredSpace) -> FiltrationReport:
    top, bottom = (f.steps[-1], f.steps[0]) if f.direction == INC else (f.steps[0], f.steps[-1])
    exhaustive = top[1].dim == f.ambient
    hausdorff = bottom[1].dim == 0
    witness = {}
    if not exhaustive:
        witness["exhaustive"] = {"index": top[0], "dim": top[1].dim}
    if not hausdorff:
        witness["hausdorff"] = {"index": bottom[0], "dim": bottom[1].dim}
    jumps = f.jumps()
    bounds = (jumps[0], jumps[-1]) if jumps else None
    return FiltrationReport(exhaustive, hausdorff, bounds, witness)


@dataclass(frozen=True)
class GradedPiece:
    index: int
    quotient: Quotient          # step / previous step, projection defined on the ambient space
    complement: Subspace        # image of the section, a representative of the piece

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def projection(self) -> LinearMap:
        return self.quotient.projection


def graded_pieces(f: FilteredSpace, keep_zero: bool = False) -> list:
    """gr_n = F_n / F_{n-1} (increasing) or F^n / F^{n+1} (decreasing)."""
    out = []
    for n in range(f.lo, f.hi + 1):
        big = f.step(n)
        small = f.step(n - 1) if f.direction == INC else f.step(n + 1)
        q = relative_quotient(big, small)
        if q.dim or keep_zero:
            out.append(GradedPiece(n, q, Subspace.span(q.section.columns(), f.ambient)))
    return out


# -- Rees modules -------------------------------------------------------------

@dataclass(frozen=True)
class ReesModule:
    """⊕ F_n V with t acting by the inclusions F_n -> F_{n+1}.

    ``pieces[n]`` is F_n; ``shifts[n]`` is the inclusion piece(n) -> piece(n+1)
    in the coordinates of the stored bases.  Outside the stored window the
    pieces are constant and the shifts are identities.
    """

    ambient: int
    pieces: tuple   # ((n, Subspace), ...)
    shifts: tuple   # ((n, LinearMap), ...)

    def piece(self, n: int) -> Subspace:
        d = dict(self.pieces)
        lo, hi = self.pieces[0][0], self.pieces[-1][0]
        return d[min(max(n, lo), hi)]

    def shift(self, n: int) -> LinearMap:
        d = dict(self.shifts)
        if n in d:
            return d[n]
        p = self.piece(n)
        return LinearMap.identity(p.dim)

    def is_flat(self) -> bool:
        return all(m.rank() == m.dom for _, m in self.shifts)

    def colimit_is_total(self) -> bool:
        return self.pieces[-1][1].dim == self.ambient

    def cokernel_dim(self, n: int) -> int:
        """dim coker(shift: piece(n-1) -> piece(n)), i.e. dim gr_n."""
        m = self.shift(n - 1)
        return m.cod - m.rank()


def _inclusion(a: Subspace, b: Subspace) -> LinearMap:
    cols = [b.coordinates(v) for v in a.basis]
    if not cols:
        return LinearMap(tuple(() for _ in range(b.dim)), 0, b.dim)
    return LinearMap.from_columns(cols, b.dim)


def rees_single(f: FilteredSpace) -> ReesModule:
    """Rees module of an exhaustive filtration.

    Decreasing filtrations are read as increasing via F_n := F^{-n}.
    """
    if not filtration_checks(f).exhaustive:
        raise InvariantError("Rees module needs an exhaustive filtration",
                             witness=filtration_checks(f).witness)
    if f.direction == DEC:
        f = FilteredSpace(f.ambient, INC, tuple((-i, s) for i, s in reversed(f.steps)))
    pieces = tuple((n, f.step(n)) for n in range(f.lo, f.hi + 1))
    shifts = tuple((n, _inclusion(f.step(n), f.step(n + 1))) for n in range(f.lo, f.hi))
    return ReesModule(f.ambient, pieces, shifts)


@dataclass(frozen=True)
class DoubleReesModule:
    """Pieces F^p ∩ conj(F^q); ``w`` lowers p, ``wbar`` lowers q (both inclusions)."""

    ambient: int
    lo: int
    hi: int
    table: tuple  # (((p, q), Subspace), ...)

    def piece(self, p: int, q: int) -> Subspace:
        p = min(max(p, self.lo), self.hi + 1)
        q = min(max(q, self.lo), self.hi + 1)
        return dict(self.table)[(p, q)]

    def w(self, p: int, q: int) -> LinearMap:
        return _inclusion(self.piece(p, q), self.piece(p - 1, q))

    def wbar(self, p: int, q: int) -> LinearMap:
        return _inclusion(self.piece(p, q), self.piece(p, q - 1))

    def real_elements(self, p: int, q: int) -> Subspace:
        """Real points of the conj-stable part supported on {(p,q), (q,p)}.

        For p == q this is the real form of piece(p,p) inside Q^n.  For p != q
        an element is a pair (v, conj v) with v in piece(p,q); it is recorded by
        (Re v, Im v) in Q^{2n}.
        """
        a = self.piece(p, q)
        if p == q:
            return a.real()
        vecs = []
        for v in a.basis:
            for c in (QI(1), QI(0, 1)):
                cv = [c * x for x in v]
                vecs.append(tuple(x.re for x in cv) + tuple(x.im for x in cv))
        return Subspace.span(vecs, 2 * self.ambient)

    def nonzero(self):
        return {k: s.dim for k, s in self.table if s.dim}


def rees_double(f: FilteredSpace) -> DoubleReesModule:
    if f.direction != DEC:
        raise ValueError("the complex Rees module takes a decreasing filtration")
    if not filtration_checks(f).exhaustive:
        raise InvariantError("Rees module needs an exhaustive filtration",
                             witness=filtration_checks(f).witness)
    f = f.complexify()
    fb = f.conj()
    table = []
    for p in range(f.lo, f.hi + 2):
        for q in range(f.lo, f.hi + 2):
            table.append(((p, q), f.step(p) & fb.step(q)))
    return DoubleReesModule(f.ambient, f.lo, f.hi, tuple(table))


# -- tensor products and duals ------------------------------------------------

def kron_subspace(a: Subspace, b: Subspace) -> Subspace:
    vecs = [tuple(x * y for x in u for y in v) for u in a.basis for v in b.basis]
    return Subspace.span(vecs, a.ambient * b.ambient)


def tensor_filtration(f: FilteredSpace, g: FilteredSpace) -> FilteredSpace:
    """Convolution: step n of the product is the sum over a of f_a ⊗ g_{n-a}."""
    if f.direction != g.direction:
        raise ValueError("tensor needs two filtrations of the same direction")
    n_amb = f.ambient * g.ambient
    lo, hi = f.lo + g.lo, f.hi + g.hi
    steps = []
    for n in range(lo - 1, hi + 2):
        acc = Subspace.zero(n_amb)
        for a in range(f.lo - 1, f.hi + 2):
            acc = acc + kron_subspace(f.step(a), g.step(n - a))
        steps.append((n, acc))
    return FilteredSpace(n_amb, f.direction, tuple(steps))


def dual_filtration(f: FilteredSpace) -> FilteredSpace:
    """W_n(V*) = ann W_{-n-1}(V); F^p(V*) = ann F^{1-p}(V)."""
    steps = []
    if f.direction == INC:
        for n in range(-f.hi - 2, -f.lo + 1):
            steps.append((n, f.step(-n - 1).annihilator()))
    else:
        for p in range(1 - f.hi - 1, 1 - f.lo + 2):
            steps.append((p, f.step(1 - p).annihilator()))
    return FilteredSpace(f.ambient, f.direction, tuple(steps))


def conj_vector(v):
    return tuple(conj(x) for x in v)
