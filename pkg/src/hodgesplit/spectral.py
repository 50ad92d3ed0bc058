"""Filtered cochain complexes over Q, décalage and spectral sequence pages.

Pages are keyed by (s, n): filtration index and total degree.  For an
increasing filtration J the differential d_r goes from (s, n) to (s - r, n + 1)
and

    Z_r^{s,n} = {x in J_s C^n : dx in J_{s-r} C^{n+1}},
    E_r^{s,n} = Z_r^{s,n} / (Z_{r-1}^{s-1,n} + d Z_{r-1}^{s+r-1,n-1}),

with Z_{-1}^{s} = J_s so that E_0 = gr^J.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, InvariantError
from .exact import LinearMap, Subspace, relative_quotient
from .filtrations import INC, FilteredSpace, filtration_checks


@dataclass(frozen=True)
class FilteredComplex:
    lo: int
    dims: tuple      # dim C^n for n = lo, lo + 1, ...
    diffs: tuple     # d^n : C^n -> C^{n+1} for n = lo .. hi - 1
    filt: tuple      # increasing FilteredSpace on each C^n

    @classmethod
    def build(cls, lo: int, dims, diffs, filt, check: bool = True) -> "FilteredComplex":
        out = cls(lo, tuple(dims), tuple(diffs), tuple(filt))
        if check:
            out.check()
        return out

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        return self.dims[n - self.lo] if self.lo <= n <= self.hi else 0

    def d(self, n: int) -> LinearMap:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return LinearMap.zero(self.dim(n + 1), self.dim(n))

    def J(self, n: int) -> FilteredSpace | None:
        return self.filt[n - self.lo] if self.lo <= n <= self.hi else None

    def Jstep(self, n: int, r: int) -> Subspace:
        f = self.J(n)
        return f.step(r) if f is not None else Subspace.zero(0)

    def window(self):
        """Smallest and largest filtration index carrying a nonzero graded piece."""
        lo, hi = None, None
        for f in self.filt:
            j = f.jumps()
            if j:
                lo = j[0] if lo is None else min(lo, j[0])
                hi = j[-1] if hi is None else max(hi, j[-1])
        return (lo or 0, hi if hi is not None else 0)

    def check(self):
        if len(self.diffs) != max(len(self.dims) - 1, 0) or len(self.filt) != len(self.dims):
            raise DimensionMismatch("complex needs one differential between consecutive degrees")
        for n in self.degrees():
            d = self.d(n)
            if d.shape != (self.dim(n + 1), self.dim(n)):
                raise DimensionMismatch(f"d^{n} has shape {d.shape}")
            if self.J(n).ambient != self.dim(n) or self.J(n).direction != INC:
                raise InvariantError(f"J on C^{n} must be increasing on a space of dim {self.dim(n)}")
        for n in range(self.lo, self.hi - 1):
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                raise InvariantError(f"d^{n + 1} d^{n} != 0", witness=n)
        for n in self.degrees():
            rep = filtration_checks(self.J(n))
            if not rep.ok:
                raise InvariantError(f"J on C^{n} is not exhaustive and bounded below",
                                     witness={"degree": n, **rep.witness})
            if n < self.hi:
                f = self.J(n)
                for r in f.indices():
                    if not f.step(r).image_under(self.d(n)) <= self.Jstep(n + 1, r):
                        raise InvariantError(f"d does not preserve J_{r} in degree {n}",
                                             witness={"degree": n, "index": r})


def cohomology_dims(c: FilteredComplex) -> dict:
    return {n: c.dim(n) - c.d(n).rank() - c.d(n - 1).rank() for n in c.degrees()}


def _Z(c: FilteredComplex, r: int, s: int, n: int) -> Subspace:
    """{x in J_s C^n : dx in J_{s-r} C^{n+1}}; r = -1 gives J_s."""
    if c.dim(n) == 0:
        return Subspace.zero(0)
    js = c.Jstep(n, s)
    if r < 0 or n >= c.hi:
        return js
    pre = c.Jstep(n + 1, s - r).preimage_under(c.d(n))
    return js & pre


# -- décalage ------------------------------------------------------------------------

def decalage(c: FilteredComplex) -> FilteredComplex:
    """(Dec J)_r C^n = J_{r-n} C^n ∩ d^{-1}(J_{r-n-1} C^{n+1})."""
    filt = []
    for n in c.degrees():
        f = c.J(n)
        steps = {}
        for r in range(f.lo + n - 1, f.hi + n + 2):
            a = f.step(r - n)
            if n < c.hi:
                a = a & c.Jstep(n + 1, r - n - 1).preimage_under(c.d(n))
            steps[r] = a
        filt.append(FilteredSpace.from_steps(c.dim(n), INC, steps))
    return FilteredComplex.build(c.lo, c.dims, c.diffs, filt)


def in_decalage(c: FilteredComplex, r: int, n: int, x) -> bool:
    """Membership test read straight off the two defining conditions."""
    if not c.Jstep(n, r - n).contains(x):
        return False
    if n >= c.hi:
        return True
    return c.Jstep(n + 1, r - n - 1).contains(c.d(n).apply(x))


# -- pages ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralPage:
    r: int
    entries: tuple   # (((s, n), Quotient), ...) nonzero entries only
    diffs: tuple     # (((s, n), LinearMap to (s - r, n + 1)), ...) nonzero maps only

    def dims(self) -> dict:
        return {k: q.dim for k, q in self.entries}

    def entry(self, s: int, n: int):
        return dict(self.entries).get((s, n))

    def differential(self, s: int, n: int):
        return dict(self.diffs).get((s, n))

    def total_rank(self) -> int:
        return sum(m.rank() for _, m in self.diffs)


def _page(c: FilteredComplex, r: int, slo: int, shi: int) -> SpectralPage:
    entries = {}
    for n in c.degrees():
        for s in range(slo, shi + 1):
            num = _Z(c, r, s, n)
            den = _Z(c, r - 1, s - 1, n)
            if n > c.lo:
                den = den + _Z(c, r - 1, s + r - 1, n - 1).image_under(c.d(n - 1))
            q = relative_quotient(num, den)
            if q.dim:
                entries[(s, n)] = q
    diffs = {}
    for (s, n), q in entries.items():
        tgt = entries.get((s - r, n + 1))
        if tgt is None:
            continue
        m = tgt.projection @ c.d(n) @ q.section
        if not m.is_zero():
            diffs[(s, n)] = m
    return SpectralPage(r, tuple(sorted(entries.items())), tuple(sorted(diffs.items())))


def pages(c: FilteredComplex, r_max: int | None = None) -> list:
    """E_0 .. E_{r_max}; the default runs one page past the point of degeneration."""
    slo, shi = c.window()
    if r_max is None:
        r_max = shi - slo + 2
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    return [_page(c, r, slo, shi) for r in range(r_max + 1)]


def filtered_cohomology_dims(c: FilteredComplex) -> dict:
    """dims of gr_s H^n for the filtration induced by J on cohomology."""
    slo, shi = c.window()
    out = {}
    for n in c.degrees():
        Z = c.d(n).kernel() if c.dim(n) else Subspace.zero(0)
        B = c.d(n - 1).image() if n > c.lo and c.dim(n) else Subspace.zero(c.dim(n))
        prev = B.dim
        for s in range(slo, shi + 1):
            cur = ((Z & c.Jstep(n, s)) + B).dim
            if cur - prev:
                out[(s, n)] = cur - prev
            prev = cur
    return out


@dataclass(frozen=True)
class PageReport:
    pages: tuple
    e_infinity: dict
    gr_cohomology: dict
    converged: bool
    homology_consistent: bool   # E_{r+1} dims = H(E_r, d_r) dims for every computed page
    d_squared_zero: bool


def spectral_report(c: FilteredComplex, r_max: int | None = None) -> PageReport:
    ps = pages(c, r_max)
    h_ok, dd_ok = True, True
    for a, b in zip(ps, ps[1:]):
        dims = a.dims()
        for (s, n), dim in dims.items():
            out_map = a.differential(s, n)
            in_map = a.differential(s + a.r, n - 1)
            expect = dim - (out_map.rank() if out_map else 0) - (in_map.rank() if in_map else 0)
            if b.dims().get((s, n), 0) != expect:
                h_ok = False
        for (s, n), m in a.diffs:
            nxt = a.differential(s - a.r, n + 1)
            if nxt is not None and not (nxt @ m).is_zero():
                dd_ok = False
    e_inf = ps[-1].dims()
    gr = filtered_cohomology_dims(c)
    return PageReport(tuple(ps), e_inf, gr, e_inf == gr, h_ok, dd_ok)


# -- décalage property -------------------------------------------------------------------

def _graded_complex_dims(c: FilteredComplex, idx: int) -> dict:
    """Cohomology dims of gr_idx C (with the filtration stored on c)."""
    qs = {}
    for n in c.degrees():
        qs[n] = relative_quotient(c.Jstep(n, idx), c.Jstep(n, idx - 1))
    maps = {}
    for n in c.degrees():
        if n + 1 in qs and qs[n].dim and qs[n + 1].dim:
            maps[n] = qs[n + 1].projection @ c.d(n) @ qs[n].section
    out = {}
    for n in c.degrees():
        dim = qs[n].dim
        r_out = maps[n].rank() if n in maps else 0
        r_in = maps[n - 1].rank() if n - 1 in maps else 0
        h = dim - r_out - r_in
        if h:
            out[n] = h
    return out


@dataclass(frozen=True)
class DecCheck:
    ok: bool
    table: tuple  # (((weight, degree), (dim via Dec, dim via E_2)), ...)


def dec_e1_property_check(c: FilteredComplex) -> DecCheck:
    """H^k(gr^{Dec J}_w C) against the E_2 term at (w - k, k) of J."""
    dec = decalage(c)
    e2 = _page(c, 2, *c.window()).dims()
    wlo, whi = dec.window()
    table, ok = [], True
    for w in range(wlo, whi + 1):
        lhs = _graded_complex_dims(dec, w)
        for k in c.degrees():
            a, b = lhs.get(k, 0), e2.get((w - k, k), 0)
            if a or b:
                table.append(((w, k), (a, b)))
            ok = ok and a == b
    # E_2 entries outside the Dec window would be missed above; count totals as well
    ok = ok and sum(e2.values()) == sum(x for _, (x, _) in table)
    return DecCheck(ok, tuple(table))


# -- truncation ------------------------------------------------------------------------------

def good_truncation(c: FilteredComplex, n: int) -> FilteredComplex:
    """τ_{≤n}: C^k for k < n, ker d in degree n, zero above.

    The degree-n space is written in the coordinates of the echelon basis of
    the kernel; J is restricted accordingly.
    """
    dims, diffs, filt = [], [], []
    kern = c.d(n).kernel() if c.lo <= n <= c.hi else None
    for k in c.degrees():
        if k < n:
            dims.append(c.dim(k))
            filt.append(c.J(k))
        elif k == n:
            dims.append(kern.dim)
            filt.append(c.J(k).induced_on_subspace(kern))
        else:
            dims.append(0)
            filt.append(FilteredSpace(0, INC, ((0, Subspace.zero(0)),)))
    for k in range(c.lo, c.hi):
        if k < n - 1:
            diffs.append(c.d(k))
        elif k == n - 1:
            m = c.d(k)
            cols = [kern.coordinates(col) for col in m.columns()]
            diffs.append(LinearMap.from_columns(cols, kern.dim) if cols else LinearMap.zero(kern.dim, 0))
        else:
            diffs.append(LinearMap.zero(dims[k + 1 - c.lo], dims[k - c.lo]))
    return FilteredComplex.build(c.lo, dims, diffs, filt)


def truncation_filtration(c: FilteredComplex) -> FilteredComplex:
    """The same complex filtered by τ: J_r C^k = τ_{≤r} in degree k."""
    filt = []
    for k in c.degrees():
        full, zero = Subspace.full(c.dim(k)), Subspace.zero(c.dim(k))
        ker = c.d(k).kernel() if c.dim(k) else zero
        filt.append(FilteredSpace.from_steps(c.dim(k), INC, {k - 1: zero, k: ker, k + 1: full}))
    return FilteredComplex.build(c.lo, c.dims, c.diffs, filt)


def complex_from_maps(lo: int, dims, diffs, filt: Mapping | None = None) -> FilteredComplex:
    """Convenience constructor; the default filtration puts everything at index 0."""
    filt = filt or {}
    out = []
    for k, dim in enumerate(dims):
        n = lo + k
        out.append(filt.get(n, FilteredSpace.trivial(dim, INC, 0)))
    return FilteredComplex.build(lo, dims, diffs, out)
