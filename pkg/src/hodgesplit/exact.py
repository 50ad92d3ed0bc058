"""Exact scalars, linear maps and subspaces over Q and Q(i).

Real scalars are ``gmpy2.mpq``; Gaussian rationals are :class:`QI`.  All linear
algebra below is written against the field operations only, so the same code
runs over either field.  Subspaces are stored by the reduced row-echelon form
of a basis, which is unique, so two subspaces are equal exactly when their
stored bases are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DimensionMismatch, InconsistentSystem, ParseError, RejectionError

__all__ = [
    "QI", "Q", "I", "conj", "is_real", "to_complex", "parse_scalar", "format_scalar",
    "LinearMap", "Subspace", "Quotient", "quotient", "relative_quotient", "solve",
    "subspace_ops", "coerce_scalar", "nilpotent_exp_log", "nilpotent_exp", "unipotent_log", "rref",
]

Q = mpq


class QI:
    """Gaussian rational ``re + im*i`` with ``re``, ``im`` in Q."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QI):
            return x
        return QI(x, 0)

    def __add__(self, other):
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        return QI(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QI):
            return QI(self.re - other.re, self.im - other.im)
        return QI(self.re - other, self.im)

    def __rsub__(self, other):
        return QI(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, QI):
            return QI(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        return QI(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QI._coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("QI division by zero")
        return QI((self.re * other.re + self.im * other.im) / n,
                  (self.im * other.re - self.re * other.im) / n)

    def __rtruediv__(self, other):
        return QI._coerce(other) / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return QI(1) / (self ** (-k))
        out = QI(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({format_scalar(self)})"

    __str__ = lambda self: format_scalar(self)


I = QI(0, 1)


def conj(x):
    return x.conj() if isinstance(x, QI) else x


def is_real(x) -> bool:
    return not isinstance(x, QI) or x.im == 0


def to_complex(x) -> QI:
    return x if isinstance(x, QI) else QI(x, 0)


def coerce_scalar(x):
    """Bring ints, Fractions and strings into the field types used here."""
    if isinstance(x, QI):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return mpq(x)


def _zero_like(x):
    return QI() if isinstance(x, QI) else mpq(0)


def _one_like(x):
    return QI(1) if isinstance(x, QI) else mpq(1)


# -- text format --------------------------------------------------------------

_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?P<re>{_RAT})?\s*(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$"
)


def _parse_rat(s: str):
    try:
        return mpq(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def parse_scalar(text):
    """Parse ``"a/b"`` or ``"a/b+c/d*i"``; integers and mpq pass through."""
    if isinstance(text, (int, type(mpq(0)))):
        return mpq(text)
    if isinstance(text, QI):
        return text
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {text!r}")
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and "i" not in text):
        raise ParseError(f"bad scalar {text!r}")
    re_part = _parse_rat(m.group("re")) if m.group("re") else mpq(0)
    if "i" not in text:
        return re_part
    im_part = _parse_rat(m.group("im")) if m.group("im") else mpq(1)
    if m.group("sign") == "-":
        im_part = -im_part
    elif m.group("sign") is None and m.group("re") is not None:
        raise ParseError(f"bad scalar {text!r}")
    return QI(re_part, im_part)


def _fmt_rat(x) -> str:
    x = mpq(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    if isinstance(x, QI):
        if x.im == 0:
            return _fmt_rat(x.re)
        sign = "+" if x.im > 0 else "-"
        return f"{_fmt_rat(x.re)}{sign}{_fmt_rat(abs(x.im))}*i"
    return _fmt_rat(x)


# -- row reduction ------------------------------------------------------------

def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for k in range(r, len(m)):
            if m[k][c] != 0:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _one_like(m[r][c]) / m[r][c]
        row = [x * inv for x in m[r]]
        m[r] = row
        for k in range(len(m)):
            if k != r:
                f = m[k][c]
                if f != 0:
                    mk = m[k]
                    m[k] = [a - f * b for a, b in zip(mk, row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def _null_space(rows: Sequence[Sequence], ncols: int, sample=None):
    red, pivots = rref(rows, ncols)
    zero = _zero_like(sample if sample is not None else (red[0][0] if red else mpq(0)))
    one = zero + 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return out


# -- linear maps --------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Matrix acting on column vectors: ``cod x dom``."""

    rows: tuple
    dom: int
    cod: int

    def __post_init__(self):
        if len(self.rows) != self.cod or any(len(r) != self.dom for r in self.rows):
            raise DimensionMismatch(
                f"matrix shape does not match {self.cod}x{self.dom}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], dom: int | None = None) -> "LinearMap":
        rows = tuple(tuple(coerce_scalar(a) for a in r) for r in rows)
        if dom is None:
            if not rows:
                raise DimensionMismatch("empty matrix needs an explicit domain dimension")
            dom = len(rows[0])
        return cls(rows, dom, len(rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], cod: int) -> "LinearMap":
        return cls(tuple(tuple(coerce_scalar(c[i]) for c in cols) for i in range(cod)), len(cols), cod)

    @classmethod
    def identity(cls, n: int, field=mpq) -> "LinearMap":
        one, zero = (QI(1), QI(0)) if field is QI else (mpq(1), mpq(0))
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def zero(cls, cod: int, dom: int, field=mpq) -> "LinearMap":
        z = QI(0) if field is QI else mpq(0)
        return cls(tuple(tuple(z for _ in range(dom)) for _ in range(cod)), dom, cod)

    @property
    def shape(self):
        return (self.cod, self.dom)

    def columns(self):
        return [tuple(self.rows[i][j] for i in range(self.cod)) for j in range(self.dom)]

    def apply(self, v: Sequence):
        if len(v) != self.dom:
            raise DimensionMismatch(f"vector of length {len(v)} applied to map with domain {self.dom}")
        return tuple(sum((a * b for a, b in zip(row, v)), _zero_like(row[0]) if row else mpq(0))
                     for row in self.rows)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.dom != other.cod:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        cols = other.columns()
        rows = tuple(tuple(_dot(row, c) for c in cols) for row in self.rows)
        return LinearMap(rows, other.dom, self.cod)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return LinearMap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                         self.dom, self.cod)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def __neg__(self) -> "LinearMap":
        return LinearMap(tuple(tuple(-a for a in r) for r in self.rows), self.dom, self.cod)

    def scale(self, c) -> "LinearMap":
        return LinearMap(tuple(tuple(c * a for a in r) for r in self.rows), self.dom, self.cod)

    def __rmul__(self, c):
        return self.scale(c)

    @property
    def T(self) -> "LinearMap":
        return LinearMap(tuple(tuple(self.rows[i][j] for i in range(self.cod)) for j in range(self.dom)),
                         self.cod, self.dom)

    def conj(self) -> "LinearMap":
        return LinearMap(tuple(tuple(conj(a) for a in r) for r in self.rows), self.dom, self.cod)

    def complexify(self) -> "LinearMap":
        return LinearMap(tuple(tuple(to_complex(a) for a in r) for r in self.rows), self.dom, self.cod)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def is_real(self) -> bool:
        return all(is_real(a) for r in self.rows for a in r)

    def real(self) -> "LinearMap":
        """Drop imaginary parts; only meaningful when ``is_real()``."""
        return LinearMap(tuple(tuple(a.re if isinstance(a, QI) else a for a in r) for r in self.rows),
                         self.dom, self.cod)

    def kron(self, other: "LinearMap") -> "LinearMap":
        rows = []
        for r1 in self.rows:
            for r2 in other.rows:
                rows.append(tuple(a * b for a in r1 for b in r2))
        return LinearMap(tuple(rows), self.dom * other.dom, self.cod * other.cod)

    def power(self, k: int) -> "LinearMap":
        out = LinearMap.identity(self.dom, QI if self._is_complex() else mpq)
        for _ in range(k):
            out = out @ self
        return out

    def _is_complex(self) -> bool:
        return any(isinstance(a, QI) for r in self.rows for a in r)

    def kernel(self) -> "Subspace":
        sample = self.rows[0][0] if self.rows and self.dom else None
        return Subspace.span(_null_space(self.rows, self.dom, sample), self.dom)

    def image(self) -> "Subspace":
        return Subspace.span(self.columns(), self.cod)

    def rank(self) -> int:
        return len(rref(self.rows, self.dom)[1])

    def inverse(self) -> "LinearMap":
        if self.dom != self.cod:
            raise DimensionMismatch("only square maps are invertible")
        n = self.dom
        field = QI if self._is_complex() else mpq
        ident = LinearMap.identity(n, field)
        aug = [tuple(r) + tuple(e) for r, e in zip(self.rows, ident.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise RejectionError("map is not invertible")
        return LinearMap(tuple(tuple(r[n:]) for r in red), n, n)

    def entries(self):
        return [list(r) for r in self.rows]


def _dot(a, b):
    s = None
    for x, y in zip(a, b):
        t = x * y
        s = t if s is None else s + t
    return mpq(0) if s is None else s


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Subspace of k^ambient given by the reduced echelon form of a basis."""

    ambient: int
    basis: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        vecs = [tuple(coerce_scalar(a) for a in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, _ = rref(vecs, ambient)
        return cls(ambient, tuple(red))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int, field=mpq) -> "Subspace":
        return cls(ambient, LinearMap.identity(ambient, field).rows)

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int], field=mpq) -> "Subspace":
        one, zero = (QI(1), QI(0)) if field is QI else (mpq(1), mpq(0))
        return cls.span([tuple(one if j == i else zero for j in range(ambient)) for i in indices], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self):
        out = []
        for row in self.basis:
            for j, x in enumerate(row):
                if x != 0:
                    out.append(j)
                    break
        return out

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient dimensions {self.ambient} and {other.ambient} differ")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        ann = self.annihilator().basis + other.annihilator().basis
        sample = (self.basis + other.basis)[0][0]
        return Subspace.span(_null_space(ann, self.ambient, sample), self.ambient)

    def annihilator(self) -> "Subspace":
        """Vectors f with sum(f_j v_j) = 0 for every v here (bilinear, no conjugation)."""
        if self.dim == 0:
            return Subspace.full(self.ambient)
        return Subspace.span(_null_space(self.basis, self.ambient, self.basis[0][0]), self.ambient)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch("vector length does not match ambient dimension")
        rest = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = rest[p]
            if f != 0:
                rest = [a - f * b for a, b in zip(rest, row)]
        return all(a == 0 for a in rest)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def coordinates(self, v: Sequence):
        """Coordinates of ``v`` in the stored basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise InconsistentSystem("vector is not in the subspace", witness=v)
        return tuple(v[p] for p in self.pivots)

    def conj(self) -> "Subspace":
        return Subspace.span([tuple(conj(a) for a in r) for r in self.basis], self.ambient)

    def complexify(self) -> "Subspace":
        return Subspace(self.ambient, tuple(tuple(to_complex(a) for a in r) for r in self.basis))

    def is_real(self) -> bool:
        """Conjugation-stable; by uniqueness of the echelon form this means real entries."""
        return all(is_real(a) for r in self.basis for a in r)

    def real(self) -> "Subspace":
        if not self.is_real():
            raise RejectionError("subspace is not defined over Q")
        return Subspace(self.ambient, tuple(tuple(a.re if isinstance(a, QI) else a for a in r)
                                            for r in self.basis))

    def image_under(self, m: LinearMap) -> "Subspace":
        if m.dom != self.ambient:
            raise DimensionMismatch("map domain does not match ambient dimension")
        return Subspace.span([m.apply(v) for v in self.basis], m.cod)

    def preimage_under(self, m: LinearMap) -> "Subspace":
        """{v : m v in self}."""
        if m.cod != self.ambient:
            raise DimensionMismatch("map codomain does not match ambient dimension")
        ann = self.annihilator().basis
        if not ann:
            return Subspace.full(m.dom)
        test = LinearMap.from_rows(ann, self.ambient) @ m
        return test.kernel()

    def matrix(self) -> LinearMap:
        """Inclusion map k^dim -> k^ambient (basis vectors as columns)."""
        return LinearMap.from_columns(self.basis, self.ambient)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(format_scalar(a) for a in r) + ")" for r in self.basis)
        return f"Subspace({self.ambient}; [{rows}])"


@dataclass(frozen=True)
class Quotient:
    """``projection @ section`` is the identity and ``projection`` kills the subspace."""

    projection: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return self.projection.cod


def quotient(sub: Subspace) -> Quotient:
    """k^n / sub, with section e_j for the non-pivot j in increasing order."""
    n = sub.ambient
    piv = sub.pivots
    sample = sub.basis[0][0] if sub.basis else mpq(0)
    zero = _zero_like(sample)
    one = zero + 1
    free = [j for j in range(n) if j not in set(piv)]
    proj = []
    for q in free:
        row = [zero] * n
        row[q] = one
        for r, p in zip(sub.basis, piv):
            row[p] = row[p] - r[q]
        proj.append(tuple(row))
    sec = [tuple(one if i == q else zero for i in range(n)) for q in free]
    return Quotient(LinearMap(tuple(proj), n, len(free)), LinearMap.from_columns(sec, n))


class _Reducer:
    """Incremental Gaussian elimination: ``add`` keeps a vector iff it raises the rank."""

    def __init__(self, rows=()):
        self.rows = []   # (pivot, row with a 1 at pivot)
        for r in rows:
            self.add(r)

    def add(self, v) -> bool:
        v = list(v)
        for p, row in self.rows:
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        for p, c in enumerate(v):
            if c != 0:
                inv = _one_like(c) / c
                self.rows.append((p, [x * inv for x in v]))
                return True
        return False


def relative_quotient(big: Subspace, small: Subspace) -> Quotient:
    """big/small for small <= big.

    The section takes the rows of ``big``'s echelon basis that raise the rank
    over ``small`` (in order).  The projection is a map on the whole ambient
    space that is the quotient map on ``big``.
    """
    if not small <= big:
        raise DimensionMismatch("relative quotient needs small <= big")
    n = big.ambient
    sample = big.basis[0][0] if big.basis else mpq(0)
    zero = _zero_like(sample)
    one = zero + 1
    reducer = _Reducer(small.basis)
    chosen = [row for row in big.basis if reducer.add(row)]
    # extend small + chosen to a basis of k^n, then read off the chosen coordinates
    full = list(small.basis) + chosen
    for j in range(n):
        e = tuple(one if i == j else zero for i in range(n))
        if reducer.add(e):
            full.append(e)
    k0, k1 = small.dim, len(chosen)
    basis_mat = LinearMap.from_columns(full, n) if full else LinearMap.zero(n, 0)
    inv = basis_mat.inverse() if n else basis_mat
    proj = LinearMap(tuple(inv.rows[k0:k0 + k1]), n, k1)
    sec = LinearMap.from_columns(chosen, n) if chosen else LinearMap(tuple(() for _ in range(n)), 0, n)
    return Quotient(proj, sec)


def solve(m: LinearMap, b: Sequence):
    """One solution of ``m x = b``.

    Raises :class:`InconsistentSystem` when there is none; a zero solution is
    returned as an ordinary zero vector.
    """
    if len(b) != m.cod:
        raise DimensionMismatch("right-hand side length does not match codomain")
    aug = [tuple(r) + (bb,) for r, bb in zip(m.rows, b)]
    red, piv = rref(aug, m.dom + 1)
    if m.dom in piv:
        raise InconsistentSystem("linear system has no solution")
    sample = b[0] if len(b) else mpq(0)
    zero = _zero_like(sample if m.cod else mpq(0))
    x = [zero] * m.dom
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return tuple(x)


def subspace_ops(kind: str, *args):
    """Dispatch for the lattice operations by name."""
    if kind == "sum":
        a, b = args
        return a + b
    if kind == "intersect":
        a, b = args
        return a & b
    if kind == "kernel":
        (m,) = args
        return m.kernel()
    if kind == "image":
        (m,) = args
        return m.image()
    if kind == "quotient":
        if len(args) == 1:
            return quotient(args[0])
        return relative_quotient(*args)
    if kind == "contains":
        a, b = args
        if isinstance(b, Subspace):
            return b <= a
        return a.contains(b)
    if kind == "solve":
        m, b = args
        return solve(m, b)
    raise ValueError(f"unknown subspace operation {kind!r}")


# -- nilpotent exponential and unipotent logarithm -----------------------------

def _nilpotency_witness(m: LinearMap):
    """None if m is nilpotent, else the smallest k with m^k forced to vanish but nonzero."""
    n = m.dom
    p = m.power(n) if n else m
    return None if p.is_zero() else n


def nilpotent_exp(m: LinearMap) -> LinearMap:
    if m.dom != m.cod:
        raise DimensionMismatch("exp needs a square map")
    w = _nilpotency_witness(m)
    if w is not None:
        raise RejectionError(f"map is not nilpotent: m^{w} != 0", witness=w)
    field = QI if m._is_complex() else mpq
    out = LinearMap.identity(m.dom, field)
    term = out
    for k in range(1, m.dom):
        term = term @ m
        if term.is_zero():
            break
        out = out + term.scale(mpq(1, factorial(k)))
    return out


def unipotent_log(u: LinearMap) -> LinearMap:
    if u.dom != u.cod:
        raise DimensionMismatch("log needs a square map")
    field = QI if u._is_complex() else mpq
    nmat = u - LinearMap.identity(u.dom, field)
    w = _nilpotency_witness(nmat)
    if w is not None:
        raise RejectionError(f"map is not unipotent: (u - 1)^{w} != 0", witness=w)
    out = LinearMap.zero(u.dom, u.dom, field)
    term = LinearMap.identity(u.dom, field)
    for k in range(1, u.dom):
        term = term @ nmat
        if term.is_zero():
            break
        sign = 1 if k % 2 else -1
        out = out + term.scale(mpq(sign, k))
    return out


def nilpotent_exp_log(direction: str, m: LinearMap) -> LinearMap:
    if direction == "exp":
        return nilpotent_exp(m)
    if direction == "log":
        return unipotent_log(m)
    raise ValueError(f"direction must be 'exp' or 'log', not {direction!r}")
