"""Finite weight-graded commutative DGAs and stratum-cohomology input.

A :class:`DGA` lives on Q^N with one degree (and optionally one weight) per
basis vector.  Products are stored sparsely as ``e_i e_j = sum_k c_k e_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from gmpy2 import mpq

from .errors import DimensionMismatch, InvariantError
from .exact import LinearMap, coerce_scalar

A_PLUS_B = "a+b"
A_PLUS_2B = "a+2b"
_CONVENTIONS = {"a+b": A_PLUS_B, "a+2b": A_PLUS_2B, "a2b": A_PLUS_2B}


def normalise_convention(name: str) -> str:
    try:
        return _CONVENTIONS[name]
    except KeyError:
        raise ValueError(f"unknown weight convention {name!r}") from None


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class DGACheck:
    ok: bool
    failures: tuple = ()   # ((kind, witness), ...)
    weight_homogeneous_d: bool = True


@dataclass(frozen=True)
class DGA:
    degrees: tuple
    diff: LinearMap                  # column j is d e_j
    products: tuple                  # (((i, j), ((k, c), ...)), ...)
    weights: tuple | None = None
    unit: int | None = 0

    @classmethod
    def build(cls, degrees, diff=None, products: Mapping | None = None, weights=None, unit: int | None = 0,
              check: bool = True, complete: bool = True) -> "DGA":
        degrees = tuple(int(x) for x in degrees)
        n = len(degrees)
        if diff is None:
            diff = LinearMap.zero(n, n)
        if diff.shape != (n, n):
            raise DimensionMismatch(f"differential has shape {diff.shape}, expected {n}x{n}")
        table = {}
        for (i, j), out in (products or {}).items():
            vec = {int(k): coerce_scalar(c) for k, c in dict(out).items() if coerce_scalar(c) != 0}
            table[(int(i), int(j))] = vec
        if complete:
            if unit is not None:
                for i in range(n):
                    table.setdefault((unit, i), {i: mpq(1)})
                    table.setdefault((i, unit), {i: mpq(1)})
            for (i, j), vec in list(table.items()):
                if (j, i) not in table:
                    s = _sign(degrees[i] * degrees[j])
                    table[(j, i)] = {k: s * c for k, c in vec.items()}
        prods = tuple(sorted(((k, tuple(sorted(v.items()))) for k, v in table.items() if v)))
        out = cls(degrees, diff, prods, tuple(weights) if weights is not None else None, unit)
        if check:
            rep = out.validate()
            if not rep.ok:
                kind, wit = rep.failures[0]
                raise InvariantError(f"DGA axiom fails: {kind}", witness={"kind": kind, "witness": wit})
        return out

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def _table(self):
        cache = self.__dict__.get("_tbl")
        if cache is None:
            cache = {k: dict(v) for k, v in self.products}
            object.__setattr__(self, "_tbl", cache)
        return cache

    def basis_mul(self, i: int, j: int) -> dict:
        return self._table().get((i, j), {})

    def mul(self, u, v):
        out = [mpq(0)] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, c in self.basis_mul(i, j).items():
                    out[k] += a * b * c
        return tuple(out)

    def d(self, u):
        return self.diff.apply(u)

    def e(self, i: int):
        return tuple(mpq(1) if k == i else mpq(0) for k in range(self.dim))

    def indices_in_degree(self, n: int):
        return [i for i, deg in enumerate(self.degrees) if deg == n]

    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def restricted_diff(self, n: int) -> LinearMap:
        """d : A^n -> A^{n+1} in the basis-vector coordinates of each degree."""
        src, tgt = self.indices_in_degree(n), self.indices_in_degree(n + 1)
        rows = tuple(tuple(self.diff.rows[t][s] for s in src) for t in tgt)
        return LinearMap(rows, len(src), len(tgt))

    def cohomology_dims(self) -> dict:
        out = {}
        for n in range(0, self.max_degree() + 1):
            dim = len(self.indices_in_degree(n))
            h = dim - self.restricted_diff(n).rank() - (self.restricted_diff(n - 1).rank() if n > 0 else 0)
            out[n] = h
        return out

    def validate(self) -> DGACheck:
        n, deg = self.dim, self.degrees
        fails = []
        for j in range(n):
            for i in range(n):
                if self.diff.rows[i][j] != 0 and deg[i] != deg[j] + 1:
                    fails.append(("differential degree", [j, i]))
        for (i, j), out in self.products:
            for k, _ in out:
                if deg[k] != deg[i] + deg[j]:
                    fails.append(("product degree", [i, j, k]))
        if not (self.diff @ self.diff).is_zero():
            col = next(j for j in range(n) if any(x != 0 for x in self.d(self.d(self.e(j)))))
            fails.append(("d squared", [col]))
        if self.unit is not None:
            if any(x != 0 for x in self.d(self.e(self.unit))):
                fails.append(("unit not closed", [self.unit]))
            if self.indices_in_degree(0) != [self.unit]:
                fails.append(("degree zero is not the ground field", self.indices_in_degree(0)))
        basis = [self.e(i) for i in range(n)]
        dbasis = [self.d(b) for b in basis]
        for i in range(n):
            for j in range(n):
                ij = self.mul(basis[i], basis[j])
                ji = self.mul(basis[j], basis[i])
                s = _sign(deg[i] * deg[j])
                if ij != tuple(s * x for x in ji):
                    fails.append(("graded commutativity", [i, j]))
                lhs = self.d(ij)
                r1 = self.mul(dbasis[i], basis[j])
                r2 = self.mul(basis[i], dbasis[j])
                si = _sign(deg[i])
                if lhs != tuple(a + si * b for a, b in zip(r1, r2)):
                    fails.append(("leibniz", [i, j]))
        for i in range(n):
            for j in range(n):
                ij = self.mul(basis[i], basis[j])
                if not any(ij):
                    continue
                for k in range(n):
                    if self.mul(ij, basis[k]) != self.mul(basis[i], self.mul(basis[j], basis[k])):
                        fails.append(("associativity", [i, j, k]))
        homog = True
        if self.weights is not None:
            w = self.weights
            for (i, j), out in self.products:
                for k, _ in out:
                    if w[k] != w[i] + w[j]:
                        fails.append(("product weight", [i, j, k]))
            for j in range(n):
                for i in range(n):
                    if self.diff.rows[i][j] != 0 and w[i] != w[j]:
                        homog = False
        return DGACheck(not fails, tuple(fails), homog)

    def cohomology_weights(self, n: int) -> dict:
        """dims of gr of H^n for the increasing filtration by weight (d may lower weights)."""
        if self.weights is None:
            return {}
        idx = self.indices_in_degree(n)
        from .exact import Subspace
        Z = self.restricted_diff(n).kernel()
        B = self.restricted_diff(n - 1).image() if n > 0 else Subspace.zero(len(idx))
        ws = sorted({self.weights[i] for i in idx})
        out, prev = {}, B.dim
        for w in ws:
            Fw = Subspace.coordinate(len(idx), [k for k, i in enumerate(idx) if self.weights[i] <= w])
            cur = ((Z & Fw) + B).dim
            if cur > prev:
                out[w] = cur - prev
            prev = cur
        return out

    def tensor(self, other: "DGA") -> "DGA":
        """Graded tensor product with the Koszul sign in products and differential."""
        n1, n2 = self.dim, other.dim
        degs = [self.degrees[i] + other.degrees[j] for i in range(n1) for j in range(n2)]
        w = None
        if self.weights is not None and other.weights is not None:
            w = [self.weights[i] + other.weights[j] for i in range(n1) for j in range(n2)]
        N = n1 * n2
        rows = [[mpq(0)] * N for _ in range(N)]
        for i in range(n1):
            for j in range(n2):
                col = i * n2 + j
                for k in range(n1):
                    c = self.diff.rows[k][i]
                    if c:
                        rows[k * n2 + j][col] += c
                s = _sign(self.degrees[i])
                for k in range(n2):
                    c = other.diff.rows[k][j]
                    if c:
                        rows[i * n2 + k][col] += s * c
        prods = {}
        for (i, k), out1 in self.products:
            for (j, l), out2 in other.products:
                s = _sign(other.degrees[j] * self.degrees[k])
                vec = {}
                for m, c1 in out1:
                    for p, c2 in out2:
                        vec[m * n2 + p] = vec.get(m * n2 + p, 0) + s * c1 * c2
                prods[(i * n2 + j, k * n2 + l)] = vec
        unit = None
        if self.unit is not None and other.unit is not None:
            unit = self.unit * n2 + other.unit
        return DGA.build(degs, LinearMap.from_rows(rows, N), prods, w, unit, check=False, complete=False)


def _truncated_polynomial(gen_degree: int, top: int) -> DGA:
    """Q[e]/(e^{top+1}) with |e| = gen_degree."""
    degs = [gen_degree * k for k in range(top + 1)]
    prods = {(i, j): {i + j: 1} for i in range(top + 1) for j in range(top + 1) if i + j <= top}
    return DGA.build(degs, None, prods, unit=0)


def sphere_cohomology(n: int) -> DGA:
    """H*(S^n): one class in degree n squaring to zero."""
    return DGA.build([0, n], None, {}, unit=0)


def polynomial_truncated(gen_degree: int, top: int) -> DGA:
    return _truncated_polynomial(gen_degree, top)


def exterior(gen_degree: int) -> DGA:
    return DGA.build([0, gen_degree], None, {}, unit=0)


def acyclic_pair() -> DGA:
    """Basis 1, y, x, xy with |y| = 1, |x| = 2, dy = x, x^2 = 0; cohomology in degrees 0 and 3."""
    d = LinearMap.from_rows([[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]])
    prods = {(1, 2): {3: 1}}
    return DGA.build([0, 1, 2, 3], d, prods, unit=0)


def ground_field() -> DGA:
    return DGA.build([0], None, {}, unit=0)


# -- Gysin / E_2 input ---------------------------------------------------------------

@dataclass(frozen=True)
class GysinInput:
    """Entries H^{a-b}(D^{(b)}) indexed by (a, b) with the Gysin differential.

    Basis vectors are numbered globally in (a, b) order; ``products`` uses
    these global indices.  ``gysin[(a, b)]`` maps entry (a, b) to (a + 1, b - 1).
    """

    entries: tuple            # (((a, b), dim), ...) sorted
    gysin: tuple              # (((a, b), LinearMap), ...)
    products: tuple           # (((i, j), ((k, c), ...)), ...)
    convention: str = A_PLUS_B

    @classmethod
    def build(cls, entries: Mapping, gysin: Mapping | None = None, products: Mapping | None = None,
              convention: str = A_PLUS_B) -> "GysinInput":
        ent = tuple(sorted((tuple(k), int(v)) for k, v in entries.items() if v))
        g = tuple(sorted((tuple(k), m) for k, m in (gysin or {}).items()))
        prods = tuple(sorted(((tuple(k), tuple(sorted((int(a), coerce_scalar(c)) for a, c in dict(v).items())))
                              for k, v in (products or {}).items())))
        out = cls(ent, g, prods, normalise_convention(convention))
        out.check_shapes()
        return out

    def offsets(self) -> dict:
        out, k = {}, 0
        for key, dim in self.entries:
            out[key] = k
            k += dim
        return out

    def entry_dim(self, a: int, b: int) -> int:
        return dict(self.entries).get((a, b), 0)

    def label_of(self, idx: int):
        for key, off in self.offsets().items():
            if off <= idx < off + self.entry_dim(*key):
                return key
        raise IndexError(idx)

    def check_shapes(self):
        for (a, b), m in self.gysin:
            want = (self.entry_dim(a + 1, b - 1), self.entry_dim(a, b))
            if m.shape != want:
                raise DimensionMismatch(f"gysin component at ({a},{b}) has shape {m.shape}, expected {want}")

    def weight(self, a: int, b: int) -> int:
        return a + b if self.convention == A_PLUS_B else a + 2 * b

    def relabelled(self, convention: str) -> "GysinInput":
        return GysinInput(self.entries, self.gysin, self.products, normalise_convention(convention))


@dataclass(frozen=True)
class E2Result:
    dga: DGA
    convention: str
    labels: tuple            # (a, b) for every basis vector
    check: DGACheck

    def cohomology(self) -> dict:
        """{degree: {"rank": r, "weights": {w: dim}}}."""
        out = {}
        for n, h in self.dga.cohomology_dims().items():
            out[n] = {"rank": h, "weights": self.dga.cohomology_weights(n)}
        return out


def e2_builder(g: GysinInput) -> E2Result:
    """Assemble the weight-graded DGA of the E_2 page.

    Under the a+b convention the Gysin differential preserves weight; under
    a+2b it lowers weight by one, so only the product weights are enforced.
    """
    off = g.offsets()
    labels = []
    for key, dim in g.entries:
        labels.extend([key] * dim)
    N = len(labels)
    degrees = [a for a, _ in labels]
    weights = [g.weight(a, b) for a, b in labels]
    rows = [[mpq(0)] * N for _ in range(N)]
    for (a, b), m in g.gysin:
        if (a + 1, b - 1) not in off:
            if not m.is_zero() and m.cod:
                raise InvariantError(f"gysin component at ({a},{b}) has no target entry", witness=[a, b])
            continue
        so, to = off[(a, b)], off[(a + 1, b - 1)]
        for r in range(m.cod):
            for c in range(m.dom):
                rows[to + r][so + c] = m.rows[r][c]
    diff = LinearMap.from_rows(rows, N) if N else LinearMap.zero(0, 0)
    for (i, j), out in g.products:
        for k, _ in out:
            (a1, b1), (a2, b2), (a3, b3) = labels[i], labels[j], labels[k]
            if (a3, b3) != (a1 + a2, b1 + b2):
                raise InvariantError("product does not respect the (a, b) bigrading", witness=[i, j, k])
    unit = off.get((0, 0))
    dga = DGA.build(degrees, diff, {k: dict(v) for k, v in g.products}, weights, unit, check=False)
    rep = dga.validate()
    fatal = [f for f in rep.failures if f[0] != "degree zero is not the ground field"]
    if fatal:
        kind, wit = fatal[0]
        raise InvariantError(f"E_2 input fails: {kind}", witness={"kind": kind, "witness": wit})
    if g.convention == A_PLUS_B and not rep.weight_homogeneous_d:
        raise InvariantError("gysin differential does not preserve the a+b weight")
    return E2Result(dga, g.convention, tuple(labels), rep)


def gm_fixture(convention: str = A_PLUS_B) -> GysinInput:
    """P^1 with the two points 0 and infinity removed, trivial coefficients."""
    return GysinInput.build({(0, 0): 1, (1, 1): 2, (2, 0): 1},
                            {(1, 1): LinearMap.from_rows([[1, 1]])},
                            {}, convention)


def empty_divisor_fixture() -> GysinInput:
    """A smooth projective curve-like input: H^0, H^1 (dim 2), H^2 on the b = 0 row."""
    entries = {(0, 0): 1, (1, 0): 2, (2, 0): 1}
    prods = {(1, 2): {3: 1}, (2, 1): {3: -1}}
    return GysinInput.build(entries, {}, prods, A_PLUS_B)
