"""Free graded Lie algebras realised inside the tensor algebra.

An element of the tensor algebra is a dict ``word -> coefficient`` with words
as tuples of generator indices.  The bracket is the graded commutator
[u, v] = uv - (-1)^{|u||v|} vu, so the Lie elements are exactly the
brackets of generators.

The basis used for bracket length l is the standard bracketing of every
Lyndon word of length l, together with [b(w), b(w)] for each Lyndon word w
of length l/2 and odd degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .exact import LinearMap, rref


def lyndon_words(k: int, max_len: int):
    """All Lyndon words on {0..k-1} of length <= max_len (Duval's algorithm)."""
    if k <= 0 or max_len <= 0:
        return []
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def necklace_count(k: int, length: int) -> int:
    """Number of Lyndon words of the given length on k letters (Witt's formula)."""
    def mobius(n):
        res, p = 1, 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if n > 1 else res

    total = sum(mobius(d) * k ** (length // d) for d in range(1, length + 1) if length % d == 0)
    return total // length


def standard_factorization(w):
    """w = uv with v the longest proper suffix that is itself a Lyndon word."""
    for i in range(1, len(w)):
        v = w[i:]
        if _is_lyndon(v):
            return w[:i], v
    raise ValueError("word of length 1 has no standard factorization")


def _is_lyndon(w) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) and len(w) > 0


# -- tensor algebra ---------------------------------------------------------------------

def _clean(d):
    return {k: v for k, v in d.items() if v != 0}


class FreeLie:
    """The free graded Lie algebra on generators of the given chain degrees."""

    def __init__(self, degrees, weights=None):
        self.degrees = tuple(int(x) for x in degrees)
        self.weights = tuple(weights) if weights is not None else None
        self.k = len(self.degrees)

    # elements -------------------------------------------------------------------
    def gen(self, i: int) -> dict:
        return {(i,): mpq(1)}

    def word_degree(self, w) -> int:
        return sum(self.degrees[i] for i in w)

    def word_weight(self, w):
        return sum(self.weights[i] for i in w) if self.weights is not None else None

    def degree(self, u: dict):
        degs = {self.word_degree(w) for w in u}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else None

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        for w1, c1 in u.items():
            for w2, c2 in v.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return _clean(out)

    def add(self, u: dict, v: dict, c=1) -> dict:
        out = dict(u)
        for w, x in v.items():
            out[w] = out.get(w, 0) + c * x
        return _clean(out)

    def scale(self, u: dict, c) -> dict:
        return _clean({w: c * x for w, x in u.items()})

    def bracket(self, u: dict, v: dict) -> dict:
        if not u or not v:
            return {}
        du, dv = self.degree(u), self.degree(v)
        s = -1 if (du * dv) % 2 else 1
        return self.add(self.mul(u, v), self.mul(v, u), -s)

    def truncate(self, u: dict, max_len: int) -> dict:
        return {w: c for w, c in u.items() if len(w) <= max_len}

    def derivation(self, images: dict, degree: int):
        """Extend generator images to a derivation of the given degree (Koszul signs)."""

        def apply(u: dict) -> dict:
            out = {}
            for w, c in u.items():
                prefix_deg = 0
                for pos, g in enumerate(w):
                    img = images.get(g)
                    if img:
                        s = -1 if (degree * prefix_deg) % 2 else 1
                        for w2, c2 in img.items():
                            nw = w[:pos] + w2 + w[pos + 1:]
                            out[nw] = out.get(nw, 0) + s * c * c2
                    prefix_deg += self.degrees[g]
            return _clean(out)

        return apply

    # basis ------------------------------------------------------------------------
    def standard_bracket(self, w) -> dict:
        return self._std(tuple(w))

    @lru_cache(maxsize=None)
    def _std(self, w) -> dict:
        if len(w) == 1:
            return self.gen(w[0])
        u, v = standard_factorization(w)
        return self.bracket(self._std(u), self._std(v))

    def basis(self, max_len: int, degrees=None):
        """List of (label, element, length, degree) for bracket length <= max_len.

        ``degrees`` optionally restricts to a set of chain degrees.
        """
        def wanted(deg):
            return degrees is None or deg in degrees

        out = []
        words = lyndon_words(self.k, max_len)
        for w in sorted(words, key=lambda x: (len(x), x)):
            if wanted(self.word_degree(w)):
                out.append((("lyndon", w), self.standard_bracket(w), len(w), self.word_degree(w)))
        for w in words:
            if 2 * len(w) <= max_len and self.word_degree(w) % 2 and wanted(2 * self.word_degree(w)):
                b = self.standard_bracket(w)
                out.append((("square", w), self.bracket(b, b), 2 * len(w), 2 * self.word_degree(w)))
        out.sort(key=lambda t: (t[2], t[3], t[0]))
        return out


@dataclass
class BasisBlock:
    """The basis elements of one (length, degree) block with a coordinate solver."""

    labels: list
    elements: list
    words: list
    matrix: LinearMap | None = None  # words x basis
    _solver: tuple | None = field(default=None, repr=False)  # (pivot word rows, inverse of that minor)

    def _left_inverse(self):
        if self._solver is None:
            _, rows = rref(self.matrix.T.rows, self.matrix.cod)
            minor = LinearMap.from_rows([self.matrix.rows[r] for r in rows], self.matrix.dom)
            self._solver = (rows, minor.inverse())
        return self._solver

    def coordinates(self, u: dict):
        if not self.labels:
            if u:
                raise ValueError("nonzero element in an empty block")
            return ()
        if set(u) - set(self.words):
            raise ValueError("element has words outside the block")
        vec = tuple(u.get(w, mpq(0)) for w in self.words)
        rows, inv = self._left_inverse()
        coords = inv.apply(tuple(vec[r] for r in rows))
        if self.matrix.apply(coords) != vec:
            raise ValueError("element is not in the span of the block")
        return coords


def build_blocks(lie: FreeLie, max_len: int, degrees=None) -> dict:
    """{(length, degree): BasisBlock}, optionally only for the given degrees."""
    blocks = {}
    for label, el, length, deg in lie.basis(max_len, degrees):
        blocks.setdefault((length, deg), BasisBlock([], [], []))
        b = blocks[(length, deg)]
        b.labels.append(label)
        b.elements.append(el)
    for key, b in blocks.items():
        words = sorted({w for el in b.elements for w in el})
        b.words = words
        b.matrix = LinearMap.from_columns([tuple(el.get(w, mpq(0)) for w in words) for el in b.elements],
                                          len(words))
        if b.matrix.rank() != len(b.elements):
            raise ArithmeticError(f"basis elements in block {key} are dependent")
    return blocks


def spanned_dims(lie: FreeLie, max_len: int) -> dict:
    """Brute-force dims of the Lie span: L_1 = generators, L_l = [generators, L_{l-1}].

    Returned as {(length, degree): dim}.  Used as an oracle for the basis.
    """
    layers = {1: [lie.gen(i) for i in range(lie.k)]}
    for l in range(2, max_len + 1):
        layers[l] = [lie.bracket(lie.gen(i), u) for i in range(lie.k) for u in layers[l - 1]]
        layers[l] = _independent(layers[l])
    out = {}
    for l, els in layers.items():
        by_deg = {}
        for u in els:
            if u:
                by_deg.setdefault(lie.degree(u), []).append(u)
        for d, us in by_deg.items():
            words = sorted({w for u in us for w in u})
            rows = [tuple(u.get(w, 0) for w in words) for u in us]
            out[(l, d)] = len(rref(rows, len(words))[1])
    return out


def _independent(els):
    els = [u for u in els if u]
    if not els:
        return []
    words = sorted({w for u in els for w in u})
    rows = [tuple(mpq(u.get(w, 0)) for w in words) for u in els]
    red, _ = rref(rows, len(words))
    return [{w: c for w, c in zip(words, r) if c != 0} for r in red]
