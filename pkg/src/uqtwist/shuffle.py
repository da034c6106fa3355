"""Quantum shuffle model of the positive part, used as an independent check
of the straightening engine.

The positive part of u_q is the subalgebra of the quantum shuffle algebra on
the simple-root alphabet generated by the letters, with braiding
chi(i, j) = zeta^{(alpha_i, alpha_j)}.  Vectors are dicts word -> CycScalar.
"""

from __future__ import annotations

from functools import lru_cache

from .engine import StructureTable
from .errors import OracleBound
from .linalg import Echelon, axpy

DEFAULT_BOUND = 6


class ShuffleOracle:
    def __init__(self, table: StructureTable, bound: int = DEFAULT_BOUND):
        self.table = table
        self.rd = table.rd
        self.l = table.l
        self.bound = bound
        r = self.rd.rank
        self.chi = [[self.rd.pair(self.rd.simple(i), self.rd.simple(j)) for j in range(r)] for i in range(r)]
        self._word_product = lru_cache(maxsize=None)(self._word_product_uncached)
        self._roots = {}

    def _check(self, h):
        if h > self.bound:
            raise OracleBound("height %d exceeds the oracle bound %d" % (h, self.bound))

    def _word_product_uncached(self, u, w):
        """u * w for single words as {(word, exponent of zeta): multiplicity}.

        (a u) * (b w) = a (u * b w) + prod_{c in a u} chi(c, b) b (a u * w).
        """
        if not u:
            return {(w, 0): 1}
        if not w:
            return {(u, 0): 1}
        out = {}
        a, b = u[0], w[0]
        for (t, e), k in self._word_product(u[1:], w).items():
            key = ((a,) + t, e)
            out[key] = out.get(key, 0) + k
        shift = sum(self.chi[c][b] for c in u)
        for (t, e), k in self._word_product(u, w[1:]).items():
            key = ((b,) + t, (e + shift) % self.l)
            out[key] = out.get(key, 0) + k
        return out

    def multiply(self, f, g):
        """Shuffle product of word vectors."""
        if f and g:
            self._check(len(next(iter(f))) + len(next(iter(g))))
        out = {}
        z = self.table.zeta
        for u, a in f.items():
            for w, b in g.items():
                ab = a * b
                for (t, e), k in self._word_product(u, w).items():
                    axpy(out, ab * z(e) * k, {t: self.table.one})
        return out

    def letter(self, i):
        return {(i,): self.table.one}

    def root_vector(self, k):
        """Image of E_mu, built with the same bracket as the engine."""
        hit = self._roots.get(k)
        if hit is not None:
            return hit
        f = self.rd.factorization[k]
        if f is None:
            res = self.letter(self.table.degrees[k].index(1))
        else:
            u, w = f
            s = self.table.zeta(self.rd.pair(self.table.degrees[u], self.table.degrees[w]))
            eu, ew = self.root_vector(u), self.root_vector(w)
            res = self.multiply(eu, ew)
            axpy(res, -s, self.multiply(ew, eu))
        self._roots[k] = res
        return res

    def monomial(self, n):
        """Image of the ordered PBW monomial E^n (ordinary powers)."""
        self._check(self.table.e_height(n))
        out = {(): self.table.one}
        for k, e in enumerate(n):
            for _ in range(e):
                out = self.multiply(out, self.root_vector(k))
        return out


def compare_with_engine(table: StructureTable, bound: int = DEFAULT_BOUND):
    """Check the engine's E-part multiplication against the shuffle model.

    For every Q-degree of height <= bound the images of the PBW monomials must
    be linearly independent, and for every pair of monomials with total
    height <= bound the engine product must map to the shuffle product.
    Returns a report dict; report["ok"] is the verdict.
    """
    oracle = ShuffleOracle(table, bound)
    monos = [n for n in table.e_monomials(max_height=bound) if any(n)]
    images = {n: oracle.monomial(n) for n in monos}
    by_degree = {}
    for n in monos:
        by_degree.setdefault(table.e_degree(n), []).append(n)
    dims = {}
    independent = True
    for d, ns in sorted(by_degree.items()):
        ech = Echelon()
        for n in ns:
            if not ech.add(images[n]):
                independent = False
        dims[d] = ech.rank
    mismatches = []
    pairs = 0
    for n in monos:
        hn = table.e_height(n)
        for m in monos:
            if hn + table.e_height(m) > bound:
                continue
            pairs += 1
            lhs = oracle.multiply(images[n], images[m])
            rhs = {}
            for p, c in table.e_mult(n, m).items():
                axpy(rhs, c, images[p])
            if lhs != rhs:
                mismatches.append((n, m))
    return {
        "ok": independent and not mismatches,
        "independent": independent,
        "pairs": pairs,
        "mismatches": mismatches,
        "dims": dims,
    }


def oracle_graded_dim(table: StructureTable, degree, bound: int = DEFAULT_BOUND):
    """Dimension of the shuffle subalgebra in a Q-degree: rank of all letter products."""
    from .generic import _words_of_content

    oracle = ShuffleOracle(table, bound)
    oracle._check(sum(degree))
    ech = Echelon()
    for w in _words_of_content(degree):
        vec = {(): table.one}
        for i in w:
            vec = oracle.multiply(vec, oracle.letter(i))
        ech.add(vec)
    return ech.rank


def pbw_dimension_polynomial(table: StructureTable):
    """Coefficients of prod_mu (1 + t^{|mu|} + ... + t^{(l-1)|mu|}) for the small positive part."""
    poly = [1]
    for h in table.heights:
        fac = [0] * ((table.l - 1) * h + 1)
        for e in range(table.l):
            fac[e * h] = 1
        out = [0] * (len(poly) + len(fac) - 1)
        for i, a in enumerate(poly):
            if a:
                for j, b in enumerate(fac):
                    if b:
                        out[i + j] += a * b
        poly = out
    return poly
