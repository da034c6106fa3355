"""Generic positive part U^+ over Q(v): Lyndon root vectors, straightening rules
derived modulo the q-Serre ideal, and memoized PBW multiplication.

Monomials are exponent tuples over the positive roots in the fixed Lyndon
order; E^n = E_{b_1}^{n_1} ... E_{b_N}^{n_N} (ordinary powers).
"""

from __future__ import annotations

import json
import os
import sys
from functools import lru_cache

from .errors import EngineError
from .linalg import Echelon
from .rootdata import RootDatum, build_root_datum
from .scalars import GenericScalar, Laurent, q_binomial_laurent

ONE = GenericScalar(1)


def vpow(e: int) -> GenericScalar:
    return GenericScalar(Laurent.mono(e))


def _wp_add(out, poly, c):
    for w, x in poly.items():
        y = out.get(w)
        y = x * c if y is None else y + x * c
        if y:
            out[w] = y
        else:
            out.pop(w, None)
    return out


def _wp_mul(p1, p2):
    out = {}
    for w1, x in p1.items():
        for w2, y in p2.items():
            w = w1 + w2
            z = out.get(w)
            z = x * y if z is None else z + x * y
            if z:
                out[w] = z
            else:
                out.pop(w, None)
    return out


def _words_of_content(content):
    """All words over the simple alphabet with the given letter multiplicities."""
    n = len(content)
    out = []

    def rec(rem, prefix):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for i in range(n):
            if rem[i]:
                rem[i] -= 1
                prefix.append(i)
                rec(rem, prefix)
                prefix.pop()
                rem[i] += 1

    rec(list(content), [])
    return out


def serre_relator(rd: RootDatum, i: int, j: int):
    """q-Serre element of the free algebra as a word polynomial."""
    a = rd.cartan[i][j]
    top = 1 - a
    out = {}
    for k in range(top + 1):
        c = GenericScalar(q_binomial_laurent(top, k, rd.d[i]))
        if k % 2:
            c = -c
        w = (i,) * (top - k) + (j,) + (i,) * k
        _wp_add(out, {w: c}, ONE)
    return out


class GenericPBW:
    """Straightening engine for U^+ over Q(v)."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.N = len(rd.positive_roots)
        self.degrees = rd.positive_roots
        self.root_words = self._root_word_polys()
        self.rules = self._derive_rules()
        self._lmul = {}
        self._mult = {}

    # -- root vectors -------------------------------------------------------
    def bracket_scalar(self, k):
        """s with E_mu = E_u E_w - s E_w E_u for the standard factorization."""
        u, w = self.rd.factorization[k]
        return vpow(self.rd.pair(self.degrees[u], self.degrees[w]))

    def _root_word_polys(self):
        polys = [None] * self.N
        for k in sorted(range(self.N), key=lambda k: sum(self.degrees[k])):
            mu = self.degrees[k]
            f = self.rd.factorization[k]
            if f is None:
                polys[k] = {(mu.index(1),): ONE}
                continue
            u, w = f
            s = self.bracket_scalar(k)
            p = _wp_mul(polys[u], polys[w])
            _wp_add(p, _wp_mul(polys[w], polys[u]), -s)
            if not p:
                raise EngineError("root vector %d vanishes in the free algebra" % k)
            polys[k] = p
        return polys

    def monomial_degree(self, n):
        r = self.rd.rank
        out = [0] * r
        for k, e in enumerate(n):
            if e:
                mu = self.degrees[k]
                for i in range(r):
                    out[i] += e * mu[i]
        return tuple(out)

    def monomials_of_degree(self, delta):
        """All PBW exponent vectors of Q-degree delta."""
        out = []
        N = self.N
        degs = self.degrees

        def rec(k, rem, cur):
            if k == N:
                if not any(rem):
                    out.append(tuple(cur))
                return
            mu = degs[k]
            e = 0
            while all(r >= e * m for r, m in zip(rem, mu)):
                cur.append(e)
                rec(k + 1, tuple(r - e * m for r, m in zip(rem, mu)), cur)
                cur.pop()
                e += 1
                if not any(mu):
                    break

        rec(0, tuple(delta), [])
        return out

    def monomial_word_poly(self, n):
        p = {(): ONE}
        for k, e in enumerate(n):
            for _ in range(e):
                p = _wp_mul(p, self.root_words[k])
        return p

    # -- rule derivation ----------------------------------------------------
    def _derive_rules(self):
        rd = self.rd
        r = rd.rank
        relators = {}
        for i in range(r):
            for j in range(r):
                if i != j:
                    rel = serre_relator(rd, i, j)
                    deg = [0] * r
                    deg[i] += 1 - rd.cartan[i][j]
                    deg[j] += 1
                    relators[(i, j)] = (tuple(deg), rel)
        ideal_cache = {}

        def ideal_rows(delta):
            """Echelon rows spanning the Serre ideal in degree delta."""
            if delta in ideal_cache:
                return ideal_cache[delta]
            ech = Echelon()
            for i in range(r):
                if delta[i]:
                    sub = tuple(d - (1 if k == i else 0) for k, d in enumerate(delta))
                    for row in ideal_rows(sub):
                        ech.add({(i,) + w: c for w, c in row.items()})
            for (i, j), (sdeg, rel) in relators.items():
                if any(s_ > d for s_, d in zip(sdeg, delta)):
                    continue
                rest = tuple(d - s_ for d, s_ in zip(delta, sdeg))
                for w in _words_of_content(rest):
                    ech.add({x + w: c for x, c in rel.items()})
            rows = list(ech.rows.values())
            ideal_cache[delta] = rows
            return rows

        cache = {}

        def quotient(delta):
            if delta in cache:
                return cache[delta]
            ech = Echelon(track=True)
            words = _words_of_content(delta)
            for t, row in enumerate(ideal_rows(delta)):
                ech.add(row, ("ideal", t))
            pbw = self.monomials_of_degree(delta)
            for n in pbw:
                if not ech.add(self.monomial_word_poly(n), ("pbw", n)):
                    raise EngineError("PBW monomials dependent in degree %r" % (delta,))
            if ech.rank != len(words):
                raise EngineError(
                    "PBW monomials do not span degree %r (%d of %d)" % (delta, ech.rank, len(words))
                )
            cache[delta] = ech
            return ech

        rules = {}
        for i in range(self.N):
            for j in range(i):
                delta = tuple(a + b for a, b in zip(self.degrees[i], self.degrees[j]))
                ech = quotient(delta)
                target = _wp_mul(self.root_words[i], self.root_words[j])
                combo = ech.express(target)
                if combo is None:
                    raise EngineError("cannot straighten E_%d E_%d" % (i, j))
                rule = {}
                for tag, c in combo.items():
                    if tag[0] == "pbw" and c:
                        rule[tag[1]] = c
                # ideal part drops out; PBW coordinates are unique
                rules[(i, j)] = rule
        self._quotient = quotient
        return rules

    # -- multiplication -----------------------------------------------------
    def lmul(self, i, m):
        """E_i * E^m as {monomial: GenericScalar}."""
        key = (i, m)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        j = next((k for k, e in enumerate(m) if e), None)
        if j is None or i <= j:
            n = list(m)
            n[i] += 1
            res = {tuple(n): ONE}
        else:
            rest = list(m)
            rest[j] -= 1
            rest = tuple(rest)
            res = {}
            for p, c in self.rules[(i, j)].items():
                for q, d in self.mult(p, rest).items():
                    x = res.get(q)
                    x = c * d if x is None else x + c * d
                    if x:
                        res[q] = x
                    else:
                        res.pop(q, None)
        self._lmul[key] = res
        return res

    def mult(self, n, m):
        """E^n * E^m in PBW form."""
        if not any(n):
            return {m: ONE}
        if not any(m):
            return {n: ONE}
        key = (n, m)
        hit = self._mult.get(key)
        if hit is not None:
            return hit
        last = max(k for k, e in enumerate(n) if e)
        first = next(k for k, e in enumerate(m) if e)
        if last <= first:
            res = {tuple(a + b for a, b in zip(n, m)): ONE}
        else:
            head = list(n)
            head[last] -= 1
            head = tuple(head)
            res = {}
            for p, c in self.lmul(last, m).items():
                for q, d in self.mult(head, p).items():
                    x = res.get(q)
                    x = c * d if x is None else x + c * d
                    if x:
                        res[q] = x
                    else:
                        res.pop(q, None)
        self._mult[key] = res
        return res

    def mult_poly(self, f, g):
        out = {}
        for n, a in f.items():
            for m, b in g.items():
                for p, c in self.mult(n, m).items():
                    x = out.get(p)
                    y = a * b * c
                    x = y if x is None else x + y
                    if x:
                        out[p] = x
                    else:
                        out.pop(p, None)
        return out

    def unit_vector(self, k, e=1):
        n = [0] * self.N
        n[k] = e
        return tuple(n)

    def root_vector_from_simples(self, k):
        """E_mu rebuilt from simple generators through the bracket (PBW form)."""
        f = self.rd.factorization[k]
        if f is None:
            return {self.unit_vector(k): ONE}
        u, w = f
        s = self.bracket_scalar(k)
        eu = self.root_vector_from_simples(u)
        ew = self.root_vector_from_simples(w)
        out = self.mult_poly(eu, ew)
        for p, c in self.mult_poly(ew, eu).items():
            x = out.get(p)
            x = -s * c if x is None else x - s * c
            if x:
                out[p] = x
            else:
                out.pop(p, None)
        return out


def _left_contents(rest, h):
    """Sub-contents of rest of total height h."""
    out = []
    n = len(rest)

    def rec(i, rem, cur):
        if i == n:
            if rem == 0:
                out.append(tuple(cur))
            return
        for a in range(min(rest[i], rem) + 1):
            cur.append(a)
            rec(i + 1, rem - a, cur)
            cur.pop()

    rec(0, h, [])
    return out


CACHE_ENV = "UQTWIST_CACHE"
CACHE_VERSION = 1


def _laurent_json(p: Laurent):
    return [p.shift, list(p.c)]


def _rules_to_json(label, rules):
    rows = []
    for key in rules:
        rows.append([list(key), [[list(n), _laurent_json(c.num), _laurent_json(c.den)]
                                 for n, c in rules[key].items()]])
    return {"version": CACHE_VERSION, "type": label, "rules": rows}


def _rules_from_json(data):
    rules = {}
    for key, entries in data["rules"]:
        rules[tuple(key)] = {tuple(n): GenericScalar(Laurent(num[0], num[1]), Laurent(den[0], den[1]))
                             for n, num, den in entries}
    return rules


def _cache_path(label):
    d = os.environ.get(CACHE_ENV)
    return os.path.join(d, "rules-%s-v%d.json" % (label, CACHE_VERSION)) if d else None


class _CachedPBW(GenericPBW):
    def __init__(self, rd, rules):
        self.rd = rd
        self.N = len(rd.positive_roots)
        self.degrees = rd.positive_roots
        self.root_words = self._root_word_polys()
        self.rules = rules
        self._lmul = {}
        self._mult = {}


@lru_cache(maxsize=None)
def generic_engine(type_label: str) -> GenericPBW:
    """Straightening rules over Q(v); stored as JSON when the cache directory variable is set."""
    # the rules do not depend on l; any admissible-looking order works for the datum
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    rd = build_root_datum(type_label, 101)
    path = _cache_path(rd.type_label)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") == CACHE_VERSION and data.get("type") == rd.type_label:
            return _CachedPBW(rd, _rules_from_json(data))
    eng = GenericPBW(rd)
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(_rules_to_json(rd.type_label, eng.rules), fh)
        os.replace(tmp, path)
    return eng
