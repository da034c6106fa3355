"""u_q(b) at a root of unity and its degree-truncated divided-power cousin.

A monomial is a pair (a, n): a is the grouplike exponent vector (mod l) and n
the exponent vector over positive roots in Lyndon order, standing for
K^a E^n.  In the big algebra n carries divided-power semantics E^{(n)}.
Coefficients live in Q(zeta_l).
"""

from __future__ import annotations

import json
from functools import lru_cache

from .errors import ConfigError, EngineError, SpecializationPole
from .generic import ONE, GenericPBW, generic_engine, vpow
from .rootdata import RootDatum, admissible_order, build_root_datum
from .scalars import CycScalar, GenericScalar, field, q_factorial_laurent, specialize

SMALL = "small"
BIG = "big_truncated"


def _acc(out, key, c):
    x = out.get(key)
    x = c if x is None else x + c
    if x:
        out[key] = x
    else:
        out.pop(key, None)


class StructureTable:
    """Specialized multiplication, coproduct and antipode tables.

    kind == SMALL: u_q(b), E^n with all n_k < l, K^l = 1, E_mu^l = 0.
    kind == BIG: divided powers E^{(n)}, K^l = 1, truncated above Z-degree max_height.
    """

    def __init__(self, rd: RootDatum, kind=SMALL, max_height=None, check_admissible=True):
        if check_admissible and not admissible_order(rd):
            raise ConfigError("order l=%d is not admissible for %s" % (rd.l, rd.type_label))
        if kind not in (SMALL, BIG):
            raise ConfigError("unknown ambient %r" % (kind,))
        self.rd = rd
        self.l = rd.l
        self.kind = kind
        self.rank = rd.rank
        self.gen: GenericPBW = generic_engine(rd.type_label)
        self.N = self.gen.N
        self.degrees = self.gen.degrees
        self.heights = tuple(sum(mu) for mu in self.degrees)
        self.dpow = tuple(rd.root_norm_power(k) for k in range(self.N))
        if kind == BIG:
            if max_height is None:
                max_height = 2 * (self.l - 1) * sum(self.heights)
            self.max_height = max_height
        else:
            self.max_height = (self.l - 1) * sum(self.heights)
        self.zeta_pows = [CycScalar.zeta(self.l, k) for k in range(self.l)]
        self.one = CycScalar.one(self.l)
        self.zero = CycScalar.zero(self.l)
        # (alpha_i, mu_k) for grouplike commutation
        self.sym_deg = [[rd.pair(rd.simple(i), mu) for mu in self.degrees] for i in range(self.rank)]
        try:
            self.rules = {
                key: {n: specialize(c, self.l) for n, c in rule.items()}
                for key, rule in self.gen.rules.items()
            }
        except SpecializationPole as exc:
            raise EngineError("straightening rule has a pole at zeta_%d: %s" % (self.l, exc))
        self._lmul = {}
        self._emult = {}
        self._delta_e = {}
        self._anti_e = {}
        self._gen_delta = {}
        self.zero_k = (0,) * self.rank
        self.zero_e = (0,) * self.N

    # -- basic data ----------------------------------------------------------
    @property
    def ambient(self):
        return self.kind if self.kind == SMALL else "%s(%d)" % (BIG, self.max_height)

    def zeta(self, k):
        return self.zeta_pows[k % self.l]

    def e_degree(self, n):
        return self.gen.monomial_degree(n)

    def e_height(self, n):
        return sum(e * h for e, h in zip(n, self.heights))

    def grouplike_of_degree(self, gamma):
        """Exponent vector of the grouplike K_gamma (mod l)."""
        return tuple(x % self.l for x in gamma)

    def k_pair(self, a, n):
        """Exponent s with E^n K^a = zeta^s K^a E^n, namely -sum a_i (alpha_i, deg n)."""
        s = 0
        for i, x in enumerate(a):
            if x:
                row = self.sym_deg[i]
                for k, e in enumerate(n):
                    if e:
                        s += x * e * row[k]
        return -s

    def e_allowed(self, n):
        if self.kind == SMALL:
            return all(e < self.l for e in n)
        return self.e_height(n) <= self.max_height

    def e_monomials(self, max_height=None, degree=None):
        """Allowed E-monomials, optionally of a given Q-degree or bounded height."""
        if degree is not None:
            return [n for n in self.gen.monomials_of_degree(degree) if self.e_allowed(n)]
        H = self.max_height if max_height is None else max_height
        out = []

        def rec(k, left, cur):
            if k == self.N:
                out.append(tuple(cur))
                return
            e = 0
            while e * self.heights[k] <= left and (self.kind == BIG or e < self.l):
                cur.append(e)
                rec(k + 1, left - e * self.heights[k], cur)
                cur.pop()
                e += 1

        rec(0, H, [])
        return out

    def k_vectors(self):
        l = self.l
        out = [()]
        for _ in range(self.rank):
            out = [v + (x,) for v in out for x in range(l)]
        return out

    # -- E-part multiplication ----------------------------------------------
    def _lmul_small(self, i, m):
        key = (i, m)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        j = next((k for k, e in enumerate(m) if e), None)
        if j is None or i <= j:
            n = list(m)
            n[i] += 1
            res = {tuple(n): self.one} if n[i] < self.l else {}
        else:
            rest = list(m)
            rest[j] -= 1
            rest = tuple(rest)
            res = {}
            for p, c in self.rules[(i, j)].items():
                for q, d in self.e_mult(p, rest).items():
                    _acc(res, q, c * d)
        self._lmul[key] = res
        return res

    def _emult_small(self, n, m):
        last = max(k for k, e in enumerate(n) if e)
        first = next(k for k, e in enumerate(m) if e)
        if last <= first:
            p = tuple(a + b for a, b in zip(n, m))
            return {p: self.one} if p[last] < self.l else {}
        head = list(n)
        head[last] -= 1
        head = tuple(head)
        res = {}
        for p, c in self._lmul_small(last, m).items():
            for q, d in self.e_mult(head, p).items():
                _acc(res, q, c * d)
        return res

    def _dp_factorial(self, n):
        out = None
        for k, e in enumerate(n):
            if e > 1:
                f = GenericScalar(q_factorial_laurent(e, self.dpow[k]))
                out = f if out is None else out * f
        return ONE if out is None else out

    def _emult_big(self, n, m):
        if self.e_height(n) + self.e_height(m) > self.max_height:
            return {}
        fn = self._dp_factorial(n) * self._dp_factorial(m)
        res = {}
        for p, c in self.gen.mult(n, m).items():
            x = c * self._dp_factorial(p) / fn
            try:
                _acc(res, p, specialize(x, self.l))
            except SpecializationPole as exc:
                raise EngineError("divided-power product leaves the integral form: %s" % exc)
        return res

    def e_mult(self, n, m):
        if not any(n):
            return {m: self.one}
        if not any(m):
            return {n: self.one}
        key = (n, m)
        hit = self._emult.get(key)
        if hit is not None:
            return hit
        res = self._emult_small(n, m) if self.kind == SMALL else self._emult_big(n, m)
        self._emult[key] = res
        return res

    # -- full monomials ------------------------------------------------------
    def mono_mult(self, x, y):
        """(K^a E^n)(K^b E^m) as {monomial: scalar}."""
        a, n = x
        b, m = y
        s = self.k_pair(b, n)
        ab = tuple((u + w) % self.l for u, w in zip(a, b))
        prod = self.e_mult(n, m)
        if not prod:
            return {}
        z = self.zeta(s)
        if z.is_one():
            return {(ab, p): c for p, c in prod.items()}
        return {(ab, p): c * z for p, c in prod.items()}

    def e_vector(self, k, e=1):
        n = [0] * self.N
        n[k] = e
        return tuple(n)

    def simple_root_index(self, i):
        return self.rd.simple_index_of_root(i)

    # -- coproduct ------------------------------------------------------------
    def tmult(self, s, t):
        """Product in H (x) H of dicts {(x, y): c}."""
        out = {}
        mm = self.mono_mult
        for (x1, y1), c1 in s.items():
            for (x2, y2), c2 in t.items():
                p1 = mm(x1, x2)
                if not p1:
                    continue
                p2 = mm(y1, y2)
                if not p2:
                    continue
                c = c1 * c2
                for u, a in p1.items():
                    ca = c * a
                    for w, b in p2.items():
                        _acc(out, (u, w), ca * b)
        return out

    def delta_e(self, n):
        """Coproduct of E^n (a dict over pairs of monomials)."""
        hit = self._delta_e.get(n)
        if hit is not None:
            return hit
        if self.kind == BIG:
            res = self._delta_e_big(n)
        elif not any(n):
            res = {((self.zero_k, self.zero_e), (self.zero_k, self.zero_e)): self.one}
        else:
            last = max(k for k, e in enumerate(n) if e)
            head = list(n)
            head[last] -= 1
            res = self.tmult(self.delta_e(tuple(head)), self._delta_root(last))
        self._delta_e[n] = res
        return res

    def _delta_root(self, k):
        key = ("root", k)
        hit = self._delta_e.get(key)
        if hit is not None:
            return hit
        f = self.rd.factorization[k]
        if f is None:
            i = self.degrees[k].index(1)
            z, e = self.zero_k, self.e_vector(k)
            ki = tuple(1 if j == i else 0 for j in range(self.rank))
            res = {((z, e), (z, self.zero_e)): self.one, ((ki, self.zero_e), (z, e)): self.one}
        else:
            u, w = f
            s = specialize(self.gen.bracket_scalar(k), self.l)
            du, dw = self._delta_root(u), self._delta_root(w)
            res = self.tmult(du, dw)
            for key2, c in self.tmult(dw, du).items():
                _acc(res, key2, -s * c)
        self._delta_e[key] = res
        return res

    def comultiply_monomial(self, x):
        a, n = x
        d = self.delta_e(n)
        if not any(a):
            return d
        out = {}
        for ((a1, n1), (a2, n2)), c in d.items():
            out[((tuple((p + q) % self.l for p, q in zip(a, a1)), n1),
                 (tuple((p + q) % self.l for p, q in zip(a, a2)), n2))] = c
        return out

    # generic coproduct for the big algebra
    def _gen_tmult(self, s, t):
        gen = self.gen
        rd = self.rd
        out = {}
        for (x1, y1), c1 in s.items():
            for (x2, y2), c2 in t.items():
                a1, n1 = x1
                b1, m1 = y1
                a2, n2 = x2
                b2, m2 = y2
                e = -rd.pair(a2, gen.monomial_degree(n1)) - rd.pair(b2, gen.monomial_degree(m1))
                c = c1 * c2 * vpow(e) if e else c1 * c2
                ka = tuple(p + q for p, q in zip(a1, a2))
                kb = tuple(p + q for p, q in zip(b1, b2))
                p1 = gen.mult(n1, n2)
                p2 = gen.mult(m1, m2)
                for u, x in p1.items():
                    cx = c * x
                    for w, y in p2.items():
                        _acc(out, ((ka, u), (kb, w)), cx * y)
        return out

    def _gen_delta_root(self, k):
        key = ("root", k)
        if key in self._gen_delta:
            return self._gen_delta[key]
        f = self.rd.factorization[k]
        z = self.zero_k
        if f is None:
            i = self.degrees[k].index(1)
            e = self.e_vector(k)
            ki = tuple(1 if j == i else 0 for j in range(self.rank))
            res = {((z, e), (z, self.zero_e)): ONE, ((ki, self.zero_e), (z, e)): ONE}
        else:
            u, w = f
            s = self.gen.bracket_scalar(k)
            du, dw = self._gen_delta_root(u), self._gen_delta_root(w)
            res = self._gen_tmult(du, dw)
            for key2, c in self._gen_tmult(dw, du).items():
                _acc(res, key2, -s * c)
        self._gen_delta[key] = res
        return res

    def _gen_delta_e(self, n):
        """Generic coproduct of the ordinary power monomial E^n."""
        if n in self._gen_delta:
            return self._gen_delta[n]
        if not any(n):
            res = {((self.zero_k, self.zero_e), (self.zero_k, self.zero_e)): ONE}
        else:
            last = max(k for k, e in enumerate(n) if e)
            head = list(n)
            head[last] -= 1
            res = self._gen_tmult(self._gen_delta_e(tuple(head)), self._gen_delta_root(last))
        self._gen_delta[n] = res
        return res

    def _delta_e_big(self, n):
        if not any(n):
            return {((self.zero_k, self.zero_e), (self.zero_k, self.zero_e)): self.one}
        fn = self._dp_factorial(n)
        out = {}
        for ((a, p), (b, r)), c in self._gen_delta_e(n).items():
            x = c * self._dp_factorial(p) * self._dp_factorial(r) / fn
            try:
                y = specialize(x, self.l)
            except SpecializationPole as exc:
                raise EngineError("divided-power coproduct has a pole: %s" % exc)
            key = ((tuple(t % self.l for t in a), p), (tuple(t % self.l for t in b), r))
            _acc(out, key, y)
        return out

    # -- antipode and counit --------------------------------------------------
    def _anti_root(self, k):
        key = ("root", k)
        hit = self._anti_e.get(key)
        if hit is not None:
            return hit
        f = self.rd.factorization[k]
        if f is None:
            i = self.degrees[k].index(1)
            kinv = tuple((-1 if j == i else 0) % self.l for j in range(self.rank))
            res = {(kinv, self.e_vector(k)): -self.one}
        else:
            u, w = f
            s = specialize(self.gen.bracket_scalar(k), self.l)
            su, sw = self._anti_root(u), self._anti_root(w)
            res = self.poly_mult(sw, su)
            for m, c in self.poly_mult(su, sw).items():
                _acc(res, m, -s * c)
        self._anti_e[key] = res
        return res

    def antipode_e(self, n):
        if self.kind != SMALL:
            raise EngineError("antipode is implemented for the small algebra")
        hit = self._anti_e.get(n)
        if hit is not None:
            return hit
        if not any(n):
            res = {(self.zero_k, self.zero_e): self.one}
        else:
            last = max(k for k, e in enumerate(n) if e)
            head = list(n)
            head[last] -= 1
            res = self.poly_mult(self._anti_root(last), self.antipode_e(tuple(head)))
        self._anti_e[n] = res
        return res

    def antipode_monomial(self, x):
        a, n = x
        kinv = {(tuple((-t) % self.l for t in a), self.zero_e): self.one}
        return self.poly_mult(self.antipode_e(n), kinv)

    def poly_mult(self, f, g):
        out = {}
        for x, a in f.items():
            for y, b in g.items():
                ab = a * b
                for m, c in self.mono_mult(x, y).items():
                    _acc(out, m, ab * c)
        return out

    # -- tables ---------------------------------------------------------------
    def graded_dims(self):
        """Q-degree -> dimension of the Q-graded component (grouplikes included)."""
        out = {}
        kcount = self.l ** self.rank
        for n in self.e_monomials():
            d = self.e_degree(n)
            out[d] = out.get(d, 0) + kcount
        return out


@lru_cache(maxsize=None)
def build_engine(type_label: str, l: int, kind=SMALL, max_height=None) -> StructureTable:
    rd = build_root_datum(type_label, l)
    return StructureTable(rd, kind=kind, max_height=max_height)


# ---------------------------------------------------------------------------
# elements


class AlgebraElement:
    """Sparse linear combination of monomials K^a E^n over Q(zeta_l)."""

    __slots__ = ("table", "terms")

    def __init__(self, table: StructureTable, terms=None):
        self.table = table
        self.terms = {} if terms is None else {m: c for m, c in terms.items() if c}

    # constructors
    @classmethod
    def one(cls, table):
        return cls(table, {(table.zero_k, table.zero_e): table.one})

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def grouplike(cls, table, a):
        return cls(table, {(tuple(x % table.l for x in a), table.zero_e): table.one})

    @classmethod
    def monomial(cls, table, a, n, c=None):
        a = tuple(x % table.l for x in a)
        return cls(table, {(a, tuple(n)): table.one if c is None else c})

    @classmethod
    def E(cls, table, i):
        """Simple generator E_{alpha_i}."""
        return cls.monomial(table, table.zero_k, table.e_vector(table.simple_root_index(i)))

    @classmethod
    def K(cls, table, i, power=1):
        a = [0] * table.rank
        a[i] = power
        return cls.grouplike(table, a)

    @classmethod
    def root_vector(cls, table, k, power=1):
        return cls.monomial(table, table.zero_k, table.e_vector(k, power))

    # arithmetic
    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.table is not self.table:
            raise TypeError("ambient mismatch: %s vs %s" % (self.table.ambient, other.table.ambient))
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return AlgebraElement(self.table, out)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, -c)
        return AlgebraElement(self.table, out)

    def __neg__(self):
        return AlgebraElement(self.table, {m: -c for m, c in self.terms.items()})

    def scale(self, s):
        if not s:
            return AlgebraElement(self.table)
        return AlgebraElement(self.table, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.table, self.table.poly_mult(self.terms, other.terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = AlgebraElement.one(self.table)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return "AlgebraElement(%s, %d terms)" % (self.table.ambient, len(self.terms))

    # structure
    def degree_components(self):
        out = {}
        for (a, n), c in self.terms.items():
            d = self.table.e_degree(n)
            out.setdefault(d, {})[(a, n)] = c
        return {d: AlgebraElement(self.table, t) for d, t in out.items()}

    def homogeneous_degree(self):
        degs = {self.table.e_degree(n) for (a, n) in self.terms}
        if len(degs) > 1:
            raise ValueError("element is not Q-homogeneous")
        return degs.pop() if degs else None

    def degree_zero_part(self):
        z = self.table.zero_e
        return AlgebraElement(self.table, {m: c for m, c in self.terms.items() if m[1] == z})

    def counit(self):
        t = self.table
        s = t.zero
        for (a, n), c in self.terms.items():
            if not any(n):
                s = s + c
        return s

    def antipode(self):
        t = self.table
        out = {}
        for m, c in self.terms.items():
            for p, d in t.antipode_monomial(m).items():
                _acc(out, p, c * d)
        return AlgebraElement(t, out)

    def comultiply(self):
        from .tensor import TensorElement

        t = self.table
        out = {}
        for m, c in self.terms.items():
            for key, d in t.comultiply_monomial(m).items():
                _acc(out, key, c * d)
        return TensorElement(t, out)

    # serialization
    def to_json(self):
        return {
            "ambient": self.table.ambient,
            "terms": [
                {"coeff": c.to_json(), "k": list(a), "e": list(n)}
                for (a, n), c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, table, data):
        if data.get("ambient") != table.ambient:
            raise TypeError("ambient mismatch in serialized element")
        terms = {}
        for t in data["terms"]:
            terms[(tuple(t["k"]), tuple(t["e"]))] = CycScalar.from_json(table.l, t["coeff"])
        return cls(table, terms)

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def cyc_int(table, n):
    return CycScalar.from_int(table.l, n)


def field_degree(l):
    return field(l).deg
