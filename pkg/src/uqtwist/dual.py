"""Graded duals of u_q with the product dual to a twisted coproduct Delta^B.

A functional is a sparse dict on the PBW basis K^a E^n.  The product is
(f . g)(m) = (f (x) g)(Delta^B(m)).  Functionals that ignore the grouplike
part (the X_alpha and everything they generate) are stored more compactly
as dicts on E-monomials alone, because Delta^B(K^a E^n) = (K^a (x) K^a) Delta^B(E^n)
keeps that property under products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .engine import AlgebraElement, StructureTable, _acc
from .linalg import Echelon
from .scalars import GenericScalar, q_binomial_laurent, specialize
from .tensor import HopfFrame

# ---------------------------------------------------------------------------
# general functionals


@dataclass
class DualElement:
    """Functional on u_q, {(a, n): value}; degree is minus the paired degree."""

    table: StructureTable
    terms: dict

    def __call__(self, x: AlgebraElement):
        s = self.table.zero
        for m, c in x.terms.items():
            v = self.terms.get(m)
            if v is not None:
                s = s + c * v
        return s

    def __eq__(self, other):
        return _clean(self.terms) == _clean(other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return DualElement(self.table, out)

    def __sub__(self, other):
        return self + other.scale(-self.table.one)

    def scale(self, c):
        return DualElement(self.table, {m: c * v for m, v in self.terms.items() if c * v})

    def __bool__(self):
        return any(self.terms.values())


def _clean(d):
    return {k: v for k, v in d.items() if v}


def counit_functional(table: StructureTable) -> DualElement:
    return DualElement(table, {(a, table.zero_e): table.one for a in table.k_vectors()})


def character(table: StructureTable, w) -> DualElement:
    """The grouplike functional K^a E^n -> zeta^{w.a} delta_{n,0}."""
    return DualElement(table, {(a, table.zero_e): table.zeta(sum(x * y for x, y in zip(w, a)))
                               for a in table.k_vectors()})


def generator_functional(table: StructureTable, i: int) -> DualElement:
    """X_i: K^a E_j -> delta_ij."""
    n = table.e_vector(table.simple_root_index(i))
    return DualElement(table, {(a, n): table.one for a in table.k_vectors()})


def dual_multiply_B(frame: HopfFrame, f: DualElement, g: DualElement) -> DualElement:
    """(f . g)(m) = (f (x) g)(Delta^B m), evaluated on every monomial that can pair nonzero."""
    t = frame.table
    fdeg = {t.e_degree(n) for (a, n) in f.terms}
    gdeg = {t.e_degree(n) for (a, n) in g.terms}
    targets = {tuple(x + y for x, y in zip(d1, d2)) for d1 in fdeg for d2 in gdeg}
    out = {}
    for d in targets:
        for n in t.e_monomials(degree=d):
            for a in t.k_vectors():
                s = t.zero
                for (u, w), c in frame.delta_mono((a, n)).items():
                    x = f.terms.get(u)
                    if x is None:
                        continue
                    y = g.terms.get(w)
                    if y is not None:
                        s = s + c * x * y
                if s:
                    out[(a, n)] = s
    return DualElement(t, out)


# ---------------------------------------------------------------------------
# the positive dual subalgebra, on E-monomials


class PositiveDual:
    """The subalgebra generated by the X_alpha inside the B-twisted dual.

    Elements are dicts {E-monomial n: value}; the value on K^a E^n does not
    depend on a.
    """

    def __init__(self, frame: HopfFrame):
        self.frame = frame
        self.table = t = frame.table
        self._pairs = {}
        self._by_degree = {}
        for n in t.e_monomials():
            self._by_degree.setdefault(t.e_degree(n), []).append(n)

    def monomials(self, degree):
        return self._by_degree.get(tuple(degree), [])

    def pairs(self, n):
        """Delta^B(E^n) with the grouplike parts summed out: {(p, q): c}."""
        hit = self._pairs.get(n)
        if hit is None:
            t = self.table
            hit = {}
            for ((b, p), (c, q)), x in self.frame.delta_mono((t.zero_k, n)).items():
                _acc(hit, (p, q), x)
            by = {}
            for (p, q), x in hit.items():
                by.setdefault(p, []).append((q, x))
            self._pairs[n] = by
            hit = by
        return hit

    def generator(self, i):
        t = self.table
        return {t.e_vector(t.simple_root_index(i)): t.one}

    def unit(self):
        return {self.table.zero_e: self.table.one}

    def degree(self, f):
        for n in f:
            return self.table.e_degree(n)
        return None

    def multiply(self, f, g):
        if not f or not g:
            return {}
        t = self.table
        d = tuple(x + y for x, y in zip(self.degree(f), self.degree(g)))
        out = {}
        for n in self.monomials(d):
            s = t.zero
            for p, row in self.pairs(n).items():
                x = f.get(p)
                if x is None:
                    continue
                for q, c in row:
                    y = g.get(q)
                    if y is not None:
                        s = s + c * x * y
            if s:
                out[n] = s
        return out

    def power(self, f, k):
        out = self.unit()
        for _ in range(k):
            out = self.multiply(out, f)
        return out

    def combine(self, terms):
        """sum c_i f_i for a list of (c, f)."""
        out = {}
        for c, f in terms:
            for n, v in f.items():
                _acc(out, n, c * v)
        return out

    def word(self, letters):
        out = self.unit()
        for i in letters:
            out = self.multiply(out, self.generator(i))
        return out

    def to_dual_element(self, f) -> DualElement:
        t = self.table
        return DualElement(t, {(a, n): v for n, v in f.items() for a in t.k_vectors()})

    # -- root functionals ------------------------------------------------------
    def twist_exponent(self, d1, d2):
        """e with X ._B Y = zeta^e X . Y for homogeneous X, Y in degrees d1, d2."""
        t = self.table
        S = t.rd.sym
        M = self.frame.M
        r = t.rank
        s1 = [sum(S[i][j] * d1[j] for j in range(r)) for i in range(r)]
        s2 = [sum(S[i][j] * d2[j] for j in range(r)) for i in range(r)]
        return sum(s1[i] * M[i][j] * s2[j] for i in range(r) for j in range(r)) % t.l

    def sigma(self, d1, d2):
        return self.table.zeta(self.twist_exponent(d1, d2))

    def root_functional(self, k):
        """X_mu for the positive root with index k, by the Lyndon bracketing.

        X_mu = X_u X_w - c X_w X_u with c = zeta^{(u,w)} sigma(u,w) / sigma(w,u),
        the twisted form of the bracket defining E_mu.
        """
        t = self.table
        f = t.rd.factorization[k]
        if f is None:
            return self.generator(t.degrees[k].index(1))
        u, w = f
        du, dw = t.degrees[u], t.degrees[w]
        c = t.zeta(t.rd.pair(du, dw)) * self.sigma(du, dw) / self.sigma(dw, du)
        Xu, Xw = self.root_functional(u), self.root_functional(w)
        return self.combine([(t.one, self.multiply(Xu, Xw)), (-c, self.multiply(Xw, Xu))])


# ---------------------------------------------------------------------------
# relation checks


def commutator_check(frame: HopfFrame):
    """omega ._B X_a ._B omega^{-1} = zeta^{w_a} B(a, w)/B(w, a) X_a for every character w.

    Returns (ok, failures).  B(a, w) means the form on the Killing image of a.
    """
    t = frame.table
    S = t.rd.sym
    M = frame.M
    r = t.rank
    fails = []
    for i in range(r):
        X = generator_functional(t, i)
        Sa = [S[k][i] for k in range(r)]
        for w in t.k_vectors():
            om = character(t, w)
            om_inv = character(t, tuple((-x) % t.l for x in w))
            lhs = dual_multiply_B(frame, dual_multiply_B(frame, om, X), om_inv)
            e = w[i] + sum(Sa[p] * M[p][q] * w[q] for p in range(r) for q in range(r)) \
                - sum(w[p] * M[p][q] * Sa[q] for p in range(r) for q in range(r))
            rhs = X.scale(t.zeta(e))
            if lhs != rhs:
                fails.append((i, w))
    return not fails, fails


def serre_pairs(table: StructureTable):
    return [(i, j) for i in range(table.rank) for j in range(table.rank) if i != j]


def bserre_combination(pd: PositiveDual, i, j, perturb=None):
    """The B-Serre combination for (alpha_i, alpha_j) as a functional.

    sum_k (-1)^k [n k]_{q_i} X_i^{n-k} X_j X_i^k / (sigma(i,j)^{n-k} sigma(j,i)^k),
    n = 1 - a_ij.  `perturb` = (k, c) multiplies the k-th coefficient by c.
    """
    t = pd.table
    C = t.rd.cartan
    n = 1 - C[i][j]
    di = t.dpow[t.simple_root_index(i)]
    ai, aj = t.rd.simple(i), t.rd.simple(j)
    sij, sji = pd.sigma(ai, aj), pd.sigma(aj, ai)
    terms = []
    for k in range(n + 1):
        b = specialize(GenericScalar(q_binomial_laurent(n, k, di)), t.l)
        c = b / (sij ** (n - k) * sji ** k)
        if k % 2:
            c = -c
        if perturb is not None and perturb[0] == k:
            c = c * perturb[1]
        terms.append((c, pd.word([i] * (n - k) + [j] + [i] * k)))
    return pd.combine(terms)


def bserre_check(frame: HopfFrame) -> bool:
    pd = PositiveDual(frame)
    return all(not _clean(bserre_combination(pd, i, j)) for i, j in serre_pairs(frame.table))


def bserre_negative_control(frame: HopfFrame) -> bool:
    """True when a perturbed coefficient makes some B-Serre combination nonzero."""
    pd = PositiveDual(frame)
    t = frame.table
    two = t.one + t.one
    for i, j in serre_pairs(t):
        if _clean(bserre_combination(pd, i, j, perturb=(0, two))):
            return True
    return False


def nilpotency_check(frame: HopfFrame):
    """{root index: (X_mu^l == 0, X_mu^{l-1} != 0)}."""
    pd = PositiveDual(frame)
    t = frame.table
    out = {}
    for k in range(t.N):
        X = pd.root_functional(k)
        p = pd.power(X, t.l - 1)
        out[k] = (not _clean(pd.multiply(p, X)), bool(_clean(p)))
    return out


# ---------------------------------------------------------------------------
# minimal relations


class _Graded:
    """Bases of the graded pieces A_d of the positive dual, built by right multiplication."""

    def __init__(self, pd: PositiveDual, max_degree):
        self.pd = pd
        t = pd.table
        self.rank = t.rank
        self.max_degree = tuple(max_degree)
        self.basis = {tuple(0 for _ in range(t.rank)): [pd.unit()]}
        degs = sorted(itertools.product(*(range(m + 1) for m in max_degree)), key=sum)
        for d in degs:
            if not any(d):
                continue
            ech = Echelon()
            vecs = []
            for i in range(t.rank):
                if d[i] == 0:
                    continue
                prev = _shift(d, i, -1)
                for f in self.basis.get(prev, []):
                    g = pd.multiply(f, pd.generator(i))
                    if ech.add(g):
                        vecs.append(g)
            self.basis[d] = vecs

    def dim(self, d):
        return len(self.basis.get(tuple(d), []))


def _shift(d, i, s):
    return tuple(x + s if k == i else x for k, x in enumerate(d))


def _syzygies(G: _Graded, d):
    """Omega_d = ker(sum_i A_{d - a_i} -> A_d, (f_i) -> sum f_i X_i) as vectors keyed (i, n)."""
    pd = G.pd
    ech = Echelon(track=True, one=pd.table.one)
    for i in range(G.rank):
        if d[i] == 0:
            continue
        for b, f in enumerate(G.basis.get(_shift(d, i, -1), [])):
            ech.add(pd.multiply(f, pd.generator(i)), (i, b))
    out = []
    for rel in ech.relations:
        vec = {}
        for (i, b), c in rel.items():
            for n, v in G.basis[_shift(d, i, -1)][b].items():
                _acc(vec, (i, n), c * v)
        vec = _clean(vec)
        if vec:
            out.append(vec)
    return out


def minimal_relation_dims(frame: HopfFrame, max_degree=None):
    """{degree d: dim of minimal relations of the positive dual in degree d} (nonzero entries).

    dim R_d = dim Omega_d - dim sum_j X_j Omega_{d - a_j}.
    """
    t = frame.table
    pd = PositiveDual(frame)
    if max_degree is None:
        # the top degree of the dual, or the nilpotency degrees l*alpha if higher
        max_degree = tuple(max((t.l - 1) * sum(deg[i] for deg in t.degrees),
                               t.l * max(deg[i] for deg in t.degrees)) for i in range(t.rank))
    G = _Graded(pd, max_degree)
    omega = {}
    out = {}
    for d in sorted(itertools.product(*(range(m + 1) for m in max_degree)), key=sum):
        if sum(d) < 2:
            continue
        om = _syzygies(G, d)
        omega[d] = om
        if not om:
            continue
        ech = Echelon()
        for j in range(t.rank):
            if d[j] == 0:
                continue
            for vec in omega.get(_shift(d, j, -1), []):
                comps = {}
                for (i, n), v in vec.items():
                    comps.setdefault(i, {})[n] = v
                img = {}
                for i, f in comps.items():
                    for n, v in pd.multiply(pd.generator(j), f).items():
                        _acc(img, (i, n), v)
                ech.add(_clean(img))
        r = len(om) - ech.rank
        if r:
            out[d] = r
    return out


def word_relation_dims(frame: HopfFrame, max_height):
    """Minimal relation counts from free words, for cross-checking in low degree."""
    t = frame.table
    pd = PositiveDual(frame)
    rank = t.rank
    kernels = {}
    out = {}
    for h in range(1, max_height + 1):
        for d in itertools.product(range(h + 1), repeat=rank):
            if sum(d) != h:
                continue
            words = sorted(set(itertools.permutations([i for i in range(rank) for _ in range(d[i])])))
            ech = Echelon(track=True, one=t.one)
            for w in words:
                ech.add(pd.word(w), w)
            K = [_clean(r) for r in ech.relations]
            kernels[d] = K
            if h < 2:
                continue
            cons = Echelon(one=t.one)
            for i in range(rank):
                if d[i] == 0:
                    continue
                for rel in kernels.get(_shift(d, i, -1), []):
                    cons.add({w + (i,): c for w, c in rel.items()})
                    cons.add({(i,) + w: c for w, c in rel.items()})
            r = len(K) - cons.rank
            if r:
                out[d] = r
    return out


def eigenvalue_exponent(frame: HopfFrame, degree, w):
    """e with omega acting on a relation class of the given degree by zeta^e.

    The class of a word in X_alpha picks up the product of the generator
    scalars w_a B(a, w)/B(w, a) from the commutator relation.
    """
    t = frame.table
    S = t.rd.sym
    M = frame.M
    r = t.rank
    Sd = [sum(S[i][j] * degree[j] for j in range(r)) for i in range(r)]
    e = sum(w[i] * degree[i] for i in range(r))
    e += sum(Sd[p] * M[p][q] * w[q] for p in range(r) for q in range(r))
    e -= sum(w[p] * M[p][q] * Sd[q] for p in range(r) for q in range(r))
    return e % t.l


def is_invariant_degree(frame: HopfFrame, degree) -> bool:
    return all(eigenvalue_exponent(frame, degree, w) == 0 for w in frame.table.k_vectors())


def killing_character(table: StructureTable, degree):
    S = table.rd.sym
    r = table.rank
    return tuple(sum(S[i][j] * degree[j] for j in range(r)) % table.l for i in range(r))


def relation_report(frame: HopfFrame, max_degree=None):
    """Minimal relations with their Killing-image eigenvalues and invariance."""
    dims = minimal_relation_dims(frame, max_degree)
    t = frame.table
    out = []
    for d, k in sorted(dims.items()):
        e = eigenvalue_exponent(frame, d, killing_character(t, d))
        out.append({"degree": d, "dim": k, "killing_eigen_exponent": e,
                    "invariant": is_invariant_degree(frame, d)})
    return out


def dual_check(frame: HopfFrame):
    """Pass/fail per relation family."""
    com, _ = commutator_check(frame)
    nil = nilpotency_check(frame)
    return {
        "commutator": com,
        "bserre": bserre_check(frame),
        "bserre_negative_control": bserre_negative_control(frame),
        "nilpotency": all(a and b for a, b in nil.values()),
    }
