"""Root data for simple types: Cartan matrices, positive roots in Lyndon order,
the symmetrized form, admissibility of the root-of-unity order, the Killing
map and the Serre-relation exponents."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .errors import ConfigError

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def parse_type(label: str):
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise ConfigError("cannot parse type label %r" % label)
    t, n = m.group(1).upper(), int(m.group(2))
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }[t]
    if not valid:
        raise ConfigError("unsupported simple type %s%d" % (t, n))
    return t, n


def cartan_matrix(t: str, n: int):
    """Cartan integers a[i][j] = <alpha_i, alpha_j> = 2(a_i, a_j)/(a_i, a_i) (Bourbaki labels)."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        a[i][j] = a[j][i] = -1

    if t in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t == "B":
            a[n - 1][n - 2] = -2
        elif t == "C":
            a[n - 2][n - 1] = -2
    elif t == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif t == "F":
        for i in range(3):
            link(i, i + 1)
        a[2][1] = -2
    elif t == "G":
        a[0][1] = -3
        a[1][0] = -1
    return a


def _symmetrizer(a):
    from fractions import Fraction

    n = len(a)
    d = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    m = min(d)
    d = [x / m for x in d]
    assert all(x.denominator == 1 for x in d)
    return [int(x) for x in d]


def _det(m):
    from fractions import Fraction

    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    assert det.denominator == 1
    return int(det)


@dataclass(frozen=True)
class RootDatum:
    type_label: str
    family: str
    rank: int
    l: int
    cartan: tuple          # cartan[i][j] = <alpha_i, alpha_j>
    d: tuple               # (alpha_i, alpha_i) / 2
    sym: tuple             # (alpha_i, alpha_j)
    D: int
    positive_roots: tuple  # QDegrees in Lyndon (convex) order
    lyndon: tuple          # Lyndon word of each positive root
    factorization: tuple   # (index_u, index_w) of the standard factorization, None for simple
    root_index: dict = field(compare=False, repr=False, default_factory=dict)

    @property
    def simple_roots(self):
        return tuple(range(self.rank))

    def simple(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def pair(self, mu, nu):
        """Symmetrized form (mu, nu) on the root lattice."""
        s = 0
        for i, x in enumerate(mu):
            if x:
                row = self.sym[i]
                for j, y in enumerate(nu):
                    if y:
                        s += x * y * row[j]
        return s

    def root_norm_power(self, k):
        """(mu, mu)/2 for the k-th positive root."""
        mu = self.positive_roots[k]
        p = self.pair(mu, mu)
        assert p % 2 == 0
        return p // 2

    def is_simple_index(self, k):
        return sum(self.positive_roots[k]) == 1

    def simple_index_of_root(self, i):
        return self.root_index[self.simple(i)]

    def killing_matrix(self):
        return [[x % self.l for x in row] for row in self.sym]


def height(mu) -> int:
    return sum(mu)


def qleq(mu, nu) -> bool:
    return all(a <= b for a, b in zip(mu, nu))


def qadd(mu, nu):
    return tuple(a + b for a, b in zip(mu, nu))


def qsub(mu, nu):
    return tuple(a - b for a, b in zip(mu, nu))


def qscale(k, mu):
    return tuple(k * a for a in mu)


def _positive_roots(a, n):
    """Positive roots by closure of the simple roots under alpha-strings."""
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # <beta, alpha_i^vee> = sum_j beta_j a[i][j]
                pairing = sum(beta[j] * a[i][j] for j in range(n))
                p = 0
                while True:
                    lower = tuple(beta[j] - (p + 1) * (1 if j == i else 0) for j in range(n))
                    if lower in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = tuple(beta[j] + (1 if j == i else 0) for j in range(n))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return roots


def _lyndon_words(roots, n):
    """Good Lyndon word of each root: max of l(g1)l(g2) over g = g1 + g2, l(g1) < l(g2)."""
    words = {}
    for mu in sorted(roots, key=sum):
        if sum(mu) == 1:
            words[mu] = (mu.index(1),)
            continue
        best = None
        for g1 in roots:
            if sum(g1) >= sum(mu):
                continue
            g2 = qsub(mu, g1)
            if g2 in words and g1 in words:
                w1, w2 = words[g1], words[g2]
                if w1 < w2:
                    cand = w1 + w2
                    if best is None or cand > best:
                        best = cand
        words[mu] = best
    return words


def _is_lyndon(w):
    return all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def build_root_datum(type_label: str, l: int) -> RootDatum:
    t, n = parse_type(type_label)
    if not isinstance(l, int) or l < 3 or l % 2 == 0:
        raise ConfigError("root of unity order must be odd and >= 3, got %r" % (l,))
    a = cartan_matrix(t, n)
    d = _symmetrizer(a)
    sym = tuple(tuple(d[i] * a[i][j] for j in range(n)) for i in range(n))
    assert all(sym[i][j] == sym[j][i] for i in range(n) for j in range(n))
    roots = _positive_roots(a, n)
    if len(roots) != ROOT_COUNTS[t](n):
        raise ConfigError("root closure produced %d roots for %s%d" % (len(roots), t, n))
    words = _lyndon_words(roots, n)
    order = sorted(roots, key=lambda mu: words[mu])
    index = {mu: k for k, mu in enumerate(order)}
    by_word = {words[mu]: mu for mu in order}
    fact = []
    for mu in order:
        w = words[mu]
        if len(w) == 1:
            fact.append(None)
            continue
        # standard factorization: longest proper Lyndon suffix
        for i in range(1, len(w)):
            if _is_lyndon(w[i:]) and _is_lyndon(w[:i]):
                u, v = w[:i], w[i:]
                if u in by_word and v in by_word:
                    fact.append((index[by_word[u]], index[by_word[v]]))
                    break
        else:
            raise ConfigError("no standard factorization for %r" % (w,))
    D = max(d)
    return RootDatum(
        type_label="%s%d" % (t, n),
        family=t,
        rank=n,
        l=l,
        cartan=tuple(tuple(r) for r in a),
        d=tuple(d),
        sym=sym,
        D=D,
        positive_roots=tuple(order),
        lyndon=tuple(words[mu] for mu in order),
        factorization=tuple(fact),
        root_index=index,
    )


def admissible_order(rd: RootDatum) -> bool:
    l = rd.l
    if l % 2 == 0 or l < 3:
        return False
    t = rd.family
    if t in "ADE":
        return l != 3
    if t in "BCF":
        return l not in (3, 5)
    if t == "G":
        return gcd(l, 3) == 1 and l != 7
    return False


def serre_exponent_set(rd: RootDatum) -> set:
    """Values (1-a)^2 (a,a) + 2(1-a)(a,b) + (b,b), a = <alpha,beta>, over simple pairs."""
    out = set()
    for i in range(rd.rank):
        for j in range(rd.rank):
            if i == j:
                continue
            a = rd.cartan[i][j]
            out.add((1 - a) ** 2 * rd.sym[i][i] + 2 * (1 - a) * rd.sym[i][j] + rd.sym[j][j])
    return out


def killing_map(rd: RootDatum):
    """Matrix of K_alpha -> (K_beta -> q^{(alpha,beta)}) over Z/l and its invertibility."""
    det = _det(rd.sym)
    return rd.killing_matrix(), gcd(det, rd.l) == 1


def cartan_det(rd: RootDatum) -> int:
    return _det(rd.cartan)


def sym_det(rd: RootDatum) -> int:
    return _det(rd.sym)
