"""Divided-power gauge moves computed inside u_q (x) u_q.

The element E_alpha^{(l)} lives only in the big algebra, but everything the
gauge action needs from it specializes into u_q:

* T0 = Delta(E^{(l)}) - E^{(l)} (x) 1 - 1 (x) E^{(l)}
     = sum_{i=1}^{l-1} q^{-i(l-i)} K^i E^{(l-i)} (x) E^{(i)},
* the derivation ad E^{(l)}, which preserves u_q.

With v = exp(lam E^{(l)}) one has Delta(v) = (1 + lam T0)(v (x) v), hence on a
twist F for the frame with form B

    v . F = (1 + lam B^{-1} T0 B) (Phi (x) Phi)(F),   Phi = exp(lam ad E^{(l)}).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from gmpy2 import mpq

from .engine import BIG, SMALL, AlgebraElement, StructureTable, _acc, build_engine
from .errors import ConventionError, EngineError
from .scalars import CycScalar, GenericScalar, q_factorial_laurent, specialize
from .tensor import HopfFrame, TensorElement

Q_PLAIN = "q"
Q_ROOT = "q_alpha"


def _simple_k(table, i):
    return table.simple_root_index(i)


def small_dp_factor(table: StructureTable, p):
    """[p]! = prod_k [p_k]_{q_k}! at zeta, with E^{(p)} = E^p / [p]!."""
    out = table.one
    for k, e in enumerate(p):
        if e > 1:
            out = out * specialize(GenericScalar(q_factorial_laurent(e, table.dpow[k])), table.l)
    return out


def dp_tensor(table: StructureTable, i: int, convention: str = Q_ROOT) -> TensorElement:
    """T0 for the simple root alpha_i, with the exponent base q or q_alpha.

    Only q_alpha gives a twist for the short root of B2 at l = 7, so it is the default.
    """
    if table.kind != SMALL:
        raise EngineError("the divided-power tensor is built in the small algebra")
    l = table.l
    k = _simple_k(table, i)
    d = table.dpow[k] if convention == Q_ROOT else 1
    out = {}
    for j in range(1, l):
        a = tuple(j % l if t == i else 0 for t in range(table.rank))
        left = ((a, table.e_vector(k, l - j)))
        right = ((table.zero_k, table.e_vector(k, j)))
        c = table.zeta(-d * j * (l - j)) / (small_dp_factor(table, table.e_vector(k, l - j))
                                          * small_dp_factor(table, table.e_vector(k, j)))
        _acc(out, (left, right), c)
    return TensorElement(table, out)


def dp_twist_simple(table: StructureTable, i: int, lam, convention: str = Q_ROOT, check=True) -> TensorElement:
    """1 + lam T0, certified against the twist axioms."""
    lam = _as_scalar(table, lam)
    J = TensorElement.one(table) + dp_tensor(table, i, convention).scale(lam)
    if check and lam:
        ok, cert = HopfFrame(table).is_twist(J)
        if not ok:
            raise ConventionError("1 + lam T0 is not a twist with base %s: %r" % (convention, cert))
    return J


def _as_scalar(table, lam):
    if isinstance(lam, CycScalar):
        return lam
    if isinstance(lam, int):
        return CycScalar.from_int(table.l, lam)
    return CycScalar.from_rational(table.l, mpq(lam))


# ---------------------------------------------------------------------------
# the derivation ad E_alpha^{(l)}


class DpDerivations:
    """ad E_alpha^{(l)} on u_q for each simple root, via generators and Leibniz."""

    def __init__(self, table: StructureTable):
        if table.kind != SMALL:
            raise EngineError("derivations act on the small algebra")
        self.table = table
        self.l = table.l
        rd = table.rd
        self.big = build_engine(rd.type_label, rd.l, BIG, table.l + max(table.heights))
        self._root = {}
        self._mono = {}

    def big_to_small(self, terms):
        """Rewrite a big-algebra combination of K^a E^{(p)} in the small basis."""
        t = self.table
        out = {}
        for (a, p), c in terms.items():
            if any(e >= self.l for e in p):
                raise EngineError("ad E^{(l)} leaves u_q at monomial %r" % (p,))
            _acc(out, (a, p), c / small_dp_factor(t, p))
        return out

    def small_to_big(self, terms):
        t = self.table
        return {(a, p): c * small_dp_factor(t, p) for (a, p), c in terms.items()}

    def direct(self, i, x: AlgebraElement) -> AlgebraElement:
        """ad E_i^{(l)}(x) computed by multiplying in the big algebra."""
        t = self.table
        h = max((t.e_height(n) for (a, n) in x.terms), default=0)
        big = build_engine(t.rd.type_label, t.l, BIG, max(self.big.max_height, t.l + h))
        k = _simple_k(t, i)
        E = {(big.zero_k, big.e_vector(k, self.l)): big.one}
        xs = self.small_to_big(x.terms)  # same keys in both tables
        res = big.poly_mult(E, xs)
        for m, c in big.poly_mult(xs, E).items():
            _acc(res, m, -c)
        return AlgebraElement(self.table, self.big_to_small(res))

    def on_root(self, i, k) -> AlgebraElement:
        key = (i, k)
        hit = self._root.get(key)
        if hit is not None:
            return hit
        t = self.table
        f = t.rd.factorization[k]
        if f is None:
            res = self.direct(i, AlgebraElement.root_vector(t, k))
        else:
            u, w = f
            s = t.zeta(t.rd.pair(t.degrees[u], t.degrees[w]))
            Eu, Ew = AlgebraElement.root_vector(t, u), AlgebraElement.root_vector(t, w)
            Du, Dw = self.on_root(i, u), self.on_root(i, w)
            res = Du * Ew + Eu * Dw - (Dw * Eu + Ew * Du).scale(s)
        self._root[key] = res
        return res

    def on_e(self, i, n) -> AlgebraElement:
        """ad on the ordered monomial E^n by the Leibniz rule."""
        key = (i, n)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        t = self.table
        if not any(n):
            res = AlgebraElement.zero(t)
        else:
            last = max(k for k, e in enumerate(n) if e)
            head = list(n)
            head[last] -= 1
            head = tuple(head)
            P = AlgebraElement.monomial(t, t.zero_k, head)
            X = AlgebraElement.root_vector(t, last)
            res = self.on_e(i, head) * X + P * self.on_root(i, last)
        self._mono[key] = res
        return res

    def apply(self, i, x: AlgebraElement) -> AlgebraElement:
        """ad E_i^{(l)}(x); grouplikes commute with E^{(l)}, so K^a passes through."""
        t = self.table
        out = {}
        for (a, n), c in x.terms.items():
            if not any(n):
                continue
            d = self.on_e(i, n)
            if not any(a):
                for m, e in d.terms.items():
                    _acc(out, m, c * e)
                continue
            for (b, p), e in d.terms.items():
                _acc(out, (tuple((u + v) % t.l for u, v in zip(a, b)), p), c * e)
        return AlgebraElement(t, out)

    def exp(self, i, lam, x: AlgebraElement) -> AlgebraElement:
        """exp(lam ad E_i^{(l)})(x), a finite sum."""
        t = self.table
        lam = _as_scalar(t, lam)
        out = x
        term = x
        k = 0
        while True:
            k += 1
            term = self.apply(i, term).scale(lam * CycScalar.from_rational(t.l, mpq(1, k)))
            if not term:
                return out
            out = out + term
            if k > t.max_height:
                raise EngineError("ad E^{(l)} is not nilpotent")


@lru_cache(maxsize=None)
def derivations(table: StructureTable) -> DpDerivations:
    return DpDerivations(table)


def dp_derivation(table: StructureTable, i: int, x: AlgebraElement) -> AlgebraElement:
    return derivations(table).apply(i, x)


def dp_exp_automorphism(table: StructureTable, i: int, lam, x: AlgebraElement) -> AlgebraElement:
    return derivations(table).exp(i, lam, x)


# ---------------------------------------------------------------------------
# moves and words


@dataclass(frozen=True)
class DpMove:
    """Gauge by exp(sign * lam * E_{alpha}^{(l)}) for the simple root index alpha."""

    alpha: int
    lam: CycScalar
    sign: int = 1

    def inverse(self):
        return DpMove(self.alpha, self.lam, -self.sign)

    def to_json(self):
        return {"alpha": self.alpha, "lambda": self.lam.to_json(), "sign": self.sign}

    @classmethod
    def from_json(cls, l, d):
        return cls(int(d["alpha"]), CycScalar.from_json(l, d["lambda"]), int(d["sign"]))


@dataclass
class DpWord:
    """Product m_1 m_2 ... m_k of dp moves; acts on twists right to left."""

    moves: list
    root: int
    lam: CycScalar
    leading_degree: tuple = dc_field(default=())

    def inverse(self):
        return DpWord([m.inverse() for m in reversed(self.moves)], self.root, -self.lam, self.leading_degree)

    def __len__(self):
        return len(self.moves)

    def to_json(self):
        return [m.to_json() for m in self.moves]


def dp_gauge(frame: HopfFrame, move: DpMove, F: TensorElement, convention: str = Q_ROOT) -> TensorElement:
    """Gauge action of exp(sign lam E^{(l)}) on a twist F for the frame's coproduct."""
    t = frame.table
    lam = move.lam if move.sign > 0 else -move.lam
    if not lam:
        return F
    D = derivations(t)
    cache = {}

    def image(m):
        hit = cache.get(m)
        if hit is None:
            hit = D.exp(move.alpha, lam, AlgebraElement(t, {m: t.one})).terms
            cache[m] = hit
        return hit

    G = F.apply(image)
    T = _frame_dp_tensor(frame, move.alpha, convention)
    return G + TensorElement(t, t.tmult(T.terms, G.terms)).scale(lam)


def _frame_dp_tensor(frame, i, convention):
    key = ("dp", i, convention)
    hit = frame._delta.get(key)
    if hit is None:
        T = dp_tensor(frame.table, i, convention)
        hit = TensorElement(frame.table, frame.conjugate_terms(T.terms))
        frame._delta[key] = hit
    return hit


def apply_word(frame: HopfFrame, word, F: TensorElement, convention: str = Q_ROOT) -> TensorElement:
    moves = word.moves if isinstance(word, DpWord) else list(word)
    for m in reversed(moves):
        F = dp_gauge(frame, m, F, convention)
    return F


def dp_word_for_root(table: StructureTable, k: int, lam) -> DpWord:
    """Word whose gauge action on 1 (x) 1 starts with -lam t_mu in degree l mu.

    Simple roots give a single move; otherwise the group commutator
    W_u(lam) W_w(1) W_u(lam)^{-1} W_w(1)^{-1} along the Lyndon factorization.
    """
    lam = _as_scalar(table, lam)
    f = table.rd.factorization[k]
    lead = tuple(table.l * x for x in table.degrees[k])
    if f is None:
        i = table.degrees[k].index(1)
        return DpWord([DpMove(i, lam, 1)], k, lam, lead)
    u, w = f
    Wu = dp_word_for_root(table, u, lam)
    Ww = dp_word_for_root(table, w, table.one)
    moves = Wu.moves + Ww.moves + Wu.inverse().moves + Ww.inverse().moves
    return DpWord(moves, k, lam, lead)


def word_leading_term(frame: HopfFrame, word: DpWord, convention: str = Q_ROOT) -> TensorElement:
    """The degree l mu part of word . (1 (x) 1); every other part must lie strictly above it."""
    t = frame.table
    G = apply_word(frame, word, TensorElement.one(t), convention) - TensorElement.one(t)
    lead = word.leading_degree
    comps = G.degree_components()
    for d in comps:
        if d != lead and not all(a >= b for a, b in zip(d, lead)):
            raise ConventionError("dp word produces a term in degree %r below %r" % (d, lead))
    t_mu = comps.get(lead)
    if t_mu is None or not t_mu:
        raise ConventionError("dp word has vanishing leading term in degree %r" % (lead,))
    return t_mu
