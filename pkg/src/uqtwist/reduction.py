"""Reduction of twists for u_q to the normal form (alternating form, unipotent coordinates).

A twist is carried in factored form J = B_M F, with B_M = form_to_twist(M)
and F a twist for the coproduct Delta^{B_M}.  Gauging J by a unit v gauges F
inside the frame M, and B_M B_N = B_{M+N}, so the form is only ever touched
when the degree-zero part is absorbed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .cohomology import express_class, solve_bounding
from .dp import DpWord, apply_word, dp_word_for_root, word_leading_term
from .engine import AlgebraElement, StructureTable
from .errors import EngineError, TheoremViolation
from .groupalg import (enumerate_alternating, form_left_multiply, group_inverse,
                       group_unit_gauge, matrix_to_json, normalize_group_twist,
                       random_group_unit)
from .scalars import CycScalar
from .tensor import HopfFrame, TensorElement, algebra_inverse, normalize_matrix


@dataclass
class FactoredTwist:
    """J = form_to_twist(M) * F."""

    M: tuple
    F: TensorElement

    def expand(self) -> TensorElement:
        if not any(any(r) for r in self.M):
            return self.F
        return form_left_multiply(self.M, self.F)


# ---------------------------------------------------------------------------
# gauge log


@dataclass
class GroupUnit:
    """Gauge by a unit of C[G]."""

    v: AlgebraElement

    def to_json(self):
        return {"kind": "group_unit", "v": self.v.to_json()}


@dataclass
class SmallUnit:
    """Gauge by the unit 1 + x, x of positive degree (homogeneous when produced by the reduction)."""

    x: AlgebraElement
    degree: tuple

    def to_json(self):
        return {"kind": "small_unit", "degree": list(self.degree), "x": self.x.to_json()}


@dataclass
class WordMove:
    """Gauge by the dp word for a positive root."""

    word: DpWord

    def to_json(self):
        return {"kind": "dp_word", "root": self.word.root, "lambda": self.word.lam.to_json(),
                "moves": self.word.to_json()}


@dataclass
class FrameShift:
    """F -> form_to_twist(N)^{-1} F and M -> M + N."""

    N: tuple

    def to_json(self):
        return {"kind": "frame_shift", "N": matrix_to_json(self.N)}


def _add(M, N, l):
    return tuple(tuple((a + b) % l for a, b in zip(r1, r2)) for r1, r2 in zip(M, N))


def _neg(M, l):
    return tuple(tuple((-a) % l for a in r) for r in M)


_FRAMES = {}


def frame_for(table: StructureTable, M) -> HopfFrame:
    """Shared frame per (table, M), so coproduct caches survive across steps."""
    key = (id(table), tuple(tuple(r) for r in M))
    fr = _FRAMES.get(key)
    if fr is None:
        fr = _FRAMES[key] = HopfFrame(table, M)
    return fr


def apply_move(state: FactoredTwist, move, table: StructureTable, inverse=False) -> FactoredTwist:
    """Act on a factored twist by one logged move (or its inverse)."""
    l = table.l
    frame = frame_for(table, state.M)
    if isinstance(move, GroupUnit):
        v = group_inverse(move.v) if inverse else move.v
        return FactoredTwist(state.M, group_unit_gauge(v, state.F))
    if isinstance(move, SmallUnit):
        u = AlgebraElement.one(table) + move.x
        ui = algebra_inverse(u)
        u, ui = (ui, u) if inverse else (u, ui)
        return FactoredTwist(state.M, frame.gauge(u, state.F, ui))
    if isinstance(move, WordMove):
        w = move.word.inverse() if inverse else move.word
        return FactoredTwist(state.M, apply_word(frame, w, state.F))
    if isinstance(move, FrameShift):
        if inverse:
            return FactoredTwist(_add(state.M, _neg(move.N, l), l), form_left_multiply(move.N, state.F))
        return FactoredTwist(_add(state.M, move.N, l), form_left_multiply(_neg(move.N, l), state.F))
    raise TypeError("unknown move %r" % (move,))


@dataclass
class GaugeLog:
    moves: list = dc_field(default_factory=list)

    def append(self, m):
        self.moves.append(m)

    def __len__(self):
        return len(self.moves)

    def replay(self, start: FactoredTwist, table: StructureTable) -> FactoredTwist:
        s = start
        for m in self.moves:
            s = apply_move(s, m, table)
        return s

    def replay_inverse(self, end: FactoredTwist, table: StructureTable) -> FactoredTwist:
        s = end
        for m in reversed(self.moves):
            s = apply_move(s, m, table, inverse=True)
        return s

    def to_json(self):
        return [m.to_json() for m in self.moves]


@dataclass
class TwistNormalForm:
    alt_form: tuple
    c: dict                      # root index -> lam with the input ~ word(mu, lam) . B, per class t_mu
    log: GaugeLog
    obstructions: list = dc_field(default_factory=list)   # degrees of nonexact terms met

    def to_json(self, table: StructureTable):
        return {
            "alt_form": matrix_to_json(self.alt_form),
            "c": {",".join(map(str, table.degrees[k])): v.to_json() for k, v in sorted(self.c.items())},
            "obstructions": [list(d) for d in self.obstructions],
            "log": self.log.to_json(),
        }


# ---------------------------------------------------------------------------
# the reduction loop


class _Classes:
    """t_mu per frame, from the dp word with parameter 1."""

    def __init__(self, table):
        self.table = table
        self._t = {}

    def t_mu(self, frame: HopfFrame, k):
        key = (frame.M, k)
        hit = self._t.get(key)
        if hit is None:
            w = dp_word_for_root(self.table, k, 1)
            hit = -word_leading_term(frame, w)
            self._t[key] = hit
        return hit


_CLASSES = {}


def _classes(table):
    c = _CLASSES.get(id(table))
    if c is None:
        c = _CLASSES[id(table)] = _Classes(table)
    return c


def _lmu_index(table, gamma):
    l = table.l
    if any(x % l for x in gamma):
        return None
    mu = tuple(x // l for x in gamma)
    for k, d in enumerate(table.degrees):
        if d == mu:
            return k
    return None


def _top_height(table):
    return 2 * (table.l - 1) * sum(table.heights)


def reduce_twist(J, table: StructureTable = None, check_cocycles=True) -> TwistNormalForm:
    """Normal form of a twist for u_q, given as a TensorElement or a FactoredTwist."""
    if isinstance(J, TensorElement):
        table = J.table
        state = FactoredTwist(normalize_matrix(None, table.rank, table.l), J)
    else:
        table = table or J.F.table
        state = J
    l = table.l
    log = GaugeLog()
    obstructions = []
    c = {}

    # degree zero: the form is read off J_0 = B_{M_in} F_0, never off the label M_in
    F0 = state.F.degree_zero_part()
    J0 = form_left_multiply(state.M, F0) if any(any(r) for r in state.M) else F0
    if J0 != TensorElement.one(table):
        v0, M = normalize_group_twist(J0)
        if v0 != AlgebraElement.one(table):
            m = GroupUnit(v0)
            state = apply_move(state, m, table)
            log.append(m)
        # relabel J = B_{M_in} F as B_M F'; this changes no twist, so it is not logged
        N = _add(M, _neg(state.M, l), l)
        if any(any(r) for r in N):
            state = apply_move(state, FrameShift(N), table)
    if state.F.degree_zero_part() != TensorElement.one(table):
        raise EngineError("degree-zero normalization failed")

    one = TensorElement.one(table)
    classes = _classes(table)
    bound = _top_height(table)
    steps = 0
    while state.F != one:
        steps += 1
        if steps > 10 * bound * max(1, table.N):
            raise EngineError("reduction did not terminate")
        frame = frame_for(table, state.M)
        rest = state.F - one
        comps = rest.degree_components()
        h = min(sum(d) for d in comps)
        if h > bound:
            raise EngineError("residual twist has terms above the top degree")
        gamma = min(d for d in comps if sum(d) == h)
        Jg = comps[gamma]
        v = solve_bounding(frame, Jg, unique=False, check=check_cocycles)
        if v is not None:
            m = SmallUnit(v, gamma)
            state = apply_move(state, m, table)
            log.append(m)
            continue
        k = _lmu_index(table, gamma)
        if k is None:
            raise TheoremViolation("nonexact minimal term in degree %r outside l Phi+" % (gamma,))
        obstructions.append(gamma)
        sol = express_class(frame, Jg, [classes.t_mu(frame, k)])
        if sol is None:
            raise TheoremViolation("class in degree %r is not a multiple of t_mu" % (gamma,))
        coeff = sol[0][0]
        m = WordMove(dp_word_for_root(table, k, coeff))
        state = apply_move(state, m, table)
        log.append(m)
        c[k] = c.get(k, table.zero) - coeff
    return TwistNormalForm(state.M, {k: x for k, x in c.items() if x}, log, obstructions)


def replay_check(nf: TwistNormalForm, original, table: StructureTable) -> bool:
    """Replaying the inverse log from form_to_twist(alt_form) gives back the input exactly."""
    end = FactoredTwist(nf.alt_form, TensorElement.one(table))
    start = nf.log.replay_inverse(end, table)
    if isinstance(original, TensorElement):
        return start.expand() == original
    if start.M == original.M:
        return start.F == original.F  # B_M is invertible, so this is equality of B_M F
    return start.expand() == original.expand()


def classify_orbit(J, table: StructureTable = None):
    nf = reduce_twist(J, table)
    return nf.alt_form, nf.c


# ---------------------------------------------------------------------------
# seeded random twists


def random_small_element(table: StructureTable, rnd, terms=2, max_height=None):
    """Homogeneous-free small positive element with a few monomials and Z[zeta] coefficients."""
    monos = [n for n in table.e_monomials(max_height=max_height) if any(n)]
    out = {}
    for _ in range(terms):
        n = rnd.choice(monos)
        a = tuple(rnd.randrange(table.l) for _ in range(table.rank))
        coeffs = [rnd.randint(-2, 2) for _ in range(len(table.one.c))]
        if not any(coeffs):
            coeffs[0] = 1
        out[(a, n)] = CycScalar(table.l, coeffs)
    return AlgebraElement(table, out)


@dataclass
class RandomTwist:
    twist: FactoredTwist
    words: list
    unit: AlgebraElement


def random_unit(table: StructureTable, rnd, small_terms=1, small_height=2, dense_group=False):
    """A random unit of u_q with counit 1.

    dense_group=True multiplies by a random unit of C[G] with root-of-unity
    character values (dense in the grouplike basis); otherwise by a single
    grouplike K^g, which keeps twists sparse.
    """
    x = random_small_element(table, rnd, small_terms, small_height)
    u = AlgebraElement.one(table) + x
    if dense_group:
        g = random_group_unit(table, rnd)
    else:
        g = AlgebraElement.grouplike(table, tuple(rnd.randrange(table.l) for _ in range(table.rank)))
    return g * u


def gauge_by_unit(frame: HopfFrame, u: AlgebraElement, F: TensorElement) -> TensorElement:
    """Gauge by u = g (1 + x) with g in C[G]; the grouplike factor goes through characters."""
    g = u.degree_zero_part()
    gi = group_inverse(g)
    rest = gi * u
    F = frame.gauge(rest, F, algebra_inverse(rest))
    if len(g.terms) == 1:
        return frame.gauge(g, F, gi)
    return group_unit_gauge(g, F)


def random_twist(table: StructureTable, M, seed, roots=None, max_words=3, small_terms=1,
                 small_height=2, dense_group=False) -> RandomTwist:
    """(random unit) . (dp words) acting on form_to_twist(M), in factored form."""
    rnd = random.Random(seed)
    M = normalize_matrix(M, table.rank, table.l)
    frame = frame_for(table, M)
    roots = list(range(table.N)) if roots is None else list(roots)
    F = TensorElement.one(table)
    words = []
    for _ in range(rnd.randint(1, max_words)):
        k = rnd.choice(roots)
        lam = CycScalar.from_int(table.l, rnd.choice([1, 2, -1, 3]))
        w = dp_word_for_root(table, k, lam)
        F = apply_word(frame, w, F)
        words.append(w)
    u = random_unit(table, rnd, small_terms, small_height, dense_group)
    F = gauge_by_unit(frame, u, F)
    return RandomTwist(FactoredTwist(M, F), words, u)


# ---------------------------------------------------------------------------
# harnesses


def alt_injectivity_check(table: StructureTable, seeds=(0,), forms=None, **kw):
    """Every alternating form survives a random gauge and is recovered by reduce_twist."""
    forms = enumerate_alternating(table.rank, table.l) if forms is None else forms
    seen = {}
    for M in forms:
        for s in seeds:
            rt = random_twist(table, M, s, **kw)
            J = rt.twist.expand()
            nf = reduce_twist(J)
            if nf.alt_form != tuple(tuple(r) for r in M):
                return False
            seen.setdefault(nf.alt_form, set()).add(M)
    return all(len(v) == 1 for v in seen.values())


DISTINCT = "distinct"
COMPATIBLE = "compatible"
EQUAL = "equal"


def killing_pullback(M, sym, l):
    """kappa^T M kappa with kappa the symmetrized Cartan matrix mod l."""
    n = len(sym)
    SM = [[sum(sym[k][i] * M[k][j] for k in range(n)) % l for j in range(n)] for i in range(n)]
    return tuple(tuple(sum(SM[i][k] * sym[k][j] for k in range(n)) % l for j in range(n)) for i in range(n))


def _det_mod(A, l):
    A = [list(r) for r in A]
    n = len(A)
    det = 1
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] % l), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c] % l
        inv = pow(A[c][c], -1, l)
        for r in range(c + 1, n):
            f = A[r][c] * inv % l
            A[r] = [(x - f * y) % l for x, y in zip(A[r], A[c])]
    return det % l


def kappa_restriction_invariant(M, M2, rd) -> str:
    l = rd.l
    M = tuple(tuple(x % l for x in r) for r in M)
    M2 = tuple(tuple(x % l for x in r) for r in M2)
    if M == M2:
        return EQUAL
    if killing_pullback(M, rd.sym, l) != killing_pullback(M2, rd.sym, l):
        return DISTINCT
    if _det_mod(rd.sym, l):
        raise TheoremViolation("equal pullbacks along an invertible Killing map for distinct forms")
    return COMPATIBLE


def compatible_pairs(rd, limit=1):
    """Pairs (0, D) of distinct alternating forms with equal Killing pullback."""
    out = []
    zero = tuple(tuple(0 for _ in range(rd.rank)) for _ in range(rd.rank))
    for D in enumerate_alternating(rd.rank, rd.l):
        if D != zero and killing_pullback(D, rd.sym, rd.l) == killing_pullback(zero, rd.sym, rd.l):
            out.append((zero, D))
            if len(out) >= limit:
                break
    return out
