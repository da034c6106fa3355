"""Arithmetic in H (x) H and H (x) H (x) H, twisted coproducts, twist
verification, gauge actions and twisted-automorphism composition.

Terms are keyed by pairs (resp. triples) of engine monomials (a, n).  A
bilinear form B(a, b) = zeta^{a^T M b} on the character group is never
expanded when conjugating: for x of Q-degree mu and y of Q-degree nu,

    B^{-1} (x (x) y) B = zeta^{-m^T M n} x K^{-M n} (x) y K^{-M^T m},

with m = S mu, n = S nu and S the symmetrized form.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .engine import AlgebraElement, StructureTable, _acc
from .errors import NotAUnit, UqTwistError
from .scalars import CycScalar


def _matvec(M, v, l):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) % l for i in range(len(M)))


def _matTvec(M, v, l):
    return tuple(sum(M[j][i] * v[j] for j in range(len(v))) % l for i in range(len(M)))


def normalize_matrix(M, rank, l):
    if M is None:
        return tuple(tuple(0 for _ in range(rank)) for _ in range(rank))
    return tuple(tuple(int(x) % l for x in row) for row in M)


class TensorElement:
    """Sparse element of H (x) H."""

    __slots__ = ("table", "terms")

    def __init__(self, table: StructureTable, terms=None):
        self.table = table
        self.terms = {} if terms is None else {k: c for k, c in terms.items() if c}

    @classmethod
    def one(cls, table):
        u = (table.zero_k, table.zero_e)
        return cls(table, {(u, u): table.one})

    @classmethod
    def from_pair(cls, x: AlgebraElement, y: AlgebraElement):
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                _acc(out, (m1, m2), c1 * c2)
        return cls(x.table, out)

    def _check(self, other):
        if not isinstance(other, TensorElement):
            return False
        if other.table is not self.table:
            raise TypeError("ambient mismatch")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.table, out)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return TensorElement(self.table, out)

    def __neg__(self):
        return TensorElement(self.table, {k: -c for k, c in self.terms.items()})

    def scale(self, s):
        if not s:
            return TensorElement(self.table)
        return TensorElement(self.table, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            self._check(other)
            return TensorElement(self.table, self.table.tmult(self.terms, other.terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.table is other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "TensorElement(%s, %d terms)" % (self.table.ambient, len(self.terms))

    def is_zero(self):
        return not self.terms

    def bidegree(self, key):
        (a, n), (b, m) = key
        return self.table.e_degree(n), self.table.e_degree(m)

    def total_degree(self, key):
        d1, d2 = self.bidegree(key)
        return tuple(x + y for x, y in zip(d1, d2))

    def degree_components(self):
        out = {}
        for k, c in self.terms.items():
            out.setdefault(self.total_degree(k), {})[k] = c
        return {d: TensorElement(self.table, t) for d, t in out.items()}

    def component(self, gamma):
        gamma = tuple(gamma)
        return TensorElement(self.table, {k: c for k, c in self.terms.items() if self.total_degree(k) == gamma})

    def heights(self):
        t = self.table
        return sorted({t.e_height(n) + t.e_height(m) for ((a, n), (b, m)) in self.terms})

    def degree_zero_part(self):
        z = self.table.zero_e
        return TensorElement(self.table, {k: c for k, c in self.terms.items() if k[0][1] == z and k[1][1] == z})

    def swap(self):
        return TensorElement(self.table, {(y, x): c for (x, y), c in self.terms.items()})

    def counit_left(self):
        out = {}
        for ((a, n), y), c in self.terms.items():
            if not any(n):
                _acc(out, y, c)
        return AlgebraElement(self.table, out)

    def counit_right(self):
        out = {}
        for (x, (b, m)), c in self.terms.items():
            if not any(m):
                _acc(out, x, c)
        return AlgebraElement(self.table, out)

    def left_mult(self, x: AlgebraElement, side=0):
        """(x (x) 1) * self when side == 0, (1 (x) x) * self when side == 1."""
        t = self.table
        out = {}
        for m, c in x.terms.items():
            for (u, w), d in self.terms.items():
                src = u if side == 0 else w
                for p, e in t.mono_mult(m, src).items():
                    key = (p, w) if side == 0 else (u, p)
                    _acc(out, key, c * d * e)
        return TensorElement(t, out)

    def right_mult(self, x: AlgebraElement, side=0):
        """self * (x (x) 1) when side == 0, self * (1 (x) x) when side == 1."""
        t = self.table
        out = {}
        for (u, w), d in self.terms.items():
            src = u if side == 0 else w
            for m, c in x.terms.items():
                for p, e in t.mono_mult(src, m).items():
                    key = (p, w) if side == 0 else (u, p)
                    _acc(out, key, c * d * e)
        return TensorElement(t, out)

    def apply(self, f, g=None):
        """(f (x) g)(self) for linear maps given on monomials as dict-valued callables."""
        g = f if g is None else g
        out = {}
        for (u, w), c in self.terms.items():
            fu = f(u)
            if not fu:
                continue
            gw = g(w)
            for p, a in fu.items():
                ca = c * a
                for q, b in gw.items():
                    _acc(out, (p, q), ca * b)
        return TensorElement(self.table, out)

    # serialization
    def to_json(self):
        rows = []  # list of {coeff, left, right}
        for ((a, n), (b, m)), c in sorted(self.terms.items()):
            rows.append({"coeff": c.to_json(), "left": {"k": list(a), "e": list(n)},
                         "right": {"k": list(b), "e": list(m)}})
        return rows

    @classmethod
    def from_json(cls, table, rows):
        terms = {}
        for r in rows:
            key = ((tuple(r["left"]["k"]), tuple(r["left"]["e"])),
                   (tuple(r["right"]["k"]), tuple(r["right"]["e"])))
            terms[key] = CycScalar.from_json(table.l, r["coeff"])
        return cls(table, terms)


class Tensor3:
    """Sparse element of H (x) H (x) H."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms=None):
        self.table = table
        self.terms = {} if terms is None else {k: c for k, c in terms.items() if c}

    def __sub__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, -c)
        return Tensor3(self.table, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor3(self.table, out)

    def __mul__(self, other):
        t = self.table
        mm = t.mono_mult
        out = {}
        for (x1, y1, z1), c1 in self.terms.items():
            for (x2, y2, z2), c2 in other.terms.items():
                p1 = mm(x1, x2)
                if not p1:
                    continue
                p2 = mm(y1, y2)
                if not p2:
                    continue
                p3 = mm(z1, z2)
                if not p3:
                    continue
                c = c1 * c2
                for u, a in p1.items():
                    ca = c * a
                    for v, b in p2.items():
                        cab = ca * b
                        for w, d in p3.items():
                            _acc(out, (u, v, w), cab * d)
        return Tensor3(t, out)

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self, key):
        t = self.table
        out = [0] * t.rank
        for (a, n) in key:
            for i, x in enumerate(t.e_degree(n)):
                out[i] += x
        return tuple(out)

    def tridegree(self, key):
        return tuple(self.table.e_degree(n) for (a, n) in key)

    @classmethod
    def embed(cls, J: TensorElement, where):
        """J (x) 1 (where='left') or 1 (x) J (where='right')."""
        t = J.table
        u = (t.zero_k, t.zero_e)
        if where == "left":
            return cls(t, {(x, y, u): c for (x, y), c in J.terms.items()})
        return cls(t, {(u, x, y): c for (x, y), c in J.terms.items()})


# ---------------------------------------------------------------------------
# Hopf frames: u_q with plain or B-twisted coproduct


class HopfFrame:
    """The Hopf algebra H = u_q (or the truncated big algebra) with coproduct
    Delta^B = B^{-1} Delta B for the form B(a, b) = zeta^{a^T M b} (M = 0: plain)."""

    def __init__(self, table: StructureTable, M=None):
        self.table = table
        self.l = table.l
        self.rank = table.rank
        self.M = normalize_matrix(M, table.rank, table.l)
        self.plain = not any(any(r) for r in self.M)
        self.S = table.rd.sym
        self._delta = {}

    def sym_image(self, n):
        """S * deg(E^n), an exponent vector."""
        d = self.table.e_degree(n)
        return tuple(sum(self.S[i][j] * d[j] for j in range(self.rank)) for i in range(self.rank))

    def conj_B(self, x, y):
        """B^{-1}(x (x) y)B for monomials x, y as (coefficient exponent, x', y')."""
        if self.plain:
            return 0, x, y
        l = self.l
        m = self.sym_image(x[1])
        n = self.sym_image(y[1])
        Mn = _matvec(self.M, n, l)
        MTm = _matTvec(self.M, m, l)
        e = -sum(m[i] * Mn[i] for i in range(self.rank))
        t = self.table
        # x K^{-Mn}: monomial (a, p) times K^g is zeta^{k_pair(g, p)} K^{a+g} E^p
        a, p = x
        b, q = y
        g1 = tuple((-v) % l for v in Mn)
        g2 = tuple((-v) % l for v in MTm)
        e += t.k_pair(g1, p) + t.k_pair(g2, q)
        x2 = (tuple((u + v) % l for u, v in zip(a, g1)), p)
        y2 = (tuple((u + v) % l for u, v in zip(b, g2)), q)
        return e, x2, y2

    def conjugate_terms(self, terms):
        """B^{-1} T B for a dict of tensor terms."""
        if self.plain:
            return dict(terms)
        t = self.table
        out = {}
        for (x, y), c in terms.items():
            e, x2, y2 = self.conj_B(x, y)
            _acc(out, (x2, y2), c * t.zeta(e))
        return out

    def conjugate_terms_inverse(self, terms):
        """B T B^{-1}."""
        if self.plain:
            return dict(terms)
        t = self.table
        out = {}
        l = self.l
        for (x, y), c in terms.items():
            # B (x (x) y) B^{-1} uses -M in place of M
            m = self.sym_image(x[1])
            n = self.sym_image(y[1])
            Mn = _matvec(self.M, n, l)
            MTm = _matTvec(self.M, m, l)
            e = sum(m[i] * Mn[i] for i in range(self.rank))
            a, p = x
            b, q = y
            g1 = tuple(v % l for v in Mn)
            g2 = tuple(v % l for v in MTm)
            e += t.k_pair(g1, p) + t.k_pair(g2, q)
            x2 = (tuple((u + v) % l for u, v in zip(a, g1)), p)
            y2 = (tuple((u + v) % l for u, v in zip(b, g2)), q)
            _acc(out, (x2, y2), c * t.zeta(e))
        return out

    def delta_mono(self, x):
        hit = self._delta.get(x)
        if hit is not None:
            return hit
        d = self.table.comultiply_monomial(x)
        if not self.plain:
            d = self.conjugate_terms(d)
        self._delta[x] = d
        return d

    def delta(self, v: AlgebraElement) -> TensorElement:
        out = {}
        for m, c in v.terms.items():
            for k, d in self.delta_mono(m).items():
                _acc(out, k, c * d)
        return TensorElement(self.table, out)

    def delta_left(self, J: TensorElement) -> Tensor3:
        """(Delta (x) 1) J."""
        out = {}
        for (x, y), c in J.terms.items():
            for (p, q), d in self.delta_mono(x).items():
                _acc(out, (p, q, y), c * d)
        return Tensor3(self.table, out)

    def delta_right(self, J: TensorElement) -> Tensor3:
        """(1 (x) Delta) J."""
        out = {}
        for (x, y), c in J.terms.items():
            for (p, q), d in self.delta_mono(y).items():
                _acc(out, (x, p, q), c * d)
        return Tensor3(self.table, out)

    # -- twists --------------------------------------------------------------
    def twist_defect(self, J: TensorElement) -> Tensor3:
        """(Delta (x) 1)(J)(J (x) 1) - (1 (x) Delta)(J)(1 (x) J)."""
        lhs = self.delta_left(J) * Tensor3.embed(J, "left")
        rhs = self.delta_right(J) * Tensor3.embed(J, "right")
        return lhs - rhs

    def is_twist(self, J: TensorElement):
        """(ok, certificate); certificate names the first violated tridegree or counit."""
        require_unit(J)
        t = self.table
        one = AlgebraElement.one(t)
        if J.counit_left() != one:
            return False, {"violation": "counit_left"}
        if J.counit_right() != one:
            return False, {"violation": "counit_right"}
        defect = self.twist_defect(J)
        if defect:
            keys = sorted(defect.terms, key=lambda k: (sum(defect.total_degree(k)), defect.tridegree(k)))
            return False, {"violation": "cocycle", "tridegree": [list(d) for d in defect.tridegree(keys[0])]}
        return True, None

    def unit_inverse(self, v: AlgebraElement) -> AlgebraElement:
        return algebra_inverse(v)

    def gauge(self, v: AlgebraElement, J: TensorElement, v_inv: AlgebraElement = None) -> TensorElement:
        """Delta'(v) J (v^{-1} (x) v^{-1})."""
        if v_inv is None:
            v_inv = algebra_inverse(v)
        out = self.delta(v) * J
        out = out.right_mult(v_inv, 0)
        out = out.right_mult(v_inv, 1)
        return out

    def b_shift_conjugate(self, J: TensorElement) -> TensorElement:
        return TensorElement(self.table, self.conjugate_terms(J.terms))


def require_unit(J: TensorElement):
    z = J.degree_zero_part()
    if not z:
        raise NotAUnit("degree-(0,0) part vanishes")
    from .groupalg import tensor_group_values

    vals = tensor_group_values(z)
    if any(not x for x in vals.values()):
        raise NotAUnit("degree-(0,0) part is not invertible in C[G] (x) C[G]")


def algebra_inverse(v: AlgebraElement) -> AlgebraElement:
    """Inverse of v = v0 + n with v0 an invertible grouplike combination and n nilpotent."""
    from .groupalg import group_inverse

    t = v.table
    v0 = v.degree_zero_part()
    if not v0:
        raise NotAUnit("element has no grouplike part")
    v0inv = group_inverse(v0)
    n = v - v0
    if not n:
        return v0inv
    # v^{-1} = sum_k (-v0^{-1} n)^k v0^{-1}
    x = -(v0inv * n)
    out = AlgebraElement.one(t)
    power = AlgebraElement.one(t)
    for _ in range(t.max_height + 1):
        power = power * x
        if not power:
            break
        out = out + power
    else:
        if power:
            raise NotAUnit("positive part is not nilpotent within the truncation")
    return out * v0inv


def exp_nilpotent(x: AlgebraElement) -> AlgebraElement:
    """exp(x) for x of positive Q-degree (a finite sum)."""
    t = x.table
    out = AlgebraElement.one(t)
    power = AlgebraElement.one(t)
    k = 0
    while True:
        k += 1
        power = (power * x).scale(CycScalar.from_rational(t.l, mpq(1, k)))
        if not power:
            break
        out = out + power
        if k > t.max_height + 1:
            raise UqTwistError("exponential did not terminate")
    return out


# ---------------------------------------------------------------------------
# twisted automorphism pairs


@dataclass
class TwistedAut:
    """A pair (phi, J): phi an algebra automorphism given by a callable on
    elements, J a twist such that phi : u_q -> u_q^J is a Hopf map."""

    phi: object
    J: TensorElement

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        return self.phi(x)


def twisted_aut_compose(p1: TwistedAut, p2: TwistedAut, frame: HopfFrame) -> TwistedAut:
    """(phi1, J1)(phi2, J2) = (phi1 phi2, J1 * phi1^{(x)2}(J2))."""
    t = frame.table

    def phi(x, f1=p1.phi, f2=p2.phi):
        return f1(f2(x))

    def mono_image(m, f=p1.phi):
        return f(AlgebraElement(t, {m: t.one})).terms

    J = p1.J * p2.J.apply(mono_image)
    return TwistedAut(phi, J)


def is_hopf_map_into_twisted(pair: TwistedAut, frame: HopfFrame, generators) -> bool:
    """Delta^J(phi(x)) == (phi (x) phi)(Delta x) on the given generators."""
    t = frame.table
    Jinv = tensor_inverse(pair.J)

    def mono_image(m):
        return pair.phi(AlgebraElement(t, {m: t.one})).terms

    for x in generators:
        lhs = Jinv * frame.delta(pair.phi(x)) * pair.J
        rhs = frame.delta(x).apply(mono_image)
        if lhs != rhs:
            return False
    return True


def tensor_inverse(J: TensorElement) -> TensorElement:
    """Inverse of J = J0 + N with J0 invertible in C[G] (x) C[G] and N nilpotent."""
    from .groupalg import tensor_group_inverse

    t = J.table
    J0 = J.degree_zero_part()
    J0inv = tensor_group_inverse(J0)
    N = J - J0
    if not N:
        return J0inv
    x = -(J0inv * N)
    out = TensorElement.one(t)
    power = TensorElement.one(t)
    for _ in range(2 * t.max_height + 2):
        power = power * x
        if not power:
            break
        out = out + power
    return out * J0inv
