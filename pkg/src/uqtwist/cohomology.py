"""Q-graded cobar complexes of u_q^B and of the truncated big algebra.

Two views of the same cohomology are provided.

* Absolute cochains C^1 = H, C^2 = H (x) H, C^3 = H (x) H (x) H with
  d1(v) = 1 (x) v - Delta(v) + v (x) 1 and
  d2(J) = 1 (x) J - (Delta (x) 1) J + (1 (x) Delta) J - J (x) 1.
  Used for cocycle checks and bounding solves on concrete twist terms.

* The cobar complex relative to the coradical C[G].  Every PBW monomial x
  of positive degree is homogeneous for the two C[G]-coactions, with
  left and right grades L(x), R(x) read off the coradical components of
  Delta^B(x).  A relative k-cochain is a chain x_1 (x) ... (x) x_k with
  L(x_1) = 0, R(x_i) = L(x_{i+1}) and R(x_k) = 0, and the differential
  only uses the reduced coproduct.  C[G] is cosemisimple, so this complex
  computes the same cohomology, with far smaller slices; it is used for the
  dimension tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .engine import SMALL, AlgebraElement, StructureTable, _acc
from .errors import EngineError, NotACocycle
from .linalg import Echelon
from .tensor import HopfFrame, Tensor3, TensorElement

# ---------------------------------------------------------------------------
# absolute differentials


def cobar_d1(frame: HopfFrame, v: AlgebraElement) -> TensorElement:
    t = frame.table
    one = AlgebraElement.one(t)
    return TensorElement.from_pair(one, v) - frame.delta(v) + TensorElement.from_pair(v, one)


def cobar_d2(frame: HopfFrame, J: TensorElement) -> Tensor3:
    return (Tensor3.embed(J, "right") - frame.delta_left(J) + frame.delta_right(J)
            - Tensor3.embed(J, "left"))


def _homogeneous(x):
    comps = x.degree_components()
    if len(comps) > 1:
        raise ValueError("input is not Q-homogeneous")
    return next(iter(comps)) if comps else None


def d1_columns(frame: HopfFrame, gamma):
    """{monomial: d1(monomial)} for all monomials of Q-degree gamma."""
    t = frame.table
    one = (t.zero_k, t.zero_e)
    cols = {}
    for n in t.e_monomials(degree=tuple(gamma)):
        for a in t.k_vectors():
            x = (a, n)
            col = {(one, x): t.one, (x, one): t.one}
            for key, c in frame.delta_mono(x).items():
                _acc(col, key, -c)
            cols[x] = col
    return cols


def solve_bounding(frame: HopfFrame, J_gamma: TensorElement, unique=None, check=True):
    """Some v with d1(v) = J_gamma, or None when the class is nonzero.

    Raises NotACocycle if J_gamma is not closed.  With unique=True (the
    default on the big side) the solution is asserted to be unique.
    """
    gamma = _homogeneous(J_gamma)
    t = frame.table
    if gamma is None:
        return AlgebraElement.zero(t)
    if check and cobar_d2(frame, J_gamma):
        raise NotACocycle("term of degree %r is not a 2-cocycle" % (gamma,))
    if unique is None:
        unique = t.kind != SMALL
    ech = Echelon(track=True)
    for x, col in d1_columns(frame, gamma).items():
        ech.add(col, x)
    if unique and ech.relations:
        raise EngineError("bounding element in degree %r is not unique" % (gamma,))
    combo = ech.express(J_gamma.terms)
    if combo is None:
        return None
    return AlgebraElement(t, combo)


def express_class(frame: HopfFrame, J_gamma: TensorElement, reps):
    """(coefficients c, v) with J_gamma = sum_i c_i reps[i] + d1(v), or None."""
    gamma = _homogeneous(J_gamma)
    t = frame.table
    ech = Echelon(track=True)
    for x, col in d1_columns(frame, gamma).items():
        ech.add(col, ("v", x))
    for i, r in enumerate(reps):
        ech.add(r.terms, ("c", i))
    combo = ech.express(J_gamma.terms)
    if combo is None:
        return None
    coeffs = [combo.get(("c", i), t.zero) for i in range(len(reps))]
    v = AlgebraElement(t, {x: c for (tag, x), c in combo.items() if tag == "v"})
    return coeffs, v


def absolute_h1(frame: HopfFrame, gamma) -> int:
    """dim of the primitive elements of degree gamma, i.e. the kernel of d1."""
    ech = Echelon(track=True)
    for x, col in d1_columns(frame, gamma).items():
        ech.add(col, x)
    return len(ech.relations)


# ---------------------------------------------------------------------------
# exact ranks, with an optional modular shortcut


def _next_prime_1_mod(l, start):
    p = start - (start % l) + 1
    while True:
        if p > start and _is_prime(p):
            return p
        p += l


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class ModularImage:
    """Ring map Z[zeta_l][1/d] -> F_p for a prime p = 1 mod l.

    Ranks can only drop under this map, so rank_p is a lower bound for the
    exact rank; a modular computation showing H = 0 is therefore a proof.
    """

    def __init__(self, l, start=(1 << 31)):
        self.l = l
        self.p = _next_prime_1_mod(l, start)
        p = self.p
        for g in range(2, p):
            w = pow(g, (p - 1) // l, p)
            # primitive l-th root: w^(l/r) != 1 for every prime r | l
            if all(pow(w, l // r, p) != 1 for r in _prime_factors(l)):
                self.omega = w
                break
        from .scalars import field

        self.deg = field(l).deg
        self.pows = [pow(self.omega, j, p) for j in range(self.deg)]

    def __call__(self, x):
        p = self.p
        if x.d % p == 0:
            raise ArithmeticError("denominator divisible by the modulus")
        s = 0
        for c, w in zip(x.c, self.pows):
            if c:
                s += c * w
        return s * pow(x.d, -1, p) % p


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def rank_mod_p(columns, image: ModularImage) -> int:
    """Rank of a list of sparse vectors after reduction mod p."""
    p = image.p
    pivots = {}
    r = 0
    for col in columns:
        v = {}
        for k, c in col.items():
            x = image(c)
            if x:
                v[k] = x
        while v:
            k = min(v)
            if k in pivots:
                row = pivots[k]
                f = v[k]
                for kk, y in row.items():
                    z = (v.get(kk, 0) - f * y) % p
                    if z:
                        v[kk] = z
                    else:
                        v.pop(kk, None)
            else:
                inv = pow(v[k], -1, p)
                pivots[k] = {kk: y * inv % p for kk, y in v.items()}
                r += 1
                break
    return r


def rank_exact(columns) -> int:
    ech = Echelon()
    for col in columns:
        ech.add(col)
    return ech.rank


# ---------------------------------------------------------------------------
# relative complex


@dataclass
class CobarSlice:
    gamma: tuple
    dims: tuple                    # (dim C^1, dim C^2, dim C^3)
    rank_d1: int
    rank_d2: int
    exact: bool                    # ranks computed over Q(zeta) rather than certified mod p
    d2d1_zero: bool = True
    info: dict = dc_field(default_factory=dict)

    @property
    def h1(self):
        return self.dims[0] - self.rank_d1

    @property
    def h2(self):
        return self.dims[1] - self.rank_d2 - self.rank_d1


class RelativeCobar:
    """Relative cobar complex of the frame's Hopf algebra, slice by slice."""

    def __init__(self, frame: HopfFrame):
        self.frame = frame
        self.table = frame.table
        self.l = frame.table.l
        t = self.table
        self._grades = {}
        self._reduced = {}
        self._monos_by_degree = {}
        for n in t.e_monomials():
            if any(n):
                self._monos_by_degree.setdefault(t.e_degree(n), []).append(n)
        self.degrees = sorted(self._monos_by_degree)

    # -- grades and reduced coproduct ----------------------------------------
    def grades(self, n):
        """(L, R) for E^n; K^a E^n has grades (a + L, a + R)."""
        hit = self._grades.get(n)
        if hit is not None:
            return hit
        t = self.table
        x = (t.zero_k, n)
        L = R = None
        for (u, w), c in self.frame.delta_mono(x).items():
            if not any(u[1]) and w == x:
                if L is not None or not c.is_one():
                    raise EngineError("left coradical component of %r is not a grouplike" % (n,))
                L = u[0]
            if not any(w[1]) and u == x:
                if R is not None or not c.is_one():
                    raise EngineError("right coradical component of %r is not a grouplike" % (n,))
                R = w[0]
        if L is None or R is None:
            raise EngineError("monomial %r has no coradical components" % (n,))
        self._grades[n] = (L, R)
        return L, R

    def reduced(self, n):
        """Terms of Delta^B(E^n) with both factors of positive degree."""
        hit = self._reduced.get(n)
        if hit is None:
            t = self.table
            hit = {k: c for k, c in self.frame.delta_mono((t.zero_k, n)).items()
                   if any(k[0][1]) and any(k[1][1])}
            self._reduced[n] = hit
        return hit

    def degree_grades(self, gamma):
        """(L, R) of any monomial of degree gamma; both are additive in gamma."""
        t = self.table
        l = self.l
        L = [0] * t.rank
        R = [0] * t.rank
        for i, g in enumerate(gamma):
            if g:
                Li, Ri = self.grades(t.e_vector(t.simple_root_index(i), 1))
                for j in range(t.rank):
                    L[j] += g * Li[j]
                    R[j] += g * Ri[j]
        return tuple(x % l for x in L), tuple(x % l for x in R)

    def admits(self, gamma) -> bool:
        """Whether relative cochains of total degree gamma can exist (L = R on gamma)."""
        L, R = self.degree_grades(gamma)
        return L == R

    # -- bases -----------------------------------------------------------------
    def compositions(self, gamma, k):
        """Ordered k-tuples of nonzero degrees carrying monomials, summing to gamma."""
        gamma = tuple(gamma)
        out = []

        def rec(rem, parts):
            if len(parts) == k - 1:
                if rem in self._monos_by_degree:
                    out.append(tuple(parts) + (rem,))
                return
            for d in self.degrees:
                if all(a <= b for a, b in zip(d, rem)) and d != rem:
                    rec(tuple(b - a for a, b in zip(d, rem)), parts + [d])

        rec(gamma, [])
        return out

    def basis(self, gamma, k):
        """Relative k-cochains of degree gamma, as tuples of E-monomials."""
        if not self.admits(gamma):
            return []
        out = []
        for comp in self.compositions(gamma, k):
            out.extend(itertools.product(*(self._monos_by_degree[d] for d in comp)))
        return out

    def k_parts(self, chain):
        """Grouplike exponents a_i making K^{a_i} E^{n_i} a relative cochain."""
        l = self.l
        right = tuple(0 for _ in range(self.table.rank))
        out = []
        for n in chain:
            L, R = self.grades(n)
            a = tuple((x - y) % l for x, y in zip(right, L))
            out.append(a)
            right = tuple((x + y) % l for x, y in zip(a, R))
        if any(right):
            raise EngineError("chain %r does not close" % (chain,))
        return out

    # -- differentials ---------------------------------------------------------
    def _reduced_pairs(self, n):
        """Reduced coproduct of E^n as {(p, q): c}; grouplike parts are implied by the grades."""
        out = {}
        for ((b, p), (c2, q)), c in self.reduced(n).items():
            _acc(out, (p, q), c)
        return out

    def d1(self, chain):
        (n,) = chain
        return {k: -c for k, c in self._reduced_pairs(n).items()}

    def d2(self, chain):
        x, y = chain
        out = {}
        for (p, q), c in self._reduced_pairs(x).items():
            _acc(out, (p, q, y), -c)
        for (p, q), c in self._reduced_pairs(y).items():
            _acc(out, (x, p, q), c)
        return out

    def slice(self, gamma, exact="auto", image: ModularImage = None) -> CobarSlice:
        gamma = tuple(gamma)
        b1 = self.basis(gamma, 1)
        b2 = self.basis(gamma, 2)
        b3 = self.basis(gamma, 3)
        dims = (len(b1), len(b2), len(b3))
        if not b1 and not b2:
            return CobarSlice(gamma, dims, 0, 0, True)
        cols1 = [self.d1(c) for c in b1]
        cols2 = [self.d2(c) for c in b2]
        # d2 d1 = 0
        ok = True
        for col in cols1:
            acc = {}
            for chain, c in col.items():
                for k, e in self.d2(chain).items():
                    _acc(acc, k, c * e)
            if acc:
                ok = False
                break
        if exact == "auto":
            image = image or ModularImage(self.l)
            r1p = rank_mod_p(cols1, image)
            r2p = rank_mod_p(cols2, image)
            if len(b1) - r1p == 0 and len(b2) - r1p - r2p == 0:
                return CobarSlice(gamma, dims, r1p, r2p, False, ok, {"modulus": image.p})
            exact = True
        if exact:
            return CobarSlice(gamma, dims, rank_exact(cols1), rank_exact(cols2), True, ok)
        image = image or ModularImage(self.l)
        return CobarSlice(gamma, dims, rank_mod_p(cols1, image), rank_mod_p(cols2, image), False, ok,
                          {"modulus": image.p})

    def h2_representatives(self, gamma):
        """Relative cocycles spanning a complement of im d1 in ker d2 (deterministic)."""
        b1 = self.basis(gamma, 1)
        b2 = self.basis(gamma, 2)
        ker = Echelon(track=True)
        for c in b2:
            ker.add(self.d2(c), c)
        image = Echelon()
        for c in b1:
            image.add(self.d1(c))
        reps = []
        for rel in ker.relations:
            vec = {k: v for k, v in rel.items() if v}
            if image.add(vec):
                reps.append(vec)
        return reps

    def to_absolute(self, chain_vector):
        """Embed a relative 2-cochain as an element of H (x) H."""
        t = self.table
        out = {}
        for chain, c in chain_vector.items():
            a1, a2 = self.k_parts(chain)
            _acc(out, ((a1, chain[0]), (a2, chain[1])), c)
        return TensorElement(t, out)

    def scan_degrees(self, max_height=None):
        """All degrees gamma with possibly nonzero C^1 or C^2, within the height bound."""
        t = self.table
        top = tuple((t.l - 1) * sum(d[i] for d in t.degrees) for i in range(t.rank))
        if t.kind == SMALL:
            box = tuple(2 * x for x in top)
        else:
            box = tuple(t.max_height for _ in range(t.rank))
        H = max_height if max_height is not None else (sum(box) if t.kind == SMALL else t.max_height)
        out = []
        for g in itertools.product(*(range(b + 1) for b in box)):
            if any(g) and sum(g) <= H and self.admits(g):
                out.append(g)
        return out


def h_dims(frame: HopfFrame, gamma, exact="auto"):
    """(dim H^1_gamma, dim H^2_gamma) via the relative complex."""
    s = RelativeCobar(frame).slice(gamma, exact=exact)
    return s.h1, s.h2


def cohomology_table(frame: HopfFrame, max_height=None, exact="auto"):
    """List of CobarSlice for every admissible degree within the bound."""
    rc = RelativeCobar(frame)
    image = ModularImage(frame.table.l)
    return [rc.slice(g, exact=exact, image=image) for g in rc.scan_degrees(max_height)]


def small_support_prediction(table: StructureTable):
    return {tuple(table.l * x for x in mu) for mu in table.degrees}


def to_big(J: TensorElement, big: StructureTable) -> TensorElement:
    """Rewrite a small-algebra tensor in the divided-power basis of the big algebra.

    E^n = [n]! E^{(n)} with [n]! = prod_k [n_k]_{q_k}! evaluated at zeta.
    """
    from .dp import small_dp_factor

    t = J.table
    out = {}
    for ((a, n), (b, m)), c in J.terms.items():
        _acc(out, ((a, n), (b, m)), c * small_dp_factor(t, n) * small_dp_factor(t, m))
    return TensorElement(big, out)
