"""The grouplike group G = (Z/l)^rank inside u_q: characters, idempotents,
bilinear forms as twists of C[G], and normalization of degree-zero twists.

A character a takes K^g to zeta^{a.g}.  Elements of C[G] and C[G] (x) C[G]
are converted to and from their values on characters by a separable discrete
Fourier transform, which turns products into pointwise products.
"""

from __future__ import annotations

import itertools

from gmpy2 import mpq

from .engine import AlgebraElement, StructureTable
from .errors import UnsupportedDegreeZero
from .scalars import CycScalar
from .tensor import TensorElement


def characters(rank, l):
    return list(itertools.product(range(l), repeat=rank))


def _dft(values, dims, l, sign, table):
    """Separable transform over (Z/l)^dims: out[a] = sum_g values[g] zeta^{sign a.g}."""
    cur = dict(values)
    zero = table.zero
    for axis in range(dims):
        nxt = {}
        groups = {}
        for key, c in cur.items():
            rest = key[:axis] + key[axis + 1:]
            groups.setdefault(rest, []).append((key[axis], c))
        for rest, items in groups.items():
            for a in range(l):
                s = zero
                for g, c in items:
                    s = s + c * table.zeta(sign * a * g)
                if s:
                    nxt[rest[:axis] + (a,) + rest[axis:]] = s
        cur = nxt
    return cur


def group_values(v: AlgebraElement):
    """{character a: a(v)} for v in C[G]."""
    t = v.table
    z = t.zero_e
    coeffs = {}
    for (g, n), c in v.terms.items():
        if n != z:
            raise ValueError("element is not in C[G]")
        coeffs[g] = c
    vals = _dft(coeffs, t.rank, t.l, 1, t)
    return {a: vals.get(a, t.zero) for a in characters(t.rank, t.l)}


def group_from_values(table: StructureTable, values) -> AlgebraElement:
    """sum_a values[a] P_a expanded in the grouplike basis."""
    N = table.l ** table.rank
    coeffs = _dft({a: c for a, c in values.items() if c}, table.rank, table.l, -1, table)
    inv = CycScalar.from_rational(table.l, mpq(1, N))
    return AlgebraElement(table, {(g, table.zero_e): c * inv for g, c in coeffs.items()})


def group_inverse(v: AlgebraElement) -> AlgebraElement:
    vals = group_values(v)
    if any(not x for x in vals.values()):
        from .errors import NotAUnit

        raise NotAUnit("grouplike part is not invertible")
    return group_from_values(v.table, {a: 1 / x for a, x in vals.items()})


def tensor_group_values(J: TensorElement):
    """{(a, b): (a (x) b)(J)} for J in C[G] (x) C[G]."""
    t = J.table
    z = t.zero_e
    coeffs = {}
    for ((g, n), (h, m)), c in J.terms.items():
        if n != z or m != z:
            raise ValueError("tensor is not in C[G] (x) C[G]")
        coeffs[g + h] = c
    vals = _dft(coeffs, 2 * t.rank, t.l, 1, t)
    r = t.rank
    return {(k[:r], k[r:]): vals.get(k, t.zero) for k in itertools.product(range(t.l), repeat=2 * r)}


def tensor_group_from_values(table: StructureTable, values) -> TensorElement:
    r = table.rank
    N = table.l ** (2 * r)
    flat = {a + b: c for (a, b), c in values.items() if c}
    coeffs = _dft(flat, 2 * r, table.l, -1, table)
    inv = CycScalar.from_rational(table.l, mpq(1, N))
    z = table.zero_e
    return TensorElement(table, {((k[:r], z), (k[r:], z)): c * inv for k, c in coeffs.items()})


def tensor_group_inverse(J0: TensorElement) -> TensorElement:
    vals = tensor_group_values(J0)
    if any(not x for x in vals.values()):
        from .errors import NotAUnit

        raise NotAUnit("degree-zero part is not invertible")
    return tensor_group_from_values(J0.table, {k: 1 / x for k, x in vals.items()})


# ---------------------------------------------------------------------------


def idempotent(a, table: StructureTable) -> AlgebraElement:
    """P_a = (1/|G|) sum_g zeta^{-a.g} K^g."""
    a = tuple(x % table.l for x in a)
    return group_from_values(table, {a: table.one})


def form_value_exponent(M, a, b, l):
    return sum(a[i] * M[i][j] * b[j] for i in range(len(a)) for j in range(len(b))) % l


def form_to_twist(M, table: StructureTable) -> TensorElement:
    """B = sum_{a,b} zeta^{a^T M b} P_a (x) P_b, expanded (equals sum_a P_a (x) K^{M^T a})."""
    l = table.l
    chars = characters(table.rank, l)
    vals = {(a, b): table.zeta(form_value_exponent(M, a, b, l)) for a in chars for b in chars}
    return tensor_group_from_values(table, vals)


def is_alternating(M, l) -> bool:
    n = len(M)
    return all((M[i][j] + M[j][i]) % l == 0 for i in range(n) for j in range(n)) and all(
        M[i][i] % l == 0 for i in range(n)
    )


def enumerate_alternating(rank: int, l: int):
    """All alternating matrices over Z/l, in lexicographic order of upper entries."""
    slots = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    out = []
    for vals in itertools.product(range(l), repeat=len(slots)):
        M = [[0] * rank for _ in range(rank)]
        for (i, j), x in zip(slots, vals):
            M[i][j] = x
            M[j][i] = (-x) % l
        out.append(tuple(tuple(r) for r in M))
    return out


def antisymmetrization_matrix(s, rank, l):
    """Matrix A with A_ij = s(e_i, e_j) - s(e_j, e_i) for an additive cocycle s."""
    e = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    return [[(s[(e[i], e[j])] - s[(e[j], e[i])]) % l for j in range(rank)] for i in range(rank)]


def _solve_coboundary(sp, rank, l):
    """f with f(a) + f(b) - f(a+b) = sp(a, b) mod l and f(e_i) = 0, or None."""
    f = {(0,) * rank: sp[((0,) * rank, (0,) * rank)] % l}
    order = characters(rank, l)
    for a in order:
        if a in f:
            continue
        # step from the predecessor along the last nonzero coordinate
        i = max(k for k in range(rank) if a[k])
        prev = tuple(x - 1 if k == i else x for k, x in enumerate(a))
        ei = tuple(1 if k == i else 0 for k in range(rank))
        f[a] = (f[prev] + 0 - sp[(prev, ei)]) % l
    chars = order
    for a in chars:
        for b in chars:
            ab = tuple((x + y) % l for x, y in zip(a, b))
            if (f[a] + f[b] - f[ab] - sp[(a, b)]) % l:
                return None
    return f


def normalize_group_twist(J0: TensorElement, table: StructureTable = None):
    """(v, M) with v a unit of C[G], M alternating and v . J0 = form_to_twist(M).

    J0 must take l-th roots of unity as values on pairs of characters.
    """
    t = J0.table if table is None else table
    l = t.l
    r = t.rank
    vals = tensor_group_values(J0)
    s = {}
    for key, x in vals.items():
        k = x.root_of_unity_log()
        if k is None:
            raise UnsupportedDegreeZero("degree-zero twist has a value that is not an l-th root of unity")
        s[key] = k
    A = antisymmetrization_matrix(s, r, l)
    inv2 = pow(2, -1, l)
    M = tuple(tuple((A[i][j] * inv2) % l for j in range(r)) for i in range(r))
    sp = {(a, b): (s[(a, b)] - form_value_exponent(M, a, b, l)) % l for (a, b) in s}
    f = _solve_coboundary(sp, r, l)
    if f is None:
        raise UnsupportedDegreeZero("symmetric part is not a coboundary with l-th root of unity values")
    # (v . J0)(a, b) = v(a+b) J0(a, b) / (v(a) v(b)); v(a) = zeta^{f(a)}
    v = group_from_values(t, {a: t.zeta(f[a]) for a in f})
    return v, M


def gauge_group_twist(v: AlgebraElement, J0: TensorElement) -> TensorElement:
    """Gauge action on C[G] (x) C[G] computed pointwise on characters."""
    t = J0.table
    vv = group_values(v)
    jv = tensor_group_values(J0)
    l = t.l
    out = {}
    for (a, b), x in jv.items():
        ab = tuple((p + q) % l for p, q in zip(a, b))
        out[(a, b)] = vv[ab] * x / (vv[a] * vv[b])
    return tensor_group_from_values(t, out)


def random_group_unit(table: StructureTable, rnd) -> AlgebraElement:
    """Unit of C[G] with counit 1 whose character values are random l-th roots of unity."""
    vals = {a: table.zeta(rnd.randrange(table.l)) for a in characters(table.rank, table.l)}
    vals[(0,) * table.rank] = table.one
    return group_from_values(table, vals)


def matrix_to_json(M):
    return [list(map(int, r)) for r in M]


def form_left_multiply(M, F: TensorElement) -> TensorElement:
    """form_to_twist(M) * F, without expanding the form.

    With B = sum_a P_a (x) K^{M^T a} and P_a K^c = zeta^{a.c} P_a, each
    E-pair slice of F is transformed on the first grouplike factor, shifted
    on the second, and transformed back.
    """
    t = F.table
    l = t.l
    r = t.rank
    slices = {}
    for ((c, n), (d, m)), x in F.terms.items():
        slices.setdefault((n, m), {})[c + d] = x
    inv = CycScalar.from_rational(l, mpq(1, l ** r))
    out = {}
    for (n, m), f in slices.items():
        hat = _dft(f, r, l, 1, t)
        shifted = {}
        for key, x in hat.items():
            a, d = key[:r], key[r:]
            s = tuple((d[j] + sum(M[i][j] * a[i] for i in range(r))) % l for j in range(r))
            shifted[a + s] = x
        back = _dft(shifted, r, l, -1, t)
        for key, x in back.items():
            out[((key[:r], n), (key[r:], m))] = x * inv
    return TensorElement(t, out)


def group_unit_gauge(v: AlgebraElement, F: TensorElement, values=None) -> TensorElement:
    """Delta(v) F (v^{-1} (x) v^{-1}) for a unit v of C[G], slice by slice on characters.

    On the E-pair slice (n, m) the gauge is diagonal after the transform:
    R^(x, y) = V(x + y) V(x + s_n)^{-1} V(y + s_m)^{-1} F^(x, y), where V are
    the character values of v and s_n = -S deg(n) comes from moving K past E^n.
    Delta^B(v) = Delta(v) for grouplike combinations, so any frame may use this.
    """
    t = F.table
    l = t.l
    r = t.rank
    V = group_values(v) if values is None else values
    Vi = {a: 1 / x for a, x in V.items()}
    S = t.rd.sym
    slices = {}
    for ((c, n), (d, m)), x in F.terms.items():
        slices.setdefault((n, m), {})[c + d] = x
    inv = CycScalar.from_rational(l, mpq(1, l ** (2 * r)))
    shifts = {}

    def shift(n):
        s = shifts.get(n)
        if s is None:
            deg = t.e_degree(n)
            s = shifts[n] = tuple((-sum(S[i][j] * deg[j] for j in range(r))) % l for i in range(r))
        return s

    out = {}
    for (n, m), f in slices.items():
        sn, sm = shift(n), shift(m)
        hat = _dft(f, 2 * r, l, 1, t)
        for key in list(hat):
            x, y = key[:r], key[r:]
            xy = tuple((p + q) % l for p, q in zip(x, y))
            xs = tuple((p + q) % l for p, q in zip(x, sn))
            ys = tuple((p + q) % l for p, q in zip(y, sm))
            hat[key] = hat[key] * V[xy] * Vi[xs] * Vi[ys]
        back = _dft(hat, 2 * r, l, -1, t)
        for key, x in back.items():
            out[((key[:r], n), (key[r:], m))] = x * inv
    return TensorElement(t, out)
