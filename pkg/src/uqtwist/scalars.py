"""Exact scalars: the cyclotomic field Q(zeta_l) and the generic field Q(v).

``CycScalar`` stores coordinates in the power basis of Q[x]/Phi_l(x), so two
equal scalars always carry identical coefficient tuples.  ``GenericScalar`` is
a ratio of integer Laurent polynomials in ``v``; ``specialize`` sends
``v -> zeta_l``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from .errors import SpecializationPole

# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a):
    return [-x for x in a]


def _pdivmod_exact(a, b):
    """Division of integer polys; raises ValueError if not exact over Z."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c == 0:
            continue
        if c % lead:
            raise ValueError("inexact division")
        t = c // lead
        q[i] = t
        for j, y in enumerate(b):
            a[i + j] -= t * y
    return _trim(q), _trim(a)


def _content(p):
    g = 0
    for x in p:
        g = gcd(g, x)
    return g


def _primitive(p):
    g = _content(p)
    if g == 0:
        return []
    if p[-1] < 0:
        g = -g
    return [x // g for x in p]


def _prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1]
        shift = len(a) - len(b)
        a = [x * lead for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a = _trim(a)
    return a


def _pgcd(a, b):
    a, b = _primitive(_trim(a)), _primitive(_trim(b))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return a


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, r = _pdivmod_exact(p, list(cyclotomic_poly(d)))
            assert not r
    return tuple(p)


# ---------------------------------------------------------------------------
# cyclotomic field


class _Field:
    """Power-basis arithmetic in Z[x]/Phi_l(x) on integer coordinate tuples."""

    __slots__ = ("l", "deg", "phi", "red", "zero", "one", "powers", "prime", "mono")

    def __init__(self, l):
        self.l = l
        self.phi = cyclotomic_poly(l)
        self.deg = d = len(self.phi) - 1
        # red[k] = coordinates of x^k for k < 2d (Phi_l is monic with integer coefficients)
        red = []
        for k in range(2 * d):
            if k < d:
                v = [0] * d
                v[k] = 1
            else:
                prev = red[k - 1]
                top = prev[d - 1]
                v = [0] + list(prev[: d - 1])
                if top:
                    for i in range(d):
                        v[i] -= top * self.phi[i]
            red.append(tuple(v))
        self.red = red
        self.zero = (0,) * d
        self.one = red[0]
        pw = [self.one]
        for k in range(1, l):
            pw.append(self.shift(pw[-1], 1))
        self.powers = pw
        self.prime = d == l - 1
        # +-zeta^k by coordinates
        mono = {}
        for k, v in enumerate(pw):
            mono[v] = (1, k)
            mono[tuple(-x for x in v)] = (-1, k)
        self.mono = mono

    def mul_zeta(self, a, k):
        """a * zeta^k."""
        if not k:
            return a
        if self.prime:
            l = self.l
            e = a + (0,)
            e = e[l - k:] + e[: l - k]
            t = e[l - 1]
            if t:
                return tuple([x - t for x in e[: l - 1]])
            return e[: l - 1]
        return self.shift(a, k)

    def shift(self, a, k):
        """a * x^k for 0 <= k."""
        d = self.deg
        phi = self.phi
        v = list(a)
        for _ in range(k):
            top = v[d - 1]
            v = [0] + v[: d - 1]
            if top:
                for i in range(d):
                    v[i] -= top * phi[i]
        return tuple(v)

    def mul(self, a, b):
        d = self.deg
        conv = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        red = self.red
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                r = red[k]
                for i in range(d):
                    if r[i]:
                        out[i] += c * r[i]
        return tuple(out)


@lru_cache(maxsize=None)
def field(l: int) -> _Field:
    return _Field(l)


def _normalize(c, d):
    """Canonical (coords, den) with den > 0 and gcd(coords, den) = 1."""
    if d == 1:
        return c, 1
    if d < 0:
        c = tuple(-x for x in c)
        d = -d
    g = d
    for x in c:
        if x:
            g = gcd(g, x)
            if g == 1:
                return c, d
    if not any(c):
        return c, 1
    return tuple(x // g for x in c), d // g


class CycScalar:
    """Element of Q(zeta_l), zeta_l = exp(2 pi i / l).

    Stored as integer power-basis coordinates ``c`` over a positive common
    denominator ``d`` in lowest terms, so equal scalars have identical data.
    """

    __slots__ = ("l", "c", "d", "_h", "_m")

    def __init__(self, l, coeffs, den=1):
        self.l = l
        if den == 1 and type(coeffs) is tuple:
            self.c, self.d = coeffs, 1
        else:
            self.c, self.d = _normalize(tuple(coeffs), den)
        self._h = None
        self._m = None

    @classmethod
    def _raw(cls, l, c, d):
        r = cls.__new__(cls)
        r.l, r.c, r.d, r._h, r._m = l, c, d, None, None
        return r

    def _monomial(self):
        """(sign, k) if self == sign * zeta^k, else False."""
        m = self._m
        if m is None:
            m = field(self.l).mono.get(self.c, False) if self.d == 1 else False
            self._m = m
        return m

    # constructors
    @classmethod
    def from_int(cls, l, n):
        f = field(l)
        return cls._raw(l, (int(n),) + f.zero[1:], 1)

    @classmethod
    def from_rational(cls, l, x):
        f = field(l)
        x = mpq(x)
        return cls(l, (int(x.numerator),) + f.zero[1:], int(x.denominator))

    @classmethod
    def from_coords(cls, l, coords):
        """From rational power-basis coordinates."""
        qs = [mpq(x) for x in coords]
        den = 1
        for x in qs:
            den = den * int(x.denominator) // gcd(den, int(x.denominator))
        return cls(l, tuple(int(x * den) for x in qs), den)

    @classmethod
    def zeta(cls, l, k=1):
        return cls._raw(l, field(l).powers[k % l], 1)

    @classmethod
    def zero(cls, l):
        return cls._raw(l, field(l).zero, 1)

    @classmethod
    def one(cls, l):
        return cls._raw(l, field(l).one, 1)

    @property
    def coords(self):
        """Rational power-basis coordinates."""
        return tuple(mpq(x, self.d) for x in self.c)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.l != self.l:
                raise TypeError("scalars from different cyclotomic fields")
            return other
        if isinstance(other, int):
            return CycScalar.from_int(self.l, other)
        if isinstance(other, mpq) or hasattr(other, "numerator"):
            return CycScalar.from_rational(self.l, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.d == 1 and o.d == 1:
            return CycScalar._raw(self.l, tuple([x + y for x, y in zip(self.c, o.c)]), 1)
        d1, d2 = self.d, o.d
        return CycScalar(self.l, tuple([x * d2 + y * d1 for x, y in zip(self.c, o.c)]), d1 * d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.d == 1 and o.d == 1:
            return CycScalar._raw(self.l, tuple([x - y for x, y in zip(self.c, o.c)]), 1)
        d1, d2 = self.d, o.d
        return CycScalar(self.l, tuple([x * d2 - y * d1 for x, y in zip(self.c, o.c)]), d1 * d2)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return CycScalar._raw(self.l, tuple([-x for x in self.c]), self.d)

    def __mul__(self, other):
        if isinstance(other, CycScalar):
            if other.l != self.l:
                raise TypeError("scalars from different cyclotomic fields")
            f = field(self.l)
            m = other._monomial()
            if m:
                c = f.mul_zeta(self.c, m[1])
                if m[0] < 0:
                    c = tuple([-x for x in c])
                return CycScalar._raw(self.l, c, self.d)
            m = self._monomial()
            if m:
                c = f.mul_zeta(other.c, m[1])
                if m[0] < 0:
                    c = tuple([-x for x in c])
                return CycScalar._raw(self.l, c, other.d)
            c = f.mul(self.c, other.c)
            if self.d == 1 and other.d == 1:
                return CycScalar._raw(self.l, c, 1)
            return CycScalar(self.l, c, self.d * other.d)
        if isinstance(other, int):
            return CycScalar(self.l, tuple([y * other for y in self.c]), self.d)
        if isinstance(other, mpq) or hasattr(other, "numerator"):
            x = mpq(other)
            return CycScalar(
                self.l, tuple([y * int(x.numerator) for y in self.c]), self.d * int(x.denominator)
            )
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        f = field(self.l)
        d = f.deg
        # solve (self * y) = 1 with y in the power basis, exactly over Q
        cols = []
        cur = self.c
        for j in range(d):
            cols.append(cur)
            cur = f.shift(cur, 1)
        rows = [[mpq(cols[j][i]) for j in range(d)] + [mpq(1 if i == 0 else 0)] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if rows[r][col] != 0)
            rows[col], rows[piv] = rows[piv], rows[col]
            inv = 1 / rows[col][col]
            rows[col] = [x * inv for x in rows[col]]
            for r in range(d):
                if r != col and rows[r][col] != 0:
                    t = rows[r][col]
                    rows[r] = [x - t * y for x, y in zip(rows[r], rows[col])]
        y = CycScalar.from_coords(self.l, [rows[i][d] for i in range(d)])
        if self.d != 1:
            y = y * self.d
        return y

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CycScalar.one(self.l)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.l == other.l and self.d == other.d and self.c == other.c
        if isinstance(other, (int, mpq)) or hasattr(other, "numerator"):
            o = CycScalar.from_rational(self.l, other)
            return self.c == o.c and self.d == o.d
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.l, self.c, self.d))
        return self._h

    def __bool__(self):
        return any(self.c)

    def is_zero(self):
        return not any(self.c)

    def is_one(self):
        return self.d == 1 and self.c == field(self.l).one

    def is_rational(self):
        return not any(self.c[1:])

    def root_of_unity_log(self):
        """k with self == zeta^k, or None."""
        if self.d != 1:
            return None
        pw = field(self.l).powers
        for k in range(self.l):
            if pw[k] == self.c:
                return k
        return None

    def to_json(self):
        out = []
        for x in self.c:
            q = mpq(x, self.d)
            out.append([int(q.numerator), int(q.denominator)])
        return out

    @classmethod
    def from_json(cls, l, data):
        if len(data) != field(l).deg:
            raise ValueError("wrong number of power-basis coordinates")
        return cls.from_coords(l, [mpq(int(n), int(d)) for n, d in data])

    def approx(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.l)
        return sum(x * z ** i for i, x in enumerate(self.c)) / self.d

    def __repr__(self):
        terms = []
        for i, x in enumerate(self.c):
            if x:
                q = mpq(x, self.d)
                s = str(q) if i == 0 else ("%s*z^%d" % (q, i) if q != 1 else "z^%d" % i)
                terms.append(s)
        return "Cyc%d(%s)" % (self.l, " + ".join(terms) if terms else "0")


# ---------------------------------------------------------------------------
# Laurent polynomials and the generic field Q(v)


class Laurent:
    """Integer Laurent polynomial sum c_i v^(shift+i)."""

    __slots__ = ("shift", "c")

    def __init__(self, shift=0, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        self.c = tuple(coeffs[k:])
        self.shift = shift + k if self.c else 0

    @classmethod
    def const(cls, n):
        return cls(0, (n,))

    @classmethod
    def mono(cls, e, n=1):
        return cls(e, (n,))

    def is_zero(self):
        return not self.c

    def __add__(self, o):
        if not self.c:
            return o
        if not o.c:
            return self
        s = min(self.shift, o.shift)
        n = max(self.shift + len(self.c), o.shift + len(o.c)) - s
        out = [0] * n
        for i, x in enumerate(self.c):
            out[self.shift - s + i] += x
        for i, x in enumerate(o.c):
            out[o.shift - s + i] += x
        return Laurent(s, out)

    def __neg__(self):
        return Laurent(self.shift, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return Laurent(self.shift, [x * o for x in self.c])
        if not self.c or not o.c:
            return Laurent()
        return Laurent(self.shift + o.shift, _pmul(self.c, o.c))

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, Laurent) and self.shift == o.shift and self.c == o.c

    def __hash__(self):
        return hash((self.shift, self.c))

    def evaluate(self, l):
        f = field(l)
        acc = [0] * f.deg
        for i, x in enumerate(self.c):
            if x:
                p = f.powers[(self.shift + i) % l]
                for j in range(f.deg):
                    if p[j]:
                        acc[j] += x * p[j]
        return CycScalar(l, tuple(acc))

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join("%d*v^%d" % (x, self.shift + i) for i, x in enumerate(self.c) if x)


class GenericScalar:
    """Element num/den of Q(v); num, den integer Laurent polynomials.

    Kept reduced: the denominator is a polynomial with nonzero constant term
    and positive leading coefficient, and gcd(num, den) = 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = Laurent.const(num)
        if den is None:
            self.num, self.den = num, Laurent.const(1)
            return
        if isinstance(den, int):
            den = Laurent.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(v)")
        if num.is_zero():
            self.num, self.den = Laurent(), Laurent.const(1)
            return
        # move the denominator's monomial shift into the numerator
        shift = num.shift - den.shift
        n, d = list(num.c), list(den.c)
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n, _ = _pdivmod_exact(n, g)
                d, _ = _pdivmod_exact(d, g)
        cn, cd = _content(n), _content(d)
        g = gcd(cn, cd)
        if d[-1] < 0:
            g = -g
        n = [x // g for x in n]
        d = [x // g for x in d]
        self.num = Laurent(shift, n)
        self.den = Laurent(0, d)

    @classmethod
    def v(cls, e=1):
        return cls(Laurent.mono(e))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def _c(self, o):
        if isinstance(o, GenericScalar):
            return o
        if isinstance(o, int):
            return GenericScalar(o)
        if isinstance(o, Laurent):
            return GenericScalar(o)
        return NotImplemented

    def __add__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return GenericScalar(self.num + o.num, self.den)
        return GenericScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = GenericScalar.__new__(GenericScalar)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        if self.den.c == (1,) and o.den.c == (1,):
            r = GenericScalar.__new__(GenericScalar)
            r.num, r.den = self.num * o.num, self.den
            return r
        return GenericScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(v)")
        return GenericScalar(self.den, self.num)

    def __truediv__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = GenericScalar(1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, o):
        o = self._c(o)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.c == (1,):
            return "Gen(%r)" % (self.num,)
        return "Gen((%r)/(%r))" % (self.num, self.den)


def specialize(x: GenericScalar, l: int) -> CycScalar:
    """Image of x under v -> zeta_l."""
    if isinstance(x, int):
        return CycScalar.from_int(l, x)
    d = x.den.evaluate(l)
    if d.is_zero():
        raise SpecializationPole("denominator vanishes at zeta_%d" % l)
    n = x.num.evaluate(l)
    if d.is_one():
        return n
    return n / d


# ---------------------------------------------------------------------------
# q-numbers (generic values are Laurent polynomials)


@lru_cache(maxsize=None)
def q_int_laurent(n: int, power: int = 1) -> Laurent:
    """[n]_{v^power} = (v^{pn} - v^{-pn}) / (v^p - v^{-p})."""
    if n == 0:
        return Laurent()
    if n < 0:
        return -q_int_laurent(-n, power)
    out = Laurent()
    for k in range(n):
        out = out + Laurent.mono(power * (n - 1 - 2 * k))
    return out


@lru_cache(maxsize=None)
def q_factorial_laurent(n: int, power: int = 1) -> Laurent:
    out = Laurent.const(1)
    for k in range(1, n + 1):
        out = out * q_int_laurent(k, power)
    return out


@lru_cache(maxsize=None)
def q_binomial_laurent(n: int, m: int, power: int = 1) -> Laurent:
    if m < 0 or m > n:
        return Laurent()
    if m == 0 or m == n:
        return Laurent.const(1)
    # [n m] = v^{p m} [n-1 m] + v^{p(m-n)} [n-1 m-1]
    return Laurent.mono(power * m) * q_binomial_laurent(n - 1, m, power) + Laurent.mono(
        power * (m - n)
    ) * q_binomial_laurent(n - 1, m - 1, power)


def _power_for(weight, D):
    if isinstance(weight, int):
        return weight
    if weight == "short":
        return 1
    if weight == "long":
        return D
    raise ValueError("weight must be 'short', 'long' or an integer power")


def q_int(n, weight="short", l=None, D=1):
    p = _power_for(weight, D)
    lp = q_int_laurent(n, p)
    return GenericScalar(lp) if l is None else lp.evaluate(l)


def q_factorial(n, weight="short", l=None, D=1):
    p = _power_for(weight, D)
    lp = q_factorial_laurent(n, p)
    return GenericScalar(lp) if l is None else lp.evaluate(l)


def q_binomial(n, m, weight="short", l=None, D=1):
    """Gaussian binomial [n choose m]_{q_alpha}; generic when l is None."""
    if m < 0 or n < 0 or m > n:
        raise ValueError("q_binomial needs 0 <= m <= n, got n=%d m=%d" % (n, m))
    p = _power_for(weight, D)
    lp = q_binomial_laurent(n, m, p)
    return GenericScalar(lp) if l is None else lp.evaluate(l)
