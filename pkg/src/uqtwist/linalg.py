"""Sparse exact linear algebra over any field whose elements support + - * /
and truth testing.  Vectors are dicts key -> scalar with no zero entries."""

from __future__ import annotations


def axpy(out, a, vec):
    """out += a * vec, in place, dropping zeros."""
    for k, x in vec.items():
        y = out.get(k)
        if y is None:
            out[k] = a * x
        else:
            y = y + a * x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


def scale(a, vec):
    return {k: a * x for k, x in vec.items()} if a else {}


class Echelon:
    """Incrementally built, fully reduced echelon basis of a span of vectors.

    Each stored row has a pivot key with coefficient 1 and vanishes on all
    other pivot keys.  When ``track`` is set, every row also records how it is
    combined from the tagged input vectors, which gives solutions and kernels.
    """

    def __init__(self, track=False, one=None):
        self.track = track
        self.one = one        # scalar unit used for relation entries; learned from input if None
        self.rows = {}        # pivot -> row vector
        self.combos = {}      # pivot -> {tag: coeff}
        self.relations = []   # kernel vectors {tag: coeff} found while adding

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return (residue, combo) with vec = residue + sum combo[t] * input[t]."""
        v = dict(vec)
        combo = {} if self.track else None
        for k in [k for k in vec if k in self.rows]:
            c = v.get(k)
            if not c:
                continue
            axpy(v, -c, self.rows[k])
            if self.track:
                axpy(combo, c, self.combos[k])
        return v, combo

    def add(self, vec, tag=None):
        """Insert vec; returns True if it enlarged the span."""
        if self.one is None:
            for x in vec.values():
                if x:
                    self.one = x / x
                    break
        v, combo = self.reduce(vec)
        if not v:
            if self.track:
                one = 1 if self.one is None else self.one
                rel = scale(-one, combo) if combo else {}
                rel[tag] = rel.get(tag, 0) + one
                self.relations.append(rel)
            return False
        p = next(iter(v))
        inv = 1 / v[p]
        v = scale(inv, v)
        if self.track:
            combo = scale(-inv, combo)
            combo[tag] = inv
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, -c, v)
                if self.track:
                    axpy(self.combos[q], -c, combo)
        self.rows[p] = v
        if self.track:
            self.combos[p] = combo
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def express(self, vec):
        """Coefficients {tag: c} with vec = sum c * input[tag], or None."""
        if not self.track:
            raise ValueError("Echelon built without tracking")
        v, combo = self.reduce(vec)
        return None if v else combo


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def solve(columns, rhs):
    """Some x with sum_t x[t] columns[t] = rhs, or None.  columns: {tag: vector}."""
    e = Echelon(track=True)
    for t, c in columns.items():
        e.add(c, t)
    return e.express(rhs)


def kernel(columns):
    """Basis of {x : sum_t x[t] columns[t] = 0} as a list of {tag: coeff}."""
    e = Echelon(track=True)
    for t, c in columns.items():
        e.add(c, t)
    return e.relations


class ModP:
    """Element of F_p; used for fast rank upper bounds."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def __add__(self, o):
        return ModP(self.v + (o.v if isinstance(o, ModP) else o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - (o.v if isinstance(o, ModP) else o), self.p)

    def __rsub__(self, o):
        return ModP(o - self.v, self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __mul__(self, o):
        return ModP(self.v * (o.v if isinstance(o, ModP) else o), self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = o.v if isinstance(o, ModP) else o % self.p
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, o):
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        return self.v == (o.v if isinstance(o, ModP) else o % self.p)

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return "%d mod %d" % (self.v, self.p)
