"""Seeded checks of the Hopf algebra axioms on random elements."""

from __future__ import annotations

import random

from .engine import SMALL, AlgebraElement, StructureTable
from .scalars import CycScalar
from .tensor import HopfFrame


def random_element(table: StructureTable, rnd, terms=3, max_height=None):
    """Sparse element with small Z[zeta] coefficients on random monomials."""
    monos = list(table.e_monomials(max_height=max_height))
    ks = list(table.k_vectors())
    out = {}
    for _ in range(terms):
        coeffs = [rnd.randint(-3, 3) for _ in range(len(table.one.c))]
        if not any(coeffs):
            coeffs[0] = 1
        out[(rnd.choice(ks), rnd.choice(monos))] = CycScalar(table.l, coeffs)
    return AlgebraElement(table, out)


def _mult_tensor(table, J):
    """m(J) for J in H (x) H."""
    out = {}
    for (u, w), c in J.terms.items():
        for m, d in table.mono_mult(u, w).items():
            out[m] = out.get(m, table.zero) + c * d
    return AlgebraElement(table, out)


def coassociative(frame: HopfFrame, x: AlgebraElement) -> bool:
    D = frame.delta(x)
    return frame.delta_left(D) == frame.delta_right(D)


def multiplicative(frame: HopfFrame, x: AlgebraElement, y: AlgebraElement) -> bool:
    return frame.delta(x * y) == frame.delta(x) * frame.delta(y)


def antipode_law(frame: HopfFrame, x: AlgebraElement) -> bool:
    t = frame.table
    D = frame.delta(x)
    eps = AlgebraElement.one(t).scale(x.counit()) if x.counit() else AlgebraElement.zero(t)

    def anti(m):
        return AlgebraElement(t, {m: t.one}).antipode().terms

    def ident(m):
        return {m: t.one}

    left = _mult_tensor(t, D.apply(anti, ident))
    right = _mult_tensor(t, D.apply(ident, anti))
    return left == eps and right == eps


def associative(x, y, z) -> bool:
    return (x * y) * z == x * (y * z)


def hopf_axioms(frame: HopfFrame, seed=0, samples=100, max_height=None):
    """{axiom: passed} over `samples` seeded elements (antipode only for the plain small algebra)."""
    t = frame.table
    rnd = random.Random(seed)
    res = {"associativity": True, "coassociativity": True, "bialgebra": True}
    anti = t.kind == SMALL and frame.plain
    if anti:
        res["antipode"] = True
    for _ in range(samples):
        x = random_element(t, rnd, 2, max_height)
        y = random_element(t, rnd, 2, max_height)
        z = random_element(t, rnd, 1, max_height)
        res["associativity"] &= associative(x, y, z)
        res["coassociativity"] &= coassociative(frame, x)
        res["bialgebra"] &= multiplicative(frame, x, y)
        if anti:
            res["antipode"] &= antipode_law(frame, x)
    return res
