"""The acceptance suite: eight exact checks, each returning (name, passed, detail).

`quick` shrinks sample sizes and skips the largest data; `full` runs the
criteria at their stated sizes.  Everything is seeded and exact.
"""

from __future__ import annotations

import random

from .cohomology import RelativeCobar, small_support_prediction, solve_bounding, to_big
from .dp import Q_ROOT, derivations, dp_twist_simple, dp_word_for_root, word_leading_term
from .dual import dual_check, relation_report
from .engine import BIG, build_engine
from .errors import EngineError, UqTwistError
from .groupalg import (enumerate_alternating, form_to_twist, gauge_group_twist, normalize_group_twist,
                       random_group_unit)
from .reduction import (COMPATIBLE, DISTINCT, compatible_pairs, kappa_restriction_invariant,
                        random_twist, reduce_twist, replay_check)
from .rootdata import build_root_datum
from .shuffle import compare_with_engine
from .tensor import HopfFrame
from .verify import hopf_axioms, random_element

QUICK = "quick"
FULL = "full"


def _fmt(d):
    return ",".join(map(str, d))


# ---------------------------------------------------------------------------
# 1. small-side cohomology, two routes


def small_cohomology_case(type_label, l, M):
    """(ok, detail) for one datum and form.

    Route one is the relative cobar complex.  Route two reads H^2 off the
    minimal relations of the twisted positive dual: the classes are the
    relations on which the dual group acts trivially.
    """
    T = build_engine(type_label, l)
    fr = HopfFrame(T, M)
    rc = RelativeCobar(fr)
    h1, h2 = {}, {}
    for g in rc.scan_degrees():
        s = rc.slice(g)
        if not s.d2d1_zero:
            return False, "d2 d1 != 0 in degree %s" % _fmt(g)
        if s.h1:
            h1[g] = s.h1
        if s.h2:
            h2[g] = s.h2
    expected = {g: 1 for g in small_support_prediction(T)}
    rel = {row["degree"]: row["dim"] for row in relation_report(fr) if row["invariant"]}
    ok = not h1 and h2 == expected and rel == h2
    detail = "H1=%s H2=%s relations=%s" % (
        sorted(h1), sorted(h2), sorted(rel))
    return ok, detail


def criterion_small_cohomology(suite):
    cases = [("A1", 5), ("A1", 7), ("A2", 5)]
    out = []
    ok = True
    total = 0
    for lab, l in cases:
        forms = enumerate_alternating(build_root_datum(lab, l).rank, l)
        if suite == QUICK and lab == "A2":
            forms = forms[:2]
        for M in forms:
            good, detail = small_cohomology_case(lab, l, M)
            total += 1
            ok &= good
            if not good:
                out.append("%s l=%d M=%s: %s" % (lab, l, M, detail))
    return ok, "; ".join(out) or "%d datum/form pairs: both routes give H1=0, H2 on l Phi+" % total


# ---------------------------------------------------------------------------
# 2. big-side vanishing and unique bounding elements


def criterion_big_vanishing(suite):
    cases = [("A1", 5), ("A2", 5)]
    bad = []
    solved = 0
    for lab, l in cases:
        D = 2 * l + 2
        B = build_engine(lab, l, BIG, D)
        fr = HopfFrame(B)
        rc = RelativeCobar(fr)
        for g in rc.scan_degrees(D):
            s = rc.slice(g)
            if s.h1 or s.h2 or not s.d2d1_zero:
                bad.append("%s %s H1=%d H2=%d" % (lab, _fmt(g), s.h1, s.h2))
        # the small-side obstruction classes bound uniquely once divided powers exist
        T = build_engine(lab, l)
        small = HopfFrame(T)
        for k in range(T.N):
            t_mu = word_leading_term(small, dp_word_for_root(T, k, 1))
            try:
                v = solve_bounding(fr, to_big(t_mu, B), unique=True)
            except EngineError as exc:
                bad.append("%s root %d: %s" % (lab, k, exc))
                continue
            if v is None:
                bad.append("%s root %d: no bounding element" % (lab, k))
            else:
                solved += 1
    ok = not bad
    return ok, "; ".join(bad) or "H1=H2=0 up to height 2l+2; %d unique bounding elements" % solved


# ---------------------------------------------------------------------------
# 3. reduction round trip


def round_trip(table, M, seed, roots=None, dense_group=False, expand=True):
    rt = random_twist(table, M, seed, roots=roots, dense_group=dense_group)
    J = rt.twist.expand() if expand else rt.twist
    nf = reduce_twist(J, table)
    return nf.alt_form == tuple(tuple(r) for r in M), replay_check(nf, J, table)


def criterion_round_trip(suite, seed):
    n = 20 if suite == FULL else 3
    bad = []
    count = 0
    # A1 in full: dense group units and expanded twists.  A2: every positive root
    # (the simple roots and alpha_1 + alpha_2), grouplike units and factored twists.
    plans = [("A1", True, True), ("A2", False, False)]
    for lab, dense, expand in plans:
        T = build_engine(lab, 5)
        roots = list(range(T.N))
        forms = enumerate_alternating(T.rank, T.l)
        per_form = n if lab == "A1" or suite == FULL else 1
        for fi, M in enumerate(forms):
            for j in range(per_form):
                s = seed * 1000 + fi * 100 + j
                form_ok, replay_ok = round_trip(T, M, s, roots, dense, expand)
                count += 1
                if not (form_ok and replay_ok):
                    bad.append("%s M=%s seed=%d form=%s replay=%s" % (lab, M, s, form_ok, replay_ok))
    return not bad, "; ".join(bad) or "%d twists recovered and replayed" % count


# ---------------------------------------------------------------------------
# 4. twists of C[G] for G = (Z/5)^2


def criterion_group_twists(suite, seed):
    T = build_engine("A2", 5)
    forms = enumerate_alternating(2, 5)
    recovered = [normalize_group_twist(form_to_twist(M, T))[1] for M in forms]
    distinct = len(set(recovered)) == len(forms) and recovered == [tuple(map(tuple, M)) for M in forms]
    rnd = random.Random(seed)
    n = 50 if suite == FULL else 10
    bad = 0
    for k in range(n):
        M = forms[k % len(forms)]
        J = gauge_group_twist(random_group_unit(T, rnd), form_to_twist(M, T))
        v, N = normalize_group_twist(J)
        if N != tuple(map(tuple, M)) or gauge_group_twist(v, J) != form_to_twist(N, T):
            bad += 1
    ok = distinct and not bad
    return ok, "%d forms pairwise inequivalent=%s; %d/%d gauged twists normalized" % (
        len(forms), distinct, n - bad, n)


# ---------------------------------------------------------------------------
# 5. divided-power machinery


def criterion_divided_powers(suite, seed):
    bad = []
    for lab, l in [("A1", 5), ("A1", 7), ("A2", 5), ("A2", 7), ("B2", 7)]:
        T = build_engine(lab, l)
        for i in range(T.rank):
            try:
                dp_twist_simple(T, i, 1, Q_ROOT)
            except UqTwistError as exc:
                bad.append("%s l=%d alpha_%d: %s" % (lab, l, i + 1, exc))
    n = 100 if suite == FULL else 20
    rnd = random.Random(seed)
    T = build_engine("A2", 5)
    D = derivations(T)
    leib = nil = inside = direct = 0
    for _ in range(n):
        x = random_element(T, rnd, 2, 6)
        y = random_element(T, rnd, 2, 6)
        i = rnd.randrange(T.rank)
        dx, dy = D.apply(i, x), D.apply(i, y)
        if D.apply(i, x * y) == dx * y + x * dy:
            leib += 1
        if D.apply(i, x) == D.direct(i, x):
            direct += 1
        if all(e < T.l for (a, p) in dx.terms for e in p):
            inside += 1
        z = x
        for _ in range(T.max_height + 1):
            z = D.apply(i, z)
            if not z:
                nil += 1
                break
    counts = (leib, direct, inside, nil)
    if any(c != n for c in counts):
        bad.append("leibniz=%d direct=%d in_u_q=%d nilpotent=%d of %d" % (leib, direct, inside, nil, n))
    return not bad, "; ".join(bad) or "twists certified; %d inputs pass Leibniz, direct, range, nilpotency" % n


# ---------------------------------------------------------------------------
# 6. engine against the shuffle model, Hopf axioms


def criterion_engine_oracle(suite, seed):
    bad = []
    samples = 100 if suite == FULL else 10
    pairs = 0
    # B2 at l = 7 has PBW monomials up to height 42; samples there stay below height 8
    for lab, l, height in [("A2", 5, None), ("B2", 7, 8)]:
        T = build_engine(lab, l)
        rep = compare_with_engine(T, 6)
        pairs += rep["pairs"]
        if not rep["ok"]:
            bad.append("%s shuffle mismatches %r" % (lab, rep["mismatches"][:3]))
        ax = hopf_axioms(HopfFrame(T), seed, samples, height)
        for name, good in ax.items():
            if not good:
                bad.append("%s %s" % (lab, name))
    return not bad, "; ".join(bad) or "%d products match; axioms on %d samples per datum" % (pairs, samples)


# ---------------------------------------------------------------------------
# 7. dual side


def criterion_dual(suite):
    T = build_engine("A2", 5)
    forms = enumerate_alternating(2, 5)
    if suite == QUICK:
        forms = forms[:2]
    bad = []
    serre = {(1, 2), (2, 1)}
    power = {(5, 0), (0, 5), (5, 5)}
    for M in forms:
        fr = HopfFrame(T, M)
        res = dual_check(fr)
        for name, good in res.items():
            if not good:
                bad.append("M=%s %s" % (M, name))
        rows = {row["degree"]: row for row in relation_report(fr)}
        if set(rows) != serre | power or any(r["dim"] != 1 for r in rows.values()):
            bad.append("M=%s relations at %s" % (M, sorted(rows)))
            continue
        for d in serre:
            if rows[d]["killing_eigen_exponent"] == 0 or rows[d]["invariant"]:
                bad.append("M=%s Serre class %s has trivial eigenvalue" % (M, _fmt(d)))
        for d in power:
            if rows[d]["killing_eigen_exponent"] != 0 or not rows[d]["invariant"]:
                bad.append("M=%s power class %s is not invariant" % (M, _fmt(d)))
    return not bad, "; ".join(bad) or "%d forms: 2 Serre + 3 power classes with expected eigenvalues" % len(forms)


# ---------------------------------------------------------------------------
# 8. the Killing-pullback invariant


def criterion_kappa():
    rd = build_root_datum("A2", 5)
    forms = enumerate_alternating(2, 5)
    distinct = all(kappa_restriction_invariant(a, b, rd) == DISTINCT
                   for i, a in enumerate(forms) for b in forms[i + 1:])
    rd4 = build_root_datum("A4", 5)
    pairs = compatible_pairs(rd4, 1)
    compat = bool(pairs) and kappa_restriction_invariant(pairs[0][0], pairs[0][1], rd4) == COMPATIBLE
    return distinct and compat, "A2 pairs distinct=%s; A4 compatible pair=%s" % (
        distinct, matrix_text(pairs[0][1]) if pairs else None)


def matrix_text(M):
    return "[" + ";".join(" ".join(map(str, r)) for r in M) + "]"


CRITERIA = [
    ("1_small_cohomology", lambda suite, seed: criterion_small_cohomology(suite)),
    ("2_big_vanishing", lambda suite, seed: criterion_big_vanishing(suite)),
    ("3_round_trip", criterion_round_trip),
    ("4_group_twists", criterion_group_twists),
    ("5_divided_powers", criterion_divided_powers),
    ("6_engine_oracle", criterion_engine_oracle),
    ("7_dual", lambda suite, seed: criterion_dual(suite)),
    ("8_kappa", lambda suite, seed: criterion_kappa()),
]


def run_suite(suite=QUICK, seed=7, only=None):
    """[(name, passed, detail)] in criterion order."""
    out = []
    for name, fn in CRITERIA:
        if only is not None and name not in only and name.split("_")[0] not in only:
            continue
        try:
            ok, detail = fn(suite, seed)
        except UqTwistError as exc:
            ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
        out.append((name, bool(ok), detail))
    return out
