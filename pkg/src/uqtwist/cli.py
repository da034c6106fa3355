"""Command-line interface: uqtwist <command> ...

Exit codes: 0 success, 2 verification failure, 3 configuration error,
64 usage error.  `rootdata` exits 1 for a non-admissible order.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import ConfigError, UqTwistError

EXIT_OK = 0
EXIT_FAIL = 2
EXIT_CONFIG = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise SystemExit(EXIT_USAGE)


@dataclass
class JobConfig:
    type_label: str
    l: int
    form: tuple = None
    input_path: str = None
    output_path: str = None
    seed: int = 0
    max_height: int = None
    bound: int = 6
    jobs: int = 1
    approx: bool = False

    def validate(self):
        from .rootdata import admissible_order, build_root_datum

        if self.jobs < 1:
            raise ConfigError("--jobs must be positive")

        rd = build_root_datum(self.type_label, self.l)
        if not admissible_order(rd):
            raise ConfigError("order l=%d is not admissible for %s" % (self.l, rd.type_label))
        if self.form is not None:
            from .groupalg import is_alternating

            if len(self.form) != rd.rank or any(len(r) != rd.rank for r in self.form):
                raise ConfigError("form must be a %dx%d matrix" % (rd.rank, rd.rank))
            if not is_alternating(self.form, self.l):
                raise ConfigError("form is not alternating mod %d" % self.l)
        return rd


def _parse_form(text):
    if text is None:
        return None
    try:
        M = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("form must be a JSON matrix: %s" % exc)
    return tuple(tuple(int(x) for x in r) for r in M)


def _approx_text(x):
    z = x.approx()
    return "%.6g%+.6gi" % (z.real, z.imag)


def _emit(text, path=None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _print_json(obj, compact=False, path=None):
    if compact:
        text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    else:
        text = json.dumps(obj, indent=1, sort_keys=True)
    _emit(text + "\n", path)


def _read_twist(T, path, form):
    from .reduction import FactoredTwist
    from .tensor import TensorElement

    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ConfigError("%s is not JSON: %s" % (path, exc))
    F = TensorElement.from_json(T, data)
    if form is None:
        return F
    return FactoredTwist(form, F)


# ---------------------------------------------------------------------------
# commands


def cmd_rootdata(args):
    from .rootdata import admissible_order, build_root_datum, killing_map, serre_exponent_set

    rd = build_root_datum(args.type, args.l)
    ok = admissible_order(rd)
    _, kinv = killing_map(rd)
    print("type\t%s" % rd.type_label)
    print("l\t%d" % rd.l)
    print("admissible\t%s" % ("yes" if ok else "no"))
    print("killing_invertible\t%s" % ("yes" if kinv else "no"))
    print("serre_exponents\t%s" % ",".join(map(str, sorted(serre_exponent_set(rd)))))
    print("killing_matrix\t%s" % ";".join(",".join(map(str, r)) for r in rd.killing_matrix()))
    for mu, w in zip(rd.positive_roots, rd.lyndon):
        print("root\t%s\t%s" % (",".join(map(str, mu)), "".join(str(i + 1) for i in w)))
    return EXIT_OK if ok else 1


def cmd_alt(args):
    from .groupalg import enumerate_alternating, matrix_to_json
    from .rootdata import build_root_datum

    rd = build_root_datum(args.type, args.l)
    forms = enumerate_alternating(rd.rank, rd.l)
    for M in forms:
        print(json.dumps(matrix_to_json(M), separators=(",", ":")))
    print("count\t%d" % len(forms))
    return EXIT_OK


def cmd_algebra(args):
    from .engine import build_engine
    from .shuffle import compare_with_engine
    from .tensor import HopfFrame
    from .verify import hopf_axioms

    cfg = JobConfig(args.type, args.l, seed=args.seed, bound=args.bound, max_height=args.maxheight)
    cfg.validate()
    T = build_engine(cfg.type_label, cfg.l)
    ok = True
    if args.action in ("dims", "check"):
        dims = T.graded_dims()
        print("dimension\t%d" % sum(dims.values()))
        if args.action == "dims":
            for d in sorted(dims, key=lambda d: (sum(d), d)):
                print("degree\t%s\t%d" % (",".join(map(str, d)), dims[d]))
    if args.action == "check":
        rep = compare_with_engine(T, cfg.bound)
        ok = rep["ok"]
        print("shuffle_oracle\t%s\tpairs=%d" % ("pass" if ok else "FAIL", rep["pairs"]))
    if args.action in ("check", "check-hopf"):
        ax = hopf_axioms(HopfFrame(T), cfg.seed, args.samples, cfg.max_height)
        for name, good in ax.items():
            print("%s\t%s" % (name, "pass" if good else "FAIL"))
        ok = ok and all(ax.values())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual(args):
    from .dual import dual_check, relation_report
    from .engine import build_engine
    from .tensor import HopfFrame

    cfg = JobConfig(args.type, args.l, form=_parse_form(args.form))
    cfg.validate()
    T = build_engine(cfg.type_label, cfg.l)
    fr = HopfFrame(T, cfg.form)
    res = dual_check(fr)
    for name, ok in res.items():
        print("%s\t%s" % (name, "pass" if ok else "FAIL"))
    for row in relation_report(fr):
        print("relation\t%s\tdim=%d\teigen_exp=%d\t%s" % (
            ",".join(map(str, row["degree"])), row["dim"], row["killing_eigen_exponent"],
            "invariant" if row["invariant"] else "noninvariant"))
    return EXIT_OK if all(res.values()) else EXIT_FAIL


def _cobar(type_label, l, form, big, height):
    from .cohomology import RelativeCobar
    from .engine import BIG, build_engine
    from .tensor import HopfFrame

    if big:
        T = build_engine(type_label, l, BIG, height or 2 * l + 2)
    else:
        T = build_engine(type_label, l)
    return RelativeCobar(HopfFrame(T, form))


def _slice_row(task):
    type_label, l, form, big, height, g = task
    s = _cobar(type_label, l, form, big, height).slice(g)
    return g, s.dims, s.h1, s.h2, s.d2d1_zero


def cmd_cohomology(args):
    cfg = JobConfig(args.type, args.l, form=_parse_form(args.form), max_height=args.maxheight, jobs=args.jobs)
    cfg.validate()
    rc = _cobar(cfg.type_label, cfg.l, cfg.form, args.big, cfg.max_height)
    tasks = [(cfg.type_label, cfg.l, cfg.form, args.big, cfg.max_height, g)
             for g in rc.scan_degrees(cfg.max_height)]
    if cfg.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_slice_row, tasks))
    else:
        rows = [_slice_row(t) for t in tasks]
    lines = ["gamma\tdim_C1\tdim_C2\tdim_H1\tdim_H2"]
    ok = True
    for g, dims, h1, h2, closed in rows:
        ok = ok and closed
        if dims[0] or dims[1]:
            lines.append("%s\t%d\t%d\t%d\t%d" % (",".join(map(str, g)), dims[0], dims[1], h1, h2))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_twist(args):
    from .engine import build_engine
    from .reduction import FactoredTwist
    from .tensor import HopfFrame, TensorElement

    hint = _parse_form(args.form_hint)
    cfg = JobConfig(args.type, args.l, form=_parse_form(args.form) or hint, input_path=args.file,
                    output_path=args.output, seed=args.seed)
    cfg.validate()
    T = build_engine(cfg.type_label, cfg.l)
    zero = tuple(tuple(0 for _ in range(T.rank)) for _ in range(T.rank))
    if args.action == "random":
        from .reduction import random_twist

        rt = random_twist(T, cfg.form or zero, cfg.seed)
        _print_json(rt.twist.expand().to_json(), compact=True, path=cfg.output_path)
        return EXIT_OK
    if args.action == "dpgauge":
        from .dp import apply_word, dp_word_for_root

        try:
            root = args.root or ",".join("1" if i == 0 else "0" for i in range(T.rank))
            k = T.rd.root_index[tuple(int(x) for x in root.split(","))]
            lam = int(args.lam)
        except (KeyError, ValueError):
            raise ConfigError("--root must be a positive root, --lam an integer")
        w = dp_word_for_root(T, k, lam)
        F = apply_word(HopfFrame(T, cfg.form), w, TensorElement.one(T))
        J = FactoredTwist(cfg.form or zero, F).expand()
        _print_json({"word": w.to_json(), "twist": J.to_json()}, compact=True, path=cfg.output_path)
        return EXIT_OK
    # the file holds J, or F with J = form_to_twist(hint) F when --form-hint is given
    J = _read_twist(T, cfg.input_path, hint)
    if args.action == "verify":
        if isinstance(J, FactoredTwist):
            ok, cert = HopfFrame(T, J.M).is_twist(J.F)
        else:
            ok, cert = HopfFrame(T).is_twist(J)
        print("twist\t%s" % ("pass" if ok else "FAIL"))
        if cert:
            print("certificate\t%s" % json.dumps(cert, sort_keys=True))
        return EXIT_OK if ok else EXIT_FAIL
    from .reduction import reduce_twist, replay_check

    nf = reduce_twist(J, T)
    ok = replay_check(nf, J, T)
    out = nf.to_json(T)
    out["replay_ok"] = ok
    if args.approx:
        out["c_approx_nonauthoritative"] = {str(k): _approx_text(x) for k, x in sorted(nf.c.items())}
    if args.action == "reduce":
        _print_json(out, path=cfg.output_path)
    else:
        print("replay\t%s" % ("pass" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_acceptance(args):
    from .acceptance import run_suite

    results = run_suite(args.suite, args.seed, set(args.only) if args.only else None)
    for name, ok, detail in results:
        print("%s\t%s\t%s" % (name, "pass" if ok else "FAIL", detail))
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_FAIL


def build_parser():
    p = _Parser(prog="uqtwist", description="Twists of small quantum Borels at roots of unity.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, form=False):
        sp.add_argument("type", help="Cartan type, e.g. A2")
        sp.add_argument("l", type=int, help="odd order of the root of unity")
        if form:
            sp.add_argument("--form", help="alternating matrix over Z/l as JSON")

    sp = sub.add_parser("rootdata", help="root datum and admissibility")
    common(sp)
    sp.set_defaults(func=cmd_rootdata)

    sp = sub.add_parser("alt", help="list alternating forms")
    sp.add_argument("action", nargs="?", choices=["enumerate"], default="enumerate")
    common(sp)
    sp.set_defaults(func=cmd_alt)

    sp = sub.add_parser("algebra", help="engine checks against the shuffle model and Hopf axioms")
    sp.add_argument("action", nargs="?", choices=["check", "dims", "check-hopf"], default="check")
    common(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--bound", type=int, default=6, help="shuffle-oracle height bound")
    sp.add_argument("--maxheight", type=int, help="height bound for random Hopf-axiom samples")
    sp.set_defaults(func=cmd_algebra)

    sp = sub.add_parser("dual", help="relations of the twisted dual")
    sp.add_argument("check", choices=["check"])
    common(sp, form=True)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("cohomology", help="H^1 and H^2 table")
    common(sp, form=True)
    sp.add_argument("--big", action="store_true", help="truncated big algebra instead of u_q")
    sp.add_argument("--maxheight", type=int)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for degree slices")
    sp.add_argument("--output", help="write the table here instead of stdout")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("twist", help="twist generation and reduction")
    sp.add_argument("action", choices=["reduce", "roundtrip", "verify", "random", "dpgauge"])
    common(sp, form=True)
    sp.add_argument("--file", help="twist as JSON (reduce, roundtrip, verify)")
    sp.add_argument("--form-hint", help="the file holds F and the twist is form_to_twist(hint) F")
    sp.add_argument("--output", help="write JSON here instead of stdout")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--root", help="root as comma-separated coordinates, default alpha_1 (dpgauge)")
    sp.add_argument("--lam", default="1", help="integer parameter (dpgauge)")
    sp.set_defaults(func=cmd_twist)

    sp = sub.add_parser("acceptance", help="run the acceptance criteria")
    sp.add_argument("--suite", choices=["quick", "full"], default="quick")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--only", nargs="+", metavar="N", help="criterion numbers to run, e.g. --only 1 4")
    sp.set_defaults(func=cmd_acceptance)

    for s in sub.choices.values():
        s.add_argument("--approx", action="store_true", help="add floating previews (non-authoritative)")
    return p


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "twist" and args.action in ("reduce", "roundtrip", "verify") and not args.file:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return EXIT_CONFIG
    except UqTwistError as exc:
        sys.stderr.write("verification failure: %s: %s\n" % (type(exc).__name__, exc))
        return EXIT_FAIL


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
