"""Command line entry point. Verbs cover construction, inspection,
realization, decomposition, the demos, bilinear products, and exponent
arithmetic. Exit codes: 0 success, 1 verification failure (witness on
stderr), 2 usage or input error. Runs are deterministic: randomized verbs
demand an explicit --seed."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .configuration import AxiomViolation, read_ccfg, write_ccfg
from .constructions import (
    direct_product,
    fusion,
    group_association_scheme,
    group_scheme,
    schurian,
    symmetric_power,
    trivial_configuration,
)
from .exponent import (
    ExponentBound,
    construction_family_bound,
    format_bound,
    geometric_mean_bound,
    omega_from_omega_s,
    omega_s_commutative,
    reference_conversion_checks,
    solve_asi,
)
from .groups import (
    GroupAction,
    SymmetricGroup,
    conjugation_action,
    left_translation_action,
    make_group,
    perm_unrank,
)
from .realization import (
    HypothesisViolation,
    RealizationInvalid,
    TripleFamily,
    diagonal_action,
    diagonal_example,
    fibers_realization,
    grp_as_realization,
    read_real,
    sympow_realization,
    verify_realization,
    write_real,
)
from .spectrum import DegreeComputationError, character_degrees
from .tensors import (
    WeightedMatMul,
    boolean_matmul,
    embedded_matmul,
    jminusi_demo,
    read_matrix,
    unweighting_check,
    write_matrix,
)


def _emit_config(cfg, out):
    if out is None:
        write_ccfg(cfg, sys.stdout)
    else:
        write_ccfg(cfg, out)


def _emit_real(real, out):
    if out is None:
        write_real(real, sys.stdout)
    else:
        write_real(real, out)


def _parse_action(desc):
    kind, _, rest = desc.partition(":")
    if kind == "translation" and rest:
        return left_translation_action(make_group(rest))
    if kind == "conjugation" and rest:
        return conjugation_action(make_group(rest))
    if kind == "diagonal" and rest:
        return diagonal_action(int(rest))
    if kind == "natural" and rest.startswith("sym:"):
        n = int(rest.split(":", 1)[1])
        G = SymmetricGroup(n)
        return GroupAction.from_function(
            G, n, lambda g, x: perm_unrank(g, n)[x], name="natural"
        )
    raise ValueError(
        "unknown action %r (want translation:G, conjugation:G, diagonal:N,"
        " natural:sym:N)" % desc
    )


def _read_partition(path):
    blocks = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            blocks.append([int(v) for v in line.split()])
    if not blocks:
        raise ValueError("partition file %s has no blocks" % path)
    return blocks


def _read_blocks(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError("block line needs three dimensions: %r" % line)
            out.append(tuple(int(v) for v in parts))
    if not out:
        raise ValueError("blocks file %s is empty" % path)
    return out


def _read_family(path, group):
    triples = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError("family line needs three subsets: %r" % line)
            triples.append(
                tuple(tuple(int(v) for v in p.split(",")) for p in parts)
            )
    return TripleFamily(group, tuple(triples))


def _render_step(step):
    op = step[0]
    if op == "commutative":
        return "commutative(%dx%dx%d, r=%d)" % step[1:]
    if op == "asi":
        blocks = ", ".join("%dx%dx%d" % b for b in step[1])
        return "asi([%s], r=%d)" % (blocks, step[2])
    if op == "geometric-mean":
        blocks = ", ".join("%dx%dx%d" % b for b in step[1])
        return "geometric-mean([%s], r=%d)" % (blocks, step[2])
    if op == "noncommutative":
        return "noncommutative(%dx%dx%d, degrees=%s, assumed=%r)" % (
            step[1],
            step[2],
            step[3],
            list(step[4]),
            step[5],
        )
    if op == "family":
        return "family(m=%r)" % (step[1],)
    if op == "given":
        return "given(%r)" % (step[1],)
    if op == "convert":
        return "convert"
    if op == "clamp":
        return "clamp(%s)" % step[2]
    if op == "note":
        return "note(%s)" % step[1]
    return repr(step)


def _print_bound(bound):
    prov = " -> ".join(_render_step(s) for s in bound.provenance)
    line = "%s <= %s (provenance: %s)" % (bound.kind, format_bound(bound.value), prov)
    print(line)
    for a in bound.assumptions:
        print("assumption: %s" % a)


# -- verb handlers -----------------------------------------------------------


def cmd_build(args):
    check = args.check
    if args.what == "group-scheme":
        cfg = group_scheme(make_group(args.spec[0]), check=check)
    elif args.what == "gas":
        cfg = group_association_scheme(make_group(args.spec[0]), check=check)
    elif args.what == "trivial":
        cfg = trivial_configuration(int(args.spec[0]), check=check)
    elif args.what == "schurian":
        cfg = schurian(_parse_action(args.spec[0]), check=check)
    elif args.what == "product":
        c1 = read_ccfg(args.spec[0], check=check)
        c2 = read_ccfg(args.spec[1], check=check)
        cfg = direct_product(c1, c2, check=check)
    elif args.what == "sympow":
        base = read_ccfg(args.spec[0], check=check)
        cfg = symmetric_power(base, int(args.spec[1]), check=check)
    elif args.what == "fuse":
        base = read_ccfg(args.spec[0], check=check)
        cfg = fusion(base, _read_partition(args.spec[1]))
    else:
        raise ValueError("unknown build target %r" % args.what)
    _emit_config(cfg, args.out)
    return 0


def cmd_info(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    print(
        "points %d classes %d commutative %s scheme %s"
        % (
            cfg.n_points,
            cfg.rank,
            "true" if cfg.is_commutative() else "false",
            "true" if cfg.is_association_scheme() else "false",
        )
    )
    return 0


def cmd_degrees(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    kwargs = {}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.cap is not None:
        kwargs["cap"] = args.cap
    prof = character_degrees(cfg, **kwargs)
    print(
        "degrees: %s ; residual: %.3e"
        % (" ".join(str(d) for d in prof.degrees), prof.residual)
    )
    return 0


def cmd_realize_verify(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    real = read_real(args.real)
    verify_realization(cfg, real)
    print("realization %d,%d,%d OK" % real.dims)
    return 0


def cmd_realize_fibers(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    real = fibers_realization(cfg)
    _emit_real(real, args.out)
    if args.out:
        print("realization %d,%d,%d -> %s" % (real.dims + (args.out,)))
    return 0


def cmd_realize_diagonal(args):
    S = None
    if args.set is not None:
        S = tuple(int(v) for v in args.set.split(","))
    cfg, reals = diagonal_example(args.n, S=S)
    print(
        "points %d rank %d components %d"
        % (cfg.n_points, cfg.rank, len(reals))
    )
    if args.out_prefix:
        path = args.out_prefix + ".ccfg"
        write_ccfg(cfg, path)
        print("config -> %s" % path)
        for i, real in enumerate(reals):
            rp = "%s.%d.real" % (args.out_prefix, i)
            write_real(real, rp)
            print("component %d -> %s" % (i, rp))
    return 0


def cmd_realize_grp_as(args):
    group = make_group(args.group)
    family = _read_family(args.family, group)
    cfg, real = grp_as_realization(family)
    print(
        "points %d rank %d realization %d,%d,%d"
        % ((cfg.n_points, cfg.rank) + real.dims)
    )
    if args.out_prefix:
        write_ccfg(cfg, args.out_prefix + ".ccfg")
        write_real(real, args.out_prefix + ".real")
        print("config -> %s.ccfg" % args.out_prefix)
        print("realization -> %s.real" % args.out_prefix)
    return 0


def cmd_realize_sympow(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    reals = [read_real(p) for p in args.real]
    mat = {"auto": "auto", "always": True, "never": False}[args.materialize]
    power, real = sympow_realization(cfg, reals, materialize=mat)
    rank = power.rank
    print(
        "sym^%d realization %d,%d,%d in rank %d OK"
        % ((len(reals),) + real.dims + (rank,))
    )
    return 0


def cmd_demo_unweight(args):
    if args.seed is None:
        raise ValueError("demo unweight requires --seed")
    rep = unweighting_check(args.n, seed=args.seed)
    if rep.ok:
        print("PASS")
        return 0
    print("FAIL %r" % (rep.witness,), file=sys.stderr)
    return 1


def cmd_demo_jminusi(args):
    rep = jminusi_demo(args.n, tolerance=args.tolerance or 1e-8)
    print("n %d" % rep.n)
    print("rank_full %d" % rep.rank_plain)
    print("rank_weighted %d" % rep.rank_weighted)
    print("support_match %s" % ("true" if rep.support_match else "false"))
    return 0 if rep.ok else 1


def _load_weighted(args):
    cfg = read_ccfg(args.ccfg, check=args.check)
    real = read_real(args.real)
    return WeightedMatMul(cfg, real)


def cmd_matmul(args):
    W = _load_weighted(args)
    A = read_matrix(args.a)
    B = read_matrix(args.b)
    C = embedded_matmul(W, A, B)
    if args.out:
        write_matrix(C, args.out)
    else:
        write_matrix(C, sys.stdout)
    return 0


def cmd_boolmm(args):
    W = _load_weighted(args)
    A = [[int(v) for v in row] for row in read_matrix(args.a)]
    B = [[int(v) for v in row] for row in read_matrix(args.b)]
    if args.randomized:
        if args.seed is None:
            raise ValueError("randomized boolmm requires --seed")
        C = boolean_matmul(
            W, A, B, seed=args.seed, repetitions=args.reps, deterministic=False
        )
    else:
        C = boolean_matmul(W, A, B)
    rows = [[Fraction(int(v)) for v in row] for row in C]
    if args.out:
        write_matrix(rows, args.out)
    else:
        write_matrix(rows, sys.stdout)
    return 0


def cmd_exponent(args):
    if args.form == "commutative":
        l, m, n = (int(v) for v in args.dims.split(","))
        _print_bound(omega_s_commutative(l, m, n, args.rank))
    elif args.form == "asi":
        _print_bound(solve_asi(_read_blocks(args.blocks), args.rank))
    elif args.form == "gm":
        _print_bound(geometric_mean_bound(_read_blocks(args.blocks), args.rank))
    elif args.form == "family":
        _print_bound(construction_family_bound(args.m))
    elif args.form == "convert":
        if args.omega_s is not None:
            value = args.omega_s
        else:
            line = sys.stdin.readline()
            parts = line.split()
            if len(parts) < 3 or parts[0] != "omega_s" or parts[1] != "<=":
                raise ValueError("stdin must carry a line `omega_s <= X ...`")
            value = float(parts[2])
        bound = omega_from_omega_s(
            ExponentBound("omega_s", value, (), (("given", value),))
        )
        print("omega <= %s" % format_bound(bound.value))
    elif args.form == "check-conversions":
        ok = True
        for row in reference_conversion_checks():
            status = "ok" if row["ok"] else "FAIL"
            ok = ok and row["ok"]
            print(
                "omega_s %.4g -> omega %s (target %.4g) %s"
                % (row["omega_s"], format_bound(row["omega"]), row["target"], status)
            )
        return 0 if ok else 1
    else:
        raise ValueError("unknown exponent form %r" % args.form)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="size cap override")
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument(
        "--tolerance", type=float, default=None, help="numeric tolerance"
    )
    common.add_argument(
        "--check",
        choices=["full", "sampled", "trusted"],
        default="full",
        help="verification mode for configuration inputs",
    )

    p = argparse.ArgumentParser(prog="ccmm", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", parents=[common], help="construct a configuration")
    b.add_argument(
        "what",
        choices=["group-scheme", "gas", "trivial", "schurian", "product", "sympow", "fuse"],
    )
    b.add_argument("spec", nargs="+")
    b.add_argument("-o", "--out", default=None)
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("info", parents=[common], help="summarize a configuration file")
    i.add_argument("ccfg")
    i.set_defaults(func=cmd_info)

    d = sub.add_parser("degrees", parents=[common], help="character degrees")
    d.add_argument("ccfg")
    d.set_defaults(func=cmd_degrees)

    r = sub.add_parser("realize", help="build and verify realizations")
    rs = r.add_subparsers(dest="mode", required=True)
    rv = rs.add_parser("verify", parents=[common])
    rv.add_argument("--ccfg", required=True)
    rv.add_argument("--real", required=True)
    rv.set_defaults(func=cmd_realize_verify)
    rf = rs.add_parser("fibers", parents=[common])
    rf.add_argument("--ccfg", required=True)
    rf.add_argument("-o", "--out", default=None)
    rf.set_defaults(func=cmd_realize_fibers)
    rd = rs.add_parser("diagonal-example", parents=[common])
    rd.add_argument("--n", type=int, required=True)
    rd.add_argument("--set", default=None, help="comma-separated 3AP-free set")
    rd.add_argument("--out-prefix", default=None)
    rd.set_defaults(func=cmd_realize_diagonal)
    rg = rs.add_parser("grp-as", parents=[common])
    rg.add_argument("--group", required=True)
    rg.add_argument("--family", required=True, help="file: one `A B C` line per triple")
    rg.add_argument("--out-prefix", default=None)
    rg.set_defaults(func=cmd_realize_grp_as)
    rp = rs.add_parser("sympow", parents=[common])
    rp.add_argument("--ccfg", required=True)
    rp.add_argument("--real", action="append", required=True)
    rp.add_argument(
        "--materialize", choices=["auto", "always", "never"], default="auto"
    )
    rp.set_defaults(func=cmd_realize_sympow)

    dm = sub.add_parser("demo", help="constructive demonstrations")
    ds = dm.add_subparsers(dest="which", required=True)
    du = ds.add_parser("unweight", parents=[common])
    du.add_argument("--n", type=int, required=True)
    du.set_defaults(func=cmd_demo_unweight)
    dj = ds.add_parser("jminusi", parents=[common])
    dj.add_argument("--n", type=int, required=True)
    dj.set_defaults(func=cmd_demo_jminusi)

    mm = sub.add_parser("matmul", parents=[common], help="exact product via a realization")
    mm.add_argument("--ccfg", required=True)
    mm.add_argument("--real", required=True)
    mm.add_argument("--a", required=True)
    mm.add_argument("--b", required=True)
    mm.add_argument("-o", "--out", default=None)
    mm.set_defaults(func=cmd_matmul)

    bm = sub.add_parser("boolmm", parents=[common], help="Boolean product via a realization")
    bm.add_argument("--ccfg", required=True)
    bm.add_argument("--real", required=True)
    bm.add_argument("--a", required=True)
    bm.add_argument("--b", required=True)
    bm.add_argument("--randomized", action="store_true")
    bm.add_argument("--reps", type=int, default=20)
    bm.add_argument("-o", "--out", default=None)
    bm.set_defaults(func=cmd_boolmm)

    e = sub.add_parser("exponent", help="exponent bounds")
    es = e.add_subparsers(dest="form", required=True)
    ec = es.add_parser("commutative", parents=[common])
    ec.add_argument("--dims", required=True, help="l,m,n")
    ec.add_argument("--rank", type=int, required=True)
    ec.set_defaults(func=cmd_exponent)
    ea = es.add_parser("asi", parents=[common])
    ea.add_argument("--blocks", required=True, help="file: one `l m n` line per block")
    ea.add_argument("--rank", type=int, required=True)
    ea.set_defaults(func=cmd_exponent)
    eg = es.add_parser("gm", parents=[common])
    eg.add_argument("--blocks", required=True)
    eg.add_argument("--rank", type=int, required=True)
    eg.set_defaults(func=cmd_exponent)
    ef = es.add_parser("family", parents=[common])
    ef.add_argument("--m", type=float, required=True)
    ef.set_defaults(func=cmd_exponent)
    ev = es.add_parser("convert", parents=[common])
    ev.add_argument("--omega-s", type=float, default=None, dest="omega_s")
    ev.set_defaults(func=cmd_exponent)
    ek = es.add_parser("check-conversions", parents=[common])
    ek.set_defaults(func=cmd_exponent)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (
        AxiomViolation,
        RealizationInvalid,
        HypothesisViolation,
        DegreeComputationError,
    ) as exc:
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print("witness: %r" % (witness,), file=sys.stderr)
        print("verification failed: %s" % exc, file=sys.stderr)
        return 1
    except AssertionError as exc:
        print("internal consistency failure: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
