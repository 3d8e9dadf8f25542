"""Command-line front end.

    entwine verify PATH
    entwine cohom PATH --side A --values self --max-degree 3
    entwine cup PATH --deg 0 0
    entwine equivariant PATH --max-degree 2
    entwine deform PATH --max-degree 3
    entwine example z2 --out z2.json

Exit codes: 0 all checks passed, 1 a mathematical check failed (the failing
relation or law is named in the report), 2 I/O or parse error.  Every command
accepts --json PATH for a machine-readable report and --seed (default 0) for
the few sampled checks; reports are byte-identical across runs for fixed
input and seed.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import report as rep
from .compalg import (
    ALGEBRA,
    CompContext,
    cup,
    equivariant_basis,
    equivariant_checks,
    lin_comb,
    sqcup,
)
from .complexes import build_ApsiCV, build_CpsiAM, cohomology
from .deform import (
    build_CH,
    coboundary_equivalence,
    deformation_from_cocycle,
    random_two_cochain,
    total_cohomology,
)
from .entwining import check_bowtie
from .errors import CocycleConditionError, EntwineError, StructureParseError
from .homspace import vec
from .linalg import solve
from .structures import (
    regular_bicomodule,
    regular_bimodule,
    validate_algebra,
    validate_bicomodule,
    validate_bimodule,
    validate_coalgebra,
)
from .zoo import EXAMPLE_NAMES, load, named_example, save, validate_antipode, validate_bialgebra

EXIT_OK = 0
EXIT_MATH = 1
EXIT_IO = 2


def _load(path, validate=True):
    return load(path, validate=validate)


def _max_degree(args):
    if args.max_degree > 4 and not args.unsafe_degree:
        raise StructureParseError("--max-degree is hard-capped at 4 (pass --unsafe-degree to lift)")
    return args.max_degree


def cmd_verify(args) -> dict:
    # load unchecked: this command's whole point is reporting what fails
    e = _load(args.path, validate=False)
    report = rep.new_report("verify", e.summary(), args.seed)
    alg = validate_algebra(e.algebra)
    rep.add_check(report, "algebra axioms", alg.ok, str(alg) if not alg.ok else "")
    coalg = validate_coalgebra(e.coalgebra)
    rep.add_check(report, "coalgebra axioms", coalg.ok, str(coalg) if not coalg.ok else "")
    if alg.ok and coalg.ok:
        bowtie = check_bowtie(e.algebra, e.coalgebra, e.psi)
        failed = dict(bowtie.failures)
        for name in ("left pentagon", "left triangle", "right pentagon", "right triangle"):
            if name in failed:
                rep.add_check(report, f"bow-tie: {name}", False, f"witness {failed[name]}")
            else:
                rep.add_check(report, f"bow-tie: {name}", True)
        if e.hopf is not None:
            rep.add_check(report, "bialgebra compatibility", validate_bialgebra(e.hopf).ok)
            rep.add_check(report, "antipode axioms", validate_antipode(e.hopf).ok)
        if bowtie.ok:
            m = regular_bimodule(e.algebra)
            v = regular_bicomodule(e.coalgebra)
            rep.add_check(report, "regular bimodule", validate_bimodule(e.algebra, m).ok)
            rep.add_check(report, "regular bicomodule", validate_bicomodule(e.coalgebra, v).ok)
    return report


def cmd_cohom(args) -> dict:
    e = _load(args.path)
    n_max = _max_degree(args)
    report = rep.new_report("cohom", e.summary(), args.seed)
    if args.values.startswith("file:"):
        from .zoo import load_coefficients

        coeff = load_coefficients(args.values[5:], e, args.side)
    elif args.values in ("self", "regular"):
        coeff = regular_bimodule(e.algebra) if args.side == "A" else regular_bicomodule(e.coalgebra)
    else:
        raise StructureParseError(f"unknown --values {args.values!r} (self | regular | file:PATH)")
    cx = build_CpsiAM(e, coeff, n_max) if args.side == "A" else build_ApsiCV(e, coeff, n_max)
    betti = {}
    for n in range(n_max):
        betti[n] = cohomology(cx, n).betti
    rep.add_table(report, "space dimensions", {n: d for n, d in enumerate(cx.space_dims)})
    rep.add_table(report, "betti numbers", betti)
    rep.add_check(report, "differentials square to zero", True, "verified at construction")
    return report


def cmd_cup(args) -> dict:
    e = _load(args.path)
    m, n = args.deg
    report = rep.new_report("cup", e.summary(), args.seed)
    ctx = CompContext(e, ALGEBRA)
    hm, hn = ctx.cohomology_at(m), ctx.cohomology_at(n)
    target = ctx.cohomology_at(m + n)
    rep.add_table(
        report,
        "class counts",
        {f"H^{m}": hm.betti, f"H^{n}": hn.betti, f"H^{m + n}": target.betti},
    )
    rows = []
    sign = -1 if (m * n) % 2 else 1
    all_ok = True
    for i, xv in enumerate(hm.class_reps):
        xi = ctx.from_vec(m, xv)
        for j, ev in enumerate(hn.class_reps):
            eta = ctx.from_vec(n, ev)
            cup_class = target.reduce(vec(cup(ctx, xi, eta).map_))
            sq_class = target.reduce(vec(sqcup(ctx, eta, xi).map_))
            residual = lin_comb(ctx, m + n, [(1, cup(ctx, xi, eta)), (-sign, sqcup(ctx, eta, xi))])
            resid_zero = all(v == 0 for v in target.reduce(vec(residual.map_)))
            all_ok = all_ok and resid_zero
            rows.append(
                {
                    "pair": [i, j],
                    "cup_class": [str(v) for v in cup_class],
                    "sqcup_class": [str(v) for v in sq_class],
                    "residual_vanishes": resid_zero,
                }
            )
    rep.add_table(report, "products on classes", rows)
    rep.add_check(report, "graded sign rule on cohomology", all_ok, f"degrees ({m},{n})")
    return report


def cmd_equivariant(args) -> dict:
    e = _load(args.path)
    n_max = _max_degree(args)
    report = rep.new_report("equivariant", e.summary(), args.seed)
    ctx = CompContext(e, ALGEBRA)
    dims = {n: len(equivariant_basis(ctx, n)) for n in range(n_max + 1)}
    rep.add_table(report, "equivariant dimensions", dims)
    checks = equivariant_checks(ctx, min(n_max, 2))
    for name, ok, detail in checks.items:
        rep.add_check(report, name, ok, detail)
    return report


def cmd_deform(args) -> dict:
    e = _load(args.path)
    n_max = max(2, min(_max_degree(args), 4))
    report = rep.new_report("deform", e.summary(), args.seed)
    tc = build_CH(e, n_max)
    rep.add_table(report, "total complex dimensions", {n: d for n, d in enumerate(tc.dims)})
    h2 = total_cohomology(tc, 2)
    rep.add_table(
        report,
        "degree-2 classification",
        {
            "cocycles": len(h2.cocycle_basis),
            "coboundaries": len(h2.coboundary_basis),
            "classes": h2.betti,
        },
    )
    ok = True
    for z in h2.cocycle_basis:
        try:
            deformation_from_cocycle(e, z, tc)
        except CocycleConditionError as exc:
            ok = False
            rep.add_check(report, "cocycle deforms mod t^2", False, str(exc))
    rep.add_check(report, "every basis cocycle deforms mod t^2", ok, f"{len(h2.cocycle_basis)} cocycles")
    d1 = tc.differential(1)
    eq_ok = True
    for z in h2.coboundary_basis:
        w = solve(d1, z)
        if w is None:
            eq_ok = False
            continue
        try:
            coboundary_equivalence(e, z, w, tc)
        except EntwineError:
            eq_ok = False
    rep.add_check(
        report, "every basis coboundary is equivalent to trivial", eq_ok,
        f"{len(h2.coboundary_basis)} coboundaries",
    )
    z_bad = random_two_cochain(tc, seed=args.seed)
    if (tc.differential(2) @ z_bad).is_zero():
        rep.add_check(report, "random 2-cochain rejection", True, "sampled a cocycle; nothing to reject")
    else:
        try:
            deformation_from_cocycle(e, z_bad, tc)
            rep.add_check(report, "random 2-cochain rejection", False, "non-cocycle accepted")
        except CocycleConditionError:
            rep.add_check(report, "random 2-cochain rejection", True)
    return report


def cmd_example(args) -> dict:
    e = named_example(args.name)
    save(e, args.out)
    report = rep.new_report("example", e.summary(), args.seed)
    rep.add_check(report, f"wrote {args.name}", True, str(args.out))
    return report


def build_parser():
    parser = argparse.ArgumentParser(prog="entwine", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, path=True):
        if path:
            p.add_argument("path", help="structure file (JSON)")
        p.add_argument("--json", dest="json_path", help="write the structured report here")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--max-degree", type=int, default=3)
        p.add_argument("--unsafe-degree", action="store_true", help="lift the degree-4 hard cap")

    p = sub.add_parser("verify", help="run all validators and the bow-tie relations")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohom", help="betti table of the twisted complex")
    common(p)
    p.add_argument("--side", choices=["A", "C"], default="A")
    p.add_argument(
        "--values",
        default="self",
        help="self | regular (the regular coefficients) | file:PATH (a coefficients file)",
    )
    p.set_defaults(func=cmd_cohom)

    p = sub.add_parser("cup", help="cup products on cohomology classes")
    common(p)
    p.add_argument("--deg", nargs=2, type=int, default=[0, 0], metavar=("M", "N"))
    p.set_defaults(func=cmd_cup)

    p = sub.add_parser("equivariant", help="equivariant subcomplex dimensions and checks")
    common(p)
    p.set_defaults(func=cmd_equivariant)

    p = sub.add_parser("deform", help="degree-2 classes and infinitesimal deformations")
    common(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("example", help="write a named example structure file")
    p.add_argument("name", choices=EXAMPLE_NAMES)
    p.add_argument("--out", required=True)
    p.add_argument("--json", dest="json_path")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    try:
        report = args.func(args)
    except StructureParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except EntwineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    rep.render_text(report, elapsed=time.time() - started)
    if args.json_path:
        rep.write_json(report, args.json_path)
    return EXIT_OK if rep.all_passed(report) else EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
