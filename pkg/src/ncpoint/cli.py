"""Command-line dispatch.

Exit codes: 0 when every requested check passes, 1 for a verified
mathematical failure, 2 for usage, parse, or resource errors.
"""

from __future__ import annotations

import argparse
import shlex
import sys
import time
from pathlib import Path
from random import Random

from .colorlie import (
    ColorLieAlgebra,
    check_color_axioms,
    epsilon_symmetric,
    heisenberg_from_color,
    koszul_complex,
    koszul_verify,
    n_invariant,
    parse_colorlie,
    u_presentation,
)
from .freealg import ParseError, Presentation, parse_algebra, parse_poly, poly_to_str
from .normal import (
    HeisenbergWitness,
    NonUniqueSolutionError,
    NotNormalError,
    check_power_identities,
    find_witness,
    is_q_heisenberg,
    nu_automorphism,
)
from .points import (
    SamplingError,
    compare_point_sets,
    extension_fiber,
    format_point,
    format_points,
    is_truncated_point_module,
    skew_point_variety,
    stabilization_check,
    torsionfree_search,
)
from .quotient import (
    BudgetError,
    DEFAULT_WORD_BUDGET,
    DegreeCapError,
    QuotientCache,
    hilbert,
    minimal_relation_degrees,
)
from .reports import RunReport
from .scalars import ScalarParseError, parse_scalar, scalar_to_str
from .veronese import TwistSystem, verify_bold_normal, weyl_witness

USAGE_ERROR = 2
MATH_FAILURE = 1


def default_cap(num_generators: int) -> int:
    return 8 if num_generators <= 2 else 5


def _load_algebra(path: str) -> tuple[Presentation, bytes]:
    data = Path(path).read_bytes()
    return parse_algebra(data.decode()), data


def _load_colorlie(path: str) -> tuple[ColorLieAlgebra, bytes]:
    data = Path(path).read_bytes()
    return parse_colorlie(data.decode()), data


def _parse_points(text: str, pres: Presentation):
    pts = []
    for chunk in text.split():
        coords = tuple(parse_scalar(c) for c in chunk.strip("()").split(":"))
        if len(coords) != pres.num_generators:
            raise ParseError(
                f"point {chunk!r} needs {pres.num_generators} coordinates")
        pts.append(coords)
    if not pts:
        raise ParseError("empty point list")
    return pts


def _witness_from_args(args, pres) -> HeisenbergWitness:
    g = parse_poly(args.g, pres.names)
    x = parse_poly(args.x, pres.names)
    y = parse_poly(args.y, pres.names)
    u = parse_scalar(args.u)
    return HeisenbergWitness(g=g, x=x, y=y, u=u)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_hilbert(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    dims = hilbert(pres, args.max_degree, args.budget)
    report.add("dimensions", ",".join(str(d) for d in dims))
    return 0


def cmd_minrel(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    counts = minimal_relation_degrees(pres, args.max_degree, args.budget)
    if counts:
        for d in sorted(counts):
            report.add(f"degree {d}", str(counts[d]))
    else:
        report.add("minimal relations", "none")
    return 0


def _cache_for(args, pres):
    cap = args.cap if args.cap is not None else default_cap(pres.num_generators)
    return QuotientCache(pres, cap, args.budget)


def cmd_heisenberg(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    cache = _cache_for(args, pres)
    report.add("cap", str(cache.cap))
    if args.x and args.y and args.u:
        witness = _witness_from_args(args, pres)
    else:
        g = parse_poly(args.g, pres.names)
        witness = find_witness(cache, g, rng=Random(args.seed))
        if witness is None:
            report.check("witness search", False, "no (x, y, u) found")
            return MATH_FAILURE
        report.add("found x", poly_to_str(witness.x, pres.names))
        report.add("found y", poly_to_str(witness.y, pres.names))
        report.add("found u", scalar_to_str(witness.u))
    res = is_q_heisenberg(cache, witness)
    report.add_block("q'-heisenberg", res.lines())
    report.check("q'-heisenberg verdict", res.ok,
                 "" if res.ok else ", ".join(res.failed_clauses()))
    return 0 if res.ok else MATH_FAILURE


def cmd_power_ids(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    cache = _cache_for(args, pres)
    witness = _witness_from_args(args, pres)
    pre = is_q_heisenberg(cache, witness)
    report.check("witness is q'-heisenberg", pre.ok)
    ok = check_power_identities(cache, witness, args.r_max)
    report.check(f"power identities for r <= {args.r_max}", ok)
    return 0 if (ok and pre.ok) else MATH_FAILURE


def cmd_qv_check(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    cache = _cache_for(args, pres)
    g = parse_poly(args.g, pres.names)
    try:
        ok, details = verify_bold_normal(cache, g)
    except (ValueError, NotNormalError, NonUniqueSolutionError) as exc:
        report.check("bold-g normality precondition", False, str(exc))
        return MATH_FAILURE
    report.add("entry identities checked", str(details.get("checked", 0)))
    if details.get("skipped"):
        report.add("entries skipped (over cap)", str(details["skipped"]))
    report.check("bold-g normal identity g a = nu(a) g", ok)
    ts = TwistSystem(nu_automorphism(cache, g))
    ok_ts = ts.validate(cache)
    report.check("twisting system law", ok_ts)
    return 0 if (ok and ok_ts) else MATH_FAILURE


def cmd_weyl_witness(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    cache = _cache_for(args, pres)
    witness = _witness_from_args(args, pres)
    try:
        cert = weyl_witness(cache, witness)
    except (NotNormalError, NonUniqueSolutionError) as exc:
        report.check("weyl witness precondition", False, str(exc))
        return MATH_FAILURE
    report.add_block("weyl identity entries", cert.lines())
    report.check("weyl witness", cert.ok,
                 "" if cert.ok else f"offending entries {cert.offending_entries()}")
    return 0 if cert.ok else MATH_FAILURE


def cmd_point_extend(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    pts = _parse_points(args.points, pres)
    ok, violation = is_truncated_point_module(pres, pts)
    if not ok:
        report.check("input is a truncated point module", False,
                     f"relation {violation[0]} window {violation[1]}")
        return MATH_FAILURE
    report.check("input is a truncated point module", True)
    fiber = extension_fiber(pres, pts)
    report.add("fiber projective dimension", str(fiber.proj_dim))
    for vec in fiber.basis:
        report.add("fiber basis point", format_point(vec))
    if fiber.empty:
        report.add("fiber", "empty")
    return 0


def cmd_torsionfree(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    g = parse_poly(args.g, pres.names)
    report.add("seed", str(args.seed))
    res = torsionfree_search(pres, g, args.length,
                             random_seeds=args.samples,
                             generic=args.generic, seed=args.seed)
    report.add_block("torsionfree search", res.lines())
    if res.found is not None:
        report.add("found module", format_points(res.found))
    return 0


def cmd_skew_variety(args, report):
    if args.colorlie:
        L, data = _load_colorlie(args.colorlie)
        report.digest_input(args.colorlie, data)
        thetas = L.theta_indices()
        omega = [[L.eps.eval(L.degrees[i], L.degrees[j]) for j in thetas]
                 for i in thetas]
    elif args.omega:
        omega = [[parse_scalar(v) for v in row.split(",")]
                 for row in args.omega.split(";")]
    else:
        raise ParseError("skew-variety needs a color Lie file or --omega")
    supports = skew_point_variety(omega)
    report.add("ambient", f"P^{len(omega) - 1}")
    for s in supports:
        report.add("maximal support", "{" + ",".join(str(i) for i in sorted(s)) + "}")
    return 0


def _presentation_from_path(path: str, args):
    if path.endswith(".cl"):
        L, data = _load_colorlie(path)
        cap = args.max_degree if args.max_degree is not None else 5
        return u_presentation(L, cap, args.budget), data
    return _load_algebra(path)


def cmd_compare(args, report):
    pres_left, data_left = _presentation_from_path(args.left, args)
    report.digest_input(args.left, data_left)
    if args.right:
        pres_right, data_right = _presentation_from_path(args.right, args)
        report.digest_input(args.right, data_right)
    else:
        if not args.left.endswith(".cl"):
            raise ParseError("compare with one file needs a color Lie input")
        L, _ = _load_colorlie(args.left)
        pres_right = epsilon_symmetric(L)
        report.add("right side", "epsilon-symmetric algebra of the degree-one part")
    report.add("seed", str(args.seed))
    res = compare_point_sets(pres_left, pres_right, args.length, args.samples,
                             Random(args.seed))
    report.add_block("point-set comparison", res.lines())
    return 0


def cmd_stabilize(args, report):
    pres, data = _load_algebra(args.algebra)
    report.digest_input(args.algebra, data)
    report.add("seed", str(args.seed))
    res = stabilization_check(pres, args.from_length, args.to_length,
                              args.samples, Random(args.seed))
    report.add_block("stabilization evidence", res.lines())
    report.check("fibers singleton and shifts valid", res.ok)
    return 0 if res.ok else MATH_FAILURE


def cmd_color_check(args, report):
    L, data = _load_colorlie(args.colorlie)
    report.digest_input(args.colorlie, data)
    ok, violations = check_color_axioms(L)
    for v in violations:
        report.add("violation", v)
    report.check("color Lie axioms", ok)
    return 0 if ok else MATH_FAILURE


def cmd_upresent(args, report):
    L, data = _load_colorlie(args.colorlie)
    report.digest_input(args.colorlie, data)
    cap = args.max_degree if args.max_degree is not None else 5
    pres = u_presentation(L, cap, args.budget)
    report.add("generators", " ".join(pres.names))
    for f in pres.relations:
        report.add("relation", poly_to_str(f, pres.names))
    report.add("dimensions", ",".join(
        str(d) for d in hilbert(pres, cap, args.budget)))
    return 0


def cmd_nl(args, report):
    L, data = _load_colorlie(args.colorlie)
    report.digest_input(args.colorlie, data)
    report.add("n_L", str(n_invariant(L)))
    return 0


def cmd_koszul(args, report):
    L, data = _load_colorlie(args.colorlie)
    report.digest_input(args.colorlie, data)
    ok_ax, violations = check_color_axioms(L)
    report.check("color Lie axioms", ok_ax,
                 "" if ok_ax else f"{len(violations)} violations")
    r_max = args.r_max if args.r_max is not None else L.dim
    K = koszul_complex(L, r_max, args.max_degree)
    res = koszul_verify(K)
    report.add_block("koszul resolution", res.lines())
    report.check("d^2 = 0", res.ok_d_squared)
    report.check("exactness in degrees 1..cap", res.ok_exact)
    return 0 if (res.ok and ok_ax) else MATH_FAILURE


def cmd_heisenberg_extract(args, report):
    L, data = _load_colorlie(args.colorlie)
    report.digest_input(args.colorlie, data)
    res = heisenberg_from_color(L, args.cap, args.budget)
    report.add("n_L", str(res.n_value))
    if res.kind == "s-epsilon":
        report.add("case", "S_epsilon (n_L = 1, no element needed)")
        return 0
    pres = res.presentation
    report.add("choice", res.chosen)
    report.add("g", poly_to_str(res.witness.g, pres.names))
    report.add("x", poly_to_str(res.witness.x, pres.names))
    report.add("y", poly_to_str(res.witness.y, pres.names))
    report.add("u", scalar_to_str(res.witness.u))
    cache = QuotientCache(pres, max(3 * res.n_value - 1, 2), args.budget)
    check = is_q_heisenberg(cache, res.witness)
    report.add_block("q'-heisenberg", check.lines())
    report.check("extracted witness verifies", check.ok)
    return 0 if check.ok else MATH_FAILURE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ncpoint",
        description="Exact checks for graded algebra presentations, "
                    "point modules, and color Lie algebras.")
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, *, seed=False, cap=False, budget=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if cap:
            p.add_argument("--cap", type=int, default=None,
                           help="degree cap (default 8 for two generators, else 5)")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_WORD_BUDGET,
                           help="per-degree word budget")

    p = sub.add_parser("hilbert", help="dimensions of the graded components")
    p.add_argument("algebra")
    p.add_argument("--max-degree", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("minrel", help="minimal relation degrees")
    p.add_argument("algebra")
    p.add_argument("--max-degree", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_minrel)

    p = sub.add_parser("heisenberg", help="verify or search a q'-Heisenberg witness")
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--u")
    common(p, seed=True, cap=True)
    p.set_defaults(func=cmd_heisenberg)

    p = sub.add_parser("power-ids", help="commutation power identities")
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--r-max", type=int, default=5)
    common(p, cap=True)
    p.set_defaults(func=cmd_power_ids)

    p = sub.add_parser("qv-check", help="bold-g normality in the quasi-Veronese algebra")
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    common(p, cap=True)
    p.set_defaults(func=cmd_qv_check)

    p = sub.add_parser("weyl-witness", help="homogeneous Weyl-algebra witness identity")
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--u", required=True)
    common(p, cap=True)
    p.set_defaults(func=cmd_weyl_witness)

    p = sub.add_parser("point-extend", help="extension fiber of a point sequence")
    p.add_argument("algebra")
    p.add_argument("--points", required=True,
                   help="space-separated projective points like '1:1 2:1'")
    common(p)
    p.set_defaults(func=cmd_point_extend)

    p = sub.add_parser("torsionfree", help="search for a truncated g-torsionfree module")
    p.add_argument("algebra")
    p.add_argument("--g", required=True)
    p.add_argument("--length", type=int, required=True,
                   help="module length (number of components)")
    p.add_argument("--samples", type=int, default=0, help="random seed points")
    p.add_argument("--generic", action=argparse.BooleanOptionalAction, default=True,
                   help="use the generic Q(t) seed and fiber parametrization")
    common(p, seed=True)
    p.set_defaults(func=cmd_torsionfree)

    p = sub.add_parser("skew-variety", help="point variety of a skew polynomial algebra")
    p.add_argument("colorlie", nargs="?", default=None)
    p.add_argument("--omega", help="rows 'a,b;c,d' of the commutation matrix")
    common(p, budget=False)
    p.set_defaults(func=cmd_skew_variety)

    p = sub.add_parser("compare", help="cross-check sampled point modules of two algebras")
    p.add_argument("left", help=".alg or .cl file")
    p.add_argument("right", nargs="?", default=None,
                   help=".alg or .cl file; defaults to the epsilon-symmetric side")
    p.add_argument("--length", type=int, required=True,
                   help="number of points per sampled sequence")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--max-degree", type=int, default=None,
                   help="relation search cap for .cl inputs")
    common(p, seed=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stabilize", help="fiber-dimension and shift evidence")
    p.add_argument("algebra")
    p.add_argument("--from", dest="from_length", type=int, required=True)
    p.add_argument("--to", dest="to_length", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    common(p, seed=True)
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("color-check", help="color Lie algebra axioms")
    p.add_argument("colorlie")
    common(p, budget=False)
    p.set_defaults(func=cmd_color_check)

    p = sub.add_parser("upresent", help="degree-one presentation of U(L)")
    p.add_argument("colorlie")
    p.add_argument("--max-degree", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_upresent)

    p = sub.add_parser("nl", help="nilpotency index of the degree-one part")
    p.add_argument("colorlie")
    common(p, budget=False)
    p.set_defaults(func=cmd_nl)

    p = sub.add_parser("koszul", help="color Koszul resolution checks")
    p.add_argument("colorlie")
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--max-degree", type=int, default=6)
    common(p)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("heisenberg-extract",
                       help="extract a q'-Heisenberg element from a color Lie algebra")
    p.add_argument("colorlie")
    p.add_argument("--cap", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_heisenberg_extract)

    return top


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    report = RunReport(command="ncpoint " + shlex.join(argv))
    start = time.monotonic()
    try:
        code = args.func(args, report)
    except (ParseError, ScalarParseError, BudgetError, DegreeCapError,
            SamplingError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if code == MATH_FAILURE:
        report.ok = False
    sys.stdout.write(report.render())
    print(f"elapsed: {time.monotonic() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
