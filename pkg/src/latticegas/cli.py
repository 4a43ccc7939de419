"""Command-line front end.

Exit codes: 0 success, 1 a mathematical verification failed (for example a
perfection check returned false), 2 usage error. Reports go to standard
output; progress chatter goes to standard error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .configs import density, is_admissible_config, is_perfect, shift_count
from .excitations import (
    excitation_report,
    iia_census,
    make_insertion,
    window_census,
)
from .families import (
    build_bcc,
    build_cubic,
    build_d4_family,
    build_fcc,
    build_layered_2l2,
    build_layered_d5,
    build_layered_d6_rhombic,
    build_layered_d6_tri,
    build_phi9,
    build_phi10,
    pc_census,
    sliding_witness,
)
from .forces import UnsupportedThresholdError, verify_forces
from .reporting import (
    COMPUTED,
    ReportEnvelope,
    config_payload,
    frac_str,
    jsonable,
    load_config_file,
    load_site_file,
    sublattice_csv_rows,
    table_densities,
)
from .sublattices import (
    Quaternion,
    classify_classes,
    compare_class_counts,
    euler_rodrigues,
    fcc_census,
    hnf,
    r3_brute,
    r3_formula,
)

USAGE_ERROR = 2
VERIFICATION_FAILURE = 1


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _parse_triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated integers")
    try:
        x, y, z = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("coordinates must be integers") from None
    return (x, y, z)


def _parse_quadruple(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated integers")
    try:
        a, b, c, d = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("components must be integers") from None
    return (a, b, c, d)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    json_group = common.add_mutually_exclusive_group()
    json_group.add_argument("--json", dest="json", action="store_true", default=True,
                            help="emit the JSON report (default)")
    json_group.add_argument("--no-json", dest="json", action="store_false",
                            help="emit a plain-text rendering instead")
    common.add_argument("--threads", type=int, default=None, metavar="N",
                        help="worker-count hint; results are identical for any value")

    parser = argparse.ArgumentParser(
        prog="latgas",
        description="Exact-arithmetic toolkit for dense hard-core packings on Z^3.",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    p_forces = sub.add_parser("forces", help="force-table verification")
    forces_sub = p_forces.add_subparsers(dest="action", required=True)
    p_fv = forces_sub.add_parser("verify", parents=[common],
                                 help="exhaustive ball search for one threshold")
    p_fv.add_argument("--d2", type=int, required=True, help="squared exclusion distance")

    p_pc = sub.add_parser("pc", help="periodic configurations")
    pc_sub = p_pc.add_subparsers(dest="action", required=True)

    p_build = pc_sub.add_parser("build", parents=[common], help="construct a named family member")
    p_build.add_argument("--d2", type=int, required=True)
    p_build.add_argument("--family", required=True,
                         choices=["cubic", "fcc", "bcc", "d4", "d5", "d6tri", "d6rh",
                                  "phi9", "phi10", "2l2"])
    p_build.add_argument("--i", type=int, default=0, help="orientation index (layered and phi families)")
    p_build.add_argument("--seq", default=None, help="layer digit word, e.g. 01 or 012")
    p_build.add_argument("--l", type=int, default=None, help="scale parameter (cubic/fcc/bcc/2l2) or variant (phi families)")

    p_check = pc_sub.add_parser("check", parents=[common], help="admissibility and perfection check")
    p_check.add_argument("--d2", type=int, required=True)
    p_check.add_argument("--in", dest="infile", required=True, metavar="FILE",
                         help="configuration JSON (bare payload or a pc build report)")

    p_census = pc_sub.add_parser("census", parents=[common], help="count distinct perfect configurations")
    p_census.add_argument("--d2", type=int, required=True)

    p_slide = pc_sub.add_parser("slide", parents=[common], help="block-swap witness cost")
    p_slide.add_argument("--l", type=int, required=True)
    p_slide.add_argument("--n", type=int, required=True)

    p_table = sub.add_parser("table", help="summary tables")
    table_sub = p_table.add_subparsers(dest="action", required=True)
    p_td = table_sub.add_parser("densities", parents=[common],
                                help="census and density per threshold, all computed")
    p_td.add_argument("--lmax", type=int, default=3,
                      help="append close-packing rows 2l^2 for l up to this bound")

    p_exc = sub.add_parser("exc", help="excitations over a perfect background")
    exc_sub = p_exc.add_subparsers(dest="action", required=True)

    p_cls = exc_sub.add_parser("classify", parents=[common], help="type of a single insertion site")
    p_cls.add_argument("--d2", type=int, required=True)
    p_cls.add_argument("--pc", required=True, metavar="FILE")
    p_cls.add_argument("--site", type=_parse_triple, required=True, metavar="x,y,z")

    p_rep = exc_sub.add_parser("report", parents=[common], help="energy accounting for an insertion set")
    p_rep.add_argument("--d2", type=int, required=True)
    p_rep.add_argument("--pc", required=True, metavar="FILE")
    p_rep.add_argument("--insert", required=True, metavar="FILE",
                       help='JSON site list: [[x,y,z],...] or {"sites": [...]}')

    p_iia = exc_sub.add_parser("iia-density", parents=[common],
                               help="density of lowest-type in-plane insertions")
    p_iia.add_argument("--pc", required=True, metavar="FILE")

    p_win = exc_sub.add_parser("window-census", parents=[common],
                               help="exhaust low-energy insertion sets in a window")
    p_win.add_argument("--d2", type=int, default=5)
    p_win.add_argument("--layers", type=int, default=2)
    p_win.add_argument("--radius", type=int, default=8,
                       help="squared radius of the window ball")
    p_win.add_argument("--pc", default=None, metavar="FILE",
                       help="background configuration (default: the built-in layered one for d2=5)")

    p_sub = sub.add_parser("sublat", help="cubic sublattices and their symmetry classes")
    sublat_sub = p_sub.add_subparsers(dest="action", required=True)

    p_enum = sublat_sub.add_parser("enumerate", parents=[common], help="all cubic sublattices of one norm")
    p_enum.add_argument("--ell", type=int, required=True)
    p_enum.add_argument("--fcc", action="store_true",
                        help="report the close-packed doublings instead of the raw list")
    p_enum.add_argument("--format", choices=["json", "csv"], default="json")

    p_classes = sublat_sub.add_parser("classes", parents=[common],
                                      help="symmetry classes plus formula comparison")
    p_classes.add_argument("--ell", type=int, required=True)

    p_r3 = sublat_sub.add_parser("r3", parents=[common], help="representations of ell^2 as three squares")
    p_r3.add_argument("--ell", type=int, required=True)
    p_r3.add_argument("--brute", action="store_true", help="count by brute force instead of the closed form")

    p_quat = sublat_sub.add_parser("quaternion", parents=[common],
                                   help="rotation matrix and sublattice of one integer quaternion")
    p_quat.add_argument("quat", type=_parse_quadruple, metavar="a,b,c,d")

    return parser


# --- subcommand bodies ---------------------------------------------------------


def _emit(envelope: ReportEnvelope, as_json: bool) -> None:
    sys.stdout.write(envelope.to_json() if as_json else envelope.to_text())


def _cmd_forces_verify(args: argparse.Namespace, argv: Sequence[str]) -> int:
    _progress(f"searching the d2={args.d2} ball exhaustively...")
    report = verify_forces(args.d2)
    results = {
        "d2": report.d2,
        "config_count": report.config_count,
        "fstar": frac_str(report.fstar),
        "second_max": frac_str(report.second_max),
        "max_occupancy": report.max_occupancy,
        "signatures": [list(sig) for sig in report.signatures],
    }
    _emit(ReportEnvelope(tuple(argv), {"d2": args.d2}, results), args.json)
    return 0 if report.fstar == Fraction(1) else VERIFICATION_FAILURE


def _build_family(args: argparse.Namespace):
    fam = args.family
    if fam == "cubic":
        _require(args.l is not None, "--family cubic needs --l")
        return build_cubic(args.l)
    if fam == "fcc":
        _require(args.l is not None, "--family fcc needs --l")
        return build_fcc(args.l)
    if fam == "bcc":
        _require(args.l is not None, "--family bcc needs --l (the cube side)")
        return build_bcc(args.l)
    if fam == "d4":
        return build_d4_family()
    if fam == "d5":
        _require(args.seq is not None, "--family d5 needs --seq")
        return build_layered_d5(args.i, args.seq)
    if fam == "d6tri":
        _require(args.seq is not None, "--family d6tri needs --seq")
        return build_layered_d6_tri(args.i, args.seq)
    if fam == "d6rh":
        _require(args.seq is not None, "--family d6rh needs --seq")
        return build_layered_d6_rhombic(args.i, args.seq)
    if fam == "phi9":
        _require(args.l in (0, 1), "--family phi9 needs --l 0 or 1")
        return build_phi9(args.i if args.i else 1, args.l)
    if fam == "phi10":
        _require(args.l in (0, 1), "--family phi10 needs --l 0 or 1")
        return build_phi10(args.i, args.l)
    if fam == "2l2":
        _require(args.l is not None and args.seq is not None, "--family 2l2 needs --l and --seq")
        return build_layered_2l2(args.l, args.i, args.seq)
    raise AssertionError("unreachable family")


class _UsageError(Exception):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _UsageError(message)


def _cmd_pc_build(args: argparse.Namespace, argv: Sequence[str]) -> int:
    pc = _build_family(args)
    results = config_payload(pc, args.d2)
    inputs = {"d2": args.d2, "family": args.family, "i": args.i, "seq": args.seq, "l": args.l}
    _emit(ReportEnvelope(tuple(argv), inputs, results), args.json)
    return 0


def _cmd_pc_check(args: argparse.Namespace, argv: Sequence[str]) -> int:
    pc = load_config_file(args.infile, args.d2)
    admissible = is_admissible_config(pc, args.d2)
    perfect = admissible and is_perfect(pc, args.d2)
    results = {
        "admissible": admissible,
        "perfect": perfect,
        "density": frac_str(density(pc)),
        "shift_count": shift_count(pc),
    }
    _emit(ReportEnvelope(tuple(argv), {"d2": args.d2, "in": args.infile}, results), args.json)
    return 0 if perfect else VERIFICATION_FAILURE


def _cmd_pc_census(args: argparse.Namespace, argv: Sequence[str]) -> int:
    _progress(f"enumerating perfect configurations at d2={args.d2}...")
    count = pc_census(args.d2)
    _emit(ReportEnvelope(tuple(argv), {"d2": args.d2}, {"census": count}), args.json)
    return 0


def _cmd_pc_slide(args: argparse.Namespace, argv: Sequence[str]) -> int:
    removed = sliding_witness(args.l, args.n)
    bound = 2 * args.l * args.l
    results = {"removed": removed, "bound": bound, "within_bound": removed <= bound}
    _emit(ReportEnvelope(tuple(argv), {"l": args.l, "n": args.n}, results), args.json)
    return 0 if removed <= bound else VERIFICATION_FAILURE


def _cmd_table_densities(args: argparse.Namespace, argv: Sequence[str]) -> int:
    extra = tuple(range(3, max(3, args.lmax) + 1))
    rows = table_densities(extra)
    results = {"rows": [[d2, marker, frac_str(dens)] for d2, marker, dens in rows]}
    _emit(ReportEnvelope(tuple(argv), {"lmax": args.lmax}, results), args.json)
    return 0


def _cmd_exc_classify(args: argparse.Namespace, argv: Sequence[str]) -> int:
    from .excitations import classify_insertion

    pc = load_config_file(args.pc, args.d2)
    kind = classify_insertion(pc, args.site, args.d2)
    results = {"site": list(args.site), "type": kind}
    _emit(ReportEnvelope(tuple(argv), {"d2": args.d2, "pc": args.pc, "site": list(args.site)}, results), args.json)
    return 0


def _cmd_exc_report(args: argparse.Namespace, argv: Sequence[str]) -> int:
    pc = load_config_file(args.pc, args.d2)
    sites = load_site_file(args.insert)
    insertion = make_insertion(pc, args.d2, sites)
    rep = excitation_report(pc, insertion, args.d2)
    results = {
        "inserted": rep.inserted_count,
        "repelled": [list(s) for s in rep.repelled],
        "energy": rep.energy,
        "excesses": [[list(site), frac_str(val)] for site, val in sorted(rep.excesses.items())],
        "type": rep.type,
        "background_perfect": rep.background_perfect,
    }
    _emit(ReportEnvelope(tuple(argv), {"d2": args.d2, "pc": args.pc, "insert": args.insert}, results), args.json)
    return 0


def _infer_layer_scale(pc) -> Optional[int]:
    d2 = pc.context_d2
    if d2 is None or d2 == 5:
        return None
    half, rem = divmod(d2, 2)
    import math

    l = math.isqrt(half)
    if rem or l * l != half:
        raise _UsageError(f"iia-density needs a layered configuration, got d2={d2}")
    return l


def _cmd_exc_iia_density(args: argparse.Namespace, argv: Sequence[str]) -> int:
    pc = load_config_file(args.pc)
    l = _infer_layer_scale(pc)
    count, dens = iia_census(pc, l)
    results = {"count": count, "density": frac_str(dens)}
    _emit(ReportEnvelope(tuple(argv), {"pc": args.pc}, results), args.json)
    return 0


def _cmd_exc_window_census(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.pc is not None:
        pc = load_config_file(args.pc, args.d2)
    else:
        _require(args.d2 == 5, "window-census without --pc only supports --d2 5")
        pc = build_layered_d5(0, "01")
    _progress(f"scanning insertion sets (layers={args.layers}, radius={args.radius})...")
    census = window_census(pc, args.d2, args.layers, args.radius)
    results = {
        "window_sites": census.window_sites,
        "sets_scanned": census.sets_scanned,
        "survivors": [[list(s) for s in group] for group in census.low_energy_terminal],
        "all_terminal_iia": census.all_terminal_iia,
    }
    inputs = {"d2": args.d2, "layers": args.layers, "radius": args.radius, "pc": args.pc}
    _emit(ReportEnvelope(tuple(argv), inputs, results), args.json)
    return 0 if census.all_terminal_iia else VERIFICATION_FAILURE


def _cmd_sublat_enumerate(args: argparse.Namespace, argv: Sequence[str]) -> int:
    if args.fcc:
        report = fcc_census(args.ell)
        results = {
            "fcc_sublattices": report.fcc_sublattices,
            "pcs_total": report.pcs_total,
            "flagged_layered_continuum": report.flagged_layered_continuum,
        }
        _emit(ReportEnvelope(tuple(argv), {"ell": args.ell, "fcc": True}, results), args.json)
        return 0
    _progress(f"enumerating cubic sublattices of norm {args.ell}...")
    classes = classify_classes(args.ell)
    if args.format == "csv":
        sys.stdout.write("\n".join(sublattice_csv_rows(classes)) + "\n")
        return 0
    results = {
        "count": sum(cl.size for cl in classes),
        "sublattices": [
            {"basis": [list(r) for r in member], "class_id": idx, "stabilizer_order": cl.stabilizer_order}
            for idx, cl in enumerate(classes, start=1)
            for member in cl.members
        ],
    }
    _emit(ReportEnvelope(tuple(argv), {"ell": args.ell, "fcc": False}, results), args.json)
    return 0


def _cmd_sublat_classes(args: argparse.Namespace, argv: Sequence[str]) -> int:
    classes = classify_classes(args.ell)
    cmp = compare_class_counts(args.ell)
    results = {
        "classes": [
            {
                "size": cl.size,
                "stabilizer_order": cl.stabilizer_order,
                "representative": [list(r) for r in cl.representative],
                "parameters": list(cl.parameters) if cl.parameters else None,
            }
            for cl in classes
        ],
        "oracle_histogram": {str(k): v for k, v in sorted(cmp.oracle.items())},
        "predicted_histogram": {str(k): v for k, v in sorted(cmp.predicted.items())},
        "mismatched_sizes": list(cmp.mismatched_sizes),
    }
    _emit(ReportEnvelope(tuple(argv), {"ell": args.ell}, results), args.json)
    return 0


def _cmd_sublat_r3(args: argparse.Namespace, argv: Sequence[str]) -> int:
    value = r3_brute(args.ell * args.ell) if args.brute else r3_formula(args.ell)
    results = {"ell": args.ell, "r3": value, "method": "brute" if args.brute else "formula"}
    _emit(ReportEnvelope(tuple(argv), {"ell": args.ell, "brute": args.brute}, results), args.json)
    return 0


def _cmd_sublat_quaternion(args: argparse.Namespace, argv: Sequence[str]) -> int:
    q = Quaternion(*args.quat)
    rows = euler_rodrigues(q)
    results = {
        "quaternion": list(args.quat),
        "norm_sq": q.norm_sq,
        "matrix": [list(r) for r in rows],
        "sublattice_basis": [list(r) for r in hnf([list(r) for r in rows])],
    }
    _emit(ReportEnvelope(tuple(argv), {"quaternion": list(args.quat)}, results), args.json)
    return 0


_DISPATCH = {
    ("forces", "verify"): _cmd_forces_verify,
    ("pc", "build"): _cmd_pc_build,
    ("pc", "check"): _cmd_pc_check,
    ("pc", "census"): _cmd_pc_census,
    ("pc", "slide"): _cmd_pc_slide,
    ("table", "densities"): _cmd_table_densities,
    ("exc", "classify"): _cmd_exc_classify,
    ("exc", "report"): _cmd_exc_report,
    ("exc", "iia-density"): _cmd_exc_iia_density,
    ("exc", "window-census"): _cmd_exc_window_census,
    ("sublat", "enumerate"): _cmd_sublat_enumerate,
    ("sublat", "classes"): _cmd_sublat_classes,
    ("sublat", "r3"): _cmd_sublat_r3,
    ("sublat", "quaternion"): _cmd_sublat_quaternion,
}


def run(argv: Sequence[str]) -> int:
    """Parse and execute; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        # argparse exits 0 for --help, 2 for usage problems
        return int(exc.code or 0)
    handler = _DISPATCH[(args.group, args.action)]
    try:
        return handler(args, argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (UnsupportedThresholdError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
