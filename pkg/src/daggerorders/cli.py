"""Command-line front end: reproducible JSON-in/JSON-out computations.

Every subcommand prints a single JSON object (sorted keys, stable
separators), so identical inputs give byte-identical output.  Errors print
{"error": ...} and exit nonzero: 2 for malformed input, 1 for domain errors.
"""

import argparse
import json
import sys
from fractions import Fraction

from .exactnum import (
    INF,
    OO,
    FactorizationError,
    format_rational,
    hilbert_symbol,
    parse_rational,
    quadratic_defect,
)
from .lattices import (
    IntegralLattice4,
    NotAnOrderError,
    Order4,
    RankError,
    intersect,
    reduced_discriminant,
)
from .localquad import count_classes, standard_lattice
from .maximality import enlarge_to_maximal_dagger, is_maximal_dagger_order
from .quatalg import (
    AlgebraMismatchError,
    OrthogonalInvolution,
    QuaternionAlgebra,
    algebra_discriminant,
)


class UsageError(ValueError):
    pass


def _emit(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON file {path}: {exc}") from exc


def _algebra_from_args(args):
    try:
        return QuaternionAlgebra(parse_rational(args.a), parse_rational(args.b))
    except ValueError as exc:
        raise UsageError(f"malformed algebra: {exc}") from exc


def _involution_from_args(args, algebra=None):
    if getattr(args, "involution_file", None):
        data = _load_json(args.involution_file)
        try:
            return OrthogonalInvolution.from_json_dict(data, algebra=algebra)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"malformed involution file: {exc}") from exc
    if algebra is None:
        algebra = _algebra_from_args(args)
    try:
        w, x, y, z = (parse_rational(c) for c in args.u.split(","))
        return OrthogonalInvolution(algebra.element(w, x, y, z))
    except ValueError as exc:
        raise UsageError(f"malformed involution coordinates: {exc}") from exc


def _order_from_file(path):
    data = _load_json(path)
    try:
        lat = IntegralLattice4.from_json_dict(data)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed lattice file {path}: {exc}") from exc
    return Order4.from_lattice(lat)


def _ideal_payload(ideal):
    return {"disc": str(ideal.generator)}


def _valuation_payload(v):
    return "inf" if v == INF else int(v)


def cmd_disc_algebra(args):
    _emit(_ideal_payload(algebra_discriminant(_algebra_from_args(args))))


def cmd_disc_involution(args):
    inv = _involution_from_args(args)
    _emit({"disc_class": format_rational(Fraction(inv.discriminant().representative))})


def cmd_intersect(args):
    o1 = _order_from_file(args.order_files[0])
    o2 = _order_from_file(args.order_files[1])
    _emit(intersect(o1, o2).to_json_dict())


def cmd_check_maximal(args):
    order = _order_from_file(args.order_file)
    inv = _involution_from_args(args, algebra=order.algebra)
    if inv.algebra != order.algebra:
        raise AlgebraMismatchError("involution and order algebras differ")
    cert = is_maximal_dagger_order(order, inv)
    _emit(cert.to_json_dict())


def cmd_enlarge(args):
    order = _order_from_file(args.order_file)
    inv = _involution_from_args(args, algebra=order.algebra)
    if inv.algebra != order.algebra:
        raise AlgebraMismatchError("involution and order algebras differ")
    out = enlarge_to_maximal_dagger(order, inv)
    payload = out.to_json_dict()
    payload["disc"] = str(reduced_discriminant(out).generator)
    _emit(payload)


def _parse_rational_arg(text, what):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"malformed rational for {what}: {text!r}") from exc


def _parse_int_arg(text, what):
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"malformed integer for {what}: {text!r}") from exc


def cmd_local_classify(args):
    p = _parse_int_arg(args.p, "-p")
    lam = _parse_rational_arg(args.lam, "--lam")
    classes = count_classes(p, lam)
    reps = _class_representatives(p, lam, classes)
    _emit(
        {
            "p": p,
            "lambda": format_rational(lam),
            "classes": classes,
            "representatives": reps,
        }
    )


def _class_representatives(p, lam, classes):
    """One Gram matrix per isomorphism class.

    At odd primes (and dyadic defect-p) the standard lattice represents the
    single class; otherwise the unimodular Grams ((2^t, 1), (1, (lam+1)/2^t))
    realize the norm-generator orders t = 0 .. classes-1.
    """
    if classes == 1:
        g = standard_lattice(p, lam).gram
        return [[[format_rational(x) for x in row] for row in g]]
    out = []
    for t in range(classes):
        alpha = Fraction(2) ** t
        beta = (lam + 1) / alpha
        gram = [[alpha, Fraction(1)], [Fraction(1), beta]]
        out.append([[format_rational(x) for x in row] for row in gram])
    return out


def cmd_defect(args):
    a = _parse_rational_arg(args.a, "-a")
    p = _parse_int_arg(args.p, "-p")
    d = quadratic_defect(a, p)
    _emit({"prime": d.prime, "valuation": _valuation_payload(d.valuation)})


def cmd_hilbert(args):
    a = _parse_rational_arg(args.a, "-a")
    b = _parse_rational_arg(args.b, "-b")
    place = OO if args.p in ("oo", "inf") else _parse_int_arg(args.p, "-p")
    _emit({"symbol": hilbert_symbol(a, b, place)})


def build_parser():
    parser = argparse.ArgumentParser(
        prog="daggerorders",
        description="orders with involution in quaternion algebras over Q",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="emit JSON (the default and the only stable output mode)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_disc = sub.add_parser("disc-algebra", help="discriminant ideal of (a,b/Q)")
    p_disc.add_argument("-a", required=True)
    p_disc.add_argument("-b", required=True)
    p_disc.set_defaults(func=cmd_disc_algebra)

    p_dinv = sub.add_parser(
        "disc-involution", help="square class of the involution discriminant"
    )
    p_dinv.add_argument("-a", required=True)
    p_dinv.add_argument("-b", required=True)
    p_dinv.add_argument("-u", required=True, help="pure quaternion as w,x,y,z")
    p_dinv.set_defaults(func=cmd_disc_involution)

    p_int = sub.add_parser("intersect", help="intersection of two orders")
    p_int.add_argument("order_files", nargs=2)
    p_int.set_defaults(func=cmd_intersect)

    p_chk = sub.add_parser("check-maximal", help="maximality certificate")
    p_chk.add_argument("order_file")
    p_chk.add_argument("involution_file")
    p_chk.set_defaults(func=cmd_check_maximal)

    p_enl = sub.add_parser("enlarge", help="grow to a maximal stable order")
    p_enl.add_argument("order_file")
    p_enl.add_argument("involution_file")
    p_enl.set_defaults(func=cmd_enlarge)

    p_loc = sub.add_parser(
        "local-classify", help="count local isomorphism classes at p"
    )
    p_loc.add_argument("-p", required=True)
    p_loc.add_argument("-l", "--lam", required=True, dest="lam")
    p_loc.set_defaults(func=cmd_local_classify)

    p_def = sub.add_parser("defect", help="quadratic defect of a at p")
    p_def.add_argument("-a", required=True)
    p_def.add_argument("-p", required=True)
    p_def.set_defaults(func=cmd_defect)

    p_hil = sub.add_parser("hilbert", help="Hilbert symbol (a,b)_p")
    p_hil.add_argument("-a", required=True)
    p_hil.add_argument("-b", required=True)
    p_hil.add_argument("-p", required=True, help="prime, or oo for the real place")
    p_hil.set_defaults(func=cmd_hilbert)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc)})
        return 2
    except (
        NotAnOrderError,
        RankError,
        AlgebraMismatchError,
        FactorizationError,
        ValueError,
        ZeroDivisionError,
    ) as exc:
        _emit({"error": str(exc)})
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
