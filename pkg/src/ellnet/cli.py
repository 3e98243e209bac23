"""Command-line front end: table reproduction, symmetry data, verification.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import render, symmetry, theorems
from .curve import CurvePoint, INFINITY, WeierstrassCurve, rational_point
from .errors import EllnetError
from .net import EllipticNet, ReducedNet, recurrence_check

USAGE_ERROR = 2
VERIFY_FAILURE = 1


def parse_curve(text: str) -> WeierstrassCurve:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 5:
        raise ValueError('curve must be "a1,a2,a3,a4,a6"')
    return WeierstrassCurve(*(int(s) for s in parts))


def parse_point(text: str) -> CurvePoint:
    text = text.strip()
    if text == "inf":
        return INFINITY
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f'point {text!r} is not "(x,y)" or "inf"')
    x, y = (Fraction(s.strip()) for s in text[1:-1].split(","))
    return rational_point(x, y)


def parse_points(text: str) -> tuple[CurvePoint, ...]:
    return tuple(parse_point(s) for s in text.split(";") if s.strip())


def parse_grid(text: str) -> tuple[int, int]:
    cols, rows = text.lower().split("x")
    return int(cols), int(rows)


def parse_index(text: str) -> tuple[int, ...]:
    return tuple(int(s) for s in text.strip().lstrip("(").rstrip(")").split(","))


def _oriented_points(args) -> tuple[CurvePoint, ...]:
    points = parse_points(args.points)
    if getattr(args, "orientation", "qp") == "pq":
        points = tuple(reversed(points))
    return points


def _build_net(args) -> EllipticNet:
    return EllipticNet(parse_curve(args.curve), _oriented_points(args))


def _table_worker(curve_text: str, points_text: str, orientation: str, kind: str,
                  prime: int | None, col: int, rows: int) -> list[str]:
    """One grid column, for --jobs; returns plain string values."""
    curve = parse_curve(curve_text)
    points = parse_points(points_text)
    if orientation == "pq":
        points = tuple(reversed(points))
    net = EllipticNet(curve, points)
    reduced = ReducedNet(net, prime) if kind == "reduced" else None
    out = []
    for r in range(rows):
        if kind == "denom":
            out.append(str(net.denominator((col, r))))
        elif kind == "net":
            out.append(render.plain_string(net.value((col, r))))
        else:
            out.append(str(reduced.value((col, r)).residue))
    return out


def _table_values(args, kind: str) -> "dict[tuple[int, int], Fraction]":
    cols, rows = parse_grid(args.grid)
    prime = getattr(args, "prime", None)
    values: dict[tuple[int, int], Fraction] = {}
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [
                pool.submit(_table_worker, args.curve, args.points, args.orientation,
                            kind, prime, c, rows)
                for c in range(cols)
            ]
            for c, fut in enumerate(futures):
                for r, text in enumerate(fut.result()):
                    values[(c, r)] = Fraction(text)
        return values
    net = _build_net(args)
    reduced = ReducedNet(net, prime) if kind == "reduced" else None
    for c in range(cols):
        for r in range(rows):
            if kind == "denom":
                values[(c, r)] = Fraction(net.denominator((c, r)))
            elif kind == "net":
                values[(c, r)] = net.value((c, r))
            else:
                values[(c, r)] = Fraction(reduced.value((c, r)).residue)
    return values


def _emit_table(args, kind: str) -> int:
    cols, rows = parse_grid(args.grid)
    values = _table_values(args, kind)
    entry = values.__getitem__
    if args.format == render.JSON_FORMAT:
        print(json.dumps(render.table_json(entry, cols, rows)))
    else:
        print(render.table_text(entry, cols, rows, args.format))
    return 0


def cmd_denom_table(args) -> int:
    return _emit_table(args, "denom")


def cmd_net_table(args) -> int:
    return _emit_table(args, "net")


def cmd_reduced_table(args) -> int:
    return _emit_table(args, "reduced")


def cmd_symmetry(args) -> int:
    net = ReducedNet(_build_net(args), args.prime)
    sd = symmetry.build_symmetry_data(net)
    if args.format == render.JSON_FORMAT:
        print(json.dumps(sd.to_dict()))
        return 0
    basis = sd.lattice.basis
    cells = [f"p={sd.p}"]
    cells += [f"lambda{i + 1}={list(basis[i])}" for i in range(sd.rank)]
    cells += [f"xi(lambda{i + 1})={sd.xi_basis[i].residue}" for i in range(sd.rank)]
    for i in range(sd.rank):
        for j in range(i + 1, sd.rank):
            cells.append(f"chi(lambda{i + 1},lambda{j + 1})={sd.chi_basis[i][j].residue}")
    for i in range(sd.rank):
        for j in range(sd.rank):
            cells.append(f"chi(lambda{i + 1},e{j + 1})={sd.chi_axis[i][j].residue}")
    print(" | ".join(cells))
    return 0


def cmd_eval(args) -> int:
    v = parse_index(args.index)
    net = ReducedNet(_build_net(args), args.prime)
    if args.method == "direct":
        print(net.value(v).residue)
    else:
        sd = symmetry.build_symmetry_data(net)
        print(symmetry.eval_by_symmetry(sd, v).residue)
    return 0


def cmd_verify(args) -> int:
    net = _build_net(args)
    if args.check != "recurrence" and args.prime is None:
        raise ValueError(f"--prime is required for the {args.check} check")
    failures = 0

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f": {detail}"
        print(line)
        if not ok:
            failures += 1

    if args.check == "ayad":
        rep = theorems.ayad_equivalence_report(net, args.prime, args.radius, args.n_max)
        report("ayad all-equivalent", rep.all_equivalent,
               json.dumps(rep.to_dict()["properties"]))
    elif args.check == "valuation":
        rep = theorems.valuation_match_report(
            net, args.prime, args.radius,
            require_nonsingular=not args.allow_singular)
        report(f"valuation match mod {args.prime}", rep.ok,
               f"{len(rep.mismatches)} mismatches")
    elif args.check == "recurrence":
        bad = recurrence_check(net.value, net.rank, args.radius, args.trials, args.seed)
        report("net recurrence", not bad, f"{len(bad)} violations / {args.trials} trials")
    elif args.check == "epsilon":
        ok = theorems.epsilon_quadratic_check(net, args.prime, args.radius)
        report(f"epsilon parallelogram mod {args.prime}", ok)
    elif args.check == "symmetry-props":
        reduced = ReducedNet(net, args.prime)
        sd = symmetry.build_symmetry_data(reduced)
        basis = sd.lattice.basis
        ok = True
        for i in range(sd.rank):
            for j in range(sd.rank):
                ok &= sd.chi_basis[i][j] == sd.chi_basis[j][i]
        for i in range(sd.rank):
            for j in range(sd.rank):
                lam = tuple(a + b for a, b in zip(basis[i], basis[j]))
                lhs = symmetry.xi(reduced, sd.lattice, lam)
                ok &= lhs == sd.xi_basis[i] * sd.xi_basis[j] * sd.chi_basis[i][j]
            ok &= sd.xi_basis[i] ** 2 == sd.chi_basis[i][i]
        report(f"chi/xi identities mod {args.prime}", bool(ok))
        report(f"(q-1)-periodicity mod {args.prime}",
               symmetry.periodicity_check(sd, samples=args.trials // 10 or 10, seed=args.seed))
    return VERIFY_FAILURE if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellnet",
        description="Elliptic nets, net polynomials and their symmetries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid=False, prime=False, prime_required=False):
        p.add_argument("--curve", required=True, help='coefficients "a1,a2,a3,a4,a6"')
        p.add_argument("--points", required=True, help='points "(x,y);(x,y)"')
        p.add_argument("--orientation", choices=("qp", "pq"), default="qp",
                       help="qp uses the points as given (table convention), pq swaps them")
        p.add_argument("--jobs", type=int, default=1)
        if grid:
            p.add_argument("--grid", required=True, help='"COLSxROWS"')
            p.add_argument("--format", choices=(render.PLAIN, render.FACTORED,
                                                render.JSON_FORMAT), default=render.PLAIN)
        if prime:
            p.add_argument("--prime", type=int, required=prime_required)

    p = sub.add_parser("denom-table", help="denominator net grid")
    common(p, grid=True)
    p.set_defaults(func=cmd_denom_table)

    p = sub.add_parser("net-table", help="net polynomial value grid")
    common(p, grid=True)
    p.set_defaults(func=cmd_net_table)

    p = sub.add_parser("reduced-table", help="net values reduced mod p")
    common(p, grid=True, prime=True, prime_required=True)
    p.set_defaults(func=cmd_reduced_table)

    p = sub.add_parser("symmetry", help="zero lattice and xi/chi tables mod p")
    common(p, prime=True, prime_required=True)
    p.add_argument("--format", choices=(render.PLAIN, render.JSON_FORMAT),
                   default=render.JSON_FORMAT)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("eval", help="single net value mod p")
    common(p, prime=True, prime_required=True)
    p.add_argument("--index", required=True, help='"v1,v2"')
    p.add_argument("--method", choices=("symmetry", "direct"), default="symmetry")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run an instance checker")
    p.add_argument("check", choices=("ayad", "valuation", "recurrence",
                                     "symmetry-props", "epsilon"))
    common(p, prime=True)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--n-max", type=int, default=12, dest="n_max")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-singular", action="store_true",
                   help="disable the nonsingular-reduction gate of the valuation check")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (EllnetError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
