"""Command-line front end.

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage error,
3 internal error.  Reports are JSON with ``schema: 1`` and sorted keys.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, catalog
from .lie_core import LieAlgebraError, dump_group_file, load_group_file, spec_to_dict

log = logging.getLogger("orbitquant")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ------------------------------------------------------------------ helpers

def _floats(text: str | None) -> list | None:
    if text is None:
        return None
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


def _rationals(text: str) -> list:
    try:
        return [Fraction(v.strip()) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from exc


def _ints(text: str | None) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _load_group(ref: str):
    """Catalog entry or a spec read from a group file (then ``entry`` is None)."""
    if os.path.exists(ref):
        try:
            return None, load_group_file(ref)
        except (LieAlgebraError, ValueError, KeyError) as exc:
            raise UsageError(f"invalid group file {ref}: {exc}") from exc
    try:
        entry = catalog.load(ref)
    except catalog.UnknownGroupError as exc:
        raise UsageError(str(exc.args[0]) if exc.args else str(exc)) from exc
    return entry, entry.spec


def _dump(report: dict, path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2, default=_json_default)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    print(text)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj).__name__}")


def _read_points(path: str, n: int) -> np.ndarray:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise UsageError(f"{path} is empty")
    body = rows[1:] if any(not _is_number(c) for c in rows[0]) else rows
    try:
        pts = np.array([[float(c) for c in r[:n]] for r in body if r], dtype=float)
    except ValueError as exc:
        raise UsageError(f"{path}: non-numeric entry") from exc
    if pts.ndim != 2 or pts.shape[1] != n:
        raise UsageError(f"{path}: expected {n} coordinate columns")
    return pts


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _write_csv(path: str | None, header: list, rows) -> None:
    fh = open(path, "w", newline="", encoding="utf-8") if path else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([repr(float(v)) for v in r])
    finally:
        if path:
            fh.close()


# ------------------------------------------------------------------ commands

def cmd_catalog(args) -> int:
    if args.action == "list":
        _dump({"schema": 1, "groups": catalog.list_ids()}, args.json)
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog show needs a group id")
    entry, spec = _load_group(args.id)
    if entry is None:
        raise UsageError("catalog show expects a catalog id")
    if args.export:
        dump_group_file(spec, args.export)
    report = {"schema": 1, "entry": entry.summary(), "structure": spec_to_dict(spec)}
    _dump(report, args.json)
    return EXIT_OK


def cmd_orbits(args) -> int:
    from .orbits import OrbitError, orbit_report, pfaffian_polynomial

    _, spec = _load_group(args.group)
    report = {"schema": 1, "group": spec.name or args.group}
    if args.point:
        U = _rationals(args.point)
        if len(U) != spec.dim:
            raise UsageError(f"point needs {spec.dim} coordinates")
        try:
            report.update(orbit_report(spec, U).to_dict())
        except OrbitError as exc:
            raise UsageError(str(exc)) from exc
    if args.pfaffian or not args.point:
        poly, degenerate = pfaffian_polynomial(spec)
        report["pfaffian_polynomial"] = str(poly.as_expr())
        report["admissible"] = bool(poly)
        report["trivial_predual"] = bool(degenerate)
    _dump(report, args.json)
    return EXIT_OK


def cmd_rep(args) -> int:
    from .repcalc import (Grid1D, GridResolutionError, RepresentationError, apply_intertwiner,
                          ladder, rep_apply, rep_chart, rep_matrix)

    _, spec = _load_group(args.group)
    Z = _floats(args.Z)
    try:
        chart = rep_chart(spec, Z, Grid1D(args.L, args.M))
    except (RepresentationError, GridResolutionError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    report = {"schema": 1, "group": spec.name, "Z": list(chart.Z), "lambda": chart.lam,
              "grid": {"L": args.L, "M": args.M}}
    if args.ladder:
        report["ladder"] = ladder(chart, args.ladder).tolist()
    if args.x:
        x = _floats(args.x)
        mat = rep_matrix(chart, x).matrix
        report["unitarity_defect"] = float(np.abs(mat.conj().T @ mat - np.eye(args.M)).max())
    if args.element:
        x = _floats(args.element)
        if len(x) != spec.dim:
            raise UsageError(f"element needs {spec.dim} coordinates")
        nodes = chart.grid.nodes
        if args.input:
            pts = _read_points(args.input, 3)
            phi = np.interp(nodes, pts[:, 0], pts[:, 1]) + 1j * np.interp(nodes, pts[:, 0],
                                                                           pts[:, 2])
        else:
            phi = np.exp(-nodes ** 2 / 2).astype(complex)
        try:
            out = rep_apply(chart, x, phi)
        except GridResolutionError as exc:
            raise UsageError(str(exc)) from exc
        _write_csv(args.out, ["q", "re", "im"], zip(nodes, out.real, out.imag))
        if not args.json:
            return EXIT_OK
    if args.intertwiner:
        # isometry defect on a Gaussian well inside the grid
        phi = np.exp(-chart.grid.nodes ** 2 / 2).astype(complex)
        out = apply_intertwiner(chart, args.intertwiner, phi)
        report["intertwiner_r"] = args.intertwiner
        report["intertwiner_isometry_defect"] = float(
            abs(np.linalg.norm(out) / np.linalg.norm(phi) - 1))
    _dump(report, args.json)
    return EXIT_OK


def cmd_quantize(args) -> int:
    from .quantize.grids import GridND
    from .quantize.groupfourier import ZGrid
    from .quantize.operators import op_g_gstar, op_group_concrete
    from .quantize.pedersen import pedersen_quantize, weyl_lambda
    from .repcalc import Grid1D, rep_chart
    from .symbols import parse_symbol

    _, spec = _load_group(args.group)
    n = spec.dim
    report = {"schema": 1, "group": spec.name, "scheme": args.scheme, "symbol": args.symbol}
    if args.scheme in ("pedersen", "weyl"):
        psi = _parse(parse_symbol, args.symbol, 2)
        grid = Grid1D(args.L, args.M)
        f = lambda r, t: psi.eval_coords([r, t])
        if args.scheme == "weyl":
            lam = args.lam if args.lam is not None else 1.0
            op = weyl_lambda(f, lam, grid)
            report["lambda"] = lam
        else:
            chart = rep_chart(spec, _floats(args.Z) or [1.0] * (n - 2), grid)
            op = pedersen_quantize(chart, f)
            report["Z"] = list(chart.Z)
            report["lambda"] = chart.lam
        report.update({"trace": [op.trace().real, op.trace().imag], "hs_norm": op.hs_norm(),
                       "op_norm": op.op_norm()})
        if args.apply:
            pts = _read_points(args.apply, 3)
            phi = np.interp(grid.nodes, pts[:, 0], pts[:, 1]) + 1j * np.interp(
                grid.nodes, pts[:, 0], pts[:, 2])
            out = op.apply(phi)
            _write_csv(args.out, ["q", "re", "im"], zip(grid.nodes, out.real, out.imag))
        if args.json or not args.apply:
            _dump(report, args.json)
        return EXIT_OK
    f = _parse(parse_symbol, args.symbol, 2 * n)
    u = _parse(parse_symbol, args.function, n)
    if not args.apply:
        raise UsageError("--apply <points.csv> is required for this scheme")
    X = _read_points(args.apply, n)
    try:
        ygrid = GridND.uniform(n, args.ygrid_L, args.ygrid_N)
        if args.scheme == "group":
            m = n - 2
            zc = tuple(_floats(args.zcenter) or [0.0] * m)
            zg = ZGrid(spec, GridND((args.zgrid_L,) * m, (args.zgrid_N,) * m), args.eps0,
                       center=zc)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    uy = u(ygrid.points())
    if args.scheme == "kn":
        vals = op_g_gstar(spec, f, uy, X, ygrid)
    else:
        vals = op_group_concrete(spec, f, uy, X, ygrid, zg, Grid1D(args.L, args.M))
    labels = list(spec.labels) if spec.labels else [f"x{i}" for i in range(n)]
    _write_csv(args.out, labels + ["re", "im"],
               (list(x) + [v.real, v.imag] for x, v in zip(X, vals)))
    return EXIT_OK


def _parse(parser, text, n):
    try:
        return parser(text, n)
    except ValueError as exc:
        raise UsageError(f"cannot parse symbol {text!r} in {n} variables: {exc}") from exc


def cmd_verify(args) -> int:
    from .quantize.verify import Config, verify_suite

    entry, _ = _load_group(args.group)
    if entry is None:
        raise UsageError("verify expects a catalog id")
    tol = {}
    for item in args.tol or []:
        name, _, val = item.partition("=")
        try:
            tol[name] = float(val)
        except ValueError as exc:
            raise UsageError(f"bad tolerance override {item!r}") from exc
    cfg = Config(L=args.L, M=args.M, zgrid=args.zgrid, seed=args.seed, eps0=args.eps0,
                 tolerances=tol)
    report = verify_suite(args.group, args.suite, cfg)
    _dump(report, args.json)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


def cmd_symclass(args) -> int:
    from .lie_core import monomial_degree
    from .quantize.groupfourier import ZGrid
    from .quantize.grids import GridND
    from .repcalc import Grid1D, rep_available, rep_chart
    from .symbols import parse_symbol
    from . import symclasses as sc

    entry, spec = _load_group(args.group)
    report = {"schema": 1, "group": spec.name or args.group}
    if args.taylor is not None:
        q = sc.taylor_polynomials(spec, args.taylor)
        report["taylor"] = {",".join(map(str, a)): str(p.as_expr()) for a, p in sorted(q.items())}
        report["taylor_determinants"] = {str(k): str(v) for k, v in
                                         sc.taylor_determinants(spec, args.taylor).items()}
    if args.rockland:
        if entry is None or not entry.rockland_generators:
            raise UsageError("no Rockland data for this group")
        R = sc.rockland_build(spec, entry.rockland_generators, entry.rockland_p, strict=False)
        h = sc.homogeneity_check(spec, R, R.order, Fraction(args.r))
        report["rockland"] = {"operator": R.describe(), "order": R.order,
                              "generates": R.generates, "homogeneity": h.to_dict()}
    if args.symbol:
        if not rep_available(spec):
            raise UsageError("seminorms need an explicit representation")
        f = _parse(parse_symbol, args.symbol, 2 * spec.dim)
        alpha = _ints(args.alpha) or (0,) * spec.dim
        beta = _ints(args.beta) or (0,) * spec.dim
        if len(alpha) != spec.dim or len(beta) != spec.dim:
            raise UsageError("alpha and beta need one entry per coordinate")
        rng = np.random.default_rng(args.seed)
        xs = rng.normal(size=(args.samples, spec.dim))
        Zs = [tuple(z) for z in (np.array(_floats(args.Z)).reshape(-1, spec.dim - 2)
                                 if args.Z else [[1.0] * (spec.dim - 2)])]
        charts = [rep_chart(spec, Z, Grid1D(args.L, args.M)) for Z in Zs]
        res = sc.seminorm_estimate(spec, f, args.m, args.rho, args.delta, alpha, beta,
                                   args.gamma, xs, charts)
        res["alpha"], res["beta"] = list(alpha), list(beta)
        res["hom_alpha"] = monomial_degree(spec, alpha)
        res["hom_beta"] = monomial_degree(spec, beta)
        report["seminorm"] = res
    _dump(report, args.json)
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orbitquant", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("catalog", help="list or show built-in groups")
    c.add_argument("action", choices=("list", "show"))
    c.add_argument("id", nargs="?")
    c.add_argument("--export", help="write the group definition file")
    c.add_argument("--json")
    c.set_defaults(func=cmd_catalog)

    o = sub.add_parser("orbits", help="coadjoint orbit report")
    o.add_argument("group")
    o.add_argument("--point", help="dual point, comma-separated rationals")
    o.add_argument("--pfaffian", action="store_true")
    o.add_argument("--json")
    o.set_defaults(func=cmd_orbits)

    r = sub.add_parser("rep", help="representation diagnostics")
    r.add_argument("group")
    r.add_argument("--Z", required=True, help="central point")
    r.add_argument("--L", type=float, default=10.0)
    r.add_argument("--M", type=int, default=128)
    r.add_argument("--ladder", type=int, default=0)
    r.add_argument("--x", help="group point for a unitarity check")
    r.add_argument("--intertwiner", type=float)
    r.add_argument("--element", help="apply the representation of this group element")
    r.add_argument("--input", help="CSV with columns q,re,im (default: Gaussian)")
    r.add_argument("--out", help="CSV output for --element")
    r.add_argument("--json")
    r.set_defaults(func=cmd_rep)

    q = sub.add_parser("quantize", help="apply a quantization")
    q.add_argument("--group", required=True)
    q.add_argument("--scheme", required=True, choices=("kn", "group", "pedersen", "weyl"))
    q.add_argument("--symbol", required=True)
    q.add_argument("--apply", help="CSV of evaluation points (or q,re,im vector samples)")
    q.add_argument("--function", default="gauss:", help="input function u for kn/group")
    q.add_argument("--out")
    q.add_argument("--Z")
    q.add_argument("--lam", type=float)
    q.add_argument("--L", type=float, default=10.0)
    q.add_argument("--M", type=int, default=128)
    q.add_argument("--ygrid-L", dest="ygrid_L", type=float, default=6.0)
    q.add_argument("--ygrid-N", dest="ygrid_N", type=int, default=16)
    q.add_argument("--zgrid-L", dest="zgrid_L", type=float, default=1.5)
    q.add_argument("--zgrid-N", dest="zgrid_N", type=int, default=32)
    q.add_argument("--zcenter")
    q.add_argument("--eps0", type=float, default=0.25)
    q.add_argument("--json")
    q.set_defaults(func=cmd_quantize)

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--group", required=True)
    v.add_argument("--suite", default="all",
                   choices=("fourier", "pedersen", "wtransform", "cor42", "plancherel",
                            "algebra", "rep", "all"))
    v.add_argument("--L", type=float, default=10.0)
    v.add_argument("--M", type=int, default=128)
    v.add_argument("--zgrid", type=int, default=64)
    v.add_argument("--eps0", type=float, default=0.25)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", action="append", help="override, e.g. pedersen_trace=1e-7")
    v.add_argument("--json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("symclass", help="symbol-class tools")
    s.add_argument("--group", required=True)
    s.add_argument("--symbol")
    s.add_argument("-m", type=float, default=0.0)
    s.add_argument("--rho", type=float, default=1.0)
    s.add_argument("--delta", type=float, default=0.0)
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--gamma", type=float, default=0.0)
    s.add_argument("--samples", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--Z", help="central points, flattened")
    s.add_argument("--L", type=float, default=10.0)
    s.add_argument("--M", type=int, default=128)
    s.add_argument("--taylor", type=int)
    s.add_argument("--rockland", action="store_true")
    s.add_argument("--r", default="2")
    s.add_argument("--json")
    s.set_defaults(func=cmd_symclass)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"orbitquant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"orbitquant: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
