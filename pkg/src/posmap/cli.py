"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors, 2 when an internal consistency
check trips (which indicates a bug, not bad input).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import linalg, maps, oracle, regions, spectra
from .maps import MapKind, MapParams
from .regions import ConsistencyError
from .scan import (
    CSV_FIELDS,
    DEFAULT_LAYERS,
    FIELD_ATTRS,
    MODES,
    ScanConfig,
    emit_csv,
    emit_plot,
    scan as run_scan,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _classification_fields(c: regions.Classification) -> dict[str, int | None]:
    out = {}
    for name in CSV_FIELDS:
        val = getattr(c, FIELD_ATTRS[name])
        out[name] = None if val is None else int(val)
    return out


def _numeric_classification(p: MapParams) -> regions.Classification:
    pos = oracle.numeric_k_positive(p, 1).verdict
    twop = oracle.numeric_k_positive(p, 2).verdict
    cp = oracle.numeric_completely_positive(p, MapKind.PHI).verdict
    ccp = oracle.numeric_completely_positive(p, MapKind.PHI_TRANSPOSE).verdict
    decomp = (oracle.numeric_completely_positive(p, MapKind.PHI1_TRANSPOSE).verdict
              and oracle.numeric_completely_positive(p, MapKind.PHI2).verdict)
    return regions.Classification(
        positive=pos,
        two_positive=twop,
        completely_positive=cp,
        completely_copositive=ccp,
        positive_not_cp=pos and not cp,
        two_positive_not_cp=twop and not cp,
        decomposable_sufficient=decomp,
        decomposable_and_two_positive=decomp and twop and not cp,
    )


def _cmd_classify(args) -> int:
    p = MapParams(args.alpha, args.beta, args.n)
    if args.mode == "numeric":
        c = _numeric_classification(p)
    else:
        c = regions.classify(p)
    fields = _classification_fields(c)
    if args.json:
        payload = {"alpha": args.alpha, "beta": args.beta, "n": args.n, "mode": args.mode}
        payload.update(fields)
        print(json.dumps(payload))
    else:
        print(" ".join(f"{k}={'' if v is None else v}" for k, v in fields.items()))
    return 0


def _cmd_scan(args) -> int:
    config = ScanConfig(
        alpha_min=args.amin, alpha_max=args.amax,
        beta_min=args.bmin, beta_max=args.bmax,
        resolution=args.res, mode=args.mode, n=args.n, seed=args.seed,
        output_paths=tuple(str(x) for x in (args.out_csv, args.out_svg_dir, args.out_fig) if x),
    )
    grid = run_scan(config)
    if args.out_csv:
        emit_csv(grid, args.out_csv)
        print(f"wrote {args.out_csv}")
    fig_paths = []
    if args.out_svg_dir:
        outdir = Path(args.out_svg_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for layer in args.layers:
            path = outdir / f"layer_{layer}.svg"
            emit_plot(grid, path, layer)
            print(f"wrote {path}")
        fig_paths.append(outdir / "overview.png")
    if args.out_fig:
        fig_paths.append(Path(args.out_fig))
    if fig_paths:
        from . import figures

        for path in fig_paths:
            figures.render_overview(grid, path)
            print(f"wrote {path}")
    res = config.resolution
    frac = float(np.mean(grid.layer("positive")))
    print(f"scanned {res * res} cells, positive fraction {frac:.4f}")
    if config.mode == "compare":
        print(f"compare mode: {len(grid.mismatches)} mismatched cells")
    return 0


def _cmd_verify(args) -> int:
    if args.points:
        pts = []
        for line in Path(args.points).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b = (float(tok) for tok in line.split())
            pts.append((a, b))
    else:
        vals = (-2.0, -1.0, 0.0, 1.0, 2.0)
        pts = [(a, b) for a in vals for b in vals]
    rows = []
    all_ok = True
    for source in spectra.SOURCES:
        for a, b in pts:
            report = spectra.verify_point(source, MapParams(a, b, 3), args.tol)
            rows.append((source, a, b, report.max_abs_deviation, report.matched))
            all_ok = all_ok and report.matched
    print(f"{'source':<12} {'alpha':>8} {'beta':>8} {'max_dev':>12} matched")
    for source, a, b, dev, ok in rows:
        print(f"{source:<12} {a:>8.3f} {b:>8.3f} {dev:>12.3e} {'yes' if ok else 'NO'}")
    print("--")
    for source, a, b, dev, ok in rows:
        print(f"{source} {a:.10g} {b:.10g} {dev:.6e} {1 if ok else 0}")
    return 0 if all_ok else 2


def _cmd_oracle(args) -> int:
    p = MapParams(args.alpha, args.beta, args.n)
    lines = []
    kv = oracle.numeric_k_positive(p, args.k)
    lines.append(("k_positive", args.k, kv))
    if args.n == 3:
        cv = oracle.numeric_completely_positive(p)
        lines.append(("completely_positive", args.n, cv))
    if args.trials > 0:
        mc = oracle.monte_carlo_falsify(p, args.k, args.trials, args.seed)
        lines.append(("monte_carlo", args.k, mc))
    for name, k, verdict in lines:
        print(f"{name} {args.alpha:.10g} {args.beta:.10g} {k} "
              f"{'true' if verdict.verdict else 'false'} {verdict.min_eigenvalue:.6e}")
    return 0


def _cmd_choi(args) -> int:
    p = MapParams(args.alpha, args.beta, args.n)
    matrix = maps.choi_matrix(MapKind(args.kind), p)
    text = linalg.format_matrix(matrix)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="posmap",
        description="Region predicates, spectra and numeric oracles for the "
                    "two-parameter map family.",
        epilog="Scan axis defaults are the [-4, 4]^2 square at resolution 401, "
               "classified at cell centers. The POSMAP_THREADS environment "
               "variable caps the worker threads used for grid eigensolves "
               "(default: min(4, cpu count)); results are identical at any "
               "thread count.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one (alpha, beta) point")
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--beta", type=float, required=True)
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--mode", choices=("closed", "numeric"), default="closed")
    c.add_argument("--json", action="store_true", help="emit JSON instead of key=value")
    c.set_defaults(func=_cmd_classify)

    s = sub.add_parser("scan", help="raster-scan a parameter rectangle")
    s.add_argument("--amin", type=float, default=-4.0)
    s.add_argument("--amax", type=float, default=4.0)
    s.add_argument("--bmin", type=float, default=-4.0)
    s.add_argument("--bmax", type=float, default=4.0)
    s.add_argument("--res", type=int, default=401)
    s.add_argument("--mode", choices=MODES, default="closed_form")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out-csv", default=None)
    s.add_argument("--out-svg-dir", default=None)
    s.add_argument("--out-fig", default=None, help="matplotlib overview figure path")
    s.add_argument("--layers", nargs="+", default=list(DEFAULT_LAYERS),
                   choices=CSV_FIELDS)
    s.set_defaults(func=_cmd_scan)

    v = sub.add_parser("verify", help="closed-form vs numeric spectrum report")
    v.add_argument("--points", default=None,
                   help="file of 'alpha beta' lines; default is the 5x5 integer grid")
    v.add_argument("--tol", type=float, default=None)
    v.set_defaults(func=_cmd_verify)

    o = sub.add_parser("oracle", help="numeric positivity verdicts at one point")
    o.add_argument("--alpha", type=float, required=True)
    o.add_argument("--beta", type=float, required=True)
    o.add_argument("--n", type=int, default=3)
    o.add_argument("--k", type=int, default=2)
    o.add_argument("--trials", type=int, default=0)
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=_cmd_oracle)

    ch = sub.add_parser("choi", help="dump a Choi matrix in the text format")
    ch.add_argument("--alpha", type=float, required=True)
    ch.add_argument("--beta", type=float, required=True)
    ch.add_argument("--n", type=int, default=3)
    ch.add_argument("--kind", default=MapKind.PHI.value,
                    choices=[k.value for k in MapKind])
    ch.add_argument("--out", default=None)
    ch.set_defaults(func=_cmd_choi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
