"""Command-line entry point.

Subcommands: verify | series | oracle | sample | limit. Every output file
is self-describing (a '#'-prefixed JSON config header with a config hash)
and byte-reproducible given the same config and seed. Exit codes: 0 all
gates pass, 1 a gated check failed, 2 usage error. The thread count for
sampling is read from EMBTREES_THREADS.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import families as fm
from . import limits as lm
from . import oracle as oc
from . import sampling as sp
from . import verify as vf

FAMILY_CHOICES = ("pm1", "zpm1", "binary")


def _config_header(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(blob.encode()).hexdigest()[:12]
    return f"# {blob}\n# config-hash: {digest}\n"


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _csv(config, columns, rows) -> str:
    out = [_config_header(config)]
    out.append(",".join(columns) + "\n")
    for row in rows:
        out.append(",".join(repr(v) if isinstance(v, float) else str(v)
                            for v in row) + "\n")
    return "".join(out)


def _parse_grid(spec: str):
    parts = [float(x) for x in spec.split(":")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid is start:stop:step")
    start, stop, step = parts
    out = []
    x = start
    while x <= stop + 1e-12:
        out.append(round(x, 12))
        x += step
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    fams = FAMILY_CHOICES if args.family == "all" else (args.family,)
    oracle_max = None
    if args.oracle_max is None:
        oracle_max = {"pm1": 5, "zpm1": 4, "binary": 8}
    elif args.oracle_max > 0:
        oracle_max = args.oracle_max
    checks = vf.run_verify(fams, order=args.order, jmax=args.jmax,
                           oracle_max=oracle_max,
                           include_numeric=not args.skip_numeric)
    config = {"command": "verify", "family": args.family, "order": args.order,
              "jmax": args.jmax, "oracle_max": args.oracle_max,
              "skip_numeric": args.skip_numeric}
    report = _config_header(config) + vf.render_report(checks)
    _write(args.out, report)
    return 0 if vf.all_passed(checks) else 1


def cmd_series(args) -> int:
    config = {"command": "series", "family": args.family, "order": args.order,
              "jmax": args.jmax, "method": args.method}
    if args.max_moment:
        rows = []
        for token in args.max_moment:
            k_str, n_str = token.split(":")
            k, n = int(k_str), int(n_str)
            value = fm.exact_max_moment(args.family, k, n)
            rows.append([k, n, str(value)])
        _write(args.out, _csv(config | {"what": "max-moment"},
                              ["k", "n", "E(M_n^k)"], rows))
        return 0
    bundle = fm.build_label_set(args.family, args.order, args.jmax, args.method)
    text = _config_header(config) + json.dumps(bundle.to_json(), sort_keys=True,
                                               indent=1) + "\n"
    _write(args.out, text)
    return 0


def cmd_oracle(args) -> int:
    table = oc.enumerate_stats(args.family, args.n)
    config = {"command": "oracle", "family": args.family, "n": args.n}
    text = _config_header(config) + json.dumps(table.to_json(), sort_keys=True,
                                               indent=1) + "\n"
    _write(args.out, text)
    if args.check:
        report = oc.compare_series(table)
        for line in report:
            sys.stderr.write(line + "\n")
        return 0 if not report else 1
    return 0


def cmd_sample(args) -> int:
    if args.config:
        with open(args.config) as fh:
            cfg = sp.ExperimentConfig.from_json(json.load(fh))
    else:
        cfg = sp.ExperimentConfig(
            family=args.family, n=args.n, replicates=args.reps, seed=args.seed,
            observables=tuple(args.obs.split(",")),
            lambdas=tuple(float(x) for x in args.lambdas.split(",")) if args.lambdas else (),
        )
    if args.hist_bins:
        centers, mass = sp.occupation_histogram(cfg, bins=args.hist_bins)
        rows = [[float(c), float(m)] for c, m in zip(centers, mass)]
        _write(args.out, _csv(cfg.to_json() | {"histogram_bins": args.hist_bins},
                              ["position", "mean_mass"], rows))
        return 0
    observables = list(cfg.observables)
    observables += [f"occ@{lam}" for lam in cfg.lambdas]
    observables += [f"tail@{lam}" for lam in cfg.lambdas]
    cfg = sp.ExperimentConfig(cfg.family, cfg.n, cfg.replicates, cfg.seed,
                              tuple(dict.fromkeys(observables)), cfg.lambdas)
    columns, rows = sp.run_experiment(cfg)
    _write(args.out, _csv(cfg.to_json(), columns, rows))
    return 0


def cmd_limit(args) -> int:
    cfg = lm.QuadConfig(rel_tol=args.tol, s_max=args.smax)
    config = {"command": "limit", "tol": args.tol, "smax": args.smax}
    if args.curve:
        grid = _parse_grid(args.grid)
        config |= {"curve": args.curve, "grid": args.grid}
        fns = {
            "G": lambda x: lm.g_tail(x, cfg).value,
            "f": lambda x: lm.f_density(x, cfg).value,
            "meanY": lm.mean_y,
            "meanYplus": lm.mean_yplus,
        }
        names = args.curve.split(",")
        unknown = [n for n in names if n not in fns]
        if unknown:
            sys.stderr.write(f"limit: unknown curves {unknown}\n")
            return 2
        rows = [[x] + [fns[n](x) for n in names] for x in grid]
        _write(args.out, _csv(config, ["lambda"] + names, rows))
        return 0
    if args.moments:
        config |= {"moments": args.moments, "kmax": args.kmax}
        rows = []
        for k in range(1, args.kmax + 1):
            if args.moments == "N":
                rows.append([k, lm.moment_n_limit(k)])
            else:
                rows.append([k, lm.moments_small("Y0" if args.moments == "Y0"
                                                 else "Yplus0", k)])
        _write(args.out, _csv(config, ["k", f"E({args.moments}^k)"], rows))
        return 0
    if args.laplace:
        grid = _parse_grid(args.a_grid)
        config |= {"laplace": args.laplace, "lam": args.lam, "a_grid": args.a_grid}
        f = lm.laplace_local if args.laplace == "local" else lm.laplace_global
        rows = [[a, f(args.lam, a, cfg).value] for a in grid]
        _write(args.out, _csv(config, ["a", "laplace"], rows))
        return 0
    if args.ise:
        grid = _parse_grid(args.grid) if args.grid else [args.lam]
        config |= {"ise": args.ise, "grid": args.grid or str(args.lam)}
        rows = []
        for lam in grid:
            res = lm.ise_rescale(args.ise, lam=lam, cfg=cfg)
            tag = "conjecture" if res["conjectural"] else "proved"
            val = res.get("tail", res.get("mean"))
            rows.append([lam, val, tag])
        _write(args.out, _csv(config, ["lambda", "value", "status"], rows))
        return 0
    sys.stderr.write("limit: nothing requested "
                     "(use --curve/--moments/--laplace/--ise)\n")
    return 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="embtrees",
        description="exact enumeration, sampling and limit laws "
                    "for labelled plane trees")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the identity and calibration suites")
    p.add_argument("--family", default="all", choices=FAMILY_CHOICES + ("all",))
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--jmax", type=int, default=10)
    p.add_argument("--oracle-max", type=int, default=None,
                   help="largest exhaustively enumerated size (0 disables)")
    p.add_argument("--skip-numeric", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", help="dump exact series or exact max moments")
    p.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--jmax", type=int, default=5)
    p.add_argument("--method", default="product", choices=("product", "recurrence"))
    p.add_argument("--max-moment", action="append", metavar="K:N",
                   help="emit exact E(M_n^k) instead of series")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oracle", help="exhaustive enumeration statistics")
    p.add_argument("--family", required=True, choices=FAMILY_CHOICES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true",
                   help="also compare against the series coefficients")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sample", help="Monte Carlo experiment over uniform trees")
    p.add_argument("--config", default=None, help="JSON ExperimentConfig file")
    p.add_argument("--family", default="pm1", choices=FAMILY_CHOICES)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--obs", default="max,occ0,tail0")
    p.add_argument("--lambdas", default=None,
                   help="comma list of scaled heights, adds occ@/tail@ columns")
    p.add_argument("--hist-bins", type=int, default=0,
                   help="emit the binned mean occupation profile instead of rows")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("limit", help="limit-law curves and tables")
    p.add_argument("--curve", default=None,
                   help="comma list from G,f,meanY,meanYplus")
    p.add_argument("--grid", default="0.1:4:0.1")
    p.add_argument("--moments", default=None, choices=("N", "Y0", "Yplus0"))
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--laplace", default=None, choices=("local", "global"))
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--a-grid", default="-0.9:0.9:0.3")
    p.add_argument("--ise", default=None,
                   choices=("supremum", "tail", "density-conjecture"))
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--smax", type=float, default=5.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_limit)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
