"""Command-line front end with reproducible CSV/JSON output.

Every subcommand writes a header row followed by numeric columns printed
with 15 significant digits (or the same content as JSON), so identical
configurations produce byte-identical output.  Module errors exit with
code 1 and a diagnostic line on stderr; configuration errors exit with 2.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import algebra, heatzeta, ktheory, pairing
from .heatzeta import RealLineFunction


@dataclass(frozen=True)
class RunConfig:
    hbar: float
    modes: int
    grid: int
    quad: int | None
    fmt: str
    output: str | None


def _fmt(x):
    return format(float(x), ".15g")


def _registry_function(name, hbar, grid, coeffs=None):
    """Built-in weight functions for the zeta and mean subcommands."""
    if name == "one":
        return heatzeta.ONE
    if name == "cos":
        return RealLineFunction.periodic_fn(lambda x: np.cos(2 * np.pi * np.asarray(x)), 1.0)
    if name == "arctan":
        return RealLineFunction.with_limits(np.arctan, -np.pi / 2, np.pi / 2)
    if name == "riesz-ramp":
        bump = algebra.rieffel_projection(hbar, n_samples=grid).coefficient(0)
        return RealLineFunction.periodic_fn(lambda x, _b=bump: np.real(_b(x)), 1.0)
    if name == "fourier":
        if not coeffs:
            raise ValueError("the fourier registry entry needs --coeffs c0,c1,...")
        cs = [float(c) for c in coeffs.split(",")]

        def series(x, _cs=tuple(cs)):
            x = np.asarray(x, dtype=float)
            out = np.full_like(x, _cs[0])
            for k, c in enumerate(_cs[1:], start=1):
                out = out + c * np.cos(2 * np.pi * k * x)
            return out

        return RealLineFunction.periodic_fn(series, 1.0)
    raise ValueError(f"unknown function name {name!r}")


def _write(config, header, rows, json_payload=None):
    if config.fmt == "json":
        text = json.dumps(
            json_payload
            if json_payload is not None
            else {"columns": list(header), "rows": [list(map(float, r)) for r in rows]},
            indent=2,
            sort_keys=True,
        ) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------- subcommands ----------------


def _cmd_heat_kernel(args, config):
    xs = np.linspace(-args.range, args.range, args.samples)
    mehler = np.array([heatzeta.mehler_kernel(args.t, x, x) for x in xs])
    eigen = heatzeta.mehler_eigen_sum(args.t, xs, xs, n_modes=200)
    eigen = np.atleast_1d(eigen)
    rows = [(x, m, e, abs(m - e)) for x, m, e in zip(xs, mehler, eigen)]
    _write(
        config,
        ("x", "mehler_diag", "eigen_sum_diag", "abs_deviation"),
        rows,
        {
            "t": args.t,
            "rows": [[float(v) for v in r] for r in rows],
            "max_deviation": float(np.abs(mehler - eigen).max()),
        },
    )


def _cmd_zeta(args, config):
    f = _registry_function(args.f, config.hbar, config.grid, args.coeffs)
    s_values = [complex(s) for s in args.s_list.split(",")]
    evals = [
        heatzeta.zeta_trace(f, args.alpha, s, n_modes=args.n_modes) for s in s_values
    ]
    rows = [
        (ev.s.real, ev.s.imag, ev.value.real, ev.value.imag, ev.error_estimate)
        for ev in evals
    ]
    _write(
        config,
        ("s_re", "s_im", "value_re", "value_im", "error_estimate"),
        rows,
        {
            "evaluations": [
                {
                    "s": [ev.s.real, ev.s.imag],
                    "value": [ev.value.real, ev.value.imag],
                    "residue_at_1": None
                    if ev.residue_at_1 is None
                    else [complex(ev.residue_at_1).real, complex(ev.residue_at_1).imag],
                    "error_estimate": ev.error_estimate,
                    "method": ev.method,
                }
                for ev in evals
            ]
        },
    )


def _cmd_mean(args, config):
    f = _registry_function(args.f, config.hbar, config.grid, args.coeffs)
    res = heatzeta.asymptotic_mean(f, x_max=args.xmax)
    row = (
        complex(res.mu_plus).real,
        complex(res.mu_plus).imag,
        complex(res.mu_minus).real,
        complex(res.mu_minus).imag,
        complex(res.mu).real,
        complex(res.mu).imag,
        res.error_estimate,
    )
    _write(
        config,
        ("mu_plus_re", "mu_plus_im", "mu_minus_re", "mu_minus_im",
         "mu_re", "mu_im", "error_estimate"),
        [row],
    )


def _cmd_rieffel(args, config):
    p = algebra.rieffel_projection(config.hbar, n_samples=config.grid)
    d_idem, d_adj = algebra.projection_defect(p)
    tr = algebra.trace(p)
    c1 = algebra.chern_number(p)
    row = (config.hbar, d_idem, d_adj, tr.real, c1.real, c1.imag)
    _write(
        config,
        ("hbar", "idempotent_defect", "selfadjoint_defect", "trace",
         "chern_re", "chern_im"),
        [row],
    )


def _pair_rows(config, reports):
    rows = [
        (r.hbar, r.closed_form, r.local_formula, r.fedosov, r.rounded_integer)
        for r in reports
    ]
    _write(
        config,
        pairing.CSV_HEADER,
        rows,
        {"reports": [pairing.report_to_json_dict(r) for r in reports]},
    )


def _grid_factor(config):
    # --quad fixes K for N requested modes; internal bases keep that density
    if config.quad is None:
        return 8
    return max(2, round((config.quad - 1) / config.modes))


def _cmd_pair(args, config):
    p = algebra.rieffel_projection(config.hbar, n_samples=config.grid)
    report = pairing.index_pairing(
        p, basis_size=config.modes, n_modes=args.zeta_modes,
        grid_factor=_grid_factor(config),
    )
    _pair_rows(config, [report])


def _cmd_sweep(args, config):
    hbars = [float(h) for h in args.hbars.split(",")]
    reports = pairing.sweep(
        hbars, basis_size=config.modes, n_modes=args.zeta_modes,
        grid_factor=_grid_factor(config),
    )
    _pair_rows(config, reports)


def _cmd_ktheory(args, config):
    x = ktheory.KClass(args.m, args.n)
    pair_value = ktheory.k_pairing(x, config.hbar, args.b)
    tr = ktheory.trace_value(x, config.hbar)
    member = ktheory.in_gap_label_group(tr, config.hbar)
    row = (args.m, args.n, config.hbar, args.b, pair_value, tr, int(member))
    _write(
        config,
        ("m", "n", "hbar", "b", "pairing", "trace_value", "in_gap_group"),
        [row],
    )


# ---------------- argument plumbing ----------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", type=float, default=0.3,
                        help="deformation parameter (default 0.3)")
    common.add_argument("--modes", type=int, default=400,
                        help="Hermite modes N for operator computations (default 400)")
    common.add_argument("--grid", type=int, default=2048,
                        help="circle sample count M, a power of two (default 2048)")
    common.add_argument("--quad", type=int, default=None,
                        help="quadrature point count K (default 8N+1)")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        dest="fmt", help="output format (default csv)")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--config", default=None,
                        help="key=value file supplying defaults; flags win")

    parser = argparse.ArgumentParser(
        prog="nctorus",
        description="Rotation-algebra numerics: heat kernels, zeta functions, "
                    "index pairings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("heat-kernel", parents=[common],
                       help="diagonal heat kernel and eigensum deviation")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--range", type=float, default=4.0)
    p.add_argument("--samples", type=int, default=81)
    p.set_defaults(func=_cmd_heat_kernel)

    p = sub.add_parser("zeta", parents=[common], help="spectral zeta values")
    p.add_argument("--f", required=True,
                   help="one | cos | riesz-ramp | arctan | fourier")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--s-list", required=True, help="comma-separated s values")
    p.add_argument("--n-modes", type=int, default=2000)
    p.add_argument("--coeffs", default=None,
                   help="cosine-series coefficients c0,c1,... for --f fourier")
    p.set_defaults(func=_cmd_zeta)

    p = sub.add_parser("mean", parents=[common], help="asymptotic means")
    p.add_argument("--f", required=True)
    p.add_argument("--xmax", type=float, default=32.0)
    p.add_argument("--coeffs", default=None)
    p.set_defaults(func=_cmd_mean)

    p = sub.add_parser("rieffel", parents=[common],
                       help="bump projection diagnostics")
    p.set_defaults(func=_cmd_rieffel)

    p = sub.add_parser("pair", parents=[common],
                       help="three-route index pairing at one hbar")
    p.add_argument("--zeta-modes", type=int, default=2000)
    p.set_defaults(func=_cmd_pair)

    p = sub.add_parser("sweep", parents=[common],
                       help="index pairing across several hbar values")
    p.add_argument("--hbars", required=True, help="comma-separated hbar values")
    p.add_argument("--zeta-modes", type=int, default=2000)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("ktheory", parents=[common],
                       help="exact class pairings and gap labels")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=int, default=0)
    p.set_defaults(func=_cmd_ktheory)

    parser.subcommand_parsers = list(sub.choices.values())
    return parser


def _apply_config_file(parser, argv):
    """Load key=value defaults from --config; explicit flags still win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config", default=None)
    known, _ = probe.parse_known_args(argv)
    if not known.config:
        return
    try:
        overrides = {}
        with open(known.config) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                if not _:
                    raise ValueError(f"malformed line {line!r}")
                overrides[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except ValueError as exc:
        parser.error(f"bad config file: {exc}")
    typed = {}
    for key, value in overrides.items():
        if key in ("hbar", "xmax", "alpha", "t", "range"):
            typed[key] = float(value)
        elif key in ("modes", "grid", "quad", "samples", "n_modes", "zeta_modes",
                     "m", "n", "b"):
            typed[key] = int(value)
        else:
            typed[key] = value
    parser.set_defaults(**typed)
    for sp in parser.subcommand_parsers:
        sp.set_defaults(**{k: v for k, v in typed.items()
                           if any(a.dest == k for a in sp._actions)})


def _validate(parser, args):
    if args.modes < 64:
        parser.error("--modes must be at least 64")
    grid = args.grid
    if grid < 256 or grid & (grid - 1):
        parser.error("--grid must be a power of two, at least 256")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    _apply_config_file(parser, argv)
    args = parser.parse_args(argv)
    _validate(parser, args)
    config = RunConfig(
        hbar=args.hbar,
        modes=args.modes,
        grid=args.grid,
        quad=args.quad,
        fmt=args.fmt,
        output=args.output,
    )
    try:
        args.func(args, config)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
