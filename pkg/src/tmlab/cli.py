"""Command-line front end.

Subcommands: ``spectrum`` (dimension-spectrum grid), ``construct`` (point
descriptors and prefixes), ``trajectory`` (scaling trajectories of a point or
block profile), ``measure`` (cylinder bounds/estimates), ``verify`` (the
check suite).

Every output carries a provenance block (version, command, parameters, seed)
and no timestamps, so reruns with identical arguments are byte-identical.
Exit codes: 0 success, 1 check failure, 2 usage error, 3 budget/resource
error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .analyze import (ENCLOSURE_COLUMNS, f_trajectory, scaling_enclosure_table,
                      xi_mu_trajectory, xi_psi_trajectory)
from .construct import (ConstructedPoint, ConstructionError,
                        bounded_block_point, intermediate_scaling_point,
                        joint_spectrum_point)
from .measure import (DEFAULT_BUDGET, BudgetError, cylinder_log_bounds,
                      cylinder_measure_estimate, riesz_quadrature)
from .spectrum import GRID_COLUMNS, spectrum_grid
from .verify import CRITERIA, SUITES, build_report, run_checks
from .words import AlternationCode, BinaryWord

LOG2 = math.log(2.0)

_TRAJECTORY_KINDS = ("xi_mu", "xi_psi", "F", "rho", "enclosures", "fig2")


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _provenance(args, command: str, **params) -> dict:
    prov = {"package": "tmlab", "version": __version__, "command": command}
    for field in ("seed", "threads", "budget", "tail"):
        if hasattr(args, field):
            prov[field] = getattr(args, field)
    prov.update(params)
    return prov


def _emit_table(args, command: str, params: dict, columns: Sequence[str],
                rows) -> None:
    provenance = _provenance(args, command, **params)
    if args.format == "json":
        payload = {"provenance": provenance, "columns": list(columns),
                   "rows": [[None if (isinstance(v, float) and math.isnan(v))
                             else (float(v) if isinstance(v, (int, float, np.floating))
                                   and not isinstance(v, bool) else v)
                             for v in row] for row in rows]}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"# {k}={v}" for k, v in provenance.items()]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    _write(args.out, text)


def _write(out: Optional[str], text: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_spectrum(args) -> int:
    grid = spectrum_grid(args.resolution)
    rows = [[float(v) for v in row] for row in grid]
    _emit_table(args, "spectrum", {"resolution": args.resolution},
                GRID_COLUMNS, rows)
    return 0


def _build_point(args) -> ConstructedPoint:
    if args.kind == "joint":
        if args.targets is None or len(args.targets) != 2:
            raise ConstructionError(
                "--targets ALPHA BETA is required for kind=joint")
        return joint_spectrum_point(args.targets[0], args.targets[1],
                                    args.lam, args.seed)
    if args.kind == "intermediate":
        if args.gamma is None or args.alpha is None:
            raise ConstructionError(
                "--gamma and --alpha are required for kind=intermediate")
        return intermediate_scaling_point(args.gamma, args.alpha,
                                          args.lam, args.seed)
    return bounded_block_point(args.lam, args.seed)


def cmd_construct(args) -> int:
    point = _build_point(args)
    payload = {"provenance": _provenance(args, "construct"),
               "descriptor": point.to_descriptor()}
    if args.prefix_len:
        payload["prefix"] = str(point.prefix_word(args.prefix_len))
    _write(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def _load_code_and_point(args) -> tuple[AlternationCode, Optional[ConstructedPoint], dict]:
    """Resolve --descriptor/--code into a block profile covering the horizon."""
    if args.descriptor:
        with open(args.descriptor, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        desc = data.get("descriptor", data)
        point = ConstructedPoint.from_descriptor(desc)
        want = args.n_max if args.which in ("xi_mu", "xi_psi", "enclosures",
                                            "fig2") else None
        n = 1 << 16
        cap = max(8 * args.n_max, 1 << 26)
        while True:
            code, _ = point.prefix_code(n)
            if want is not None:
                if code.N(len(code)) > want:
                    break
            elif len(code) >= args.n_max:
                break
            if n > cap:
                raise ValueError(
                    f"horizon {args.n_max} is beyond schedule feasibility "
                    f"(no coverage within {cap} positions)")
            n *= 2
        return code, point, {"descriptor": args.descriptor, **desc}
    if args.code is None:
        raise ValueError("one of --descriptor or --code is required")
    if args.code.startswith("geometric"):
        _, _, count = args.code.partition(":")
        blocks = [2 ** i for i in range(1, int(count or 40) + 1)]
        return AlternationCode(blocks), None, {"code": args.code}
    blocks = [int(tok) for tok in args.code.split(",") if tok]
    return AlternationCode(blocks), None, {"code": args.code}


def cmd_trajectory(args) -> int:
    code, point, params = _load_code_and_point(args)
    params = {"which": args.which, "n_max": args.n_max, **params}
    if args.which == "xi_mu":
        traj = xi_mu_trajectory(code, args.n_max)
        rows = [(n, float(v)) for n, v in traj.rows()]
        _emit_table(args, "trajectory", params, ("n", "value"), rows)
    elif args.which == "xi_psi":
        traj = xi_psi_trajectory(code, args.n_max)
        rows = [(n, float(v)) for n, v in traj.rows()]
        _emit_table(args, "trajectory", params, ("n", "value"), rows)
    elif args.which in ("F", "rho"):
        m_max = min(args.n_max, len(code))
        trajs = f_trajectory(code, m_max, args.lam)
        params["lambda"] = args.lam
        if args.which == "F":
            rows = [(m, float(F), float(Fl), float(el),
                     r if not math.isnan(r) else math.nan)
                    for (m, F), (_, Fl), (_, el), (_, r)
                    in zip(trajs["F"].rows(), trajs["F_lam"].rows(),
                           trajs["ell"].rows(), trajs["rho"].rows())]
            _emit_table(args, "trajectory", params,
                        ("m", "F", "F_lam", "ell", "rho"), rows)
        else:
            rows = [(m, r) for m, r in trajs["rho"].rows()]
            _emit_table(args, "trajectory", params, ("m", "rho"), rows)
    else:  # enclosures (alias fig2)
        ns = range(1, args.n_max + 1) if args.n_max <= 4096 else \
            sorted({int(math.ceil(1.01 ** j)) for j in
                    range(1, int(math.log(args.n_max, 1.01)) + 1)} | {args.n_max})
        rows = scaling_enclosure_table(code, [n for n in ns
                                              if n <= code.N(len(code))])
        _emit_table(args, "trajectory", params, ENCLOSURE_COLUMNS, rows)
    return 0


def cmd_measure(args) -> int:
    word = BinaryWord(args.word)
    bounds = cylinder_log_bounds(word)
    est = cylinder_measure_estimate(word, args.depth, budget=args.budget)
    # presentation defaults to base-2 logs; --natural-log switches to raw nats
    base = 1.0 if args.natural_log else LOG2
    base_name = "log" if args.natural_log else "log2"
    record = {
        "word": args.word,
        "depth": args.depth,
        "log_base": "e" if args.natural_log else "2",
        f"{base_name}_bounds": [bounds.lo / base, bounds.hi / base],
        f"{base_name}_estimate": est.log_value / base,
        "estimate": est.value,
        "anchor_spread": est.anchor_spread,
        "within_bounds": est.within_bounds,
    }
    if args.quadrature:
        levels = max(len(word) + 8, 14)
        record["quadrature"] = riesz_quadrature(
            word, levels, 1 << min(20, levels + 4), budget=args.budget)
        record["quadrature_levels"] = levels
    if args.format == "json":
        payload = {"provenance": _provenance(args, "measure",
                                             depth=args.depth),
                   "measure": record}
        _write(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        cols = list(record.keys())
        _emit_table(args, "measure", {"depth": args.depth}, cols,
                    [[record[c] if not isinstance(record[c], list)
                      else ";".join(map(repr, record[c])) for c in cols]])
    else:
        lines = [f"word            : {args.word}",
                 f"{base_name} bounds     : [{bounds.lo / base:.6f}, "
                 f"{bounds.hi / base:.6f}]",
                 f"{base_name} estimate   : {est.log_value / base:.6f}",
                 f"estimate        : {est.value:.12g}",
                 f"anchor spread   : {est.anchor_spread:.3e}",
                 f"inside bounds   : {est.within_bounds}"]
        if args.quadrature:
            lines.append(f"quadrature      : {record['quadrature']:.12g} "
                         f"({record['quadrature_levels']} levels)")
        _write(args.out, "\n".join(lines) + "\n")
    if not est.within_bounds:
        return 1
    return 0


def cmd_verify(args) -> int:
    numbers = {name: num for num, name, _, _ in CRITERIA}

    def progress(num, res):
        sys.stdout.write(f"criterion {num:2d} {res.check}: "
                         f"{res.status.upper()}  ({res.detail})\n")
        sys.stdout.flush()

    results = run_checks(args.suite, progress=progress)
    report = build_report(args.suite, results, seed=args.seed,
                          params={"budget": args.budget})
    if args.out:
        _write(args.out, json.dumps(report, indent=2, sort_keys=True) + "\n")
    return 0 if report["passed"] else 1


def _add_common(sp, *, seed=True, fmt=True):
    sp.add_argument("--out", metavar="PATH", default=None,
                    help="output file (default: stdout)")
    if fmt:
        sp.add_argument("--format", choices=("csv", "json", "text"),
                        default="csv", help="output format")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker hint, recorded in provenance; results are "
                         "deterministic and independent of this value")
    if seed:
        sp.add_argument("--seed", type=int, default=0, help="generator seed")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="operation budget for enumerations/quadrature")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tmlab",
        description="Numerical laboratory for the Thue-Morse measure on the "
                    "binary shift")
    parser.add_argument("--version", action="version",
                        version=f"tmlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="dimension-spectrum grid")
    sp.add_argument("--resolution", "-q", type=int, default=101,
                    help="grid resolution per axis")
    _add_common(sp, seed=False)
    sp.set_defaults(fn=cmd_spectrum)

    sp = sub.add_parser("construct", help="build a point descriptor")
    sp.add_argument("--kind", choices=("joint", "intermediate", "bounded"),
                    required=True)
    sp.add_argument("--targets", type=float, nargs=2, metavar=("ALPHA", "BETA"),
                    help="ratio extrema targets (kind=joint)")
    sp.add_argument("--gamma", type=float, help="scaling exponent (kind=intermediate)")
    sp.add_argument("--alpha", type=float, help="scaling constant (kind=intermediate)")
    sp.add_argument("--lambda", dest="lam", type=int, default=64,
                    help="large-block cutoff / grid step")
    sp.add_argument("--prefix-len", type=int, default=0,
                    help="also emit an explicit bit prefix of this length")
    _add_common(sp, fmt=False)
    sp.set_defaults(fn=cmd_construct, format="json")

    sp = sub.add_parser("trajectory", help="scaling trajectories")
    sp.add_argument("--descriptor", metavar="PATH",
                    help="JSON descriptor produced by 'construct'")
    sp.add_argument("--code", metavar="PROFILE",
                    help="block profile: 'geometric[:COUNT]' or comma list "
                         "like '2,2,1,1'")
    sp.add_argument("--which", choices=_TRAJECTORY_KINDS, required=True,
                    help="'enclosures' tabulates both scaling brackets "
                         "(alias: fig2)")
    sp.add_argument("--n-max", type=int, required=True,
                    help="position horizon (xi_*, enclosures) or block "
                         "horizon (F, rho)")
    sp.add_argument("--lambda", dest="lam", type=int, default=64)
    sp.add_argument("--tail", type=float, default=0.5,
                    help="tail fraction, recorded for downstream readers")
    _add_common(sp)
    sp.set_defaults(fn=cmd_trajectory)

    sp = sub.add_parser("measure", help="cylinder bounds and estimates")
    sp.add_argument("--word", required=True, help="binary word, e.g. 0110")
    sp.add_argument("--depth", type=int, default=14,
                    help="transfer-operator enumeration depth")
    sp.add_argument("--quadrature", action="store_true",
                    help="also run the Riesz-product quadrature cross-check")
    sp.add_argument("--natural-log", action="store_true",
                    help="report raw natural-log values instead of base-2")
    _add_common(sp, seed=False)
    sp.set_defaults(fn=cmd_measure, format="text")

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    _add_common(sp, fmt=False)
    sp.set_defaults(fn=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"tmlab: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ConstructionError, ValueError) as exc:
        print(f"tmlab: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"tmlab: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
