"""Command-line entry point.

Wires instance files to the library: hypothesis validation, exact densities,
Euler factors, the dyadic factor, the assembled constant, lattice sums, and
the convergence table.  All outputs are machine-readable (JSON, or CSV for
the table), numbers carry 12 significant digits, and identical inputs
produce byte-identical output regardless of thread count.

Exit codes: 0 on success, 1 on validation failure, 2 on usage errors
(including malformed instance files).
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import counter, euler, localdens
from .errors import (
    BudgetExceededError,
    CertificationError,
    InstanceFormatError,
    InstanceInvalidError,
    ScaleLimitError,
)
from .forms import boundary_stats, load_instance, region_area, validate_instance

__all__ = ["RunConfig", "run", "main"]


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command, instance, parameters, output shape."""

    instance_path: str
    command: str
    params: dict = field(default_factory=dict)
    output_format: str = "json"  # "json", or "csv" for the convergence table
    threads: int = 1


def _round12(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit_json(payload, out) -> None:
    out.write(json.dumps(_round12(payload), indent=2))
    out.write("\n")


def _factor_dict(f: euler.EulerFactor) -> dict:
    return {
        "p": f.p,
        "value": f.value,
        "truncation_level": f.truncation_level,
        "tail_bound": f.tail_bound,
        "exact": f.exact,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="r2forms",
        description="Lattice sums of the two-squares function over binary form values",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", help="path to the instance JSON file")
        return p

    add("validate", "run the hypothesis checks on an instance")
    add("volume", "exact area of the instance region")

    p = add("rho", "exact local density for one pair of moduli")
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--bruteforce", action="store_true", help="use the enumeration oracle")

    p = add("eulerfactor", "exact truncated factor at an odd prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--V", type=int, default=6, help="max shell v1+v2 kept (default 6)")

    p = add("k2", "dyadic factor by residue enumeration")
    p.add_argument("--nmax", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-3)

    p = add("constant", "assembled predicted constant")
    p.add_argument("--P", type=int, default=10**4, help="prime cutoff (default 10000)")
    p.add_argument("--V", type=int, default=6)

    p = add("sum", "empirical lattice sum at one dilation")
    p.add_argument("--X", type=float, required=True)
    p.add_argument("--threads", type=int, default=1)

    p = add("verify", "convergence table (CSV) over a list of dilations")
    p.add_argument("--X-list", required=True, help="comma-separated increasing dilations")
    p.add_argument("--P", type=int, default=10**4)
    p.add_argument("--V", type=int, default=6)
    p.add_argument("--threads", type=int, default=1)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "instance", "threads"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(
        instance_path=args.instance,
        command=args.command,
        params=params,
        output_format="csv" if args.command == "verify" else "json",
        threads=getattr(args, "threads", 1),
    )


def run(argv=None, out=None) -> int:
    """Parse arguments, execute one subcommand, and write its result."""
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        config = _config_from_args(parser.parse_args(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        inst = load_instance(config.instance_path)
    except InstanceFormatError as exc:
        print(f"error: malformed instance file: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot read instance file: {exc}", file=sys.stderr)
        return 2
    try:
        return _execute(config, inst, out)
    except (ValueError, BudgetExceededError, ScaleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 1
    except (InstanceInvalidError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _execute(config: RunConfig, inst, out) -> int:
    params = config.params
    if config.command == "validate":
        report = validate_instance(inst)
        _emit_json(
            {
                "irreducible": report.irreducible,
                "positive": report.positive,
                "boundary_bound": report.boundary_ok,
                "ok": report.ok,
                "messages": list(report.messages),
            },
            out,
        )
        return 0 if report.ok else 1

    if config.command == "volume":
        area = region_area(inst.region)
        stats = boundary_stats(inst.region)
        _emit_json(
            {
                "volume": float(area),
                "volume_exact": [area.numerator, area.denominator],
                "boundary_length": stats.boundary_length,
                "r_infinity": stats.r_infinity,
            },
            out,
        )
        return 0

    if config.command == "rho":
        route = localdens.rho_bruteforce if params["bruteforce"] else localdens.rho
        dv = route(params["d1"], params["d2"], inst.L, inst.C)
        _emit_json({"d1": dv.d1, "d2": dv.d2, "count": dv.count}, out)
        return 0

    if config.command == "eulerfactor":
        factor = euler.k_p(params["p"], inst.L, inst.C, params["V"])
        _emit_json(_factor_dict(factor), out)
        return 0

    if config.command == "k2":
        factor = euler.k_2(inst.L, inst.C, n_max=params["nmax"], tol=params["tol"])
        _emit_json(_factor_dict(factor), out)
        return 0

    if config.command == "constant":
        report = euler.predicted_constant(inst, P=params["P"], V=params["V"])
        _emit_json(report.to_dict(), out)
        return 0

    if config.command == "sum":
        res = counter.sum_S(inst, params["X"], threads=config.threads)
        _emit_json(
            {
                "X": res.X,
                "lattice_points": res.lattice_points,
                "S": res.S,
                "S_over_X2": res.S_over_X2,
            },
            out,
        )
        return 0

    if config.command == "verify":
        try:
            xs = [float(tok) for tok in params["X_list"].split(",") if tok]
        except ValueError:
            raise ValueError(f"bad --X-list {params['X_list']!r}") from None
        rows = counter.convergence_table(
            inst, xs, P=params["P"], V=params["V"], threads=config.threads
        )
        lines = ["X,S,predicted,ratio,eta_ref"]
        for row in rows:
            lines.append(
                f"{row.X:.12g},{row.S},{row.predicted_main_term:.12g},"
                f"{row.ratio:.12g},{row.eta_reference:.12g}"
            )
        out.write("\n".join(lines))
        out.write("\n")
        return 0

    raise AssertionError(f"unhandled command {config.command}")


def main() -> None:
    sys.exit(run())
