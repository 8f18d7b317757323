"""Command-line interface.

Subcommands: ``table1``, ``ghz-curve``, ``analyze``, ``squeeze`` and
``measure-ghz``. Output is CSV (default) or JSON with numbers printed to six
significant digits. Exit codes: 0 success, 1 verification mismatch,
2 usage or parse error.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

from .channels import depolarize, probabilistic_measure
from .errors import EntRobustError
from .ketparse import parse_ket
from .robustness import (
    DEFAULT_TOL,
    TABLE1_TOL,
    dcrit_cut,
    ghz_scrit,
    ghz_scrit_limit,
    table1,
)
from .separability import (
    PPT_TOL,
    balanced_cut,
    enumerate_cuts,
    min_pt_eigenvalue,
    partial_trace,
    schmidt_rank,
    von_neumann_entropy,
)
from .squeezing import (
    MAX_SPIN_QUBITS,
    best_twist,
    one_axis_twist,
    scrit_squeezed,
    xi_after_depolarization,
    xi_squared,
)
from .states import QubitSubset, density_of, dicke, ghz, named_state

GHZ_CURVE_MAX = 64
GHZ_NUMERIC_MAX = 8
SIG_DIGITS = 6


class UsageError(Exception):
    pass


@dataclass
class Result:
    command: str
    params: dict
    columns: list
    rows: list = field(default_factory=list)
    exit_code: int = 0
    messages: list = field(default_factory=list)


def fmt_number(x):
    """Round to six significant digits; the printed value is the contract."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if not math.isfinite(x):
        return str(x)
    value = float(format(x, f".{SIG_DIGITS}g"))
    return 0.0 if value == 0 else value


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(fmt_number(x))
    return str(x)


def render(result, fmt):
    if fmt == "json":
        payload = {
            "command": result.command,
            "params": {k: fmt_number(v) for k, v in result.params.items()},
            "rows": [{c: fmt_number(row.get(c)) for c in result.columns} for row in result.rows],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_cell(row.get(c)) for c in result.columns])
    return buf.getvalue()


def resolve_state(name=None, expr=None):
    """State from ``--state`` (a named state, ``ghz:N``, ``w:N``, ``dicke:N:K``) or ``--state-expr``."""
    if (name is None) == (expr is None):
        raise UsageError("give exactly one of --state or --state-expr")
    if expr is not None:
        return parse_ket(expr, normalize=True), expr
    parts = name.lower().split(":")
    try:
        if parts[0] == "ghz" and len(parts) == 2:
            return ghz(int(parts[1])), name
        if parts[0] == "w" and len(parts) == 2:
            return dicke(int(parts[1]), 1), name
        if parts[0] == "dicke" and len(parts) == 3:
            return dicke(int(parts[1]), int(parts[2])), name
    except ValueError as exc:
        raise UsageError(f"bad state selector {name!r}: {exc}") from None
    return named_state(name), name.upper()


def cmd_table1(tol=DEFAULT_TOL):
    res = Result("table1", {"tol": tol}, ["state", "cut_type", "cut", "d_crit", "reference", "match"])
    for entry, d in table1(tol):
        ok = abs(d - entry.reference) <= TABLE1_TOL
        cut = QubitSubset(int(entry.state[1]), entry.cut)
        res.rows.append(
            {"state": entry.state, "cut_type": entry.cut_type, "cut": str(cut),
             "d_crit": d, "reference": entry.reference, "match": ok}
        )
        if not ok:
            res.exit_code = 1
            res.messages.append(
                f"mismatch {entry.state} {entry.cut_type}: computed {d:.6f}, "
                f"reference {entry.reference:.3f}, diff {d - entry.reference:+.6f}"
            )
    return res


def cmd_ghz_curve(n_max=8, tol=DEFAULT_TOL):
    if not 2 <= n_max <= GHZ_CURVE_MAX:
        raise UsageError(f"--n must lie in [2, {GHZ_CURVE_MAX}] for ghz-curve")
    res = Result("ghz-curve", {"n": n_max, "tol": tol}, ["n", "s_crit", "d_crit", "numeric_d_crit"])
    for n in range(2, n_max + 1):
        s = ghz_scrit(n)
        numeric = dcrit_cut(ghz(n), balanced_cut(n), tol) if n <= GHZ_NUMERIC_MAX else None
        res.rows.append({"n": n, "s_crit": s, "d_crit": 1 - s, "numeric_d_crit": numeric})
    s = ghz_scrit_limit()
    res.rows.append({"n": "inf", "s_crit": s, "d_crit": 1 - s, "numeric_d_crit": None})
    return res


def cmd_analyze(psi, label, d=0.0, tol=PPT_TOL):
    if not 0.0 <= d <= 1.0:
        raise UsageError("--d must lie in [0, 1]")
    rho = depolarize(density_of(psi), None, d)
    res = Result(
        "analyze",
        {"state": label, "d": d, "tol": tol},
        ["cut", "cut_type", "min_pt_eigenvalue", "ppt", "schmidt_rank", "entropy"],
    )
    for cut in enumerate_cuts(psi.n_qubits):
        lam = min_pt_eigenvalue(rho, cut)
        res.rows.append(
            {
                "cut": str(cut),
                "cut_type": cut.label(),
                "min_pt_eigenvalue": lam,
                "ppt": lam >= -tol,
                "schmidt_rank": schmidt_rank(psi, cut),
                "entropy": von_neumann_entropy(partial_trace(rho, cut)),
            }
        )
    return res


def _squeeze_row(mu, xi0, zeta, s):
    xi_s = xi_after_depolarization(xi0, zeta, s)
    if xi0 <= 1.0 + 1e-9:
        s_crit = scrit_squeezed(min(zeta, 1.0), min(xi0, 1.0))
        d_crit = 1 - s_crit
    else:
        s_crit = d_crit = None
    return {"mu": mu, "xi0_sq": xi0, "zeta": zeta, "xi_s_sq": xi_s, "s_crit": s_crit, "d_crit": d_crit}


def cmd_squeeze(n=4, mu="scan", s=0.9, points=200):
    if not 1 <= n <= MAX_SPIN_QUBITS:
        raise UsageError(f"--n must lie in [1, {MAX_SPIN_QUBITS}] for squeeze")
    if not 0.0 < s <= 1.0:
        raise UsageError("--s must lie in (0, 1]")
    res = Result(
        "squeeze",
        {"n": n, "mu": mu if mu == "scan" else float(mu), "s": s},
        ["mu", "xi0_sq", "zeta", "xi_s_sq", "s_crit", "d_crit"],
    )
    if mu == "scan":
        mu_val, report = best_twist(n, points)
    else:
        mu_val = float(mu)
        report = xi_squared(one_axis_twist(n, mu_val))
    res.rows.append(_squeeze_row(mu_val, report.xi_squared, report.zeta, s))
    # ideal large-n limit: perfectly squeezed, fully polarized
    res.rows.append(_squeeze_row("limit", 0.0, 1.0, s))
    return res


def cmd_measure_ghz(n=4, p=0.5, tol=PPT_TOL):
    if not 2 <= n <= MAX_SPIN_QUBITS:
        raise UsageError(f"--n must lie in [2, {MAX_SPIN_QUBITS}] for measure-ghz")
    if not 0.0 <= p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    rho = probabilistic_measure(density_of(ghz(n)), p)
    predicted = -((1 - p) ** n) / 2
    res = Result(
        "measure-ghz", {"n": n, "p": p, "tol": tol}, ["cut", "min_pt_eigenvalue", "predicted", "npt"]
    )
    lowest = math.inf
    for cut in enumerate_cuts(n):
        lam = min_pt_eigenvalue(rho, cut)
        lowest = min(lowest, lam)
        res.rows.append({"cut": str(cut), "min_pt_eigenvalue": lam, "predicted": predicted, "npt": lam < -tol})
    res.rows.append({"cut": "all", "min_pt_eigenvalue": lowest, "predicted": predicted, "npt": lowest < -tol})
    return res


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--state", help="named state (G3, G4, W3, W4, X4, B4, S4, SINGLET, ghz:N, w:N, dicke:N:K)")
    common.add_argument("--state-expr", help="ket expression, e.g. '(|000>+|111>)/sqrt(2)'")
    common.add_argument("--d", type=float, default=0.0, help="depolarization probability")
    common.add_argument("--n", type=int, help="number of qubits (n_max for ghz-curve)")
    common.add_argument("--p", type=float, default=0.5, help="measurement probability")
    common.add_argument("--mu", default="scan", help="twist angle or 'scan'")
    common.add_argument("--s", type=float, default=0.9, help="scaling factor 1-d")
    common.add_argument("--tol", type=float, help="tolerance (bisection width or PPT threshold)")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: standard output)")

    parser = argparse.ArgumentParser(prog="entrobust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common], help="reproduce the critical-depolarization table")
    sub.add_parser("ghz-curve", parents=[common], help="GHZ critical values versus n")
    sub.add_parser("analyze", parents=[common], help="PPT and entropy diagnostics per cut")
    sub.add_parser("squeeze", parents=[common], help="one-axis-twisted squeezing and its noise bound")
    sub.add_parser("measure-ghz", parents=[common], help="GHZ under probabilistic Z measurements")
    return parser


def run(args):
    if args.tol is not None and args.tol <= 0:
        raise UsageError("--tol must be positive")
    if args.command == "table1":
        return cmd_table1(args.tol or DEFAULT_TOL)
    if args.command == "ghz-curve":
        return cmd_ghz_curve(args.n or 8, args.tol or DEFAULT_TOL)
    if args.command == "analyze":
        psi, label = resolve_state(args.state, args.state_expr)
        return cmd_analyze(psi, label, args.d, args.tol or PPT_TOL)
    if args.command == "squeeze":
        mu = args.mu if args.mu == "scan" else float(args.mu)
        return cmd_squeeze(args.n or 4, mu, args.s)
    if args.command == "measure-ghz":
        return cmd_measure_ghz(args.n or 4, args.p, args.tol or PPT_TOL)
    raise UsageError(f"unknown command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = run(args)
    except (UsageError, EntRobustError, ValueError) as exc:
        print(f"entrobust: error: {exc}", file=sys.stderr)
        return 2
    text = render(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for msg in result.messages:
        print(msg, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
