"""Command-line front end: ``rovib <command> [options]``.

Exit codes: 0 ok, 1 validation failure, 2 no bound state, 3 unknown
molecule, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .constants import CONSTANTS, load_registry, lookup
from .errors import NoBoundStateError, RegistryError, UnknownMoleculeError
from .spectrum import Regime, nr_energy, nr_n_max, physical_level, scan_de, scan_n, solve_relativistic, transition
from .validation import TABLE2, TABLE3, TABLE4, run_all
from .wavefn import radial_state, radial_value, reduced_value

__all__ = ["main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NO_BOUND = 2
EXIT_UNKNOWN = 3
EXIT_USAGE = 64

LEVEL_COLUMNS = ("n", "l", "energy_cm1", "regime", "coeffs", "residual")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text):
    """``"3"``, ``"0-5"`` or ``"0..5"`` (inclusive); empty ranges are usage errors."""
    text = text.strip()
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            break
    else:
        lo = hi = text
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if lo < 0 or hi < lo:
        raise UsageError(f"empty or negative range {text!r}")
    return list(range(lo, hi + 1))


def _fmt(value, digits):
    if isinstance(value, float):
        if value != value:
            return "nan"
        return f"{value:.{digits}g}"
    return str(value)


class _Writer:
    """Rows to stdout or a file, as CSV or JSON lines, with fixed formatting."""

    def __init__(self, args, columns):
        self.columns = columns
        self.format = args.format
        self.digits = args.precision if args.precision is not None else (10 if args.out else 6)
        self.path = args.out
        self.buffer = io.StringIO()
        if self.format == "csv":
            self.csv = csv.writer(self.buffer, lineterminator="\n")
            self.csv.writerow(columns)

    def row(self, *values):
        cells = [_fmt(v, self.digits) for v in values]
        if self.format == "csv":
            self.csv.writerow(cells)
        else:
            record = {}
            for key, value, cell in zip(self.columns, values, cells):
                record[key] = float(cell) if isinstance(value, float) and cell != "nan" else (None if cell == "nan" else value)
            self.buffer.write(json.dumps(record) + "\n")

    def close(self):
        text = self.buffer.getvalue()
        if self.path:
            with open(self.path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _warn(message):
    print(f"rovib: {message}", file=sys.stderr)


def _coeff_sources(args, l):
    if l == 0:
        return ["exact"]
    return ["matched", "paper"] if args.coeffs == "both" else [args.coeffs]


def _level(params, n, l, source, regime):
    coeffs = None if source == "exact" else source
    if regime is Regime.NONRELATIVISTIC:
        lv = nr_energy(params, n, l, coeffs)
        return lv.value_cm, lv.nu_residual
    lv = physical_level(solve_relativistic(params, n, l, coeffs))
    if lv is None:
        raise NoBoundStateError(f"no relativistic root for n = {n}, l = {l}")
    return lv.value_cm, lv.residual


def cmd_levels(args, registry):
    params = lookup(args.molecule, registry)
    regime = Regime.parse(args.regime)
    ns, ls = parse_range(args.n), parse_range(args.l)
    out = _Writer(args, LEVEL_COLUMNS)
    missing = 0
    for n in ns:
        for l in ls:
            for source in _coeff_sources(args, l):
                try:
                    energy, residual = _level(params, n, l, source, regime)
                except NoBoundStateError as exc:
                    missing += 1
                    _warn(f"n={n} l={l}: {exc}")
                    continue
                out.row(n, l, energy, regime.short, source, residual)
    out.close()
    return EXIT_NO_BOUND if missing else EXIT_OK


def cmd_table2(args, registry):
    out = _Writer(args, ("parameters", "sigma", "delta", "alpha", "energy_cm1", "published_cm1", "deviation_cm1"))
    for name, gold in TABLE2.items():
        p = lookup(name, registry)
        e = nr_energy(p, 0).value_cm
        out.row(name, p.sigma, p.delta, p.alpha, e, gold, e - gold)
    out.close()
    return EXIT_OK


def cmd_table3(args, registry):
    p = lookup(args.molecule or "Ar2", registry)
    out = _Writer(args, ("n", "transition_cm1", "published_cm1", "deviation_cm1", "beyond_n_max"))
    top = nr_n_max(p)
    for n, gold in enumerate(TABLE3, start=1):
        t = transition(p, n, strict=False) / CONSTANTS.invcm_to_ev
        out.row(n, t, gold, t - gold, str(n > top).lower())
    out.close()
    return EXIT_OK


def cmd_table4(args, registry):
    out = _Writer(args, ("molecule", "n", "l", "energy_cm1", "coeffs", "published_cm1", "deviation_cm1"))
    for col, name in enumerate(("Ar2", "H2")):
        p = lookup(name, registry)
        for (n, l), golds in TABLE4.items():
            gold = golds[col]
            for source in _coeff_sources(args, l):
                try:
                    e = nr_energy(p, n, l, None if source == "exact" else source).value_cm
                except NoBoundStateError:
                    e = float("nan")
                dev = e - gold if gold is not None else float("nan")
                out.row(name, n, l, e, source, float("nan") if gold is None else gold, dev)
    out.close()
    return EXIT_OK


def cmd_scan_n(args, registry):
    p = lookup(args.molecule or "Ar2", registry)
    levels, dropped = scan_n(p, parse_range(args.n) if args.n else None)
    if dropped:
        _warn(f"n = {dropped} beyond the last bound level, truncated")
    out = _Writer(args, ("n", "energy_cm1"))
    for lv in levels:
        out.row(lv.n, lv.value_cm)
    out.close()
    return EXIT_OK if levels else EXIT_NO_BOUND


def cmd_scan_de(args, registry):
    p = lookup(args.molecule or "Ar2", registry)
    if args.de_steps < 1 or args.de_max < args.de_min:
        raise UsageError("empty D_e range")
    if args.de_steps == 1:
        values = [args.de_min]
    else:
        values = np.linspace(args.de_min, args.de_max, args.de_steps).tolist()
    n = parse_range(args.n)[0] if args.n else 0
    out = _Writer(args, ("de_cm1", "energy_cm1"))
    for de, lv in zip(values, scan_de(p, values, n)):
        out.row(float(de), lv.value_cm)
    out.close()
    return EXIT_OK


def cmd_wavefunction(args, registry):
    p = lookup(args.molecule, registry)
    n = parse_range(args.n)[0]
    l = parse_range(args.l)[0]
    state = radial_state(nr_energy(p, n, l, args.coeffs if args.coeffs != "both" else None))
    r_e = p.molecule.equilibrium_radius
    r_min = args.r_min if args.r_min is not None else 1e-3 * r_e
    r_max = args.r_max if args.r_max is not None else 12.0 * r_e
    if not 0.0 < r_min < r_max or args.points < 2:
        raise UsageError("need 0 < r-min < r-max and at least two points")
    r = np.linspace(r_min, r_max, args.points)
    out = _Writer(args, ("r_angstrom", "R", "g"))
    for ri, big, small in zip(r.tolist(), radial_value(state, r).tolist(), reduced_value(state, r).tolist()):
        out.row(ri, big, small)
    out.close()
    _warn(f"N = {state.norm_quadrature:.10g}, K = {state.k_exp:.10g}, S/q = {state.s_exp:.10g}")
    return EXIT_OK


def cmd_validate(args, registry):
    results = run_all(registry, skip_oracle=args.skip_oracle)
    for r in results:
        print(r.line(), file=sys.stderr if args.out is None and args.format == "jsonl" else sys.stdout)
    if args.out or args.format == "jsonl":
        text = "".join(json.dumps(r.record()) + "\n" for r in results)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


COMMANDS = {
    "levels": cmd_levels,
    "table2": cmd_table2,
    "table3": cmd_table3,
    "table4": cmd_table4,
    "scan-n": cmd_scan_n,
    "scan-de": cmd_scan_de,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
}


def build_parser():
    parser = _Parser(prog="rovib", description="Ro-vibrational levels of the deformed hyperbolic potential.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--molecule", help="registry entry (default H2; Ar2 for table3/scan-n/scan-de)")
    parser.add_argument("--registry", help="registry file (default: $ROVIB_REGISTRY or the built-in one)")
    parser.add_argument("--regime", choices=("nr", "kg"), default="nr")
    parser.add_argument("--n", help="vibrational range, e.g. 0-5")
    parser.add_argument("--l", default="0", help="rotational range, e.g. 0-2")
    parser.add_argument("--coeffs", choices=("paper", "matched", "both"), default="matched")
    parser.add_argument("--out", help="write to this file instead of stdout")
    parser.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    parser.add_argument("--precision", type=int, help="significant digits (default 6 on stdout, 10 in files)")
    parser.add_argument("--skip-oracle", action="store_true", help="validate: golden tables only")
    parser.add_argument("--de-min", type=float, default=50.0)
    parser.add_argument("--de-max", type=float, default=150.0)
    parser.add_argument("--de-steps", type=int, default=101)
    parser.add_argument("--r-min", type=float)
    parser.add_argument("--r-max", type=float)
    parser.add_argument("--points", type=int, default=2001)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision is not None and not 1 <= args.precision <= 17:
        parser.error("--precision must be between 1 and 17")
    if args.command in ("levels", "wavefunction"):
        args.molecule = args.molecule or "H2"
        args.n = args.n or "0"
    try:
        registry = load_registry(args.registry)
        return COMMANDS[args.command](args, registry)
    except UsageError as exc:
        parser.error(str(exc))
    except UnknownMoleculeError as exc:
        _warn(str(exc))
        return EXIT_UNKNOWN
    except RegistryError as exc:
        _warn(f"registry: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _warn(str(exc))
        return EXIT_USAGE
    except NoBoundStateError as exc:
        _warn(str(exc))
        return EXIT_NO_BOUND


if __name__ == "__main__":
    sys.exit(main())
