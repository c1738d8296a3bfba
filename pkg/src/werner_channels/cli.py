"""Command-line entry point: parameter sweeps and point queries.

Exit codes: 0 ok, 2 I/O error, 3 input is not a physical state,
4 singular normalization, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chsh import OptimizerSettings, analytic_max_bell, maximize_bell
from .entanglement import classify_werner, negativity, ppt_spectrum_closed
from .errors import SingularityError, ValidationError
from .tomography import EulerAngles, tomogram_table
from .werner import WernerParameters, channel_spectrum, werner_coefficients

log = logging.getLogger("werner_channels")

EXIT_OK = 0
EXIT_IO = 2
EXIT_FORMAL = 3
EXIT_SINGULAR = 4
EXIT_USAGE = 64

WORKERS_ENV = "WERNER_WORKERS"

NEGATIVITY_HEADER = ["p", "n", "negativity", "classification"]
CHSH_HEADER = ["p", "n", "bell_max", "analytic_max", "classification"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.9g}"


def p_grid(p_min: float, p_max: float, steps: int) -> list[float]:
    if steps < 2:
        raise UsageError(f"--steps must be at least 2, got {steps}")
    if not p_min < p_max:
        raise UsageError(f"--p-min ({p_min}) must be below --p-max ({p_max})")
    span = p_max - p_min
    grid = [p_min + span * i / (steps - 1) for i in range(steps)]
    grid[-1] = p_max
    return grid


def read_config(path: str | None) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    if path is None:
        return {}
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}: malformed config line {raw!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def optimizer_settings(args) -> OptimizerSettings:
    fields = {f.name for f in dataclasses.fields(OptimizerSettings)}
    values = {}
    for key, value in read_config(args.config).items():
        if key not in fields:
            raise UsageError(f"unknown optimizer setting {key!r}")
        values[key] = value
    for key in fields:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    defaults = OptimizerSettings()
    typed = {k: type(getattr(defaults, k))(v) for k, v in values.items()}
    return OptimizerSettings(**typed)


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            log.warning("ignoring non-integer %s=%r", WORKERS_ENV, raw)
    return os.cpu_count() or 1


def _map(func, items):
    """Ordered map, in worker processes when more than one is allowed."""
    workers = min(_workers(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _negativity_row(task):
    p, n = task
    params = WernerParameters(p, n)
    try:
        verdict = classify_werner(params)
        value = negativity(params)
    except SingularityError as exc:
        return None, str(exc)
    return {
        "p": p,
        "n": n,
        "negativity": value,
        "classification": verdict.classification.value,
        "state_valid": verdict.state_valid,
    }, None


def _chsh_row(task):
    p, n, opt = task
    params = WernerParameters(p, n)
    try:
        verdict = classify_werner(params)
        best = maximize_bell(params, opt)
        analytic = analytic_max_bell(params)
    except SingularityError as exc:
        return None, str(exc)
    return {
        "p": p,
        "n": n,
        "bell_max": best.value,
        "analytic_max": analytic,
        "classification": verdict.classification.value,
        "state_valid": verdict.state_valid,
    }, None


def _collect(results, grid):
    rows = []
    for p, (row, err) in zip(grid, results):
        if row is None:
            log.warning("skipping p=%s: %s", fmt(p), err)
            continue
        rows.append(row)
    return rows


def render(rows: list[dict], header: list[str], fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) if isinstance(row[k], float) else row[k] for k in header])
    return buf.getvalue()


def emit(text: str, out: str | None) -> int:
    if out is None or out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(out).write_text(text)
    except OSError as exc:
        print(f"cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_negativity_sweep(args) -> int:
    grid = p_grid(args.p_min, args.p_max, args.steps)
    rows = _collect(_map(_negativity_row, [(p, args.n) for p in grid]), grid)
    return emit(render(rows, NEGATIVITY_HEADER, args.format), args.out)


def cmd_chsh_sweep(args) -> int:
    opt = optimizer_settings(args)
    grid = p_grid(args.p_min, args.p_max, args.steps)
    rows = _collect(_map(_chsh_row, [(p, args.n, opt) for p in grid]), grid)
    return emit(render(rows, CHSH_HEADER, args.format), args.out)


def cmd_classify(args) -> int:
    params = WernerParameters(args.p, args.n)
    try:
        verdict = classify_werner(params)
        report = {
            "p": params.p,
            "n": params.n,
            "state_valid": verdict.state_valid,
            "classification": verdict.classification.value,
            "boundaries": {"lower": verdict.boundary_low, "upper": verdict.boundary_high},
            "negativity": negativity(params),
            "eigenvalues": list(channel_spectrum(params)),
            "ppt_eigenvalues": list(ppt_spectrum_closed(params)),
        }
    except SingularityError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SINGULAR
    print(json.dumps(report, indent=2))
    return EXIT_OK if verdict.state_valid else EXIT_FORMAL


def cmd_tomogram(args) -> int:
    params = WernerParameters(args.p, args.n)
    try:
        coeffs = werner_coefficients(params)
    except SingularityError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_SINGULAR
    table = tomogram_table(
        coeffs,
        EulerAngles(theta=args.theta1, phi=args.phi1, psi=args.psi1),
        EulerAngles(theta=args.theta2, phi=args.phi2, psi=args.psi2),
    )
    table["sum"] = sum(table.values())
    print(json.dumps(table, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="werner-channels", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def sweep(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--p-min", type=float, default=-1.0 / 3.0)
        sp.add_argument("--p-max", type=float, default=1.0)
        sp.add_argument("--steps", type=int, default=121)
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.set_defaults(func=func)
        return sp

    sweep("negativity-sweep", cmd_negativity_sweep, "negativity versus p")
    chsh = sweep("chsh-sweep", cmd_chsh_sweep, "maximal CHSH value versus p")
    chsh.add_argument("--config", default=None, help="key=value file with optimizer settings")
    chsh.add_argument("--seeds", type=int, default=None)
    chsh.add_argument("--max-evals", type=int, default=None)
    chsh.add_argument("--tol", type=float, default=None)

    sp = sub.add_parser("classify", help="PPT classification at one point")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("tomogram", help="four joint spin-projection probabilities")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    for name in ("theta1", "psi1", "theta2", "psi2", "phi1", "phi2"):
        sp.add_argument(f"--{name}", type=float, default=0.0)
    sp.set_defaults(func=cmd_tomogram)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValidationError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
