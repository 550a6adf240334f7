"""Command-line front end.

Subcommands: spectrum, states, observables, sweep, k0, verify.
Exit status is 0 on success, 1 on invalid input and 2 when ``verify`` finds
a failing invariant.
"""
from __future__ import annotations

import argparse
import cmath
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from .profiles import MagneticProfile, ProfileKind
from .susy import InadmissibleError, Sign, admissibility, require_admissible

HEADERS = {
    "spectrum": ["n", "eps_re", "eps_im", "E_re", "E_im", "E_abs", "E_arg"],
    "states": ["n", "x", "psi_plus_re", "psi_plus_im", "psi_minus_re", "psi_minus_im"],
    "observables": ["n", "x", "rho", "j_x", "j_y", "continuity_residual"],
    "sweep": ["k", "n", "eps_re", "eps_im", "E_re", "E_im", "E_abs", "E_arg"],
    "k0": ["k0", "residual"],
    "verify": ["check", "value", "tolerance", "passed"],
}

PI_10 = math.pi / 10
PRESETS = {
    "fig3": dict(kind="constant", B_modulus=0.5, theta=PI_10, mu=1.0, k=1.0, n_max=3),
    "fig6": dict(kind="trig", B_modulus=4.0, theta=PI_10, mu=1.0, k=-2.0, n_max=3),
    "fig9": dict(kind="exp", B_modulus=1.0, theta=PI_10, mu=1.0, k=6.0, n_max=3),
    "fig2b": dict(kind="constant", B_modulus=0.5, theta=PI_10, mu=1.0,
                  k={"start": -5.0, "stop": 5.0, "steps": 101}, n_max=4),
    "fig5b": dict(kind="trig", B_modulus=4.0, theta=PI_10, mu=1.0,
                  k={"start": -10.0, "stop": 10.0, "steps": 201}, n_max=4),
    "fig8b": dict(kind="exp", B_modulus=1.0, theta=PI_10, mu=1.0,
                  k={"start": 0.0, "stop": 10.0, "steps": 201}, n_max=9),
}
CONFIG_KEYS = {"kind", "B_modulus", "theta", "mu", "k", "n_max", "grid", "output"}
THREADS_ENV = "GRAPHENE_CFIELD_THREADS"


class ValidationError(ValueError):
    pass


@dataclass
class RunConfig:
    kind: str
    B_modulus: float
    theta: float = 0.0
    mu: float = 1.0
    k: object = 0.0  # float or {"start", "stop", "steps"}
    n_max: int = 3
    grid: dict = field(default_factory=dict)
    output: dict = field(default_factory=lambda: {"format": "csv", "path": None})

    def profile(self):
        return MagneticProfile(ProfileKind(self.kind), self.B_modulus, self.theta, self.mu)

    def k_values(self):
        if isinstance(self.k, dict):
            start, stop, steps = self.k["start"], self.k["stop"], self.k["steps"]
            return [start + (stop - start) * i / (steps - 1) for i in range(steps)]
        return [self.k]

    def validate(self, command):
        if self.kind not in {p.value for p in ProfileKind}:
            raise ValidationError(f"unknown profile kind {self.kind!r}")
        if not (isinstance(self.B_modulus, (int, float)) and math.isfinite(self.B_modulus) and self.B_modulus > 0):
            raise ValidationError("B_modulus must be a finite number > 0")
        if not (math.isfinite(self.theta) and -math.pi < self.theta <= math.pi):
            raise ValidationError("theta must lie in (-pi, pi]")
        if not (math.isfinite(self.mu) and self.mu > 0):
            raise ValidationError("mu must be > 0")
        if isinstance(self.n_max, bool) or not isinstance(self.n_max, int) or self.n_max < 0:
            raise ValidationError("n_max must be a non-negative integer")
        if isinstance(self.k, dict):
            if set(self.k) != {"start", "stop", "steps"}:
                raise ValidationError("k-range needs exactly start, stop, steps")
            if not isinstance(self.k["steps"], int) or self.k["steps"] < 2:
                raise ValidationError("k-range requires steps >= 2")
            if command != "sweep":
                raise ValidationError(f"{command} takes a single k, not a range")
        elif not math.isfinite(self.k):
            raise ValidationError("k must be finite")
        elif command == "sweep":
            raise ValidationError("sweep needs a k-range (--k-range start stop steps)")
        g = self.grid
        if set(g) - {"n_points", "x_min", "x_max"}:
            raise ValidationError(f"unknown grid keys {sorted(set(g) - {'n_points', 'x_min', 'x_max'})}")
        if g.get("n_points") is not None and g["n_points"] < 3:
            raise ValidationError("n_points must be >= 3")
        if g.get("x_min") is not None and g.get("x_max") is not None and not g["x_max"] > g["x_min"]:
            raise ValidationError("x_max must exceed x_min")
        if self.output.get("format") not in ("csv", "json"):
            raise ValidationError("output format must be csv or json")
        profile = self.profile()
        try:
            if command == "sweep":
                # only the angular window matters; levels drop out per k
                require_admissible(profile, math.inf, 0)
            elif command == "k0":
                if profile.kind is not ProfileKind.TRIG:
                    raise ValidationError("k0 is defined for the trig profile only")
                require_admissible(profile, 0.0, 1)
            else:
                require_admissible(profile, self.k, 0)
                if command == "verify" and not admissibility(profile, self.k, 1):
                    raise ValidationError("verify needs at least two admissible levels")
        except InadmissibleError as exc:
            raise ValidationError(str(exc)) from exc
        return profile


# --- argument handling -----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--config", help="JSON file holding a RunConfig object")
    common.add_argument("--kind", choices=[p.value for p in ProfileKind])
    common.add_argument("--B", dest="B_modulus", type=float, help="field modulus |B|")
    common.add_argument("--theta", type=float, help="field argument in radians")
    common.add_argument("--mu", type=float)
    common.add_argument("--k", type=float)
    common.add_argument("--k-range", nargs=3, metavar=("START", "STOP", "STEPS"))
    common.add_argument("--n-max", type=int)
    common.add_argument("--n-points", type=int)
    common.add_argument("--x-min", type=float)
    common.add_argument("--x-max", type=float)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--output", "-o", help="output file (default stdout)")
    common.add_argument("--holes", action="store_true", help="also emit hole energies")

    parser = _Parser(prog="graphene-cfield", description="Dirac electrons in graphene under complex magnetic fields")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in [("spectrum", "energies of the bound levels"),
                       ("states", "sampled spinor components"),
                       ("observables", "density, current and continuity residual"),
                       ("sweep", "spectrum over a k-range"),
                       ("k0", "sign change of Im E_1 for the trig profile"),
                       ("verify", "run the invariant suite")]:
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict) or set(data) - CONFIG_KEYS:
        raise ValidationError(f"config keys must be drawn from {sorted(CONFIG_KEYS)}")
    return data


def config_from_args(args):
    merged = {"theta": 0.0, "mu": 1.0, "n_max": 3, "grid": {}, "output": {"format": "csv", "path": None}}
    if args.preset:
        merged.update(json.loads(json.dumps(PRESETS[args.preset])))
    if args.config:
        merged.update(_load_config(args.config))
    for key in ("kind", "B_modulus", "theta", "mu", "k", "n_max"):
        if getattr(args, key) is not None:
            merged[key] = getattr(args, key)
    if args.k_range is not None:
        try:
            merged["k"] = {"start": float(args.k_range[0]), "stop": float(args.k_range[1]),
                           "steps": int(args.k_range[2])}
        except ValueError as exc:
            raise ValidationError(f"bad --k-range: {exc}") from exc
    grid = dict(merged.get("grid") or {})
    for key in ("n_points", "x_min", "x_max"):
        if getattr(args, key) is not None:
            grid[key] = getattr(args, key)
    output = {"format": "csv", "path": None, **(merged.get("output") or {})}
    if args.format:
        output["format"] = args.format
    if args.output:
        output["path"] = args.output
    for key in ("kind", "B_modulus"):
        if key not in merged:
            raise ValidationError(f"missing --{'B' if key == 'B_modulus' else key} (or use --preset/--config)")
    try:
        k = merged.get("k", 0.0)
        k = {**k, "start": float(k["start"]), "stop": float(k["stop"])} if isinstance(k, dict) else float(k)
        return RunConfig(kind=str(merged["kind"]), B_modulus=float(merged["B_modulus"]),
                         theta=float(merged["theta"]), mu=float(merged["mu"]), k=k,
                         n_max=merged["n_max"], grid=grid, output=output)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed configuration: {exc}") from exc


# --- table producers ---------------------------------------------------------

def _signs(holes):
    return [Sign.ELECTRON, Sign.HOLE] if holes else [Sign.ELECTRON]


def _energy_cols(eps, E):
    return [eps.real, eps.imag, E.real, E.imag, abs(E), cmath.phase(E)]


def spectrum_rows(profile, k, n_max, holes=False):
    from .susy import spectrum

    rows = []
    for sign in _signs(holes):
        for n, eps, E in spectrum(profile, k, n_max, sign):
            rows.append([n, *_energy_cols(eps, E)] + ([int(sign)] if holes else []))
    return rows


def _thread_count():
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValidationError(f"{THREADS_ENV} must be an integer") from None
    return os.cpu_count() or 1


def sweep_rows(profile, ks, n_max, holes=False, threads=None):
    threads = threads or _thread_count()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map preserves input order, so the output is independent of scheduling
        blocks = pool.map(lambda k: [[k, *r] for r in spectrum_rows(profile, k, n_max, holes)], ks)
        return [row for block in blocks for row in block]


def _levels(profile, k, n_max):
    return [n for n in range(n_max + 1) if admissibility(profile, k, n)]


def _grid(cfg, profile, ns):
    from .oracle import Grid, auto_domain

    auto = auto_domain(profile, cfg.k, max(ns), n_points=cfg.grid.get("n_points") or 2001)
    lo = cfg.grid.get("x_min", auto.x_min)
    hi = cfg.grid.get("x_max", auto.x_max)
    if profile.kind is ProfileKind.TRIG:
        lo, hi = max(lo, auto.x_min), min(hi, auto.x_max)
    return Grid(lo, hi, auto.n_points)


def state_rows(cfg, profile, holes=False):
    from .susy import spinor_state

    ns = _levels(profile, cfg.k, cfg.n_max)
    x = _grid(cfg, profile, ns).x
    rows = []
    for sign in _signs(holes):
        for n in ns:
            u, v = spinor_state(profile, cfg.k, n, sign).components(x)
            extra = [int(sign)] if holes else []
            rows.extend([n, xi, ui.real, ui.imag, vi.real, vi.imag, *extra] for xi, ui, vi in zip(x, u, v))
    return rows


def observable_rows(cfg, profile, holes=False):
    from .observables import observable_field
    from .susy import spinor_state

    ns = _levels(profile, cfg.k, cfg.n_max)
    grid = _grid(cfg, profile, ns)
    rows = []
    for sign in _signs(holes):
        for n in ns:
            f = observable_field(spinor_state(profile, cfg.k, n, sign), grid)
            extra = [int(sign)] if holes else []
            rows.extend([n, *vals, *extra] for vals in zip(grid.x, f.rho, f.j_x, f.j_y, f.continuity_residual))
    return rows


def k0_rows(profile):
    from .susy import find_k0

    res = find_k0(profile)
    return [[res.k0, res.residual]]


def verify_rows(cfg, profile):
    from .verification import run_suite

    n_points = cfg.grid.get("n_points") or 1201
    return [[c.name, c.value, c.tolerance, c.passed] for c in run_suite(profile, cfg.k, cfg.n_max, n_points=n_points)]


# --- emission -----------------------------------------------------------------

def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_cell(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(command, rows, cfg, holes=False):
    header = HEADERS[command] + (["sign"] if holes and command in ("spectrum", "sweep", "states", "observables") else [])
    if cfg.output["format"] == "csv":
        buf = io.StringIO(newline="")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_cell(v) for v in row) + "\n")
        return buf.getvalue()
    meta = asdict(cfg)
    meta.update(version=__version__, command=command, holes=holes, columns=header)
    doc = {"meta": meta, "rows": [[_json_cell(v) for v in row] for row in rows]}
    return json.dumps(doc, sort_keys=True, allow_nan=False) + "\n"


def emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from exc


def _report(rows):
    width = max(len(r[0]) for r in rows)
    lines = [f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {val:.3e}  (tol {tol:.0e})" for name, val, tol, ok in rows]
    failed = sum(not r[3] for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        profile = cfg.validate(args.command)
        if args.command == "sweep":
            _thread_count()
    except ValidationError as exc:
        print(f"graphene-cfield: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"graphene-cfield: error: {exc}", file=sys.stderr)
        return 1

    cmd, holes = args.command, args.holes
    if cmd == "spectrum":
        rows = spectrum_rows(profile, cfg.k, cfg.n_max, holes)
    elif cmd == "sweep":
        rows = sweep_rows(profile, cfg.k_values(), cfg.n_max, holes)
    elif cmd == "states":
        rows = state_rows(cfg, profile, holes)
    elif cmd == "observables":
        rows = observable_rows(cfg, profile, holes)
    elif cmd == "k0":
        rows = k0_rows(profile)
    else:
        rows = verify_rows(cfg, profile)
        sys.stdout.write(_report(rows))
        if cfg.output["path"] is not None:
            emit(render(cmd, rows, cfg), cfg.output["path"])
        return 0 if all(r[3] for r in rows) else 2

    try:
        emit(render(cmd, rows, cfg, holes), cfg.output["path"])
    except ValidationError as exc:
        print(f"graphene-cfield: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
