"""Command-line front end: eval, oracle, spectrum and verify.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 pole proximity.
Errors are reported on stderr as a single ``error: <kind>: <reason>`` line.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from pathlib import Path

import numpy as np

from . import coulomb as cl
from . import oscillator as osc
from . import verify
from .model import CORRUPTIONS, FINE_STRUCTURE, ConfigurationError, Kinematics, NoPoleError, XiDegenerateError, corrupted
from .oracle import OracleError, OracleGreen, ProblemSpec, default_grid
from .specfun import DomainError, PoleError, SpecfunError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_POLE = 3

HEADER = ("r", "r_prime", "gpp", "gpm", "gmp", "gmm")
BOOL_KEYS = {"matrix", "signed_gamma", "printed"}


class InputError(ValueError):
    """A request that cannot be evaluated as given."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _add_physics(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", choices=("oscillator", "coulomb"), required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--lambda-bar", type=float, help="Compton-length scale; Coulomb default is the fine-structure constant")
    p.add_argument("--omega", type=float, help="oscillator frequency")
    p.add_argument("--Z", type=float, help="Coulomb charge (negative is attractive)")
    p.add_argument("--signed-gamma", action="store_true", help="use gamma = -sqrt(kappa^2 - (lambda Z)^2) for kappa < 0")
    p.add_argument("--config", type=Path, help="key = value file whose entries override flags")


def _add_energy(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--epsilon", type=float, help="relativistic energy in units of mc^2")
    g.add_argument("--energy", type=float, help="nonrelativistic energy E, mapped to epsilon = 1 + lambda^2 E")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=_floats, help="explicit radii, overriding the grid spec")
    p.add_argument("--r-min", type=float, default=0.1)
    p.add_argument("--r-max", type=float, default=5.0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--r-prime", type=_floats, help="source radii r'")
    p.add_argument("--matrix", action="store_true", help="evaluate all pairs of grid radii")
    p.add_argument("--xi", type=float, default=1.0, help="frame weight of the off-diagonal elements")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1, help="processes used for pair evaluation")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diracgreen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the closed-form Green's matrix")
    _add_physics(p)
    _add_energy(p)
    _add_grid(p)
    p.add_argument("--printed", action="store_true", help="use the printed normalization instead of the Dirac one")
    p.add_argument("--corrupt", choices=CORRUPTIONS, help=argparse.SUPPRESS)

    p = sub.add_parser("oracle", help="evaluate the ODE-assembled Green's matrix")
    _add_physics(p)
    _add_energy(p)
    _add_grid(p)
    p.add_argument("--origin", default="large", help="origin exponent: large, small or a number")
    p.add_argument("--points", type=int, help="oracle grid size")

    p = sub.add_parser("spectrum", help="bound-state poles of the plus element")
    _add_physics(p)
    p.add_argument("--n-max", type=int, default=5)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suites", nargs="*", default=["all"], choices=sorted(verify.SUITES) + ["all"], metavar="suite")
    p.add_argument("--format", choices=("jsonl", "table"), default="jsonl")
    p.add_argument("--samples", type=int, help="identity-suite sample count")
    p.add_argument("--seed", type=int, help="identity-suite seed")
    p.add_argument("--corrupt", choices=CORRUPTIONS, help=argparse.SUPPRESS)
    return parser


def read_config(path: Path) -> list[str]:
    """Translate a key = value file into flags; later flags win in argparse."""
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}")
    argv: list[str] = []
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{number}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        dest = key.replace("-", "_")
        flag = "--" + ("Z" if dest == "Z" else dest.replace("_", "-"))
        if dest in BOOL_KEYS:
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(flag)
            elif value.lower() not in ("0", "false", "no", "off"):
                raise InputError(f"{path}:{number}: {key} expects a boolean")
        else:
            argv += [flag, value]
    return argv


def parse(argv: list[str]) -> argparse.Namespace:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", type=Path)
    known, _ = pre.parse_known_args(argv)
    if known.config is not None:
        argv = argv + read_config(known.config)
    return build_parser().parse_args(argv)


# ---------------------------------------------------------------- requests


def lambda_bar(args: argparse.Namespace) -> float:
    if args.lambda_bar is not None:
        return args.lambda_bar
    if args.problem == "coulomb":
        return FINE_STRUCTURE
    raise InputError("--lambda-bar is required for the oscillator")


def coupling(args: argparse.Namespace) -> float:
    if args.problem == "oscillator":
        if args.omega is None:
            raise InputError("--omega is required for the oscillator")
        return args.omega
    if args.Z is None:
        raise InputError("--Z is required for coulomb")
    return args.Z


def epsilon(args: argparse.Namespace, lam: float) -> float:
    if args.epsilon is not None:
        return args.epsilon
    if args.energy is not None:
        return 1.0 + lam**2 * args.energy
    raise InputError("one of --epsilon or --energy is required")


def configuration(args: argparse.Namespace) -> dict:
    lam = lambda_bar(args)
    out = dict(problem=args.problem, kappa=args.kappa, lambda_bar=lam)
    if args.problem == "oscillator":
        out["omega"] = coupling(args)
    else:
        out["Z"] = coupling(args)
        out["signed_gamma"] = args.signed_gamma
    if hasattr(args, "epsilon"):
        out["epsilon"] = epsilon(args, lam)
        if args.energy is not None:
            out["energy"] = args.energy
    return out


def radii(args: argparse.Namespace) -> np.ndarray:
    if args.r is not None:
        r = np.asarray(args.r, dtype=float)
    else:
        if args.count < 1:
            raise InputError("--count must be at least 1")
        if not 0.0 < args.r_min <= args.r_max:
            raise InputError("need 0 < r_min <= r_max")
        if args.count == 1:
            r = np.array([args.r_min])
        elif args.spacing == "log":
            r = np.geomspace(args.r_min, args.r_max, args.count)
        else:
            r = np.linspace(args.r_min, args.r_max, args.count)
    if r.size == 0 or not np.all(np.isfinite(r)) or np.any(r <= 0.0):
        raise InputError("radii must be finite and positive")
    if np.any(np.diff(r) <= 0.0):
        raise InputError("radii must be strictly increasing")
    return r


def pairs(args: argparse.Namespace) -> list[tuple[float, float]]:
    r = radii(args)
    if args.matrix:
        if args.r_prime is not None:
            raise InputError("--matrix and --r-prime are exclusive")
        sources = r
    elif args.r_prime is not None:
        sources = np.asarray(args.r_prime, dtype=float)
        if sources.size == 0 or not np.all(np.isfinite(sources)) or np.any(sources <= 0.0):
            raise InputError("r' values must be finite and positive")
    else:
        raise InputError("give --r-prime or --matrix")
    return sorted((float(a), float(b)) for a in r for b in sources)


def build_benchmark(args: argparse.Namespace) -> verify.Benchmark:
    cfg = configuration(args)
    kin = Kinematics(cfg["lambda_bar"], cfg["epsilon"], args.kappa)
    if args.problem == "oscillator":
        return verify.Benchmark(osc.OscillatorModel(kin, cfg["omega"]))
    return verify.Benchmark(cl.CoulombModel(kin, cfg["Z"], args.signed_gamma))


def _closed_row(task: tuple) -> tuple[float, ...]:
    bench, xi, printed, corruption, r, rp = task
    with corrupted(corruption) if corruption else nullcontext():
        gpm, gmp = bench.offdiag(xi, r, rp, printed)
        return (r, rp, float(bench.diag("plus", r, rp, printed)), float(gpm), float(gmp),
                float(bench.diag("minus", r, rp, printed)))


def evaluate_rows(bench: verify.Benchmark, todo: list[tuple[float, float]], xi: float, printed: bool = False,
                  workers: int = 1, corruption: str | None = None) -> list[tuple[float, ...]]:
    """Closed-form rows for each pair, in the order given."""
    tasks = [(bench, xi, printed, corruption, r, rp) for r, rp in todo]
    if workers <= 1 or len(tasks) < 2:
        return [_closed_row(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_closed_row, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def emit(rows: list[tuple[float, ...]], fmt: str, config: dict, out=None, extra: dict | None = None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        doc = dict(configuration=config, rows=[dict(zip(HEADER, row)) for row in rows])
        if extra:
            doc.update(extra)
        out.write(json.dumps(doc) + "\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])


def read_table(text: str) -> list[tuple[float, ...]]:
    """Parse an emitted CSV table back into float rows."""
    reader = csv.reader(text.splitlines())
    header = tuple(next(reader))
    if header != HEADER:
        raise InputError(f"unexpected header {header}")
    return [tuple(float(v) for v in row) for row in reader]


# ---------------------------------------------------------------- commands


def cmd_eval(args: argparse.Namespace) -> int:
    bench = build_benchmark(args)
    todo = pairs(args)
    rows = evaluate_rows(bench, todo, args.xi, args.printed, args.workers, args.corrupt)
    config = dict(configuration(args), xi=args.xi, printed=args.printed, pairs=len(rows))
    if args.corrupt:
        config["corruption"] = args.corrupt
    emit(rows, args.format, config)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    bench = build_benchmark(args)
    todo = pairs(args)
    origin: float | str = args.origin
    if origin not in ("large", "small"):
        try:
            origin = float(origin)
        except ValueError:
            raise InputError(f"--origin must be large, small or a number, got {args.origin!r}")
    problem: ProblemSpec = bench.problem()
    grid = default_grid(problem, args.points) if args.points is not None else None
    oracle = OracleGreen(problem, grid, origin)
    rows = [(r, rp, *oracle.matrix(r, rp, args.xi).as_tuple()) for r, rp in todo]
    config = dict(configuration(args), xi=args.xi, origin=args.origin, points=oracle.grid.r.size, pairs=len(rows))
    emit(rows, args.format, config, extra=dict(wronskian_spread=oracle.wronskian_spread))
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    config = configuration(args)
    if args.n_max < 0:
        raise InputError("--n-max must be non-negative")
    # the epsilon stored in the template is unused by the scans
    kin = Kinematics(config["lambda_bar"], 0.5, args.kappa)
    exploratory = args.problem == "coulomb" and args.kappa < 0
    header = ["n", "epsilon", "residual"] + (["exploratory"] if exploratory else [])
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    if args.problem == "oscillator":
        levels = osc.oscillator_bound_energies(kin, config["omega"], args.n_max)
        residual = [osc.oscillator_pole_residual(kin, config["omega"], e) for e in levels]
    else:
        try:
            levels = cl.coulomb_bound_energies(kin, config["Z"], args.n_max, args.signed_gamma)
        except NoPoleError as exc:
            print(f"note: {exc}", file=sys.stderr)
            return EXIT_OK
        residual = [cl.coulomb_pole_residual(kin, config["Z"], e, args.signed_gamma) for e in levels]
    if exploratory:
        print("note: kappa < 0 Coulomb levels depend on the gamma sign convention", file=sys.stderr)
    for n, (e, res) in enumerate(zip(levels, residual)):
        writer.writerow([n, repr(e), repr(res)] + (["1"] if exploratory else []))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    tol = verify.Tolerances()
    overrides = {}
    if args.samples is not None:
        overrides["identity_samples"] = args.samples
    if args.seed is not None:
        overrides["identity_seed"] = args.seed
    if overrides:
        tol = verify.tolerances_with(**overrides)
    with corrupted(args.corrupt) if args.corrupt else nullcontext():
        reports = verify.run_suites(args.suites, tol)
    if args.format == "table":
        print(verify.summary_table(reports))
    else:
        for rep in reports:
            print(rep.to_json())
    failed = [r.check_id for r in reports if not r.informational and not r.passed]
    print(f"{len(reports)} checks, {len(failed)} failed", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


COMMANDS = {"eval": cmd_eval, "oracle": cmd_oracle, "spectrum": cmd_spectrum, "verify": cmd_verify}


def _one_line(exc: Exception) -> str:
    return " ".join(str(exc).split())


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse(argv)
    except InputError as exc:
        print(f"error: bad-input: {_one_line(exc)}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_BAD_INPUT
    try:
        return COMMANDS[args.command](args)
    except PoleError as exc:
        print(f"error: pole: {_one_line(exc)}", file=sys.stderr)
        return EXIT_POLE
    except (InputError, ConfigurationError, XiDegenerateError, DomainError, SpecfunError, OracleError) as exc:
        print(f"error: bad-input: {type(exc).__name__}: {_one_line(exc)}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
