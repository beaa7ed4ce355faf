"""Command-line front end.

    fskan solve       --beta0 0.5 --beta 0 --optimizer jaya --seed 42
    fskan convergence --beta0 1 --beta 1 --optimizer pso
    fskan matrix      --optimizers jaya,pso
    fskan regress     --optimizer jaya

Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 regression failure.
"""

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional

from . import io
from .optimizers import ALGORITHMS, OptimizerConfig, SearchBounds
from .problem import WedgeParams
from .reference import load_reference
from .regression import regress
from .shooting import run_case_matrix, solve

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_REGRESSION = 0, 1, 2, 3
DEFAULT_BOUNDS = "0,3,1,12"


@dataclass(frozen=True)
class RunSpec:
    command: str
    params: Optional[WedgeParams]
    algorithms: tuple
    config: OptimizerConfig
    n_steps: int
    bounds: SearchBounds
    format: str
    out: Optional[str]
    workers: int = 1

    @property
    def algorithm(self):
        return self.algorithms[0]


def _finite_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid float value: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"value must be finite, got {text!r}")
    return v


def _bounds(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected a_lo,a_hi,e_lo,e_hi")
    a_lo, a_hi, e_lo, e_hi = (_finite_float(p) for p in parts)
    if not (a_lo < a_hi and e_lo < e_hi):
        raise argparse.ArgumentTypeError("each lower bound must be below its upper bound")
    if e_lo <= 0:
        raise argparse.ArgumentTypeError("the eta_inf lower bound must be positive")
    return SearchBounds([a_lo, e_lo], [a_hi, e_hi])


def _algorithm_list(text):
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    bad = [n for n in names if n not in ALGORITHMS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"invalid choice: {','.join(bad) or text!r} (choose from {', '.join(ALGORITHMS)})"
        )
    return names


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pop", type=int, default=20, help="population size (default 20)")
    common.add_argument("--iters", type=int, default=100, help="iterations (default 100)")
    common.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    common.add_argument("--steps", type=int, default=1000, help="RK4 steps during search (default 1000)")
    common.add_argument("--bounds", type=_bounds, default=_bounds(DEFAULT_BOUNDS),
                        help="search box a_lo,a_hi,e_lo,e_hi (default %s)" % DEFAULT_BOUNDS)
    common.add_argument("--out", help="output path, '-' for stdout")

    regime = argparse.ArgumentParser(add_help=False)
    regime.add_argument("--beta0", type=_finite_float, default=0.5)
    regime.add_argument("--beta", type=_finite_float, default=0.0)

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("--optimizer", choices=ALGORITHMS, default="jaya")

    parser = argparse.ArgumentParser(prog="fskan", description="Falkner-Skan shooting with population optimizers")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{solve,convergence,matrix,regress}")

    p = sub.add_parser("solve", parents=[common, regime, single], help="solve one regime, write its profile")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    sub.add_parser("convergence", parents=[common, regime, single], help="write the convergence history")

    p = sub.add_parser("matrix", parents=[common], help="solve all reference regimes")
    p.add_argument("--optimizers", type=_algorithm_list, default=ALGORITHMS,
                   help="comma-separated list (default all)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("regress", parents=[common, single], help="compare against reference data")
    p.add_argument("--workers", type=int, default=1)
    return parser


def parse_args(argv=None):
    """Parse ``argv`` into a validated :class:`RunSpec`; exits with code 2 on bad input."""
    parser = build_parser()
    ns = parser.parse_args(argv)

    if ns.pop < 4:
        parser.error(f"argument --pop: must be >= 4, got {ns.pop}")
    if ns.iters < 1:
        parser.error(f"argument --iters: must be >= 1, got {ns.iters}")
    if ns.steps < 1:
        parser.error(f"argument --steps: must be >= 1, got {ns.steps}")
    if not 0 <= ns.seed < 2**64:
        parser.error(f"argument --seed: must be an unsigned 64-bit integer, got {ns.seed}")
    workers = getattr(ns, "workers", 1)
    if workers < 1:
        parser.error(f"argument --workers: must be >= 1, got {workers}")

    if ns.command == "matrix":
        algorithms = ns.optimizers
    else:
        algorithms = (ns.optimizer,)
    params = WedgeParams(ns.beta0, ns.beta) if hasattr(ns, "beta0") else None

    return RunSpec(
        command=ns.command,
        params=params,
        algorithms=tuple(algorithms),
        config=OptimizerConfig(population_size=ns.pop, max_iterations=ns.iters, seed=ns.seed),
        n_steps=ns.steps,
        bounds=ns.bounds,
        format=getattr(ns, "format", "csv"),
        out=ns.out,
        workers=workers,
    )


def default_output(spec):
    if spec.command == "matrix":
        return "fs_matrix.csv"
    if spec.command == "regress":
        return None
    p = spec.params
    stem = f"fs_b0{io.fmt(p.beta0)}_b{io.fmt(p.beta)}_{spec.algorithm}"
    if spec.command == "convergence":
        return stem + "_convergence.csv"
    return stem + (".json" if spec.format == "json" else ".csv")


def _write(path, writer):
    if path == "-":
        writer(sys.stdout)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer(fh)


def _info(spec, out, text):
    stream = sys.stderr if out == "-" else sys.stdout
    print(text, file=stream)


def run(spec):
    out = spec.out or default_output(spec)

    if spec.command in ("solve", "convergence"):
        report = solve(spec.params, spec.algorithm, spec.config, spec.n_steps,
                       bounds=spec.bounds, record=spec.command == "solve")
        if spec.command == "solve":
            _write(out, lambda fh: io.emit_profile(report, spec.format, fh))
        else:
            _write(out, lambda fh: io.emit_convergence(report.history, fh))
        _info(spec, out, f"alpha={io.fmt(report.best.alpha)} eta_inf={io.fmt(report.best.eta_inf)} "
                         f"residual={io.fmt(report.residual)} -> {out}")
        return EXIT_OK

    if spec.command == "matrix":
        rows = [r.params for r in load_reference()]
        cells = run_case_matrix(rows, spec.algorithms, spec.config, spec.n_steps,
                                bounds=spec.bounds, record=False, max_workers=spec.workers)
        _write(out, lambda fh: io.emit_matrix(cells, fh))
        failed = sum(c.error is not None for c in cells)
        _info(spec, out, f"{len(cells) - failed}/{len(cells)} cells solved -> {out}")
        return EXIT_OK

    if spec.command == "regress":
        result = regress(load_reference(), spec.algorithm, spec.config, spec.n_steps,
                         bounds=spec.bounds, max_workers=spec.workers)
        if out is not None:
            _write(out, lambda fh: io.emit_checks(result.checks, fh))
        for c in result.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} {c.regime} {c.quantity}: got={io.fmt(c.got)} want={io.fmt(c.want)} tol={io.fmt(c.tol)}")
        n_fail = len(result.failures)
        print(f"{len(result.checks) - n_fail}/{len(result.checks)} checks passed")
        return EXIT_OK if result.ok else EXIT_REGRESSION

    raise AssertionError(spec.command)  # pragma: no cover


def main(argv=None):
    spec = parse_args(argv)
    try:
        return run(spec)
    except OSError as err:
        print(f"fskan: cannot write output: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as err:  # noqa: BLE001
        print(f"fskan: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
