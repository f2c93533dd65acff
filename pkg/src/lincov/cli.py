"""Command-line front end.

Subcommands wire the library end to end: model spec -> weights ->
autocovariance calculus -> condition diagnostics -> simulation.  Every
run writes a manifest next to its primary output; ``lincov replay``
re-executes a manifest and reproduces the outputs byte for byte.

Exit codes: 0 success; 1 a diagnostic verdict or oracle comparison
reported "fail" and --strict was given; 2 invalid input (parse or
domain error), with a one-line message on stderr naming the problem.
"""

import argparse
import sys

from . import __version__, fileio
from .acvf import AcvfSequence, compose_acvf, filter_self_acvf
from .diagnostics import (
    DEFAULT_EPSILON,
    DEFAULT_K_MIN,
    berman_diagnostic,
    geometric_lag_grid,
    summability_diagnostic,
    theorem_check,
)
from .errors import LincovError
from .models import ArmaModel, FarimaSpec
from .simulation import (
    SimConfig,
    empirical_acvf,
    oracle_compare,
    simulate_linear_process,
    weights_for_model,
)
from .weights import arma_pi_weights, arma_psi_weights
from .zoo import analytic_acvf

_XI_GRID_PER_DECADE = 10
_XI_MAX_LAG = 500
_SE_LAGS = 256


class _VerdictFailure(Exception):
    """Raised internally when --strict should turn a fail verdict into exit 1."""


class _ExitCode(Exception):
    """Carries a nested run's exit code out of a replay."""

    def __init__(self, code: int):
        super().__init__(code)
        self.code = code


def _weights_of(model, direction: str, n_max: int | None):
    if isinstance(model, FarimaSpec):
        model = model.arma if model.arma is not None else ArmaModel.white(1.0)
    if direction == "psi":
        return arma_psi_weights(model, n_max)
    return arma_pi_weights(model, n_max)


def _check_strict(strict: bool, verdicts: list) -> None:
    if strict and any(v == "fail" or v is False for v in verdicts):
        raise _VerdictFailure()


def cmd_acvf(args) -> None:
    model, _ = fileio.parse_model_file(args.model)
    seq = analytic_acvf(model, args.k_max)
    fileio.write_acvf(args.output, seq)
    fileio.write_manifest(
        args.output, "acvf",
        {"k_max": args.k_max, "strict": args.strict},
        {"model": args.model}, [args.output], __version__,
    )


def cmd_weights(args) -> None:
    model, _ = fileio.parse_model_file(args.model)
    w = _weights_of(model, args.direction, args.n_max)
    fileio.write_weights(args.output, w)
    fileio.write_manifest(
        args.output, "weights",
        {"direction": args.direction, "n_max": args.n_max, "strict": args.strict},
        {"model": args.model}, [args.output], __version__,
    )


def cmd_compose(args) -> None:
    gw = fileio.read_acvf(args.gw)
    gx = fileio.read_acvf(args.gx)
    result = compose_acvf(gw, gx, args.k_max)
    fileio.write_acvf(args.output, result.acvf, trunc_bound=result.truncation_bound)
    fileio.write_manifest(
        args.output, "compose",
        {"k_max": args.k_max, "strict": args.strict},
        {"gw": args.gw, "gx": args.gx}, [args.output], __version__,
    )


def cmd_check(args) -> None:
    seq = fileio.read_acvf(args.acvf)
    k_max = seq.k_max if args.k_max is None else min(args.k_max, seq.k_max)
    berman = berman_diagnostic(seq, args.k_min, k_max)
    summ = summability_diagnostic(seq, args.epsilon, k_max)
    payload = {"berman": berman.to_json_dict(), "summability": summ.to_json_dict()}
    fileio.write_json(args.output, payload)
    fileio.write_manifest(
        args.output, "check",
        {"epsilon": args.epsilon, "k_min": args.k_min, "k_max": args.k_max,
         "strict": args.strict},
        {"acvf": args.acvf}, [args.output], __version__,
    )
    _check_strict(args.strict, [berman.verdict, summ.verdict])


def cmd_theorem(args) -> None:
    x_model, _ = fileio.parse_model_file(args.x_model)
    f_model, _ = fileio.parse_model_file(args.filter_model)
    w = _weights_of(f_model, args.filter_direction, args.n_max)
    k_w = max(600, min(len(w.coeffs) + 8, 8192))
    gw = filter_self_acvf(w, k_w)
    gx = analytic_acvf(x_model, args.k_max + k_w)
    xi_lags = geometric_lag_grid(2, min(_XI_MAX_LAG, args.k_max),
                                 per_decade=_XI_GRID_PER_DECADE)
    report = theorem_check(gw, gx, xi_lags, args.epsilon,
                           args.k_min, args.k_max)
    fileio.write_json(args.output, report.to_json_dict())
    fileio.write_manifest(
        args.output, "theorem",
        {"filter_direction": args.filter_direction, "epsilon": args.epsilon,
         "k_min": args.k_min, "k_max": args.k_max, "n_max": args.n_max,
         "strict": args.strict},
        {"x_model": args.x_model, "filter_model": args.filter_model},
        [args.output], __version__,
    )
    verdicts = [report.berman.verdict, report.summability.verdict,
                all(c.ok for c in report.xi_checks)]
    _check_strict(args.strict, verdicts)


def cmd_simulate(args) -> None:
    model, sim = fileio.parse_model_file(args.model)
    sim = sim or {"n": None, "burn_in": None, "seed": 0,
                  "noise": fileio.NoiseSpec("gaussian", getattr(model, "sigma2", 1.0))}
    w = weights_for_model(model)
    n = args.n if args.n is not None else (sim["n"] if sim["n"] else 10**5)
    seed = args.seed if args.seed is not None else sim["seed"]
    burn_in = sim["burn_in"] if sim["burn_in"] is not None else len(w) - 1
    config = SimConfig(n_samples=n, burn_in=burn_in, seed=seed, noise=sim["noise"])
    series = simulate_linear_process(w, config)

    k_max = args.k_max
    emp = empirical_acvf(series, max(k_max, min(_SE_LAGS, n - 1)))
    analytic = analytic_acvf(model, k_max)
    report = oracle_compare(analytic, emp, k_max, n)

    acvf_path = args.output + ".acvf.csv"
    report_path = args.output + ".oracle.json"
    fileio.write_series(args.output, series)
    fileio.write_acvf(acvf_path, emp.truncated(k_max))
    fileio.write_json(report_path, report.to_json_dict())
    fileio.write_manifest(
        args.output, "simulate",
        {"n": n, "seed": seed, "k_max": k_max, "strict": args.strict},
        {"model": args.model},
        [args.output, acvf_path, report_path], __version__,
    )
    _check_strict(args.strict, [report.passed])


def cmd_replay(args) -> None:
    manifest = fileio.read_manifest(args.manifest)
    command = manifest["command"]
    if command not in _HANDLERS or command == "replay":
        raise LincovError(f"manifest names unknown command {command!r}")
    params = dict(manifest["parameters"])
    inputs = dict(manifest["inputs"])
    output = manifest["outputs"][0]
    argv = [command]
    for key, value in inputs.items():
        argv += [f"--{key.replace('_', '-')}", str(value)]
    for key, value in params.items():
        if value is None or value is False:
            continue
        flag = f"--{key.replace('_', '-')}"
        argv += [flag] if value is True else [flag, str(value)]
    argv += ["--output", output]
    code = main(argv)
    if code:
        raise _ExitCode(code)


_HANDLERS = {
    "acvf": cmd_acvf,
    "weights": cmd_weights,
    "compose": cmd_compose,
    "check": cmd_check,
    "theorem": cmd_theorem,
    "simulate": cmd_simulate,
    "replay": cmd_replay,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lincov",
        description="Autocovariance calculus and condition diagnostics "
                    "for stationary linear time series.",
    )
    parser.add_argument("--version", action="version", version=f"lincov {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(
            name, formatter_class=argparse.ArgumentDefaultsHelpFormatter, **kwargs)

    def add_strict(p):
        p.add_argument("--strict", action="store_true",
                       help="exit 1 when any verdict is 'fail'")

    p = add_parser("acvf", help="exact autocovariances of a model spec")
    p.add_argument("--model", required=True, help="model spec JSON")
    p.add_argument("--k-max", type=int, default=1024)
    p.add_argument("--output", required=True, help="acvf CSV (k,gamma_k)")
    add_strict(p)

    p = add_parser("weights", help="forward (psi) or inverse (pi) filter weights")
    p.add_argument("--model", required=True, help="model spec JSON")
    p.add_argument("--direction", choices=("psi", "pi"), default="psi",
                   help="expansion direction")
    p.add_argument("--n-max", type=int, default=None,
                   help="truncation order (default: tail below 1e-14 of sum |psi|)")
    p.add_argument("--output", required=True, help="weights CSV (n,psi_n)")
    add_strict(p)

    p = add_parser("compose", help="propagate an acvf through a filter acvf")
    p.add_argument("--gw", required=True, help="filter self-acvf CSV (needs tail comment)")
    p.add_argument("--gx", required=True, help="input acvf CSV")
    p.add_argument("--k-max", type=int, default=256)
    p.add_argument("--output", required=True,
                   help="acvf CSV with a trunc_bound column")
    add_strict(p)

    p = add_parser("check", help="condition diagnostics on an acvf file")
    p.add_argument("--acvf", required=True)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="summability exponent in (0, 1)")
    p.add_argument("--k-min", type=int, default=DEFAULT_K_MIN,
                   help="first lag of the diagnostic grid")
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--output", required=True, help="diagnostics JSON")
    add_strict(p)

    p = add_parser("theorem",
                       help="filter an input model and check both conditions "
                            "plus the three partial-sum bounds on the output")
    p.add_argument("--x-model", required=True, help="input model spec JSON")
    p.add_argument("--filter-model", required=True,
                   help="model whose weights form the filter")
    p.add_argument("--filter-direction", choices=("psi", "pi"), default="pi",
                   help="which weights of the filter model to apply")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="summability exponent in (0, 1)")
    p.add_argument("--k-min", type=int, default=DEFAULT_K_MIN,
                   help="first lag of the diagnostic grid")
    p.add_argument("--k-max", type=int, default=10**5)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--output", required=True, help="combined report JSON")
    add_strict(p)

    p = add_parser("simulate",
                       help="simulate a model, estimate its acvf, compare to exact")
    p.add_argument("--model", required=True, help="model spec JSON (optional sim block)")
    p.add_argument("--n", type=int, default=None, help="series length")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--k-max", type=int, default=20,
                   help="lags for the oracle comparison")
    p.add_argument("--output", required=True,
                   help="series text; also writes .acvf.csv and .oracle.json")
    add_strict(p)

    p = add_parser("replay", help="re-run a previously written manifest")
    p.add_argument("manifest", help="path to a .manifest.json file")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _HANDLERS[args.command](args)
    except _VerdictFailure:
        return 1
    except _ExitCode as exc:
        return exc.code
    except LincovError as exc:
        print(f"lincov: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lincov: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
