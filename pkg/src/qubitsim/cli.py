"""Command-line front end: one subcommand per experiment, CSV or JSON output.

All quantities are dimensionless natural units (hbar = 1): energies and
drive amplitudes are angular frequencies, rates are inverse time, in one
common reciprocal time unit chosen by the user. Output is deterministic:
identical flags produce byte-identical artifacts.
"""

import argparse
import contextlib
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .dynamics import (
    LindbladChannel,
    QubitHamiltonian,
    TimeSeries,
    evolve_lindblad,
)
from .errors import DomainError, NumericalInstabilityError, QubitSimError
from .interference import PhotonState, SlitGeometry, quantum_intensity
from .protocols import (
    MESSAGES,
    RamseyConfig,
    damp_first_qubit_coherence,
    figure_of_merit,
    rabi_with_dephasing,
    ramsey_scan,
    superdense_channel_sweep,
    superdense_decode,
    superdense_encode,
    superdense_success_probability,
)
from .qstate import DensityMatrix, density_from_ket

# One channel use in single-shot superdense mode lasts one time unit.
_SINGLE_SHOT_TIME = 1.0


def _fmt(value) -> str:
    # 9 significant digits, trailing zeros kept, -0.0 collapsed to 0.0.
    return f"{float(value) + 0.0:#.9g}"


def _render_csv(columns) -> str:
    lines = [",".join(name for name, _ in columns)]
    n_rows = len(columns[0][1]) if columns else 0
    for i in range(n_rows):
        cells = []
        for _, values in columns:
            cell = values[i]
            cells.append(cell if isinstance(cell, str) else _fmt(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _render_json(document) -> str:
    return json.dumps(document, indent=2) + "\n"


def _floats(values):
    return [float(v) + 0.0 for v in values]


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".qubitsim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp_path)
        raise


def _deliver(text: str, destination):
    if destination is None or destination == "-":
        sys.stdout.write(text)
    else:
        _atomic_write(destination, text)


def _series_columns(series: TimeSeries):
    return [
        ("t", series.times),
        ("p_g", series.p_g),
        ("p_e", series.p_e),
        ("re_rho01", series.rho01.real),
        ("im_rho01", series.rho01.imag),
        ("abs_rho01", np.abs(series.rho01)),
    ]


def emit_csv(series: TimeSeries, destination=None):
    """Write a trajectory as CSV rows t,p_g,p_e,re_rho01,im_rho01,abs_rho01."""
    _deliver(_render_csv(_series_columns(series)), destination)


def emit_json(document, destination=None):
    """Write one JSON document (meta + data) with stable key order."""
    _deliver(_render_json(document), destination)


def _map_chunks(worker, grid: np.ndarray, jobs: int, axis: int = 0) -> np.ndarray:
    """Evaluate worker over grid chunks, merged back in grid order."""
    if jobs <= 1 or grid.size < 2:
        return worker(grid)
    chunks = np.array_split(grid, min(jobs, grid.size))
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(worker, chunks))
    return np.concatenate(parts, axis=axis)


def _columns_json(columns):
    return {name: _floats(values) for name, values in columns}


def _handle_interference(args):
    geom = SlitGeometry(args.k, args.slit_spacing, args.screen_distance)
    state = PhotonState(args.a, args.b, args.phi)
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    if not args.x_max > args.x_min:
        raise DomainError("--x-max must exceed --x-min")
    x = np.linspace(args.x_min, args.x_max, args.points)
    intensity = _map_chunks(
        lambda xs: quantum_intensity(state, geom.phase_difference(xs)), x, args.jobs
    )
    params = {
        "k": args.k,
        "slit_spacing": args.slit_spacing,
        "screen_distance": args.screen_distance,
        "a": args.a,
        "b": args.b,
        "phi": args.phi,
        "x_min": args.x_min,
        "x_max": args.x_max,
        "points": args.points,
    }
    columns = [("x", x), ("intensity", intensity)]
    return params, columns, _columns_json(columns)


def _handle_ramsey(args):
    cfg = RamseyConfig(
        delta_split=args.delta_split,
        tau_max=args.tau_max,
        n_points=args.points,
        dephasing_rate=args.dephasing_rate,
    )
    series = ramsey_scan(cfg)
    params = {
        "delta_split": args.delta_split,
        "tau_max": args.tau_max,
        "points": args.points,
        "dephasing_rate": args.dephasing_rate,
    }
    columns = _series_columns(series)
    return params, columns, _columns_json(columns)


def _handle_dephasing(args):
    coherence0 = args.rho01_init_re + 1j * args.rho01_init_im
    rho0 = DensityMatrix(
        [[1.0 - args.p_e_init, coherence0], [np.conj(coherence0), args.p_e_init]]
    )
    h = QubitHamiltonian(epsilon=args.epsilon)
    channel = LindbladChannel.pure_dephasing(args.delta)
    series = evolve_lindblad(rho0, h, (channel,), args.t_max, args.dt)
    params = {
        "epsilon": args.epsilon,
        "delta": args.delta,
        "t_max": args.t_max,
        "dt": args.dt,
        "rho01_init_re": args.rho01_init_re,
        "rho01_init_im": args.rho01_init_im,
        "p_e_init": args.p_e_init,
    }
    columns = _series_columns(series)
    return params, columns, _columns_json(columns)


def _handle_rabi(args):
    merit = figure_of_merit(args.delta, args.omega)
    series = rabi_with_dephasing(args.omega, args.delta, args.epsilon, args.t_max, args.dt)
    params = {
        "omega": args.omega,
        "delta": args.delta,
        "epsilon": args.epsilon,
        "t_max": args.t_max,
        "dt": args.dt,
    }
    columns = _series_columns(series)
    data = _columns_json(columns)
    data["figure_of_merit"] = float(merit)
    return params, columns, data


def _handle_superdense(args):
    if (args.t_max is None) != (args.points is None):
        raise DomainError("--t-max and --points must be given together")
    params = {"message": args.message, "delta": args.delta}
    if args.t_max is None:
        encoded = density_from_ket(superdense_encode(args.message))
        damped = damp_first_qubit_coherence(
            encoded, float(np.exp(-2.0 * args.delta * _SINGLE_SHOT_TIME))
        )
        decoded, probs = superdense_decode(damped)
        params["transmission_time"] = _SINGLE_SHOT_TIME
        columns = [("outcome", list(MESSAGES)), ("probability", probs)]
        data = {"probabilities": _floats(probs), "decoded": decoded}
        return params, columns, data
    sweep_times = np.linspace(0.0, args.t_max, args.points)

    def worker(ts):
        return np.array(
            [[superdense_success_probability(m, args.delta, t) for t in ts] for m in MESSAGES]
        )

    if args.jobs > 1:
        success = _map_chunks(worker, sweep_times, args.jobs, axis=1)
        times = sweep_times
    else:
        sweep = superdense_channel_sweep(args.delta, args.t_max, args.points)
        times = sweep.times
        success = np.array([sweep.success[m] for m in MESSAGES])
    params.update({"t_max": args.t_max, "points": args.points})
    columns = [("t", times)] + [
        (f"success_{m}", success[i]) for i, m in enumerate(MESSAGES)
    ]
    return params, columns, _columns_json(columns)


_HANDLERS = {
    "interference": _handle_interference,
    "ramsey": _handle_ramsey,
    "dephasing": _handle_dephasing,
    "rabi": _handle_rabi,
    "superdense": _handle_superdense,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default: csv)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="output file (default: stdout); written atomically")
    common.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel workers for sweep grids (default: 1)")

    parser = argparse.ArgumentParser(
        prog="qubitsim",
        description="Two-level and two-qubit coherence experiments in natural units (hbar = 1).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interference", parents=[common],
                       help="single-photon double-slit intensity sweep")
    p.add_argument("--k", type=float, required=True, help="wavenumber (rad/length)")
    p.add_argument("--slit-spacing", type=float, required=True)
    p.add_argument("--screen-distance", type=float, required=True)
    p.add_argument("--a", type=float, required=True, help="path-1 amplitude")
    p.add_argument("--b", type=float, required=True, help="path-2 amplitude")
    p.add_argument("--phi", type=float, required=True, help="relative path phase (rad)")
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)

    p = sub.add_parser("ramsey", parents=[common],
                       help="two-pulse fringe scan against free-evolution delay")
    p.add_argument("--delta-split", type=float, required=True,
                   help="level splitting (angular frequency)")
    p.add_argument("--tau-max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--dephasing-rate", type=float, default=0.0)

    p = sub.add_parser("dephasing", parents=[common],
                       help="free decay of the coherence under pure dephasing")
    p.add_argument("--epsilon", type=float, required=True,
                   help="level splitting (angular frequency)")
    p.add_argument("--delta", type=float, required=True, help="dephasing rate")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--rho01-init-re", type=float, default=0.5)
    p.add_argument("--rho01-init-im", type=float, default=0.0)
    p.add_argument("--p-e-init", type=float, default=0.5)

    p = sub.add_parser("rabi", parents=[common],
                       help="resonantly driven oscillations damped by dephasing")
    p.add_argument("--omega", type=float, required=True, help="drive amplitude")
    p.add_argument("--delta", type=float, required=True, help="dephasing rate")
    p.add_argument("--epsilon", type=float, required=True,
                   help="level splitting (drive runs on resonance)")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)

    p = sub.add_parser("superdense", parents=[common],
                       help="two bits over one qubit of a shared entangled pair")
    p.add_argument("--message", choices=MESSAGES, required=True)
    p.add_argument("--delta", type=float, required=True,
                   help="dephasing rate on the sender's qubit in transit")
    p.add_argument("--t-max", type=float, default=None,
                   help="with --points: sweep channel duration up to this value")
    p.add_argument("--points", type=int, default=None)

    return parser


def run(args) -> int:
    """Execute one parsed subcommand and deliver its artifact."""
    params, columns, data = _HANDLERS[args.command](args)
    if args.format == "csv":
        _deliver(_render_csv(columns), args.output)
    else:
        document = {
            "meta": {
                "subcommand": args.command,
                "parameters": params,
                "version": __version__,
            },
            "data": data,
        }
        emit_json(document, args.output)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except NumericalInstabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (QubitSimError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
