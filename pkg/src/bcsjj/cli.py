"""Command-line front end.

Subcommands:

* ``equilibrium`` -- gap equation of a single plate, one CSV row.
* ``ness``        -- steady state of one junction, one CSV row.
* ``sweep``       -- parameter sweep over the junction, CSV file.
* ``evolve``      -- exact finite-lattice trajectory, CSV file.

All numeric output uses '.' as decimal separator, 17 significant digits and
LF line endings, so identical invocations produce byte-identical files.
Exit codes: 0 success, 1 solver non-convergence (single-point commands),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

from .equilibrium import PlateParams, critical_beta, gap_residual, solve_gap
from .lattice import LatticeSpec, cesaro_average, energy_drift, evolve, initial_state
from .ness import JunctionParams, NessConvergenceError, NessState, solve_ness
from .transport import current_report

SWEEP_VARIABLES = ("delta_phi", "gamma", "beta", "epsilon")

USAGE_ERROR = 2
NOT_CONVERGED = 1


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _emit(stream, fields) -> None:
    stream.write(",".join(_fmt(f) for f in fields) + "\n")


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a junction template, the swept variable and its grid."""

    junction: JunctionParams
    variable: str
    start: float
    stop: float
    count: int
    output: str | None

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"unknown sweep variable {self.variable!r}; "
                f"choose from {', '.join(SWEEP_VARIABLES)}"
            )
        if self.count < 2:
            raise ValueError("sweep count must be at least 2")
        if not self.start < self.stop:
            raise ValueError("sweep start must be below stop")

    def grid(self):
        # count points from start (inclusive) to stop (exclusive), so a
        # phase sweep over [0, 2*pi) covers one full period without the seam.
        step = (self.stop - self.start) / self.count
        return [self.start + i * step for i in range(self.count)]

    def junction_at(self, value: float) -> JunctionParams:
        j = self.junction
        if self.variable == "delta_phi":
            return replace(j, phi_ii=j.phi_i + value)
        if self.variable == "gamma":
            return replace(j, gamma=value)
        if self.variable == "beta":
            return replace(
                j,
                plate_i=replace(j.plate_i, beta=value),
                plate_ii=replace(j.plate_ii, beta=value),
            )
        return replace(
            j,
            plate_i=replace(j.plate_i, epsilon=value),
            plate_ii=replace(j.plate_ii, epsilon=value),
        )


def _junction_from_args(args) -> JunctionParams:
    return JunctionParams(
        plate_i=PlateParams(epsilon=args.epsilon_i, beta=args.beta_i),
        plate_ii=PlateParams(epsilon=args.epsilon_ii, beta=args.beta_ii),
        gamma=args.gamma,
        phi_i=args.phi_i,
        phi_ii=args.phi_ii,
    )


def cmd_equilibrium(args) -> int:
    params = PlateParams(epsilon=args.epsilon, beta=args.beta)
    bc = critical_beta(params.epsilon)
    gap = solve_gap(params)
    k = math.hypot(params.epsilon, gap)
    _emit(sys.stdout, ["epsilon", "beta", "beta_c", "lambda", "k", "residual"])
    _emit(
        sys.stdout,
        [
            params.epsilon,
            params.beta,
            "none" if bc is None else bc,
            gap,
            k,
            gap_residual(params, gap),
        ],
    )
    return 0


NESS_COLUMNS = [
    "lambda_i",
    "lambda_ii",
    "lambda_surf_i",
    "lambda_surf_ii",
    "phi_surf_i",
    "phi_surf_ii",
    "josephson",
    "heat_amplitude",
    "iterations",
    "residual",
]


def _ness_fields(state: NessState) -> list:
    report = current_report(state)
    return [
        state.bulk_i.magnitude,
        state.bulk_ii.magnitude,
        state.surf_i.magnitude,
        state.surf_ii.magnitude,
        state.surf_i.phase,
        state.surf_ii.phase,
        report.josephson,
        report.heat_amplitude,
        state.iterations,
        state.residual,
    ]


def cmd_ness(args) -> int:
    junction = _junction_from_args(args)
    header = ["epsilon_i", "beta_i", "epsilon_ii", "beta_ii", "gamma",
              "phi_i", "phi_ii"] + NESS_COLUMNS + ["heat_limit", "entropy_e1"]
    try:
        state = solve_ness(junction)
    except NessConvergenceError as err:
        print(f"ness solver failed: {err}", file=sys.stderr)
        return NOT_CONVERGED
    report = current_report(state)
    fields = [
        junction.plate_i.epsilon,
        junction.plate_i.beta,
        junction.plate_ii.epsilon,
        junction.plate_ii.beta,
        junction.gamma,
        junction.phi_i,
        junction.phi_ii,
    ] + _ness_fields(state) + [report.heat_limit, report.entropy_e1]
    _emit(sys.stdout, header)
    _emit(sys.stdout, fields)
    return 0


_CONFIG_KEYS = {"epsilon_i", "epsilon_ii", "beta_i", "beta_ii", "gamma",
                "phi_i", "phi_ii", "sweep", "output"}
_SWEEP_KEYS = {"variable", "start", "stop", "count"}


def _load_sweep_config(args) -> SweepConfig:
    file_cfg: dict = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            file_cfg = json.load(fh)
    if not set(file_cfg) <= _CONFIG_KEYS:
        raise ValueError(
            f"unknown config keys: {sorted(set(file_cfg) - _CONFIG_KEYS)}"
        )
    sweep_cfg = file_cfg.get("sweep", {})
    if not set(sweep_cfg) <= _SWEEP_KEYS:
        raise ValueError(
            f"unknown keys in config sweep section: {sorted(set(sweep_cfg) - _SWEEP_KEYS)}"
        )

    def pick(flag_value, *keys, default=None):
        # explicit flags win over the config file
        if flag_value is not None:
            return flag_value
        node = file_cfg
        for key in keys[:-1]:
            node = node.get(key, {})
        return node.get(keys[-1], default)

    junction = JunctionParams(
        plate_i=PlateParams(
            epsilon=pick(args.epsilon_i, "epsilon_i", default=0.25),
            beta=pick(args.beta_i, "beta_i", default=4.0),
        ),
        plate_ii=PlateParams(
            epsilon=pick(args.epsilon_ii, "epsilon_ii", default=0.25),
            beta=pick(args.beta_ii, "beta_ii", default=4.0),
        ),
        gamma=pick(args.gamma, "gamma", default=0.5),
        phi_i=pick(args.phi_i, "phi_i", default=0.0),
        phi_ii=pick(args.phi_ii, "phi_ii", default=0.0),
    )
    variable = pick(args.variable, "sweep", "variable")
    if variable is None:
        raise ValueError("sweep variable not given (flag --variable or config sweep.variable)")
    start = pick(args.start, "sweep", "start")
    stop = pick(args.stop, "sweep", "stop")
    count = pick(args.count, "sweep", "count")
    if start is None or stop is None or count is None:
        raise ValueError("sweep range incomplete: need start, stop and count")
    return SweepConfig(
        junction=junction,
        variable=str(variable),
        start=float(start),
        stop=float(stop),
        count=int(count),
        output=pick(args.output, "output"),
    )


def run_sweep(config: SweepConfig, stream) -> None:
    _emit(stream, ["value"] + NESS_COLUMNS + ["failed"])
    warm: tuple[complex, complex] | None = None
    for value in config.grid():
        junction = config.junction_at(value)
        start = warm if config.variable == "gamma" else None
        try:
            state = solve_ness(junction, start=start)
            failed = 0
        except NessConvergenceError as err:
            # keep sweeping; report the last iterate with a failure flag
            state = None
            fields = [
                solve_gap(junction.plate_i),
                solve_gap(junction.plate_ii),
                abs(err.surf_i),
                abs(err.surf_ii),
                float("nan"),
                float("nan"),
                float("nan"),
                float("nan"),
                err.iterations,
                err.residual,
            ]
            failed = 1
        if state is not None:
            fields = _ness_fields(state)
            if config.variable == "gamma":
                warm = (state.surf_i.c, state.surf_ii.c)
        _emit(stream, [value] + fields + [failed])


def cmd_sweep(args) -> int:
    try:
        config = _load_sweep_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
            run_sweep(config, fh)
    else:
        run_sweep(config, sys.stdout)
    return 0


def cmd_evolve(args) -> int:
    junction = _junction_from_args(args)
    try:
        spec = LatticeSpec(n=args.n, params=junction)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    traj = evolve(spec, initial_state(spec), args.t_max, args.steps)

    names = sorted(traj.values)
    columns = ["time"]
    for name in names:
        if name.startswith("sp_"):
            columns += [f"re_{name}", f"im_{name}"]
        else:
            columns.append(name)

    def row_fields(i):
        fields = [float(traj.times[i])]
        for name in names:
            v = traj.values[name][i]
            if name.startswith("sp_"):
                fields += [float(v.real), float(v.imag)]
            else:
                fields.append(float(v.real))
        return fields

    def write(stream):
        _emit(stream, columns)
        for i in range(len(traj.times)):
            _emit(stream, row_fields(i))
        if traj.times[-1] >= 100.0:
            averages = cesaro_average(traj)
            fields: list = ["cesaro"]
            for name in names:
                v = averages[name]
                if name.startswith("sp_"):
                    fields += [float(v.real), float(v.imag)]
                else:
                    fields.append(float(v.real))
            _emit(stream, fields)
        drift_fields: list = ["energy_drift"] + [""] * (len(columns) - 1)
        drift_fields[columns.index("energy")] = energy_drift(traj)
        _emit(stream, drift_fields)

    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            write(fh)
    else:
        write(sys.stdout)
    return 0


def _add_junction_flags(parser, with_defaults: bool) -> None:
    d = (lambda v: v) if with_defaults else (lambda v: None)
    parser.add_argument("--epsilon-i", type=float, default=d(0.25), dest="epsilon_i")
    parser.add_argument("--beta-i", type=float, default=d(4.0), dest="beta_i")
    parser.add_argument("--epsilon-ii", type=float, default=d(0.25), dest="epsilon_ii")
    parser.add_argument("--beta-ii", type=float, default=d(4.0), dest="beta_ii")
    parser.add_argument("--gamma", type=float, default=d(0.5))
    parser.add_argument("--phi-i", type=float, default=d(0.0), dest="phi_i")
    parser.add_argument("--phi-ii", type=float, default=d(0.0), dest="phi_ii")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcsjj",
        description="Josephson junction between two mean-field superconducting "
        "plates: gap equation, steady state, currents and exact "
        "finite-lattice trajectories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eq = sub.add_parser("equilibrium", help="solve one plate's gap equation")
    p_eq.add_argument("--epsilon", type=float, required=True)
    p_eq.add_argument("--beta", type=float, required=True)
    p_eq.add_argument("--phi", type=float, default=0.0)
    p_eq.set_defaults(func=cmd_equilibrium)

    p_ness = sub.add_parser("ness", help="solve one junction steady state")
    _add_junction_flags(p_ness, with_defaults=True)
    p_ness.set_defaults(func=cmd_ness)

    p_sweep = sub.add_parser(
        "sweep",
        help="sweep one junction parameter; grid runs from start (inclusive) "
        "to stop (exclusive) in count steps",
    )
    _add_junction_flags(p_sweep, with_defaults=False)
    p_sweep.add_argument("--config", help="JSON config file; flags win on conflict")
    p_sweep.add_argument("--variable", choices=SWEEP_VARIABLES)
    p_sweep.add_argument("--start", type=float)
    p_sweep.add_argument("--stop", type=float)
    p_sweep.add_argument("--count", type=int)
    p_sweep.add_argument("--output", help="CSV path (default stdout)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_ev = sub.add_parser("evolve", help="exact finite-lattice trajectory")
    p_ev.add_argument("--n", type=int, required=True, help="plate size (1 or 2)")
    _add_junction_flags(p_ev, with_defaults=True)
    p_ev.add_argument("--t-max", type=float, required=True, dest="t_max")
    p_ev.add_argument("--steps", type=int, required=True)
    p_ev.add_argument("--output", help="CSV path (default stdout)")
    p_ev.set_defaults(func=cmd_evolve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
