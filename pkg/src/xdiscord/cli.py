"""Command-line front end.

    xdiscord point  --state r,s,c1,c2,c3 --channel amplitude --time 0.63
    xdiscord sweep  --state 0,0,0.1,0.4,0.5 --channel amplitude --grid 0:2:401 --out a.csv
    xdiscord figure fig2 --out-dir figures/

Options may also come from a flat ``key = value`` config file passed with
``--config``; command-line flags take precedence.

Exit codes: 0 success, 1 usage error, 2 invalid state or channel
combination, 3 internal numerical error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channels import ChannelAtTime, NoiseKind, evolve_params
from .discord import BRANCHES, CorrelationBreakdown, correlations
from .dynamics import SweepResult, default_grid, sweep
from .errors import ChannelError, PhysicalityError, StructureError, XDiscordError
from .oracle import OracleSettings, min_conditional_entropy
from .states import XStateParams, to_density_matrix

log = logging.getLogger("xdiscord")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3
# branch gap (bits) below which a point is reported as sitting on a branch boundary
BOUNDARY_GAP = 1e-3

CSV_COLUMNS = (
    "tau_t", "eta_or_gamma_or_p", "mutual_info", "classical", "discord",
    "s1", "s2", "s3", "argmin_branch",
)
ORACLE_COLUMNS = ("oracle_min", "oracle_dev")
CONFIG_KEYS = {
    "state", "channel", "tau", "grid", "time", "oracle", "out",
    "oracle_theta", "oracle_phi", "oracle_rounds",
}


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """12 significant digits; -0 is written as 0."""
    x = float(x)
    if x == 0:
        x = 0.0
    return format(x, ".12g")


def parse_state(text: str) -> XStateParams:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"state must be comma-separated numbers, got {text!r}") from None
    if len(values) == 3:
        return XStateParams.bell_diagonal(*values)
    if len(values) != 5:
        raise UsageError("state needs 5 values r,s,c1,c2,c3 (or 3 for Bell-diagonal)")
    return XStateParams(*values)


def parse_grid(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise UsageError(f"grid must look like MIN:MAX:N, got {text!r}") from None
    if n < 2:
        raise UsageError("grid needs at least 2 points")
    if lo < 0 or not hi > lo:
        raise UsageError("grid needs 0 <= MIN < MAX")
    return lo, hi, n


def _parse_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in {"1", "true", "yes", "on"}:
        return True
    if value in {"0", "false", "no", "off"}:
        return False
    raise UsageError(f"not a boolean: {text!r}")


def read_config(path) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


@dataclass
class RunConfig:
    state: XStateParams
    channel: NoiseKind
    tau: float = 1.0
    grid: tuple[float, float, int] = (0.0, 3.0, 1001)
    time: float = 0.0
    oracle: bool = False
    oracle_settings: OracleSettings = field(default_factory=OracleSettings)
    out: str | None = None

    def grid_values(self) -> np.ndarray:
        lo, hi, n = self.grid
        return np.linspace(lo, hi, n)

    @classmethod
    def from_sources(cls, args: argparse.Namespace) -> RunConfig:
        raw = read_config(args.config) if getattr(args, "config", None) else {}
        for key in CONFIG_KEYS:
            value = getattr(args, key, None)
            if value is not None and value is not False:
                raw[key] = value
        if "state" not in raw:
            raise UsageError("no state given (use --state or a config file)")
        if "channel" not in raw:
            raise UsageError("no channel given (use --channel or a config file)")
        try:
            channel = NoiseKind.parse(raw["channel"])
            tau = float(raw.get("tau", 1.0))
            t = float(raw.get("time", 0.0))
            settings = OracleSettings(
                theta_points=int(raw.get("oracle_theta", OracleSettings.theta_points)),
                phi_points=int(raw.get("oracle_phi", OracleSettings.phi_points)),
                rounds=int(raw.get("oracle_rounds", OracleSettings.rounds)),
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not tau > 0:
            raise UsageError("tau must be positive")
        if t < 0:
            raise UsageError("time must be >= 0")
        oracle = raw.get("oracle", False)
        return cls(
            state=parse_state(raw["state"]),
            channel=channel,
            tau=tau,
            grid=parse_grid(raw["grid"]) if "grid" in raw else (0.0, 3.0, 1001),
            time=t,
            oracle=oracle if isinstance(oracle, bool) else _parse_bool(oracle),
            oracle_settings=settings,
            out=raw.get("out"),
        )


def _oracle_min(params: XStateParams, settings: OracleSettings) -> float:
    value, _ = min_conditional_entropy(to_density_matrix(params), settings)
    return value


def sweep_rows(result: SweepResult, oracle_settings: OracleSettings | None = None):
    """Yield CSV field lists for each grid point of a sweep."""
    for x, control, row in zip(result.grid, result.controls, result.rows):
        fields = [
            fmt(x), fmt(control), fmt(row.mutual_info), fmt(row.classical),
            fmt(row.discord), fmt(row.s1), fmt(row.s2), fmt(row.s3), row.argmin_branch.value,
        ]
        if oracle_settings is not None:
            ch = ChannelAtTime.at_scaled_time(result.kind, x, result.tau)
            value = _oracle_min(evolve_params(result.initial, ch), oracle_settings)
            fields += [fmt(value), fmt(abs(row.min_branch_entropy - value))]
        yield fields


def event_lines(result: SweepResult) -> list[str]:
    return [
        f"#event tau_t={fmt(e.tau_t)} branch_before={e.branch_before.value} "
        f"branch_after={e.branch_after.value} left_slope={fmt(e.left_slope)} "
        f"right_slope={fmt(e.right_slope)} quantity={e.quantity} weak={str(e.weak).lower()}"
        for e in result.events
    ]


def write_sweep_csv(result: SweepResult, stream, oracle_settings: OracleSettings | None = None):
    columns = CSV_COLUMNS + (ORACLE_COLUMNS if oracle_settings is not None else ())
    stream.write(",".join(columns) + "\n")
    for fields in sweep_rows(result, oracle_settings):
        stream.write(",".join(fields) + "\n")
    for line in event_lines(result):
        stream.write(line + "\n")


def _open_out(path):
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def describe(row: CorrelationBreakdown) -> list[str]:
    return [
        f"mutual_info   = {fmt(row.mutual_info)}",
        f"classical     = {fmt(row.classical)}",
        f"discord       = {fmt(row.discord)}",
        f"s1            = {fmt(row.s1)}",
        f"s2            = {fmt(row.s2)}",
        f"s3            = {fmt(row.s3)}",
        f"argmin_branch = {row.argmin_branch.value}",
    ]


def cmd_point(cfg: RunConfig, out=None) -> CorrelationBreakdown:
    out = out or sys.stdout
    ch = ChannelAtTime.at_scaled_time(cfg.channel, cfg.time, cfg.tau)
    params = evolve_params(cfg.state, ch)
    row = correlations(params)
    print(f"channel       = {cfg.channel.value}", file=out)
    print(f"tau_t         = {fmt(ch.tau_t)}", file=out)
    print(f"control       = {fmt(ch.control)}", file=out)
    print("state         = " + ",".join(fmt(v) for v in params.as_tuple()), file=out)
    for line in describe(row):
        print(line, file=out)
    values = row.branch_values
    low = min(values)
    runner_up = min((b for b in BRANCHES if b is not row.argmin_branch), key=lambda b: values[b.index])
    gap = values[runner_up.index] - low
    print(f"runner_up     = {runner_up.value} (gap {fmt(gap)})", file=out)
    if gap < BOUNDARY_GAP:
        print(f"branch_boundary = {row.argmin_branch.value}~{runner_up.value}", file=out)
    if cfg.oracle:
        value = _oracle_min(params, cfg.oracle_settings)
        dev = abs(low - value)
        print(f"oracle_min    = {fmt(value)}", file=out)
        print(f"oracle_dev    = {fmt(dev)}", file=out)
        if dev > 1e-6:
            print("warning: analytic min(S1,S2,S3) diverges from the oracle by > 1e-6", file=out)
    return row


def cmd_sweep(cfg: RunConfig, out=None) -> SweepResult:
    out = out or sys.stdout
    result = sweep(cfg.state, cfg.channel, cfg.tau, cfg.grid_values())
    settings = cfg.oracle_settings if cfg.oracle else None
    if cfg.out:
        with _open_out(cfg.out) as fh:
            write_sweep_csv(result, fh, settings)
    else:
        write_sweep_csv(result, out, settings)
        return result
    print(f"wrote {len(result.rows)} rows to {cfg.out}", file=out)
    if not result.events:
        print("no sudden changes", file=out)
    for line in event_lines(result):
        print(line, file=out)
    return result


# curve parameter sets per figure id; S1 and S3 do not depend on c1, so fig1 (a) and (b) fix c1 = 0.1
FIGURES = {
    "fig1": {
        "channel": NoiseKind.AMPLITUDE,
        "branches": {"a": (0.1, 0.5, 0.4), "b": (0.1, 0.4, 0.4), "c": (0.1, 0.4, 0.5)},
        "sweeps": {"d": (0.1, 0.4, 0.5)},
    },
    "fig2": {
        "channel": NoiseKind.PHASE,
        "sweeps": {"1": (0.1, 0.2, 0.3), "2": (0.1, 0.4, 0.2), "3": (0.2, 0.2, 0.0)},
    },
    "fig3": {
        "channel": NoiseKind.DEPOLARIZING,
        "sweeps": {"1": (0.1, 0.2, 0.3), "2": (0.1, 0.4, 0.3), "3": (0.3, 0.2, 0.2)},
        "extra_times": (math.log(4.0),),
    },
    "fig4": {
        "channel": NoiseKind.DEPOLARIZING,
        "sweeps": {"a": (0.1, -0.01, 0.1, 0.3, 0.4), "c": (0.1, 0.01, 0.1, 0.4, 0.3)},
    },
}
ETA_GRID = np.linspace(0.001, 1.0, 1000)


def _as_params(values) -> XStateParams:
    return XStateParams.bell_diagonal(*values) if len(values) == 3 else XStateParams(*values)


def figure_grid(figure_id: str) -> np.ndarray:
    grid = default_grid()
    extra = FIGURES[figure_id].get("extra_times", ())
    return np.unique(np.concatenate([grid, extra])) if extra else grid


def cmd_figure(figure_id: str, out_dir, out=None) -> dict[str, Path]:
    """Write one CSV per curve of a figure; returns {curve name: path}."""
    if figure_id not in FIGURES:
        raise UsageError(f"unknown figure {figure_id!r}; choose from {', '.join(FIGURES)}")
    out = out or sys.stdout
    figure = FIGURES[figure_id]
    out_dir = Path(out_dir)
    written = {}
    for name, values in figure.get("branches", {}).items():
        params = _as_params(values)
        path = out_dir / f"{figure_id}_{name}_branches.csv"
        with _open_out(path) as fh:
            fh.write("eta,s1,s3\n")
            for eta in ETA_GRID:
                row = correlations(evolve_params(params, ChannelAtTime.from_control(figure["channel"], eta)))
                fh.write(f"{fmt(eta)},{fmt(row.s1)},{fmt(row.s3)}\n")
        written[f"{name}_branches"] = path
    for name, values in figure["sweeps"].items():
        result = sweep(_as_params(values), figure["channel"], 1.0, figure_grid(figure_id))
        path = out_dir / f"{figure_id}_{name}.csv"
        with _open_out(path) as fh:
            write_sweep_csv(result, fh)
        written[name] = path
        print(f"{path}: {len(result.events)} event(s)", file=out)
        for line in event_lines(result):
            print("  " + line, file=out)
    return written


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_run_options(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--state", help="r,s,c1,c2,c3 (or c1,c2,c3 for Bell-diagonal)")
    p.add_argument("--channel", help="amplitude | phase | depolarizing")
    p.add_argument("--tau", type=float, help="decay rate (default 1)")
    p.add_argument("--oracle", action="store_true", default=None,
                   help="compare against the brute-force oracle")
    p.add_argument("--oracle-theta", dest="oracle_theta", type=int)
    p.add_argument("--oracle-phi", dest="oracle_phi", type=int)
    p.add_argument("--oracle-rounds", dest="oracle_rounds", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xdiscord", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("point", help="correlations at a single time")
    _add_run_options(p)
    p.add_argument("--time", type=float, help="scaled time tau*t (default 0)")

    p = sub.add_parser("sweep", help="correlations over a time grid, as CSV")
    _add_run_options(p)
    p.add_argument("--grid", help="MIN:MAX:N in tau*t units (default 0:3:1001)")
    p.add_argument("--out", help="CSV path (default: standard output)")

    p = sub.add_parser("figure", help="write the curve data of a figure")
    p.add_argument("figure_id", choices=sorted(FIGURES))
    p.add_argument("--out-dir", default=".", help="directory for the CSV files")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "figure":
            cmd_figure(args.figure_id, args.out_dir)
        else:
            cfg = RunConfig.from_sources(args)
            if args.command == "point":
                cmd_point(cfg)
            else:
                cmd_sweep(cfg)
    except UsageError as exc:
        print(f"xdiscord: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PhysicalityError, ChannelError, StructureError) as exc:
        print(f"xdiscord: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (XDiscordError, ArithmeticError, FloatingPointError) as exc:
        log.debug("numerical failure", exc_info=True)
        print(f"xdiscord: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
