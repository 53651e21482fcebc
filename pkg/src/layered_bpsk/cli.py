"""Command-line front end producing deterministic CSV sweeps.

Sweep grids are half-open dB ranges ``[min, max)`` stepped by ``--step-db``;
``--min-db`` equal to ``--max-db`` yields a header-only file.  Grids always
parameterize the received SNR ``rho = power / (2 * sigma2)``; with
``--axis ebn0_db`` the rows are the same operating points with their Eb/N0
reported as the leading column (Eb/N0 flattens near its floor, so curves are
generated parametrically rather than by inverting it).

All numeric fields are printed with 12 significant digits, rows end with LF,
and output is byte-identical across repeated runs with the same flags and
seed, for any ``--workers`` value.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from .core import NoiseSpec, RatePoint, weights_from_ratio
from .montecarlo import (
    DECISION_FEEDBACK,
    GENIE_AIDED,
    MIN_SYMBOLS,
    SimConfig,
    ber_predictions_1d,
    simulate_1d,
)
from .rates import (
    DEFAULT_REL_TOL,
    bpsk_rate_at_snr,
    ebn0_1d,
    exact_mi_1d,
    qpsk_rate_at_snr,
    rate_diff,
    rate_x,
    rate_z,
    rho_x,
    rho_z,
    shannon_capacity,
    taylor_capacity,
    taylor_rate_1d,
    to_db,
)

DEFAULT_SEED = 42424242
DEFAULT_RATIOS = (2.0, 4.0, 8.0)

_RATE_SWEEP_HEADER = (
    "ratio", "r_z_bits_per_hz", "r_x_bits_per_hz", "r_1_bits_per_hz",
    "r_2_bits_per_hz", "bpsk_rate_bits_per_hz", "qpsk_rate_bits_per_hz",
    "capacity_bits_per_hz", "exact_mi_bits_per_hz",
)
_GAP_HEADER = ("ratio", "rate1_minus_capacity_bits_per_hz",
               "rate2_minus_capacity_bits_per_hz")
_APPENDIX_HEADER = (
    "snr_linear", "capacity_bits_per_hz", "qpsk_rate_bits_per_hz",
    "bpsk_rate_bits_per_hz", "capacity_slope_bits_per_snr",
    "qpsk_slope_bits_per_snr", "bpsk_slope_bits_per_snr",
)
_BER_HEADER = ("snr_db", "mode", "ber_z", "ber_x", "ber_z_pred", "ber_x_pred",
               "ci_radius", "seed")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep parameters shared by the rate and gap commands.

    The dB grid is half-open, [min_db, max_db): equal bounds give an empty
    grid and therefore a header-only CSV.
    """

    axis: str
    min_db: float
    max_db: float
    step_db: float
    ratios: tuple[float, ...]
    sigma2: float
    rel_tol: float
    out: str

    def __post_init__(self):
        if self.axis not in ("snr_db", "ebn0_db"):
            raise ValueError(f"axis must be snr_db or ebn0_db, got {self.axis!r}")
        if not all(math.isfinite(v) for v in (self.min_db, self.max_db, self.step_db)):
            raise ValueError("grid bounds and step must be finite")
        if self.min_db > self.max_db:
            raise ValueError(
                f"--min-db must not exceed --max-db, got {self.min_db} > {self.max_db}")
        if self.step_db <= 0:
            raise ValueError(f"--step-db must be positive, got {self.step_db}")
        for ratio in self.ratios:
            if not math.isfinite(ratio) or ratio <= 1.0:
                raise ValueError(f"--ratio values must be finite and > 1, got {ratio}")
        if not math.isfinite(self.sigma2) or self.sigma2 <= 0:
            raise ValueError(f"--sigma2 must be a finite number > 0, got {self.sigma2}")
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"--tolerance must be in (0, 1), got {self.rel_tol}")

    def grid_db(self) -> list[float]:
        count = max(0, math.ceil((self.max_db - self.min_db) / self.step_db - 1e-9))
        return [self.min_db + k * self.step_db for k in range(count)]


def _sweep_spec(args) -> SweepSpec:
    raw_ratio = getattr(args, "ratio", None)
    if raw_ratio is None:
        ratios = DEFAULT_RATIOS
    elif isinstance(raw_ratio, (int, float)):
        ratios = (float(raw_ratio),)
    else:
        ratios = tuple(raw_ratio)
    return SweepSpec(
        axis=getattr(args, "axis", "snr_db"),
        min_db=args.min_db,
        max_db=args.max_db,
        step_db=args.step_db,
        ratios=ratios,
        sigma2=args.sigma2,
        rel_tol=getattr(args, "tolerance", DEFAULT_REL_TOL),
        out=args.out,
    )


def _evaluate_point(snr_db: float, ratio: float, sigma2: float, rel_tol: float) -> RatePoint:
    rho = 10.0 ** (snr_db / 10.0)
    n0 = 2.0 * sigma2
    w = weights_from_ratio(ratio, n0 * rho)
    r_z_val = rate_z(w, sigma2, rel_tol)
    r_x_val = rate_x(w, sigma2, rel_tol)
    r_1 = r_z_val + r_x_val
    return RatePoint(
        snr_linear=rho,
        ebn0_db=to_db(ebn0_1d(w, sigma2, rel_tol)),
        r_bpsk=bpsk_rate_at_snr(rho, sigma2, rel_tol),
        r_z=r_z_val,
        r_x=r_x_val,
        r_1=r_1,
        r_2=r_1 + r_1,
        qpsk_rate=qpsk_rate_at_snr(rho, sigma2, rel_tol),
        capacity=shannon_capacity(rho),
        exact_mi=exact_mi_1d(w, sigma2, rel_tol),
        taylor_capacity=taylor_capacity(rho),
        taylor_r1=taylor_rate_1d(w, n0),
        rate_diff=rate_diff(w, n0),
        rho_z=rho_z(w, n0),
        rho_x=rho_x(w, n0),
    )


def _axis_value(axis: str, snr_db: float, point: RatePoint) -> float:
    return snr_db if axis == "snr_db" else point.ebn0_db


def cmd_rate_sweep(spec: SweepSpec) -> tuple[tuple[str, ...], list[list[str]]]:
    rows = []
    for ratio in spec.ratios:
        for snr_db in spec.grid_db():
            p = _evaluate_point(snr_db, ratio, spec.sigma2, spec.rel_tol)
            rows.append([_fmt(_axis_value(spec.axis, snr_db, p)), _fmt(ratio),
                         _fmt(p.r_z), _fmt(p.r_x), _fmt(p.r_1), _fmt(p.r_2),
                         _fmt(p.r_bpsk), _fmt(p.qpsk_rate), _fmt(p.capacity),
                         _fmt(p.exact_mi)])
    return (spec.axis,) + _RATE_SWEEP_HEADER, rows


def cmd_capacity_gap(spec: SweepSpec) -> tuple[tuple[str, ...], list[list[str]]]:
    rows = []
    for ratio in spec.ratios:
        for snr_db in spec.grid_db():
            p = _evaluate_point(snr_db, ratio, spec.sigma2, spec.rel_tol)
            # The 2-D scheme occupies both axes, so its own channel SNR is
            # twice the per-axis sweep SNR.
            gap_1 = p.r_1 - p.capacity
            gap_2 = p.r_2 - shannon_capacity(2.0 * p.snr_linear)
            rows.append([_fmt(_axis_value(spec.axis, snr_db, p)), _fmt(ratio),
                         _fmt(gap_1), _fmt(gap_2)])
    return (spec.axis,) + _GAP_HEADER, rows


def _central_slopes(rho: list[float], values: list[float]) -> list[float]:
    n = len(rho)
    slopes = []
    for i in range(n):
        lo = max(i - 1, 0)
        hi = min(i + 1, n - 1)
        if hi == lo:
            slopes.append(math.nan)
        else:
            slopes.append((values[hi] - values[lo]) / (rho[hi] - rho[lo]))
    return slopes


def cmd_appendix(spec: SweepSpec) -> tuple[tuple[str, ...], list[list[str]]]:
    rhos = [10.0 ** (db / 10.0) for db in spec.grid_db()]
    capacity = [shannon_capacity(r) for r in rhos]
    qpsk = [qpsk_rate_at_snr(r, spec.sigma2, spec.rel_tol) for r in rhos]
    bpsk = [bpsk_rate_at_snr(r, spec.sigma2, spec.rel_tol) for r in rhos]
    slopes = [_central_slopes(rhos, col) for col in (capacity, qpsk, bpsk)]
    rows = [
        [_fmt(rhos[i]), _fmt(capacity[i]), _fmt(qpsk[i]), _fmt(bpsk[i]),
         _fmt(slopes[0][i]), _fmt(slopes[1][i]), _fmt(slopes[2][i])]
        for i in range(len(rhos))
    ]
    return _APPENDIX_HEADER, rows


def cmd_ber(args) -> tuple[tuple[str, ...], list[list[str]]]:
    sweep = _sweep_spec(args)
    if len(sweep.ratios) != 1:
        raise ValueError("ber takes a single --ratio")
    ratio = sweep.ratios[0]
    spec = NoiseSpec(sweep.sigma2)
    rows = []
    for snr_db in sweep.grid_db():
        rho = 10.0 ** (snr_db / 10.0)
        w = weights_from_ratio(ratio, 2.0 * sweep.sigma2 * rho)
        cfg = SimConfig(n_symbols=args.symbols, w=w, spec=spec, seed=args.seed,
                        mode=args.mode, workers=args.workers)
        report = simulate_1d(cfg)
        pred_z, pred_x = ber_predictions_1d(w, spec)
        rows.append([_fmt(snr_db), args.mode, _fmt(report.ber_z), _fmt(report.ber_x),
                     _fmt(pred_z), _fmt(pred_x),
                     _fmt(max(report.ci_z, report.ci_x)), str(args.seed)])
    return _BER_HEADER, rows


def _write_csv(out: str, header: tuple[str, ...], rows: list[list[str]]) -> None:
    text = "\n".join([",".join(header)] + [",".join(row) for row in rows]) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as handle:
            handle.write(text)


def _add_grid_flags(parser, min_db: float, max_db: float) -> None:
    parser.add_argument("--min-db", type=float, default=min_db,
                        help=f"grid start in dB, inclusive (default {min_db})")
    parser.add_argument("--max-db", type=float, default=max_db,
                        help=f"grid end in dB, exclusive (default {max_db})")
    parser.add_argument("--step-db", type=float, default=0.5,
                        help="grid step in dB (default 0.5)")
    parser.add_argument("--sigma2", type=float, default=1.0,
                        help="per-dimension noise variance (default 1.0)")
    parser.add_argument("--out", default="-",
                        help="output CSV path, or - for stdout (default -)")


def _add_rate_flags(parser) -> None:
    parser.add_argument("--axis", choices=("snr_db", "ebn0_db"), default="ebn0_db",
                        help="leading column: Eb/N0 (default) or the SNR grid value")
    parser.add_argument("--ratio", type=float, action="append", metavar="R",
                        help="alpha/beta ratio, repeatable (default 2 4 8)")
    parser.add_argument("--tolerance", type=float, default=DEFAULT_REL_TOL,
                        help="quadrature relative tolerance (default 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layered-bpsk",
        description="Achievable-rate sweeps and link simulations for layered BPSK "
                    "over AWGN, written as deterministic CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rate = sub.add_parser("rate-sweep",
                          help="rates of the layered scheme vs conventional baselines")
    _add_grid_flags(rate, min_db=-20.0, max_db=20.0)
    _add_rate_flags(rate)

    gap = sub.add_parser("capacity-gap",
                         help="layered-scheme rate minus AWGN capacity")
    _add_grid_flags(gap, min_db=-20.0, max_db=20.0)
    _add_rate_flags(gap)

    appendix = sub.add_parser("appendix",
                              help="baseline rate curves and slopes vs linear SNR")
    _add_grid_flags(appendix, min_db=-40.0, max_db=0.0)
    appendix.add_argument("--tolerance", type=float, default=DEFAULT_REL_TOL,
                          help="quadrature relative tolerance (default 1e-9)")

    ber = sub.add_parser("ber", help="Monte Carlo bit error rates with Q-function "
                                     "predictions")
    _add_grid_flags(ber, min_db=-5.0, max_db=10.0)
    ber.add_argument("--ratio", type=float, default=2.0,
                     help="alpha/beta ratio (default 2)")
    ber.add_argument("--seed", type=int, default=DEFAULT_SEED,
                     help=f"RNG seed (default {DEFAULT_SEED})")
    ber.add_argument("--symbols", type=int, default=1_000_000,
                     help="symbols per grid point, at least 10000 (default 1000000)")
    ber.add_argument("--mode", choices=(DECISION_FEEDBACK, GENIE_AIDED),
                     default=DECISION_FEEDBACK,
                     help="second-stage feedback: demodulated or true bits")
    ber.add_argument("--workers", type=int, default=1,
                     help="parallel workers; output is identical for any value")
    return parser


_SWEEP_COMMANDS = {
    "rate-sweep": cmd_rate_sweep,
    "capacity-gap": cmd_capacity_gap,
    "appendix": cmd_appendix,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ber":
        if args.symbols < MIN_SYMBOLS:
            parser.error(f"--symbols must be at least {MIN_SYMBOLS}, got {args.symbols}")
        if args.workers < 1:
            parser.error(f"--workers must be at least 1, got {args.workers}")
        if not 0 <= args.seed < 2**64:
            parser.error(f"--seed must be in [0, 2**64), got {args.seed}")
    try:
        if args.command == "ber":
            header, rows = cmd_ber(args)
        else:
            header, rows = _SWEEP_COMMANDS[args.command](_sweep_spec(args))
        _write_csv(args.out, header, rows)
    except (ValueError, OSError) as exc:
        print(f"layered-bpsk: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
