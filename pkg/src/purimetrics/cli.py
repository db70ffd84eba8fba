"""
Command-line front end.

    python -m src.purimetrics report --spectrum 0.75,0.125,0.125
    python -m src.purimetrics table1
    python -m src.purimetrics sweep --lambda1 0.5 --points 201 --out lambda1_sweep.csv
    python -m src.purimetrics channel --matrix rho.json --p 0.4 --profile --grid 0:1:0.1
    python -m src.purimetrics entangle --state psi.json --measure sskf
    python -m src.purimetrics basis --dim 4
    python -m src.purimetrics classify --bloch r.json
    python -m src.purimetrics stokes --stokes 1,0,0,1

Exit codes: 0 success, 1 domain error, 2 usage error.
Data goes to stdout (or --out); diagnostics go to stderr through loguru.
"""

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError

from config import settings
from reference_states.parser import TABLE1_COLUMNS, table1_spectra
from src.purimetrics.bloch import (
    StokesVector,
    bloch_from_density,
    classify_bloch,
    density_from_bloch,
    matrix_from_stokes,
    stokes_from_matrix,
    su_n_basis,
)
from src.purimetrics.channels import DepolarizingChannel, measure_scaling_profile, trace_square_after
from src.purimetrics.core import DensityMatrix, Spectrum
from src.purimetrics.entanglement import entanglement, entanglement_profile, schmidt
from src.purimetrics.errors import PurimetricsError, ZeroPurity
from src.purimetrics.formats import (
    BlochDocument,
    MatrixDocument,
    StateDocument,
    load_bloch,
    load_document,
    load_matrix,
)
from src.purimetrics.measures import MEASURE_IDS, get_measure
from src.purimetrics.pipeline import purity_report
from src.purimetrics.processing import DensityProcessor
from src.purimetrics.sweeps import DEFAULT_POINTS, sweep, sweep_frame

TABLE_DECIMALS = 3


# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------


def configure_logging(level: Optional[str] = None) -> None:
    logger.remove()
    level = (level or settings.LOG_LEVEL).upper()
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> | {name}:{function} - {message}")
    if settings.LOG_TO_FILE:
        os.makedirs(settings.LOG_DIR, exist_ok=True)
        logger.add(
            os.path.join(settings.LOG_DIR, "purimetrics.log"),
            level="DEBUG",
            rotation="10 MB",
            retention=5,
            encoding="utf-8",
        )


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from None


def _grid(text: str) -> np.ndarray:
    """start:stop:step, stop inclusive."""
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got '{text}'") from None
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"grid needs step > 0 and stop >= start, got '{text}'")
    count = int(round((stop - start) / step)) + 1
    return np.round(start + step * np.arange(count), 12)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


def _measure_id(text: str) -> str:
    if text not in MEASURE_IDS:
        raise argparse.ArgumentTypeError(f"unknown measure '{text}', expected one of {', '.join(MEASURE_IDS)}")
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="loguru level for stderr (default: settings.LOG_LEVEL)")
    common.add_argument("--out", default=None, help="write data to this file instead of stdout")
    common.add_argument("--json", action="store_true", help="full-precision JSON instead of a text table")

    state = argparse.ArgumentParser(add_help=False)
    source = state.add_mutually_exclusive_group(required=True)
    source.add_argument("--matrix", help="matrix JSON file (density or polarization matrix)")
    source.add_argument("--spectrum", type=_float_list, help="comma-separated eigenvalues")
    source.add_argument("--bloch", help="Bloch vector JSON file")

    parser = argparse.ArgumentParser(prog="purimetrics", description="Purity and degree-of-polarization measures")
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("report", parents=[common, state], help="all measures on one state")
    sub.add_parser("table1", parents=[common], help="the six reference qutrit spectra")

    p_sweep = sub.add_parser("sweep", parents=[common], help="fixed-lambda1 sweep over N=3 spectra (CSV)")
    p_sweep.add_argument("--lambda1", type=float, required=True)
    p_sweep.add_argument("--points", type=_positive_int, default=DEFAULT_POINTS)

    p_channel = sub.add_parser("channel", parents=[common, state], help="depolarizing channel")
    p_channel.add_argument("--p", type=float, default=None, help="survival probability in [0, 1]")
    p_channel.add_argument("--measure", type=_measure_id, default=None)
    p_channel.add_argument("--profile", action="store_true", help="CSV of p, measure, value, ratio")
    p_channel.add_argument("--grid", type=_grid, default=None, help="p grid start:stop:step (default 0:1:0.1)")

    p_ent = sub.add_parser("entangle", parents=[common], help="entanglement of a bipartite pure state")
    p_ent.add_argument("--state", required=True, help="state JSON file")
    p_ent.add_argument("--measure", type=_measure_id, default=None)

    p_basis = sub.add_parser("basis", parents=[common], help="SU(N) basis matrices as matrix JSON")
    p_basis.add_argument("--dim", type=int, required=True)

    p_classify = sub.add_parser("classify", parents=[common], help="physicality class of a Bloch vector")
    p_classify.add_argument("--bloch", required=True, help="Bloch vector JSON file")

    p_stokes = sub.add_parser("stokes", parents=[common], help="Stokes vector <-> 2x2 polarization matrix")
    direction = p_stokes.add_mutually_exclusive_group(required=True)
    direction.add_argument("--matrix", help="2x2 polarization matrix JSON file")
    direction.add_argument("--stokes", type=_float_list, help="s0,s1,s2,s3")

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _emit(text: str, out: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _table(frame: pd.DataFrame, index: bool = True) -> str:
    return frame.to_string(index=index, float_format=lambda v: f"{v:.{TABLE_DECIMALS}f}")


def _load_state(args) -> DensityMatrix:
    if args.spectrum is not None:
        spectrum = Spectrum.from_values(args.spectrum, sum_tolerance=settings.SPECTRUM_INPUT_TOL)
        return DensityProcessor.diagonal_state(spectrum)
    if args.matrix is not None:
        return DensityProcessor.normalize_polarization(load_matrix(args.matrix))
    return DensityProcessor.validate_density(density_from_bloch(load_bloch(args.bloch)))


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def cmd_report(args) -> int:
    report = purity_report(_load_state(args))
    if args.json:
        _emit(_dump_json(report.model_dump(mode="json")), args.out)
        return 0

    rows = [
        ("Pi_s", report.pi_s),
        ("Pi_v", report.pi_v),
        *((f"B_{k}", value) for k, value in enumerate(report.barakat, start=2)),
        ("Pi_b", report.pi_b),
        ("Pi_edpw", report.pi_edpw),
        ("Pi_sskf", report.pi_sskf),
    ]
    if report.xy is not None:
        rows += [("x", report.xy[0]), ("y", report.xy[1])]
    frame = pd.DataFrame(rows, columns=["measure", "value"])
    _emit(f"N = {report.dim}\n" + _table(frame, index=False), args.out)
    return 0


def table1_frame() -> pd.DataFrame:
    """Rows Pi_sskf, Pi_edpw, Pi_b, Pi_v; columns P, E, F, C, D, M (full precision)."""
    spectra = table1_spectra()
    columns = {}
    for label in TABLE1_COLUMNS:
        report = purity_report(Spectrum.from_values(spectra[label]))
        columns[label] = report.table_row()
    return pd.DataFrame(columns, columns=TABLE1_COLUMNS)


def cmd_table1(args) -> int:
    frame = table1_frame()
    if args.json:
        _emit(_dump_json(frame.to_dict()), args.out)
    else:
        _emit(_table(frame), args.out)
    return 0


def cmd_sweep(args) -> int:
    frame = sweep_frame(sweep(args.lambda1, points=args.points))
    if args.json:
        _emit(_dump_json(frame.to_dict(orient="records")), args.out)
    else:
        _emit(frame.to_csv(index=False, float_format="%.17g"), args.out)
    return 0


def cmd_channel(args) -> int:
    rho = _load_state(args)
    measures = [args.measure] if args.measure else list(MEASURE_IDS)

    if args.profile:
        grid = args.grid if args.grid is not None else _grid("0:1:0.1")
        frames = []
        for measure_id in measures:
            try:
                frames.append(measure_scaling_profile(rho, measure_id, grid))
            except ZeroPurity as e:
                # an explicitly requested measure must not be skipped silently
                if args.measure:
                    raise
                logger.warning(f"Skipping {measure_id}: {e}")
        if not frames:
            raise ZeroPurity("Every measure is zero on the input state; no profile to report")
        frame = pd.concat(frames, ignore_index=True)
        if args.json:
            _emit(_dump_json(frame.to_dict(orient="records")), args.out)
        else:
            _emit(frame.to_csv(index=False, float_format="%.17g"), args.out)
        return 0

    if args.p is None:
        raise PurimetricsError("channel needs --p unless --profile is given")
    channel = DepolarizingChannel(p=args.p, n_dim=rho.dim)
    out = channel.apply(rho)
    rows = []
    for measure_id in measures:
        measure = get_measure(measure_id)
        rows.append(
            {
                "measure": measure_id,
                "before": measure.calculate(rho.spectrum),
                "after": measure.calculate(out.spectrum),
            }
        )
    frame = pd.DataFrame(rows, columns=["measure", "before", "after"])

    if args.json:
        payload = {
            "p": channel.p,
            "n_dim": channel.n_dim,
            "trace_square_after": trace_square_after(rho, channel.p),
            "measures": frame.to_dict(orient="records"),
            "output": MatrixDocument.from_array(out.entries).model_dump(mode="json"),
        }
        _emit(_dump_json(payload), args.out)
    else:
        header = f"p = {channel.p}, N = {channel.n_dim}, Tr[rho'^2] = {trace_square_after(rho, channel.p):.{TABLE_DECIMALS}f}"
        _emit(header + "\n" + _table(frame, index=False), args.out)
    return 0


def cmd_entangle(args) -> int:
    state = load_document(args.state, StateDocument).to_state()
    if args.measure:
        values = {args.measure: entanglement(state, args.measure)}
    else:
        values = entanglement_profile(state)
    form = schmidt(state)

    if args.json:
        payload = {
            "dims": list(state.dims),
            "schmidt_coefficients": form.coefficients.tolist(),
            "schmidt_rank": form.rank,
            "entanglement": values,
        }
        _emit(_dump_json(payload), args.out)
        return 0

    frame = pd.DataFrame(list(values.items()), columns=["measure", "entanglement"])
    coefficients = ", ".join(f"{c:.{TABLE_DECIMALS}f}" for c in form.coefficients)
    header = f"dims = {state.dims[0]}x{state.dims[1]}, Schmidt rank {form.rank}: ({coefficients})"
    _emit(header + "\n" + _table(frame, index=False), args.out)
    return 0


def cmd_basis(args) -> int:
    basis = su_n_basis(args.dim)
    documents = [MatrixDocument.from_array(m).model_dump(mode="json") for m in basis.matrices]
    _emit(_dump_json(documents), args.out)
    return 0


def cmd_classify(args) -> int:
    document = load_document(args.bloch, BlochDocument)
    result = classify_bloch(document.to_bloch())
    payload = {
        "class": result.kind.value,
        "min_eigenvalue": result.min_eigenvalue,
        "bloch_norm": result.bloch_norm,
    }
    if args.json:
        _emit(_dump_json(payload), args.out)
    else:
        _emit(
            f"{result.kind.value}\n"
            f"min eigenvalue = {result.min_eigenvalue:.{TABLE_DECIMALS}f}\n"
            f"|r| = {result.bloch_norm:.{TABLE_DECIMALS}f}",
            args.out,
        )
    return 0


def cmd_stokes(args) -> int:
    if args.stokes is not None:
        if len(args.stokes) != 4:
            raise PurimetricsError(f"--stokes needs four values s0,s1,s2,s3, got {len(args.stokes)}")
        phi = matrix_from_stokes(StokesVector(*args.stokes))
        _emit(_dump_json(MatrixDocument.from_array(phi).model_dump(mode="json")), args.out)
        return 0

    phi = load_matrix(args.matrix)
    stokes = stokes_from_matrix(phi)
    rho = DensityProcessor.normalize_polarization(phi)
    r = bloch_from_density(rho)
    payload = {
        "stokes": stokes.as_array().tolist(),
        "degree_of_polarization": stokes.degree_of_polarization,
        "bloch": BlochDocument.from_bloch(r).model_dump(mode="json"),
    }
    if args.json:
        _emit(_dump_json(payload), args.out)
    else:
        frame = pd.DataFrame({"S": stokes.as_array()}, index=["S0", "S1", "S2", "S3"])
        _emit(_table(frame) + f"\nP = {stokes.degree_of_polarization:.{TABLE_DECIMALS}f}", args.out)
    return 0


COMMANDS = {
    "report": cmd_report,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
    "channel": cmd_channel,
    "entangle": cmd_entangle,
    "basis": cmd_basis,
    "classify": cmd_classify,
    "stokes": cmd_stokes,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)

    configure_logging(args.log_level)
    try:
        return COMMANDS[args.verb](args)
    except (PurimetricsError, ValidationError) as e:
        logger.debug(f"{args.verb} failed: {type(e).__name__}")
        sys.stderr.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
