"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure,
3 Fulop solver non-convergence.
"""

import argparse
import sys
import warnings

import numpy as np

from . import io as pcio
from .core import (
    DEFAULT_CONSISTENCY_TOL,
    PCMatrix,
    RatingScale,
    matrix_from_judgments,
    max_triad_deviation,
    validate_reciprocity,
)
from .exceptions import NotConverged, PCError
from .normalization import correction_table, integer_points, normalize_matrix
from .paradox import DEFAULT_SWEEP_SCALES, compare, scale_position, sweep
from .validation import check_reciprocal
from .weights import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    fulop_raw_weights,
    fulop_weights,
    geometric_mean_weights,
)

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_NOT_CONVERGED = 0, 1, 2, 3
RECIPROCITY_TOL = 1e-9


class _Usage(Exception):
    pass


def _emit(args, text):
    if args.output:
        try:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise pcio.InputError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    else:
        sys.stdout.write(text)


def _input_path(args):
    path = args.input or args.input_pos
    if path is None:
        raise _Usage("an input file is required (--input PATH)")
    return path


def _load_matrix(args):
    """Return ``(kind, PCMatrix, scale-or-None)`` for a validated input file."""
    kind, payload = pcio.load(_input_path(args))
    if kind == "judgments":
        return kind, matrix_from_judgments(payload), payload.scale
    check_reciprocal(payload, RECIPROCITY_TOL)
    return kind, PCMatrix.from_upper(payload), None


def _scale(args, file_scale, attr="scale"):
    m = getattr(args, attr, None)
    if m is not None:
        return RatingScale(m)
    if file_scale is not None:
        return file_scale
    raise _Usage(f"--{attr.replace('_', '-')} is required for this input")


def _out_format(args, default):
    if args.csv:
        return "csv"
    if args.json:
        return "json"
    return default


def cmd_normalize(args):
    kind, M, file_scale = _load_matrix(args)
    scale = _scale(args, file_scale)
    N = normalize_matrix(M, scale).entries
    fmt = _out_format(args, "csv" if kind == "csv" else "json")
    _emit(args, pcio.matrix_to_csv(N) if fmt == "csv" else pcio.matrix_to_json(N))
    return EXIT_OK


def cmd_weights(args):
    _, M, _ = _load_matrix(args)
    if args.normalize_scale is not None:
        M = normalize_matrix(M, RatingScale(args.normalize_scale))
    out = {}
    status = EXIT_OK
    if args.method == "gm":
        wv = geometric_mean_weights(M, normalize=not args.raw)
        out["weights"] = list(wv)
        out["method"] = "gm"
    else:
        wv, sol = fulop_weights(M, tol=args.tolerance, max_iter=args.max_iter)
        if args.raw:
            wv = fulop_raw_weights(sol)
        out["weights"] = list(wv)
        out["method"] = "fulop"
        out["objective"] = sol.objective_value
        out["converged"] = sol.converged
        out["iterations"] = sol.iterations
        if not sol.converged:
            status = EXIT_NOT_CONVERGED
    if args.normalize_scale is not None:
        out["normalize_scale"] = float(args.normalize_scale)
    if _out_format(args, "json") == "csv":
        text = pcio.csv_lines([["entity", "weight"]] + [[i, w] for i, w in enumerate(out["weights"])])
    else:
        text = pcio.dumps_json(out) + "\n"
    _emit(args, text)
    return status


def _solver_kw(args):
    return {"tol": args.tolerance, "max_iter": args.max_iter} if args.method == "fulop" else {}


def cmd_compare(args):
    _, M, file_scale = _load_matrix(args)
    scale = _scale(args, file_scale)
    report = compare(M, scale, method=args.method, reference=args.reference, **_solver_kw(args))
    if _out_format(args, "json") == "csv":
        rows = [["entity", "original", "corrected", "relative_error"]]
        rows += [
            [i, o, c, e]
            for i, (o, c, e) in enumerate(
                zip(report.original_weights, report.corrected_weights, report.relative_errors)
            )
        ]
        text = pcio.csv_lines(rows)
    else:
        text = pcio.dumps_json(report.to_dict()) + "\n"
    _emit(args, text)
    return EXIT_OK


def cmd_table(args):
    m = args.scale
    if m < 2:
        raise PCError(f"the correction table needs a scale upper limit >= 2, got {m:g}")
    if args.integer_table and m != int(m):
        raise PCError(f"--integer-table requires an integer scale, got {m:g}")
    table = correction_table(RatingScale(m), integer_points(m))
    fmt = _out_format(args, "human")
    if fmt == "csv":
        text = pcio.csv_lines([table.original, table.corrected])
    elif fmt == "json":
        text = pcio.dumps_json(
            {"scale": m, "original": table.original, "corrected": table.corrected}
        ) + "\n"
    else:
        cells = [[pcio.fmt_human(v) for v in row] for row in (table.original, table.corrected)]
        width = max(len(c) for row in cells for c in row)
        labels = ("original ", "corrected")
        text = "".join(
            f"{lab}  " + " ".join(c.rjust(width) for c in row) + "\n" for lab, row in zip(labels, cells)
        )
    _emit(args, text)
    return EXIT_OK


def cmd_sweep(args):
    scales = sorted(args.scales)
    if args.positions:
        rows = [["m", "position"]] + [[m, scale_position(args.value, RatingScale(m))] for m in scales]
        _emit(args, pcio.csv_lines(rows))
        return EXIT_OK
    _, M, _ = _load_matrix(args)
    result = sweep(M, scales, method=args.method, **_solver_kw(args))
    if _out_format(args, "csv") == "json":
        text = pcio.dumps_json(
            [
                {"m": r.m, "weights": list(r.corrected_weights), "max_dev_uniform": r.max_deviation_from_uniform}
                for r in result
            ]
        ) + "\n"
    else:
        header = ["m"] + [f"w_{i + 1}" for i in range(M.n)] + ["max_dev_uniform"]
        rows = [header] + [[r.m, *r.corrected_weights, r.max_deviation_from_uniform] for r in result]
        text = pcio.csv_lines(rows)
    _emit(args, text)
    return EXIT_OK


def cmd_check(args):
    kind, payload = pcio.load(_input_path(args))
    if kind == "judgments":
        A = np.array(matrix_from_judgments(payload))
    else:
        A = payload
    reciprocal = validate_reciprocity(A, RECIPROCITY_TOL)
    out = {"reciprocal": reciprocal, "consistent": None, "max_triad_deviation": None}
    if reciprocal:
        dev = max_triad_deviation(PCMatrix.from_upper(A))
        out["consistent"] = dev <= args.tolerance
        out["max_triad_deviation"] = dev
    _emit(args, pcio.dumps_json(out) + "\n")
    return EXIT_OK if reciprocal else EXIT_VALIDATION


def _float_list(text):
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input_pos", nargs="?", metavar="INPUT", help="matrix CSV/JSON or judgment JSON")
    common.add_argument("--input", "-i", metavar="PATH")
    common.add_argument("--output", "-o", metavar="PATH")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    fmt.add_argument("--json", action="store_true", help="emit JSON")

    method = argparse.ArgumentParser(add_help=False)
    method.add_argument("--method", choices=("gm", "fulop"), default="gm")
    method.add_argument("--tolerance", type=float, default=DEFAULT_TOL, help="Fulop gradient tolerance")
    method.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    parser = argparse.ArgumentParser(
        prog="pcrating",
        description="Normalize rating-scale judgments and derive pairwise-comparison weights.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="map raw entries into [1/2, 2]")
    p.add_argument("--scale", type=float, help="rating scale upper limit m")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("weights", parents=[common, method], help="derive priority weights")
    p.add_argument("--normalize-scale", type=float, metavar="M", help="normalize at scale M first")
    p.add_argument("--raw", action="store_true", help="report weights without sum-normalization")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("compare", parents=[common, method], help="weights before and after normalization")
    p.add_argument("--scale", type=float)
    p.add_argument("--reference", choices=("original", "corrected"), default="original")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("table", parents=[common], help="correction table for a scale")
    p.add_argument("--scale", type=float, required=True)
    p.add_argument("--integer-table", action="store_true", help="reject non-integer scales")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("sweep", parents=[common, method], help="corrected weights across scales")
    p.add_argument("--scales", type=_float_list, default=list(DEFAULT_SWEEP_SCALES))
    p.add_argument("--positions", action="store_true", help="emit scale positions of --value instead")
    p.add_argument("--value", type=float, default=2.0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", parents=[common], help="reciprocity and consistency report")
    p.add_argument("--tolerance", type=float, default=DEFAULT_CONSISTENCY_TOL)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    caught = []
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            status = args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except pcio.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except PCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    finally:
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
