"""Command line interface: ``qboost bench|train|predict|qsim``.

Errors are reported as a single JSON line on stderr,
``{"error": "<kind>", "message": "<text>"}``, with a nonzero exit code.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__, boost
from .bench import ITERATIVE, REALIZATIONS, BenchConfig, run_bench
from .data import DatasetError, load_csv, load_features, split
from .learners import HARD, SOFT, LearnerSet, build_matrices, generate_stumps
from .metrics import roc_points, roc_svg, write_roc_csv
from .qsim import (MAX_LEARNERS, MAX_SAMPLES, SimulationCapError,
                   closed_form_distribution, simulate_circuit)
from .rng import SplitMix64

log = logging.getLogger("qboost")

EXIT_USAGE = 2
EXIT_FAILURE = 1


class CliError(Exception):
    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


def _label_arg(value: str):
    try:
        return int(value)
    except ValueError:
        return value


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, indent=2) + "\n")


# -- bench ------------------------------------------------------------------

def cmd_bench(args) -> int:
    if args.config:
        cfg_dict = json.loads(Path(args.config).read_text())
    else:
        cfg_dict = {}
    overrides = {
        "data": args.data, "label": args.label, "seed": args.seed,
        "runs": args.runs, "iters": args.iters, "k": args.k,
        "valid_fraction": args.valid_fraction,
        "realizations": args.realizations.split(",") if args.realizations else None,
        "modes": ("last", "max") if args.mode == "both" else (args.mode,) if args.mode else None,
        "matrix_mode": args.matrix_mode, "zero_p": args.zero_p,
        "matrix_thinning": args.thinning,
        "adaboost_rounds": args.adaboost_rounds, "resampling": args.resampling,
    }
    cfg_dict.update({k: v for k, v in overrides.items() if v is not None})
    if "data" not in cfg_dict:
        raise CliError("usage", "--data (or a config file with 'data') is required")
    cfg = BenchConfig.from_dict(cfg_dict)

    report = run_bench(cfg, jobs=args.jobs)
    text = report.to_json()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text + "\n")
        _write_json(out / "timings.json", report.timings)
        for name, (s, y) in report.roc_scores.items():
            roc = roc_points(s, y)
            write_roc_csv(roc, out / f"roc_{name}.csv")
            if args.roc_svg:
                (out / f"roc_{name}.svg").write_text(roc_svg(roc, name))
        print(report.table())
    else:
        print(text)
    return 0


# -- train ------------------------------------------------------------------

def cmd_train(args) -> int:
    ds = load_csv(args.data, args.label)
    valid = None
    train = ds
    if args.valid_fraction:
        sp = split(ds, args.valid_fraction, args.seed)
        train, valid = sp.train, sp.valid
    ls = generate_stumps(train, args.k)
    rng = SplitMix64(args.seed)
    r = args.realization
    if r == boost.SAMPLING:
        res = boost.train_sampling(train, ls, args.iters, rng, valid, args.resampling)
    elif r == boost.MATRIX:
        res = boost.train_matrix(train, ls, args.iters, args.matrix_mode,
                                 args.zero_p, rng, valid, thinning=args.thinning)
    elif r == boost.EIGEN:
        res = boost.train_eigenvector(train, ls, valid=valid)
    else:
        res = boost.train_adaboost(train, ls, args.iters, valid)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    model = res.to_dict(include_timing=False)
    model["n_features"] = ds.d
    _write_json(out / "model.json", model)
    ls.save(out / "learners.json")
    _write_json(out / "timing.json", {"wall_time": res.wall_time})
    log.info("trained %s on N=%d, W=%d in %.3fs", r, train.N, ls.W, res.wall_time)
    return 0


# -- predict ----------------------------------------------------------------

def cmd_predict(args) -> int:
    try:
        model_obj = json.loads(Path(args.model).read_text())
        result = boost.TrainResult.from_dict(model_obj)
        ls = LearnerSet.load(args.learners)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError("schema", f"cannot read model files: {exc}") from None
    if result.final_weights.shape != (ls.W,):
        raise CliError("schema", f"model has {result.final_weights.size} weights "
                                 f"but learner set has {ls.W} stumps")
    if args.label is not None:
        X = load_csv(args.data, args.label, require_both_classes=False).features
    else:
        X = load_features(args.data)
    expected = model_obj.get("n_features", ls.n_features)
    if X.shape[1] != expected:
        raise CliError("dimension",
                       f"dimension mismatch: model expects d={expected}, "
                       f"input has d={X.shape[1]}")
    s = boost.scores(X, ls, result.final_weights)
    labels = (s > 0.5).astype(int)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["score", "label"])
        for si, li in zip(s.tolist(), labels.tolist()):
            w.writerow([repr(si), li])
    finally:
        if args.out:
            fh.close()
    return 0


# -- qsim -------------------------------------------------------------------

def cmd_qsim(args) -> int:
    ds = load_csv(args.data, args.label)
    ls = LearnerSet.load(args.learners) if args.learners else generate_stumps(ds, args.k)
    em = build_matrices(ls, ds, HARD)
    a = em.accuracies
    try:
        dist, accept = simulate_circuit(em.Mp, args.max_learners, args.max_samples)
        method = "statevector"
    except SimulationCapError as exc:
        log.warning("%s", exc)
        dist = closed_form_distribution(a)
        accept = dist.chi / ls.W
        method = "closed_form"
    print(json.dumps({
        "method": method,
        "W": ls.W, "N": ds.N,
        "distribution": dist.probs.tolist(),
        "chi": dist.chi,
        "acceptance": accept,
    }, indent=2))
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qboost", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run the repeated-split benchmark")
    b.add_argument("--config", help="JSON file with BenchConfig fields")
    b.add_argument("--data")
    b.add_argument("--label", type=_label_arg, default=None,
                   help="label column name or index (default: last)")
    b.add_argument("--seed", type=int)
    b.add_argument("--runs", type=int)
    b.add_argument("--iters", type=int)
    b.add_argument("--k", type=int, help="thresholds per feature")
    b.add_argument("--valid-fraction", type=float)
    b.add_argument("--realizations",
                   help=f"comma-separated subset of {','.join(REALIZATIONS)}")
    b.add_argument("--mode", choices=["last", "max", "both"])
    b.add_argument("--matrix-mode", choices=[HARD, SOFT])
    b.add_argument("--zero-p", action=argparse.BooleanOptionalAction, default=None)
    b.add_argument("--thinning", choices=list(boost.THINNING),
                   help="survival probability used by --zero-p")
    b.add_argument("--resampling", choices=["systematic", "multinomial"])
    b.add_argument("--adaboost-rounds", type=int)
    b.add_argument("--jobs", type=int, default=1, help="worker processes")
    b.add_argument("--out", help="output directory (default: print report JSON)")
    b.add_argument("--roc-svg", action="store_true", help="also write ROC curves as SVG")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("train", help="train one realization and save the model")
    t.add_argument("--data", required=True)
    t.add_argument("--label", type=_label_arg, default=-1)
    t.add_argument("--realization", default=boost.SAMPLING,
                   choices=[boost.SAMPLING, boost.MATRIX, boost.EIGEN, boost.ADABOOST])
    t.add_argument("--iters", type=int, default=10)
    t.add_argument("--k", type=int, default=11)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--valid-fraction", type=float, default=None,
                   help="hold out this fraction and record validation AUC")
    t.add_argument("--matrix-mode", choices=[HARD, SOFT], default=SOFT)
    t.add_argument("--zero-p", action=argparse.BooleanOptionalAction, default=True)
    t.add_argument("--thinning", choices=list(boost.THINNING), default="error")
    t.add_argument("--resampling", choices=["systematic", "multinomial"],
                   default="systematic")
    t.add_argument("--out", required=True, help="output directory")
    t.set_defaults(func=cmd_train)

    pr = sub.add_parser("predict", help="score a feature CSV with a trained model")
    pr.add_argument("--model", required=True)
    pr.add_argument("--learners", required=True)
    pr.add_argument("--data", required=True)
    pr.add_argument("--label", type=_label_arg, default=None,
                    help="label column to drop from the input, if present")
    pr.add_argument("--out", help="output CSV (default: stdout)")
    pr.set_defaults(func=cmd_predict)

    q = sub.add_parser("qsim", help="exact quantum ensemble distribution")
    q.add_argument("--data", required=True)
    q.add_argument("--label", type=_label_arg, default=-1)
    q.add_argument("--k", type=int, default=11)
    q.add_argument("--learners", help="learner set JSON (default: generate stumps)")
    q.add_argument("--max-learners", type=int, default=MAX_LEARNERS)
    q.add_argument("--max-samples", type=int, default=MAX_SAMPLES)
    q.set_defaults(func=cmd_qsim)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        kind, msg, code = exc.kind, str(exc), EXIT_USAGE if exc.kind == "usage" else EXIT_FAILURE
    except FileNotFoundError as exc:
        kind, msg, code = "not_found", str(exc), EXIT_FAILURE
    except DatasetError as exc:
        kind, msg, code = "dataset", str(exc), EXIT_FAILURE
    except (ValueError, RuntimeError, OSError) as exc:
        kind, msg, code = type(exc).__name__, str(exc), EXIT_FAILURE
    print(json.dumps({"error": kind, "message": " ".join(msg.split())}), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
