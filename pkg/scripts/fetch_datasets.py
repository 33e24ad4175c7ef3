#!/usr/bin/env python
"""Fetch the two benchmark datasets and write them as numeric CSVs.

Usage::

    python scripts/fetch_datasets.py [--out data/]
    python scripts/fetch_datasets.py --cleveland-from Orange/datasets/heart_disease.tab

Cleveland is the UCI ``processed.cleveland.data`` file (303 rows, 13
attributes). The label is ``num > 0`` (presence of heart disease). Six rows
carry ``?`` in ``ca`` or ``thal``; they are filled with the column mode so
the row count stays at 303 (a 1/10 validation split then leaves 272
training rows). Orange3 ships the same table as ``heart_disease.tab`` with
categorical values spelled out; ``--cleveland-from`` converts that copy
back to the UCI numeric codes when the UCI mirror is unreachable.

Banknote is the UCI ``data_banknote_authentication.txt`` file (1372 rows,
4 attributes, last column the class).
"""

import argparse
import collections
import csv
import io
import sys
import urllib.request
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
CLEVELAND_URL = f"{UCI}/heart-disease/processed.cleveland.data"
BANKNOTE_URL = f"{UCI}/00267/data_banknote_authentication.txt"

CLEVELAND_HEADER = [
    "age", "sex", "cp", "trestbps", "chol", "fbs", "restecg", "thalach",
    "exang", "oldpeak", "slope", "ca", "thal", "target",
]
BANKNOTE_HEADER = ["variance", "skewness", "curtosis", "entropy", "class"]

# Orange spells out the UCI categorical codes.
ORANGE_CODES = {
    "gender": {"male": "1", "female": "0"},
    "chest pain": {
        "typical ang": "1", "atypical ang": "2",
        "non-anginal": "3", "asymptomatic": "4",
    },
    "rest ECG": {
        "normal": "0", "ST-T abnormal": "1", "left vent hypertrophy": "2",
    },
    "slope peak exc ST": {"upsloping": "1", "flat": "2", "downsloping": "3"},
    "thal": {"normal": "3", "fixed defect": "6", "reversable defect": "7"},
}


def _fill_missing(rows):
    ncol = len(rows[0])
    for j in range(ncol):
        present = [r[j] for r in rows if r[j] not in ("?", "")]
        if len(present) == len(rows):
            continue
        mode = collections.Counter(present).most_common(1)[0][0]
        for r in rows:
            if r[j] in ("?", ""):
                r[j] = mode
    return rows


def _fmt(value):
    v = float(value)
    return str(int(v)) if v.is_integer() else repr(v)


def cleveland_from_uci(text):
    rows = [line.strip().split(",") for line in text.splitlines() if line.strip()]
    rows = _fill_missing(rows)
    out = []
    for r in rows:
        label = "1" if float(r[13]) > 0 else "0"
        out.append([_fmt(v) for v in r[:13]] + [label])
    return out


def cleveland_from_orange(text):
    lines = text.splitlines()
    names = lines[0].split("\t")
    rows = [line.split("\t") for line in lines[3:] if line.strip()]
    for r in rows:
        for j, name in enumerate(names):
            codes = ORANGE_CODES.get(name)
            if codes and r[j] not in ("", "?"):
                r[j] = codes[r[j]]
    rows = _fill_missing(rows)
    return [[_fmt(v) for v in r[:13]] + [r[13]] for r in rows]


def banknote_from_uci(text):
    rows = [line.strip().split(",") for line in text.splitlines() if line.strip()]
    return [[_fmt(v) for v in r[:4]] + [str(int(float(r[4])))] for r in rows]


def _write(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def _download(url):
    with urllib.request.urlopen(url, timeout=30) as resp:
        return io.TextIOWrapper(resp, encoding="utf-8").read()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="data", type=Path)
    parser.add_argument("--cleveland-from", type=Path, default=None,
                        help="convert a local Orange heart_disease.tab instead of downloading")
    args = parser.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)

    status = 0
    try:
        if args.cleveland_from is not None:
            rows = cleveland_from_orange(args.cleveland_from.read_text())
        else:
            rows = cleveland_from_uci(_download(CLEVELAND_URL))
        _write(args.out / "cleveland.csv", CLEVELAND_HEADER, rows)
    except OSError as exc:
        print(f"cleveland: {exc}", file=sys.stderr)
        status = 1
    try:
        _write(args.out / "banknote.csv", BANKNOTE_HEADER,
               banknote_from_uci(_download(BANKNOTE_URL)))
    except OSError as exc:
        print(f"banknote: {exc}", file=sys.stderr)
        status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
