# -*- coding: utf8 -*-
"""
======================================
    Project Name: Weak-DMD
    File Name: data_loader
    Author: czh
    Create Date: 2021/10/19
--------------------------------------
    Change Activity:
======================================
"""
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from WeakDMD.core.errors import DuplicateTime, ParseError
from WeakDMD.core.types import validate_snapshots

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
LAYOUTS = ("time-rows", "state-rows")


def _is_number(text):
    try:
        float(text)
    except (TypeError, ValueError):
        return False
    return True


def _read_raw(path):
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, skipinitialspace=True,
                          skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path}: file is empty")
    except pd.errors.ParserError as e:
        raise ParseError(f"{path}: {e}")
    return raw


def _to_numeric(raw, path, row_offset, col_offset):
    values = raw.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    bad = values.isna().to_numpy()
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        text = raw.iat[row, col]
        raise ParseError(f"{path}: row {row + row_offset + 1}, column {col + col_offset + 1}: "
                         f"cannot parse {text!r} as a number")
    return values.to_numpy(dtype=float)


def load_snapshots_csv(path, layout="time-rows"):
    """
    读取快照 CSV.
    time-rows: 每行一个时刻, 第 0 列为时间, 其余列为状态, 可带表头
    state-rows: 第一行为时间, 之后每行一个状态, 可带行名列
    Rows may come in any order; they are sorted by time before validation.
    :return: SnapshotSet
    """
    if layout not in LAYOUTS:
        raise ParseError(f"unknown layout {layout!r}, expected one of {LAYOUTS}")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    raw = _read_raw(path)
    row_offset, col_offset = 0, 0
    if layout == "time-rows":
        if not _is_number(raw.iat[0, 0]):
            raw = raw.iloc[1:].reset_index(drop=True)
            row_offset = 1
        if raw.empty:
            raise ParseError(f"{path}: no data rows")
        data = _to_numeric(raw, path, row_offset, col_offset)
        t, x = data[:, 0], data[:, 1:].T
    else:
        if not _is_number(raw.iat[0, 0]):
            raw = raw.iloc[:, 1:]
            col_offset = 1
        data = _to_numeric(raw, path, row_offset, col_offset)
        t, x = data[0], data[1:]
    if x.shape[0] == 0:
        raise ParseError(f"{path}: no state columns")
    order = np.argsort(t, kind="stable")
    t, x = t[order], x[:, order]
    repeated = np.flatnonzero(np.diff(t) == 0)
    if repeated.size:
        raise DuplicateTime(f"{path}: time {t[repeated[0]]!r} appears more than once")
    snapshots = validate_snapshots(x, t)
    logger.info("loaded %s: M=%d states, N=%d times on [%g, %g]", path, snapshots.n_states,
                snapshots.n_times, snapshots.grid.start, snapshots.grid.end)
    return snapshots


def snapshots_frame(t, x, kind=None):
    """
    t,x0..x{M-1} (plus an optional kind column after t)
    """
    x = np.atleast_2d(np.asarray(x))
    frame = pd.DataFrame(x.T, columns=[f"x{m}" for m in range(x.shape[0])])
    if kind is not None:
        frame.insert(0, "kind", kind)
    frame.insert(0, "t", np.asarray(t, dtype=float))
    return frame


def spectrum_frame(spectrum):
    return pd.DataFrame.from_records(spectrum.to_rows(), columns=["index", "re", "im"])


def modes_frame(modes):
    records = [(m, k, float(v.real), float(v.imag)) for (m, k), v in np.ndenumerate(np.asarray(modes))]
    return pd.DataFrame.from_records(records, columns=["state", "mode", "re", "im"])


def write_csv(frame, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info("wrote %s (%d rows)", path, len(frame))
    return path
