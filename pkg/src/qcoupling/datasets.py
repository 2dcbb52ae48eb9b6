"""Tabular datasets for the standard figures, and CSV/JSON emission.

Datasets are plain rectangular tables: column names plus numeric rows.
Values are written with 12 significant digits in both formats, so a
parsed emission reproduces the dataset at that precision.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from . import qdist, qft
from .qseq import conj_hat


@dataclass
class Dataset:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns or not all(
                isinstance(c, str) and c for c in self.columns):
            raise DomainError("column names must be nonempty strings")
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise DomainError(
                    f"row width {len(row)} != {width} columns")
            for v in row:
                if math.isnan(v):
                    raise DomainError("NaN entries are not allowed")


def _fmt(v) -> str:
    if v == 0:
        v = 0.0
    return f"{v:.12g}"


def to_csv(dataset: Dataset) -> str:
    lines = [",".join(dataset.columns)]
    for row in dataset.rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def to_json(dataset: Dataset) -> str:
    obj = {
        "columns": list(dataset.columns),
        "rows": [[float(_fmt(v)) for v in row] for row in dataset.rows],
    }
    if dataset.meta:
        obj["meta"] = dataset.meta
    return json.dumps(obj) + "\n"


def _figure_couplings(fid):
    if fid == 2:
        return [0.5, 1.0, 2.0, 5.0]
    return [-0.4, -1.0 / 3.0, -0.3, -0.04, -0.01, 0.0, 0.01, 0.1, 0.5, 1.0]


def figure_dataset(fid: int) -> Dataset:
    """Data behind the four standard figures.

    1: the conjugate coupling hat(q) over q in [-1.9, 6];
    2: conjugate pairs of unit-scale generalized Gaussians;
    3: normalization constants of conjugate couplings and their ratio;
    4: closed-form transform of the uniform density across couplings.
    """
    if fid == 1:
        rows = []
        for k in range(-190, 601):
            q = k / 100.0
            rows.append((q, conj_hat(q)))
        return Dataset(["q", "hat_q"], rows)

    if fid == 2:
        xs = np.arange(-300, 301) / 100.0
        rows = []
        for q in _figure_couplings(2):
            base = qdist.QGaussian(q, 0.0, 1.0)
            pair = qdist.conjugate_pair(base, qdist.PRESERVE_NORMALIZATION)
            for member in (base, pair):
                pdf = qdist.qgaussian_pdf(member, xs)
                rows.extend(zip([member.q] * xs.size, xs, pdf))
        meta = {
            "sigma_sq": 1.0,
            "couplings": _figure_couplings(2),
            "note": "coupling values and the matched-amplitude conjugate "
                    "convention are library choices",
        }
        return Dataset(["q", "x", "pdf"], rows, meta)

    if fid == 3:
        rows = []
        for k in range(1, 101):
            q = k * 0.05
            cq = qdist.c_q(q)
            ch = qdist.c_q(conj_hat(q))
            rows.append((q, cq, ch, ch / cq))
        return Dataset(["q", "c_q", "c_hat", "ratio"], rows)

    if fid == 4:
        ws = np.arange(0, 1001) * 0.05
        rows = []
        for q in _figure_couplings(4):
            vals = qft.qft_uniform_closed(q, ws)
            rows.extend(zip([q] * ws.size, ws, vals))
        meta = {
            "couplings": _figure_couplings(4),
            "note": "coupling values are a library choice around the "
                    "critical damping point -1/3",
        }
        return Dataset(["q", "w", "value"], rows, meta)

    raise DomainError(f"figure id must be 1..4, got {fid}")
