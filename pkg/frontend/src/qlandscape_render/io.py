"""Parsing and validation of the analysis CLI's CSV exports.

Map files carry one row per (alpha, phi_w) cell with columns
alpha,phi_w,j0,p; the row set must form the full Cartesian product of the
two coordinate sets. Scan files carry alpha,p rows.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

MAP_HEADER = ["alpha", "phi_w", "j0", "p"]
SCAN_HEADER = ["alpha", "p"]


class IncompleteGridError(ValueError):
    """The map rows do not cover the full (alpha, phi_w) product grid."""

    def __init__(self, missing):
        self.missing = list(missing)
        shown = ", ".join(f"(alpha={a:g}, phi_w={p:g})" for a, p in self.missing[:8])
        more = "" if len(self.missing) <= 8 else f" and {len(self.missing) - 8} more"
        super().__init__(f"{len(self.missing)} missing grid cells: {shown}{more}")


@dataclass(frozen=True)
class MapCsv:
    """A complete (alpha, phi_w) grid of J0 and P values."""

    alpha: np.ndarray
    phi_w: np.ndarray
    j0: np.ndarray  # shape (n_alpha, n_phi)
    p: np.ndarray   # shape (n_alpha, n_phi)


@dataclass(frozen=True)
class ScanCsv:
    """A 1-d P(alpha) scan."""

    alpha: np.ndarray
    p: np.ndarray


def _read_rows(path, header):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    if rows[0] != header:
        raise ValueError(f"{path}: expected header {','.join(header)}, got {rows[0]}")
    body = [row for row in rows[1:] if row]
    if not body:
        raise ValueError(f"{path}: no data rows")
    try:
        return np.array([[float(x) for x in row] for row in body])
    except ValueError as exc:
        raise ValueError(f"{path}: malformed numeric row ({exc})") from None


def read_map_csv(path) -> MapCsv:
    data = _read_rows(path, MAP_HEADER)
    if data.shape[1] != 4:
        raise ValueError(f"{path}: map rows need 4 columns")
    alphas = np.unique(data[:, 0])
    phis = np.unique(data[:, 1])
    j0 = np.full((alphas.size, phis.size), np.nan)
    p = np.full((alphas.size, phis.size), np.nan)
    ia = np.searchsorted(alphas, data[:, 0])
    ip = np.searchsorted(phis, data[:, 1])
    j0[ia, ip] = data[:, 2]
    p[ia, ip] = data[:, 3]
    holes = np.argwhere(np.isnan(p))
    if holes.size:
        raise IncompleteGridError((alphas[i], phis[j]) for i, j in holes)
    return MapCsv(alpha=alphas, phi_w=phis, j0=j0, p=p)


def read_scan_csv(path) -> ScanCsv:
    data = _read_rows(path, SCAN_HEADER)
    if data.shape[1] != 2:
        raise ValueError(f"{path}: scan rows need 2 columns")
    order = np.argsort(data[:, 0])
    return ScanCsv(alpha=data[order, 0], p=data[order, 1])
