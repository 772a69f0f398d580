"""Rendering of qlandscape CSV exports into publication-style figures.

Consumes only the documented CSV schemas (map: alpha,phi_w,j0,p;
scan: alpha,p) and never imports the analysis package, so the two
components stay coupled through files alone.
"""

from .io import IncompleteGridError, MapCsv, ScanCsv, read_map_csv, read_scan_csv
from .render import render_map, render_scan

__version__ = "0.1.0"

__all__ = [
    "MapCsv",
    "ScanCsv",
    "IncompleteGridError",
    "read_map_csv",
    "read_scan_csv",
    "render_map",
    "render_scan",
]
