"""Backend selection for the batched SU(2) propagation kernel.

The compiled Cython extension is used when it imported cleanly; otherwise
the numpy fallback takes over. QLANDSCAPE_FORCE_NUMPY=1 forces the fallback
(useful for the benchmark and for debugging).
"""

from __future__ import annotations

import os

from . import _su2_numpy

propagate_pauli_batch = _su2_numpy.propagate_pauli_batch
BACKEND = "numpy"

if os.environ.get("QLANDSCAPE_FORCE_NUMPY", "") != "1":
    try:
        from . import _su2_cy

        propagate_pauli_batch = _su2_cy.propagate_pauli_batch
        BACKEND = "cython"
    except ImportError:
        pass


def backend_name() -> str:
    return BACKEND


__all__ = ["propagate_pauli_batch", "backend_name", "BACKEND"]
