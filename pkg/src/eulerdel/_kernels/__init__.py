"""Backend dispatch for the numeric kernels.

EULERDEL_BACKEND selects the implementation: ``numba`` (jit kernels),
``numpy`` (pure-numpy fallback), or ``auto``/unset (numba when it
imports, numpy otherwise).  Both backends expose the same functions and
must produce identical results; benchmarks/kernel_bench.py compares
them.
"""

from __future__ import annotations

import os

BACKENDS = ("numba", "numpy")


def load_backend(name: str):
    """Import and return a backend module by name."""
    if name == "numpy":
        from . import numpy_backend

        return numpy_backend
    if name == "numba":
        from . import numba_backend

        return numba_backend
    raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")


def _select():
    requested = os.environ.get("EULERDEL_BACKEND", "auto").strip().lower() or "auto"
    if requested == "auto":
        try:
            return load_backend("numba")
        except ImportError:
            return load_backend("numpy")
    if requested not in BACKENDS:
        raise RuntimeError(
            f"EULERDEL_BACKEND={requested!r} not recognized; use one of {BACKENDS} or auto"
        )
    return load_backend(requested)


_impl = _select()

NAME = _impl.NAME
ext_mul_vec = _impl.ext_mul_vec
ext_pow_vec = _impl.ext_pow_vec
ext_rank = _impl.ext_rank
ext_greedy_basis = _impl.ext_greedy_basis
wedge_batch = _impl.wedge_batch
gf2_rank = _impl.gf2_rank
