"""Numba availability and the env switch that forces the pure-numpy path."""

import os

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_disabled():
    return os.environ.get("KATD_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not numba_disabled()

__all__ = ["HAVE_NUMBA", "USE_NUMBA", "numba_disabled"]
