"""Hot-kernel backend selection: compiled extension if built, numpy fallback
otherwise.  ``CAYLEYLAB_BACKEND=python`` or ``=cython`` forces a choice."""

from __future__ import annotations

import importlib
import os

import numpy as np

from . import fallback

_WANT = os.environ.get("CAYLEYLAB_BACKEND", "auto")
_fastcore = None
if _WANT in ("auto", "cython"):
    try:
        _fastcore = importlib.import_module("._fastcore", __name__)
    except ImportError:
        if _WANT == "cython":
            raise
BACKEND = "cython" if _fastcore is not None else "python"


def closure_indices(member: np.ndarray, inv_map: np.ndarray) -> np.ndarray:
    """Indices of the symmetric closure S union S^-1 minus the identity."""
    closure = member | member[inv_map]
    cl = np.flatnonzero(closure)
    return cl[cl != 0].astype(np.int64)


def cayley_diam2(table: np.ndarray, closure_idx: np.ndarray) -> bool:
    if _fastcore is not None:
        return _fastcore.cayley_diam2(table, np.ascontiguousarray(closure_idx, dtype=np.int64))
    return fallback.cayley_diam2(table, closure_idx)


def latin_diam2(entries: np.ndarray, member: np.ndarray) -> bool:
    if _fastcore is not None:
        return _fastcore.latin_diam2(entries, np.ascontiguousarray(member, dtype=np.uint8))
    return fallback.latin_diam2(entries, member)


def jm_square(n: int, rng: np.random.Generator) -> np.ndarray:
    if _fastcore is not None:
        return _fastcore.jm_square(n, rng, fallback.DRAW_BUFFER)
    return fallback.jm_square(n, rng)
