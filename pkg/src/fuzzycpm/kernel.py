"""Kernel backend selection and network packing.

The compiled ``_ckernel`` extension is used when it imports; otherwise the
pure-Python ``_pykernel`` module takes over.  Set ``FUZZYCPM_PURE_PYTHON=1``
to force the fallback.  Both produce identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _pykernel

try:
    if os.environ.get("FUZZYCPM_PURE_PYTHON"):
        raise ImportError("pure Python kernels requested")
    from . import _ckernel
except ImportError:
    _ckernel = None

BACKEND = "cython" if _ckernel is not None else "python"

# dense per-length buffers above this many slots fall back to the dict path
MAX_DENSE_SPAN = 1 << 22
_INT64_HEADROOM = 1 << 62


def available_backends() -> list[str]:
    return ["cython", "python"] if _ckernel is not None else ["python"]


def _module(backend: str | None):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        return _ckernel
    if backend == "python":
        return _pykernel
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class Packed:
    """Flat array form of a network for the kernels.

    Arrays are indexed by topological position; ``radix_pos[j]`` is the
    topological position of the j-th declared activity.
    """

    ids: tuple[str, ...]          # declaration order
    pred_ptr: np.ndarray
    pred_idx: np.ndarray
    sup_ptr: np.ndarray
    dur: np.ndarray
    bel: np.ndarray
    radix_pos: np.ndarray
    sizes: tuple[int, ...]        # support sizes, declaration order
    total: int                    # number of configurations
    lo_len: int
    hi_len: int

    @property
    def span(self) -> int:
        return self.hi_len - self.lo_len + 1

    @property
    def fits_int64(self) -> bool:
        return self.hi_len < _INT64_HEADROOM


def pack(g) -> Packed:
    from .network import extreme_lengths

    pos = {a: i for i, a in enumerate(g.order)}
    pred_ptr, pred_idx = [0], []
    sup_ptr, dur, bel = [0], [], []
    for a in g.order:
        pred_idx.extend(pos[p] for p in g.predecessors[a])
        pred_ptr.append(len(pred_idx))
        for d, b in g.duration(a).points:
            dur.append(d)
            bel.append(b)
        sup_ptr.append(len(dur))
    ids = g.ids
    sizes = tuple(len(g.duration(a)) for a in ids)
    total = 1
    for s in sizes:
        total *= s
    lo_len, hi_len = extreme_lengths(g)
    big = hi_len >= _INT64_HEADROOM
    return Packed(
        ids=ids,
        pred_ptr=np.asarray(pred_ptr, dtype=np.int64),
        pred_idx=np.asarray(pred_idx, dtype=np.int64),
        sup_ptr=np.asarray(sup_ptr, dtype=np.int64),
        dur=np.asarray(dur, dtype=object if big else np.int64),
        bel=np.asarray(bel, dtype=np.int64),
        radix_pos=np.asarray([pos[a] for a in ids], dtype=np.int64),
        sizes=sizes,
        total=total,
        lo_len=lo_len,
        hi_len=hi_len,
    )


def _choose(p: Packed, backend):
    mod = _module(backend)
    dense = p.span <= MAX_DENSE_SPAN
    if mod is not _pykernel and (not dense or not p.fits_int64 or p.total >= _INT64_HEADROOM):
        mod = _pykernel
    return mod, (p.span if dense else 0)


def _to_dict(out, offset) -> dict[int, int]:
    if isinstance(out, dict):
        return {k + offset: v for k, v in sorted(out.items())}
    return {i + offset: b for i, b in enumerate(out) if b}


def best_by_length(p: Packed, lo: int = 0, hi: int | None = None,
                   backend: str | None = None) -> dict[int, int]:
    """Max configuration belief per critical path length, configurations ``[lo, hi)``."""
    if hi is None:
        hi = p.total
    mod, span = _choose(p, backend)
    out = mod.enumerate_range(p.pred_ptr, p.pred_idx, p.sup_ptr, p.dur, p.bel,
                              p.radix_pos, lo, hi, p.lo_len, span)
    return _to_dict(out, p.lo_len)


def score(p: Packed, choices, backend: str | None = None) -> dict[int, int]:
    """Max belief per length over explicit configurations (rows of support indices)."""
    mod, span = _choose(p, backend)
    out = mod.score_choices(p.pred_ptr, p.pred_idx, p.sup_ptr, p.dur, p.bel,
                            p.radix_pos, choices, p.lo_len, span)
    return _to_dict(out, p.lo_len)
