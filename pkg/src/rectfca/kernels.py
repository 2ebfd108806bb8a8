"""Hot inner loops over packed words.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy one.
The active backend is read from ``RECTFCA_BACKEND`` (``numba`` or ``numpy``)
at import time; callers that want a specific path use :func:`get`.

Packed sets are rows of 2-D word matrices. Column stores have shape
``(n, words_m)``, extent lists ``(k, words_m)``. Masks are ``bool`` arrays.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

BACKENDS = ("numba", "numpy")

_requested = os.environ.get("RECTFCA_BACKEND", "numba").strip().lower()
if _requested not in BACKENDS:
    raise ImportError(f"RECTFCA_BACKEND must be one of {BACKENDS}, got {_requested!r}")
DEFAULT_BACKEND = _requested if numba is not None else "numpy"


# ---------------------------------------------------------------- numpy path


def subset_matrix_np(sets, supersets):
    """``out[i, q]`` is true iff ``sets[i]`` is contained in ``supersets[q]``."""
    k, n = sets.shape[0], supersets.shape[0]
    out = np.empty((k, n), dtype=bool)
    # bound the (chunk, n, words) temporary
    step = max(1, (1 << 22) // max(1, n * sets.shape[1]))
    for lo in range(0, k, step):
        chunk = sets[lo : lo + step, None, :]
        out[lo : lo + step] = ((supersets[None, :, :] & chunk) == chunk).all(axis=2)
    return out


def intent_mask_np(ext, cols, active):
    return active & ((cols & ext) == ext).all(axis=1)


def meet_np(cols, mask, full):
    if not mask.any():
        return full.copy()
    return np.bitwise_and.reduce(cols[mask], axis=0)


def blocking_extent_np(cols, active, q, extents, contains, full, only_containing):
    keep = active.copy()
    keep[q] = False
    rows = np.arange(extents.shape[0])
    if only_containing:
        rows = rows[contains[:, q]]
    if rows.size == 0:
        return -1
    closure = np.empty((rows.size, extents.shape[1]), dtype=extents.dtype)
    closure[...] = full
    sub = contains[rows]
    for p in np.flatnonzero(keep):
        hit = sub[:, p]
        if hit.any():
            closure[hit] &= cols[p]
    bad = ~(closure == extents[rows]).all(axis=1)
    if bad.any():
        return int(rows[np.argmax(bad)])
    return -1


def cbo_np(cols, full, n, cap):
    wm = cols.shape[1]
    ext_stack = np.zeros((n + 2, wm), dtype=cols.dtype)
    int_stack = np.zeros((n + 2, n), dtype=bool)
    next_j = np.zeros(n + 2, dtype=np.int64)
    ext_stack[0] = full
    int_stack[0] = ((cols & full) == full).all(axis=1)
    out_ext = [ext_stack[0].copy()]
    out_int = [int_stack[0].copy()]
    if cap < 1:
        return _stack(out_ext, wm, cols.dtype), np.stack(out_int), True
    depth = 0
    while depth >= 0:
        j = next_j[depth]
        if j >= n:
            depth -= 1
            continue
        next_j[depth] = j + 1
        if int_stack[depth, j]:
            continue
        new = ext_stack[depth] & cols[j]
        below = ~int_stack[depth, :j]
        if below.any():
            cand = cols[:j][below]
            if ((cand & new) == new).all(axis=1).any():
                continue
        intent = int_stack[depth].copy()
        intent[j] = True
        rest = np.flatnonzero(~intent[j + 1 :]) + j + 1
        if rest.size:
            intent[rest] = ((cols[rest] & new) == new).all(axis=1)
        if len(out_ext) >= cap:
            return _stack(out_ext, wm, cols.dtype), np.stack(out_int), True
        out_ext.append(new)
        out_int.append(intent)
        ext_stack[depth + 1] = new
        int_stack[depth + 1] = intent
        next_j[depth + 1] = j + 1
        depth += 1
    return _stack(out_ext, wm, cols.dtype), np.stack(out_int), False


def _stack(rows, width, dtype):
    return np.ascontiguousarray(np.stack(rows).reshape(len(rows), width).astype(dtype, copy=False))


# ---------------------------------------------------------------- numba path

if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def _contained(a, b):
        # a <= b, word by word; highest word first as in the reference loop
        for k in range(a.shape[0] - 1, -1, -1):
            if (b[k] & a[k]) != a[k]:
                return False
        return True

    @_jit
    def subset_matrix_nb(sets, supersets):
        k, n = sets.shape[0], supersets.shape[0]
        out = np.empty((k, n), dtype=np.bool_)
        for i in range(k):
            for q in range(n):
                out[i, q] = _contained(sets[i], supersets[q])
        return out

    @_jit
    def intent_mask_nb(ext, cols, active):
        n = cols.shape[0]
        out = np.zeros(n, dtype=np.bool_)
        for q in range(n):
            if active[q] and _contained(ext, cols[q]):
                out[q] = True
        return out

    @_jit
    def meet_nb(cols, mask, full):
        out = full.copy()
        for q in range(cols.shape[0]):
            if mask[q]:
                for k in range(out.shape[0]):
                    out[k] &= cols[q, k]
        return out

    @_jit
    def blocking_extent_nb(cols, active, q, extents, contains, full, only_containing):
        n = cols.shape[0]
        w = extents.shape[1]
        closure = np.empty(w, dtype=extents.dtype)
        for i in range(extents.shape[0]):
            if only_containing and not contains[i, q]:
                continue
            for k in range(w):
                closure[k] = full[k]
            for p in range(n):
                if p != q and active[p] and contains[i, p]:
                    for k in range(w):
                        closure[k] &= cols[p, k]
            for k in range(w):
                if closure[k] != extents[i, k]:
                    return i
        return -1

    @_jit
    def _cbo_core(cols, full, n, cap):
        wm = cols.shape[1]
        ext_stack = np.zeros((n + 2, wm), dtype=cols.dtype)
        int_stack = np.zeros((n + 2, n), dtype=np.bool_)
        next_j = np.zeros(n + 2, dtype=np.int64)
        for k in range(wm):
            ext_stack[0, k] = full[k]
        for p in range(n):
            int_stack[0, p] = _contained(full, cols[p])

        size = 1024
        out_ext = np.empty((size, wm), dtype=cols.dtype)
        out_int = np.empty((size, n), dtype=np.bool_)
        out_ext[0] = ext_stack[0]
        out_int[0] = int_stack[0]
        count = 1
        if cap < 1:
            return out_ext[:count], out_int[:count], True

        new = np.empty(wm, dtype=cols.dtype)
        depth = 0
        while depth >= 0:
            j = next_j[depth]
            if j >= n:
                depth -= 1
                continue
            next_j[depth] = j + 1
            if int_stack[depth, j]:
                continue
            for k in range(wm):
                new[k] = ext_stack[depth, k] & cols[j, k]
            canonical = True
            for p in range(j):
                if not int_stack[depth, p] and _contained(new, cols[p]):
                    canonical = False
                    break
            if not canonical:
                continue
            d = depth + 1
            for p in range(n):
                if p <= j or int_stack[depth, p]:
                    int_stack[d, p] = int_stack[depth, p] or p == j
                else:
                    int_stack[d, p] = _contained(new, cols[p])
            if count >= cap:
                return out_ext[:count], out_int[:count], True
            if count == size:
                size *= 2
                grown_e = np.empty((size, wm), dtype=cols.dtype)
                grown_i = np.empty((size, n), dtype=np.bool_)
                grown_e[:count] = out_ext[:count]
                grown_i[:count] = out_int[:count]
                out_ext = grown_e
                out_int = grown_i
            for k in range(wm):
                ext_stack[d, k] = new[k]
                out_ext[count, k] = new[k]
            out_int[count] = int_stack[d]
            count += 1
            next_j[d] = j + 1
            depth = d
        return out_ext[:count], out_int[:count], False

    def cbo_nb(cols, full, n, cap):
        ext, intents, overflow = _cbo_core(np.ascontiguousarray(cols), full, n, cap)
        return ext.copy(), intents.copy(), bool(overflow)

    def _blocking_nb_wrapper(cols, active, q, extents, contains, full, only_containing):
        return int(blocking_extent_nb(cols, active, q, extents, contains, full, only_containing))


_NUMPY = SimpleNamespace(
    name="numpy",
    subset_matrix=subset_matrix_np,
    intent_mask=intent_mask_np,
    meet=meet_np,
    blocking_extent=blocking_extent_np,
    cbo=cbo_np,
)

_NUMBA = (
    SimpleNamespace(
        name="numba",
        subset_matrix=subset_matrix_nb,
        intent_mask=intent_mask_nb,
        meet=meet_nb,
        blocking_extent=_blocking_nb_wrapper,
        cbo=cbo_nb,
    )
    if numba is not None
    else None
)


def available() -> tuple[str, ...]:
    return BACKENDS if _NUMBA is not None else ("numpy",)


def get(backend: str | None = None) -> SimpleNamespace:
    """Kernel namespace for ``backend`` (default: the env-selected one)."""
    name = DEFAULT_BACKEND if backend is None else backend
    if name == "numpy":
        return _NUMPY
    if name == "numba":
        if _NUMBA is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        return _NUMBA
    raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
