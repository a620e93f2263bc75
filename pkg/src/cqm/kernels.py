"""Hot inner loops: transversal search, batched relational images, colinearity.

Each kernel has a numba implementation and a numpy implementation.  The
numba path is used when numba imports and ``CQM_DISABLE_NUMBA`` is unset;
setting ``CQM_DISABLE_NUMBA=1`` selects the numpy path for the whole
process.  Both paths are importable directly (``*_numba`` / ``*_numpy``) so
they can be cross-checked and benchmarked side by side.

Bitsets are int64, so kernels accept at most ``MAX_BITS`` elements or tests.
"""

import os

import numpy as np

MAX_BITS = 62

_disabled = os.environ.get("CQM_DISABLE_NUMBA", "").strip().lower() in {
    "1", "true", "yes", "on"}

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _disabled


def _element_tables_loop(test_masks, n):
    conflict = np.zeros(n, dtype=np.int64)
    covers = np.zeros(n, dtype=np.int64)
    for t in range(test_masks.shape[0]):
        m = test_masks[t]
        for x in range(n):
            if (m >> x) & 1:
                conflict[x] |= m
                covers[x] |= np.int64(1) << t
    return conflict, covers


# ---------------------------------------------------------------- numpy path

def _element_tables_numpy(test_masks, n):
    """For each element: mask of elements sharing a test, mask of tests hit."""
    if test_masks.size == 0:
        return np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64)
    member = ((test_masks[:, None] >> np.arange(n, dtype=np.int64)) & 1) == 1
    conflict = np.bitwise_or.reduce(
        np.where(member, test_masks[:, None], 0), axis=0)
    weights = np.int64(1) << np.arange(test_masks.shape[0], dtype=np.int64)
    covers = np.bitwise_or.reduce(np.where(member, weights[:, None], 0), axis=0)
    return conflict.astype(np.int64), covers.astype(np.int64)


def exact_transversals_numpy(test_masks, n):
    """All u with |u & t| == 1 for every t, by breadth-first frontier growth.

    Tests are processed in order; a state that has not yet hit test ``t``
    branches on every unblocked element of ``t``.
    """
    test_masks = np.asarray(test_masks, dtype=np.int64)
    conflict, covers = _element_tables_numpy(test_masks, n)
    chosen = np.zeros(1, dtype=np.int64)
    hit = np.zeros(1, dtype=np.int64)
    blocked = np.zeros(1, dtype=np.int64)
    for t in range(test_masks.shape[0]):
        open_ = ((hit >> t) & 1) == 0
        parts_c = [chosen[~open_]]
        parts_h = [hit[~open_]]
        parts_b = [blocked[~open_]]
        m = int(test_masks[t])
        for x in range(n):
            if not (m >> x) & 1:
                continue
            ok = open_ & (((blocked >> x) & 1) == 0)
            bit = np.int64(1) << x
            parts_c.append(chosen[ok] | bit)
            parts_h.append(hit[ok] | covers[x])
            parts_b.append(blocked[ok] | conflict[x])
        chosen = np.concatenate(parts_c)
        hit = np.concatenate(parts_h)
        blocked = np.concatenate(parts_b)
        if chosen.size == 0:
            break
    return np.sort(chosen)


def images_numpy(rows, masks):
    """Direct image of each subset mask under a relation given by row masks."""
    rows = np.asarray(rows, dtype=np.int64)
    masks = np.asarray(masks, dtype=np.int64)
    if rows.size == 0 or masks.size == 0:
        return np.zeros(masks.shape[0], dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(rows.shape[0], dtype=np.int64)) & 1) == 1
    return np.bitwise_or.reduce(np.where(bits, rows[None, :], 0), axis=1)


def colinearity_numpy(u, v):
    """|<u_i|v_j>| for unit row vectors."""
    return np.abs(np.conj(u) @ np.transpose(v))


# ---------------------------------------------------------------- numba path

def _exact_transversals_loop(test_masks, n):
    conflict, covers = _element_tables_loop(test_masks, n)
    nt = test_masks.shape[0]
    full = (np.int64(1) << nt) - 1
    cap = (nt + 1) * (n + 1) + 1
    st_c = np.zeros(cap, dtype=np.int64)
    st_h = np.zeros(cap, dtype=np.int64)
    st_b = np.zeros(cap, dtype=np.int64)
    top = 1
    out = np.zeros(16, dtype=np.int64)
    count = 0
    while top > 0:
        top -= 1
        c = st_c[top]
        h = st_h[top]
        b = st_b[top]
        if h == full:
            if count == out.shape[0]:
                grown = np.zeros(2 * count, dtype=np.int64)
                grown[:count] = out
                out = grown
            out[count] = c
            count += 1
            continue
        t = 0
        while (h >> t) & 1:
            t += 1
        m = test_masks[t]
        for x in range(n):
            if (m >> x) & 1 and not (b >> x) & 1:
                st_c[top] = c | (np.int64(1) << x)
                st_h[top] = h | covers[x]
                st_b[top] = b | conflict[x]
                top += 1
    return np.sort(out[:count])


def _images_loop(rows, masks):
    out = np.zeros(masks.shape[0], dtype=np.int64)
    for i in range(masks.shape[0]):
        m = masks[i]
        acc = np.int64(0)
        for x in range(rows.shape[0]):
            if (m >> x) & 1:
                acc |= rows[x]
        out[i] = acc
    return out


def _colinearity_loop(u, v):
    out = np.zeros((u.shape[0], v.shape[0]))
    for i in range(u.shape[0]):
        for j in range(v.shape[0]):
            acc = 0j
            for k in range(u.shape[1]):
                acc += np.conj(u[i, k]) * v[j, k]
            out[i, j] = abs(acc)
    return out


if HAVE_NUMBA:
    _element_tables_loop = njit(cache=True)(_element_tables_loop)
    exact_transversals_numba = njit(cache=True)(_exact_transversals_loop)
    images_numba = njit(cache=True)(_images_loop)
    colinearity_numba = njit(cache=True)(_colinearity_loop)
else:  # pragma: no cover
    exact_transversals_numba = _exact_transversals_loop
    images_numba = _images_loop
    colinearity_numba = _colinearity_loop


def exact_transversals(test_masks, n):
    """Bitmasks of all exact transversals of the given tests, sorted ascending."""
    test_masks = np.ascontiguousarray(test_masks, dtype=np.int64)
    if n > MAX_BITS or test_masks.shape[0] > MAX_BITS:
        raise ValueError(f"bitset kernels support at most {MAX_BITS} bits")
    if USE_NUMBA:
        return exact_transversals_numba(test_masks, n)
    return exact_transversals_numpy(test_masks, n)


def images(rows, masks):
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    if USE_NUMBA:
        return images_numba(rows, masks)
    return images_numpy(rows, masks)


def colinearity(u, v):
    u = np.ascontiguousarray(u, dtype=np.complex128)
    v = np.ascontiguousarray(v, dtype=np.complex128)
    if USE_NUMBA:
        return colinearity_numba(u, v)
    return colinearity_numpy(u, v)
