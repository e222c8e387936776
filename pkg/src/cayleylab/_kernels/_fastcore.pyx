# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo hot kernels: diameter-2 tests for Cayley and Latin
square graphs.  Mirrors fallback.py exactly; both backends must return the
same booleans on the same inputs."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport uint8_t, uint16_t, uint64_t, int64_t
from libc.stdlib cimport calloc, free

cnp.import_array()


def cayley_diam2(const uint16_t[:, ::1] table, const int64_t[::1] closure_idx):
    """True iff every non-identity element is in the closure or a product of
    two closure elements."""
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t k = closure_idx.shape[0]
    if n <= 1:
        return True
    if k == 0:
        return False
    cdef uint8_t* covered = <uint8_t*> calloc(n, sizeof(uint8_t))
    if covered == NULL:
        raise MemoryError()
    cdef Py_ssize_t remaining = n - 1
    cdef Py_ssize_t a, b, ca, z
    cdef bint ok
    with nogil:
        covered[0] = 1
        for a in range(k):
            z = closure_idx[a]
            if not covered[z]:
                covered[z] = 1
                remaining -= 1
        if remaining > 0:
            for a in range(k):
                ca = closure_idx[a]
                for b in range(k):
                    z = table[ca, closure_idx[b]]
                    if not covered[z]:
                        covered[z] = 1
                        remaining -= 1
                if remaining == 0:
                    break
        ok = remaining == 0
    free(covered)
    return bool(ok)


cdef class _Draws:
    """Buffered bounded draws refilled from a numpy Generator; must consume
    the stream exactly like the fallback's BufferedDraws."""
    cdef object rng
    cdef long bound
    cdef long[::1] buf
    cdef Py_ssize_t pos, size

    def __init__(self, rng, long bound, Py_ssize_t size):
        self.rng = rng
        self.bound = bound
        self.size = size
        self.buf = rng.integers(0, bound, size=size).astype(long_dtype)
        self.pos = 0

    cdef long next(self):
        if self.pos == self.size:
            self.buf = self.rng.integers(0, self.bound, size=self.size).astype(long_dtype)
            self.pos = 0
        cdef long v = self.buf[self.pos]
        self.pos += 1
        return v


long_dtype = np.dtype("long")


cdef inline void _slot_add(long* arr, long* cnt, Py_ssize_t idx, long v) noexcept:
    arr[2 * idx + cnt[idx]] = v
    cnt[idx] += 1


cdef inline void _slot_rem(long* arr, long* cnt, Py_ssize_t idx, long v) noexcept:
    if arr[2 * idx] == v:
        arr[2 * idx] = arr[2 * idx + 1]
    cnt[idx] -= 1


def jm_square(Py_ssize_t n, object rng, Py_ssize_t buffer_size):
    """Latin square entries after n^3 proper +-1 moves from the cyclic square;
    state layout mirrors fallback.jm_square with fixed-capacity slot arrays."""
    cdef cnp.ndarray[long, ndim=1] cell_arr = np.empty(2 * n * n, dtype=long_dtype)
    cdef cnp.ndarray[long, ndim=1] col_arr = np.empty(2 * n * n, dtype=long_dtype)
    cdef cnp.ndarray[long, ndim=1] row_arr = np.empty(2 * n * n, dtype=long_dtype)
    cdef cnp.ndarray[long, ndim=1] cell_cnt = np.zeros(n * n, dtype=long_dtype)
    cdef cnp.ndarray[long, ndim=1] col_cnt = np.zeros(n * n, dtype=long_dtype)
    cdef cnp.ndarray[long, ndim=1] row_cnt = np.zeros(n * n, dtype=long_dtype)
    cdef long* cells = <long*> cell_arr.data
    cdef long* cols = <long*> col_arr.data
    cdef long* rows = <long*> row_arr.data
    cdef long* ccnt = <long*> cell_cnt.data
    cdef long* ocnt = <long*> col_cnt.data
    cdef long* rcnt = <long*> row_cnt.data
    cdef Py_ssize_t r, c, s
    # (r - c + n) % n: operands stay non-negative under C division semantics
    for r in range(n):
        for c in range(n):
            _slot_add(cells, ccnt, r * n + c, (r - c + n) % n)
    for c in range(n):
        for s in range(n):
            _slot_add(cols, ocnt, c * n + s, (s + c) % n)
    for r in range(n):
        for s in range(n):
            _slot_add(rows, rcnt, r * n + s, (r - s + n) % n)

    cdef _Draws draw_n = _Draws(rng, n, buffer_size)
    cdef _Draws draw_n1 = _Draws(rng, n - 1, buffer_size)
    cdef _Draws draw_2 = _Draws(rng, 2, buffer_size)

    cdef bint improper = False
    cdef long dr = 0, dc = 0, ds = 0
    cdef long proper_moves = 0, target = n * n * n
    cdef long rr, cc, ss, s1, r1, c1
    cdef Py_ssize_t cell_idx
    while proper_moves < target or improper:
        if not improper:
            rr = draw_n.next()
            cc = draw_n.next()
            s1 = cells[2 * (rr * n + cc)]
            ss = draw_n1.next()
            if ss >= s1:
                ss += 1
            r1 = cols[2 * (cc * n + ss)]
            c1 = rows[2 * (rr * n + ss)]
            _slot_add(cells, ccnt, rr * n + cc, ss)
            _slot_add(cols, ocnt, cc * n + ss, rr)
            _slot_add(rows, rcnt, rr * n + ss, cc)
        else:
            rr, cc, ss = dr, dc, ds
            s1 = cells[2 * (rr * n + cc) + draw_2.next()]
            r1 = cols[2 * (cc * n + ss) + draw_2.next()]
            c1 = rows[2 * (rr * n + ss) + draw_2.next()]
        _slot_rem(cells, ccnt, rr * n + cc, s1)
        _slot_rem(cols, ocnt, cc * n + s1, rr)
        _slot_rem(rows, rcnt, rr * n + s1, cc)
        _slot_rem(cells, ccnt, r1 * n + cc, ss)
        _slot_rem(cols, ocnt, cc * n + ss, r1)
        _slot_rem(rows, rcnt, r1 * n + ss, cc)
        _slot_rem(cells, ccnt, rr * n + c1, ss)
        _slot_rem(cols, ocnt, c1 * n + ss, rr)
        _slot_rem(rows, rcnt, rr * n + ss, c1)
        _slot_add(cells, ccnt, r1 * n + cc, s1)
        _slot_add(cols, ocnt, cc * n + s1, r1)
        _slot_add(rows, rcnt, r1 * n + s1, cc)
        _slot_add(cells, ccnt, rr * n + c1, s1)
        _slot_add(cols, ocnt, c1 * n + s1, rr)
        _slot_add(rows, rcnt, rr * n + s1, c1)
        _slot_add(cells, ccnt, r1 * n + c1, ss)
        _slot_add(cols, ocnt, c1 * n + ss, r1)
        _slot_add(rows, rcnt, r1 * n + ss, c1)
        cell_idx = r1 * n + c1
        if (ccnt[cell_idx] > 1 and cells[2 * cell_idx] == s1) or \
                (ccnt[cell_idx] > 2 and cells[2 * cell_idx + 1] == s1):
            _slot_rem(cells, ccnt, cell_idx, s1)
            _slot_rem(cols, ocnt, c1 * n + s1, r1)
            _slot_rem(rows, rcnt, r1 * n + s1, c1)
            improper = False
            proper_moves += 1
        else:
            improper = True
            dr, dc, ds = r1, c1, s1

    out = np.empty((n, n), dtype=np.int64)
    cdef long[:, ::1] ov = out
    for r in range(n):
        for c in range(n):
            ov[r, c] = cells[2 * (r * n + c)]
    return out


def latin_diam2(const uint16_t[:, ::1] entries, const uint8_t[::1] member):
    """True iff the Latin square graph on `entries` with the given symbol set
    has diameter <= 2 (all vertex pairs tested)."""
    cdef Py_ssize_t n = entries.shape[0]
    if n <= 1:
        return True
    cdef Py_ssize_t words = (n + 63) >> 6
    cdef uint64_t* bits = <uint64_t*> calloc(n * words, sizeof(uint64_t))
    if bits == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, w
    cdef bint adj, ok = True
    cdef uint64_t acc
    with nogil:
        for i in range(n):
            for j in range(n):
                if i != j and (member[entries[i, j]] or member[entries[j, i]]):
                    bits[i * words + (j >> 6)] |= (<uint64_t>1) << (j & 63)
        for i in range(n - 1):
            if not ok:
                break
            for j in range(i + 1, n):
                if bits[i * words + (j >> 6)] & ((<uint64_t>1) << (j & 63)):
                    continue
                acc = 0
                for w in range(words):
                    acc = bits[i * words + w] & bits[j * words + w]
                    if acc:
                        break
                if not acc:
                    ok = False
                    break
    free(bits)
    return bool(ok)
