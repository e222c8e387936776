"""Numpy implementations of the Monte Carlo hot kernels.

Semantically identical to the compiled versions in ``_fastcore``; selected at
import time when the extension is unavailable (or forced via
``CAYLEYLAB_BACKEND=python``).
"""

from __future__ import annotations

import numpy as np

_PRODUCT_CHUNK = 4_000_000


def cayley_diam2(table: np.ndarray, closure_idx: np.ndarray) -> bool:
    """True iff the Cayley graph with the given symmetric generating closure
    has diameter <= 2 (anchored at the identity; the graph is vertex
    transitive).

    An element x != identity is within distance 2 exactly when it lies in the
    closure or is a product of two closure elements.
    """
    n = table.shape[0]
    if n <= 1:
        return True
    cl = closure_idx
    if cl.size == 0:
        return False
    covered = np.zeros(n, dtype=bool)
    covered[0] = True
    covered[cl] = True
    block = max(1, _PRODUCT_CHUNK // cl.size)
    for start in range(0, cl.size, block):
        rows = table[cl[start:start + block]][:, cl]
        covered[rows.ravel()] = True
        if covered.all():
            return True
    return bool(covered.all())


def latin_diam2(entries: np.ndarray, member: np.ndarray) -> bool:
    """True iff the Latin square graph for symbol set `member` has diameter <= 2.

    Not vertex transitive in general, so every vertex pair is tested: adjacency
    bit first, then a packed-word intersection of the two neighbourhoods.
    """
    n = entries.shape[0]
    if n <= 1:
        return True
    adj = member[entries] | member[entries.T]
    np.fill_diagonal(adj, False)
    words = pack_rows(adj)
    for i in range(n - 1):
        need = ~adj[i, i + 1:]
        if not need.any():
            continue
        rows = words[i + 1:][need]
        if not (rows & words[i]).any(axis=1).all():
            return False
    return True


def pack_rows(adj: np.ndarray) -> np.ndarray:
    """Pack boolean adjacency rows into little-endian uint64 words."""
    n = adj.shape[1]
    nbytes = ((n + 63) // 64) * 8
    packed = np.packbits(adj, axis=1, bitorder="little")
    if packed.shape[1] < nbytes:
        pad = np.zeros((adj.shape[0], nbytes - packed.shape[1]), dtype=np.uint8)
        packed = np.concatenate([packed, pad], axis=1)
    return packed.view(np.uint64)


DRAW_BUFFER = 4096


class BufferedDraws:
    """Unbiased bounded integer draws in refill batches of DRAW_BUFFER.

    Both backends consume draws through this exact scheme (three independent
    buffers: bound n, bound n-1, bound 2), so a given stream yields the same
    chain in either implementation.
    """

    def __init__(self, rng: np.random.Generator, bound: int):
        self.rng = rng
        self.bound = bound
        self.buf = rng.integers(0, bound, size=DRAW_BUFFER).tolist()
        self.pos = 0

    def next(self) -> int:
        if self.pos == len(self.buf):
            self.buf = self.rng.integers(0, self.bound, size=DRAW_BUFFER).tolist()
            self.pos = 0
        v = self.buf[self.pos]
        self.pos += 1
        return v

    def next_array(self) -> np.ndarray:
        """Whole refill batch at once, for the compiled twin."""
        return self.rng.integers(0, self.bound, size=DRAW_BUFFER)


def jm_square(n: int, rng: np.random.Generator) -> np.ndarray:
    """Latin square entries after n^3 proper +-1 moves from the cyclic square.

    State: cell_syms[r][c] lists the symbols with +1 incidence at the cell
    (two of them at the defect cell while improper); col_rows / row_cols are
    the matching line lookups.
    """
    cell_syms = [[[(r - c) % n] for c in range(n)] for r in range(n)]
    col_rows = [[[(s + c) % n] for s in range(n)] for c in range(n)]
    row_cols = [[[(r - s) % n] for s in range(n)] for r in range(n)]
    draw_n = BufferedDraws(rng, n)
    draw_n1 = BufferedDraws(rng, n - 1)
    draw_2 = BufferedDraws(rng, 2)

    defect = None  # (r, c, s) of the -1 entry while improper
    proper_moves = 0
    target = n ** 3
    while proper_moves < target or defect is not None:
        if defect is None:
            r = draw_n.next()
            c = draw_n.next()
            s1 = cell_syms[r][c][0]
            s = draw_n1.next()
            if s >= s1:
                s += 1
            r1 = col_rows[c][s][0]
            c1 = row_cols[r][s][0]
            cell_syms[r][c].append(s)       # 0 -> +1
            col_rows[c][s].append(r)
            row_cols[r][s].append(c)
        else:
            r, c, s = defect
            s1 = cell_syms[r][c][draw_2.next()]
            r1 = col_rows[c][s][draw_2.next()]
            c1 = row_cols[r][s][draw_2.next()]
            # the -1 cell returns to 0; incidence lists track +1 cells only
        # rest of the alternating +-1 pattern on {r,r1} x {c,c1} x {s,s1}
        cell_syms[r][c].remove(s1)
        col_rows[c][s1].remove(r)
        row_cols[r][s1].remove(c)
        cell_syms[r1][c].remove(s)
        col_rows[c][s].remove(r1)
        row_cols[r1][s].remove(c)
        cell_syms[r][c1].remove(s)
        col_rows[c1][s].remove(r)
        row_cols[r][s].remove(c1)
        cell_syms[r1][c].append(s1)
        col_rows[c][s1].append(r1)
        row_cols[r1][s1].append(c)
        cell_syms[r][c1].append(s1)
        col_rows[c1][s1].append(r)
        row_cols[r][s1].append(c1)
        cell_syms[r1][c1].append(s)
        col_rows[c1][s].append(r1)
        row_cols[r1][s].append(c1)
        if s1 in cell_syms[r1][c1][:-1]:
            cell_syms[r1][c1].remove(s1)
            col_rows[c1][s1].remove(r1)
            row_cols[r1][s1].remove(c1)
            defect = None
            proper_moves += 1
        else:
            defect = (r1, c1, s1)

    return np.array([[cell_syms[r][c][0] for c in range(n)] for r in range(n)])
