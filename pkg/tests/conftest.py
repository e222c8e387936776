"""Shared brute-force oracles for the test suite."""

import numpy as np


def enumerate_latin_squares(n: int) -> set[tuple]:
    """Backtracking enumeration of all order-n Latin squares."""
    out = []
    grid = np.full((n, n), -1, dtype=np.int64)

    def fill(pos: int) -> None:
        if pos == n * n:
            out.append(tuple(map(tuple, grid.tolist())))
            return
        r, c = divmod(pos, n)
        used = set(grid[r, :c].tolist()) | set(grid[:r, c].tolist())
        for s in range(n):
            if s not in used:
                grid[r, c] = s
                fill(pos + 1)
        grid[r, c] = -1

    fill(0)
    return set(out)
