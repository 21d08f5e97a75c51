"""Independent exhaustive search for tiny grids.

Deliberately shares nothing with the column machinery: cells are labelled
with raw stone counts in column-major order and checked against the plain
graph definition.  Once a cell's right neighbour is placed its whole
neighbourhood is known, so an unsatisfied cell kills the branch.
"""
from __future__ import annotations

import numpy as np

from .variants import get_variant
from .witness import GridAssignment

CAPS = {"2dom": 24, "dom": 24, "roman": 14}


class SizeCapExceeded(ValueError):
    pass


def _satisfied(key: str, grid: list[list[int]], n: int, m: int, i: int, j: int) -> bool:
    if grid[i][j]:
        return True
    nbrs = [grid[a][b] for a, b in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1))
            if 0 <= a < n and 0 <= b < m]
    if key == "2dom":
        return sum(1 for x in nbrs if x) >= 2
    if key == "dom":
        return any(nbrs)
    return any(x == 2 for x in nbrs)


def brute_force_min(n: int, m: int, variant) -> tuple[int, GridAssignment]:
    """Exact minimum cost and one optimal assignment."""
    variant = get_variant(variant)
    key = variant.key
    if n < 1 or m < 1:
        raise ValueError("grid dimensions must be positive")
    if n * m > CAPS[key]:
        raise SizeCapExceeded(f"{n}x{m} exceeds the oracle cap of {CAPS[key]} cells for {key}")
    choices = (0, 1, 2) if key == "roman" else (0, 1)
    grid = [[0] * m for _ in range(n)]
    best = [n * m + 1, None]
    cells = [(i, j) for j in range(m) for i in range(n)]

    def closed(t: int) -> bool:
        """Cells whose neighbourhood became complete when cell t was placed."""
        i, j = cells[t]
        if j > 0 and not _satisfied(key, grid, n, m, i, j - 1):
            return False
        if t == len(cells) - 1:
            return all(_satisfied(key, grid, n, m, a, m - 1) for a in range(n))
        return True

    def search(t: int, cost: int) -> None:
        if cost >= best[0]:
            return
        if t == len(cells):
            best[0] = cost
            best[1] = [row[:] for row in grid]
            return
        i, j = cells[t]
        for value in choices:
            grid[i][j] = value
            if closed(t):
                search(t + 1, cost + value)
        grid[i][j] = 0

    search(0, 0)
    cells_arr = np.array(best[1], dtype=np.int64)
    return best[0], GridAssignment(n, m, cells_arr)
