"""Cell-state alphabets, column predicates and loss accounting per variant.

A column is a tuple of ``Cell`` labels, index 0 first.  In a border band
index 0 is the row next to the grid interior and index ``h - 1`` lies on
the grid edge.

Two layers live here:

* the column predicates (``is_valid``, ``compatible``, ...) written row by
  row exactly as the domination rules read;
* per-cell ``creation``/``completion`` rules that the transfer machinery
  tabulates.  ``creation`` charges a new cell for what its left and vertical
  neighbours (and a vertical off-grid side) do to it, ``completion`` charges
  the previous cell once its right neighbour is known.  Summed over a whole
  grid they give the exact global loss; tests check both layers agree.
"""
from __future__ import annotations

import enum
import itertools
from typing import Optional, Sequence

import numpy as np


class Cell(enum.Enum):
    STONE = "stone"
    NEED_ONE = "need_one"
    OK = "ok"
    TWO_STONES = "two_stones"

    def __repr__(self) -> str:
        return self.name


STONE, NEED_ONE, OK, TWO_STONES = Cell.STONE, Cell.NEED_ONE, Cell.OK, Cell.TWO_STONES

Column = tuple  # tuple[Cell, ...]
Label = Optional[Cell]


def _at(s: Sequence[Cell], i: int) -> Label:
    """Out-of-range rows read as ``None``; conditions on them are ignored."""
    return s[i] if 0 <= i < len(s) else None


def _vertical(s: Sequence[Cell], i: int) -> tuple[Label, Label]:
    return _at(s, i - 1), _at(s, i + 1)


class Variant:
    """Base class; subclasses fill in the rules for one domination problem."""

    key: str
    name: str
    alphabet: tuple[Cell, ...]
    # Integer factor applied to the loss so it stays integral.
    loss_scale: int
    # lower bound on cost: ceil((loss + demand_weight * n * m) / influence)
    demand_weight: int
    influence: int
    # Largest height accepted by the fixed-height solver.
    max_height: int

    def __repr__(self) -> str:
        return f"Variant({self.key})"

    # ---- encoding ---------------------------------------------------
    @property
    def radix(self) -> int:
        return len(self.alphabet)

    def encode(self, column: Sequence[Cell]) -> int:
        """Mixed-radix index, row 0 most significant (lexicographic order)."""
        idx = 0
        for c in column:
            idx = idx * self.radix + self.alphabet.index(c)
        return idx

    def decode(self, index: int, height: int) -> Column:
        if not 0 <= index < self.radix ** height:
            raise ValueError(f"index {index} out of range for height {height}")
        digits = []
        for _ in range(height):
            index, d = divmod(index, self.radix)
            digits.append(self.alphabet[d])
        return tuple(reversed(digits))

    def words(self, height: int):
        return itertools.product(self.alphabet, repeat=height)

    def digits(self, height: int) -> np.ndarray:
        """(radix**height, height) array of digits in encoding order."""
        grids = np.indices((self.radix,) * height).reshape(height, -1).T
        return np.ascontiguousarray(grids, dtype=np.int64)

    # ---- costs --------------------------------------------------------
    def cost(self, cell: Cell) -> int:
        raise NotImplementedError

    def column_cost(self, column: Sequence[Cell]) -> int:
        return sum(self.cost(c) for c in column)

    def stones_of(self, cell: Cell) -> int:
        """Stone count of a cell in a grid assignment."""
        return self.cost(cell)

    # ---- per-cell accounting -----------------------------------------
    def creation(self, prev: Label, cur: Cell, up: Label, down: Label,
                 exempt: bool = False) -> Optional[int]:
        """Loss on ``cur`` from its left/vertical side, or None if inconsistent.

        ``None`` neighbours are off the grid, except that with ``exempt`` the
        ``up`` side is the (unknown) grid interior and costs nothing.
        """
        raise NotImplementedError

    def completion(self, prev: Cell, cur: Label, exempt: bool = False) -> Optional[int]:
        """Loss on ``prev`` once its right neighbour ``cur`` (None: off-grid) is known."""
        raise NotImplementedError

    @staticmethod
    def _offgrid(prev: Label, up: Label, down: Label, exempt: bool) -> int:
        return (prev is None) + (down is None) + (up is None and not exempt)

    # ---- whole-grid quantities ---------------------------------------
    def grid_loss(self, stones: np.ndarray) -> int:
        """Scaled loss of a complete assignment given as stone counts."""
        raise NotImplementedError

    def cost_from_loss(self, loss: int, n: int, m: int) -> int:
        """Smallest cost compatible with a (scaled) loss of at least ``loss``."""
        num = loss + self.demand_weight * n * m
        return -(-num // self.influence)

    # ---- column predicates (rule transcription) ----------------------
    def valid_row(self, s: Sequence[Cell], i: int) -> bool:
        raise NotImplementedError

    def almost_valid_row(self, s: Sequence[Cell], i: int) -> bool:
        return self.valid_row(s, i)

    def first_row(self, s: Sequence[Cell], i: int) -> bool:
        raise NotImplementedError

    def compatible_row(self, s: Sequence[Cell], t: Sequence[Cell], i: int) -> bool:
        raise NotImplementedError

    def almost_compatible_row(self, s: Sequence[Cell], t: Sequence[Cell], i: int) -> bool:
        raise NotImplementedError


class TwoDomination(Variant):
    key = "2dom"
    name = "TWO_DOMINATION"
    alphabet = (STONE, NEED_ONE, OK)
    loss_scale = 1
    demand_weight = 2
    influence = 6
    max_height = 12

    def cost(self, cell):
        return 1 if cell is STONE else 0

    def creation(self, prev, cur, up, down, exempt=False):
        k = (prev is STONE) + (up is STONE) + (down is STONE)
        if cur is STONE:
            return k + self._offgrid(prev, up, down, exempt)
        if cur is NEED_ONE:
            ok = k <= 1 if exempt else k == 1
            return 0 if ok else None
        if k >= (1 if exempt else 2):
            return max(0, k - 2)
        return None

    def completion(self, prev, cur, exempt=False):
        if prev is NEED_ONE:
            if cur is STONE or exempt:
                return 0
            return None
        return 1 if (cur is STONE or (cur is None and prev is STONE)) else 0

    def grid_loss(self, stones):
        d = int(np.count_nonzero(stones))
        return 4 * d - 2 * (stones.size - d)

    def valid_row(self, s, i):
        k = sum(x is STONE for x in _vertical(s, i))
        if s[i] is NEED_ONE:
            return k <= 1
        if s[i] is OK:
            return k >= 1
        return True

    def almost_valid_row(self, s, i):
        if s[i] is OK and i == 0:
            return True
        return self.valid_row(s, i)

    def first_row(self, s, i):
        k = sum(x is STONE for x in _vertical(s, i))
        if s[i] is NEED_ONE:
            return k == 1
        if s[i] is OK:
            return k == 2
        return True

    def compatible_row(self, s, t, i):
        if s[i] is NEED_ONE and t[i] is not STONE:
            return False
        k = sum(x is STONE for x in (*_vertical(t, i), s[i]))
        if t[i] is NEED_ONE:
            return k == 1
        if t[i] is OK:
            return k >= 2
        return True

    def almost_compatible_row(self, s, t, i):
        if s[i] is NEED_ONE and i != 0 and t[i] is not STONE:
            return False
        k = sum(x is STONE for x in (*_vertical(t, i), s[i]))
        if t[i] is NEED_ONE:
            return k == 1 if i != 0 else k <= 1
        if t[i] is OK:
            return k >= 2 if i != 0 else k >= 1
        return True


class RomanDomination(Variant):
    """Roman domination with the usual pruning: no STONE touches a STONE or
    TWO_STONES cell (some optimal solution always has this shape)."""

    key = "roman"
    name = "ROMAN_DOMINATION"
    alphabet = (TWO_STONES, STONE, OK, NEED_ONE)
    loss_scale = 2
    demand_weight = 2
    influence = 5
    max_height = 9

    def cost(self, cell):
        return {TWO_STONES: 2, STONE: 1}.get(cell, 0)

    def creation(self, prev, cur, up, down, exempt=False):
        nbrs = (prev, up, down)
        d = sum(x is TWO_STONES for x in nbrs)
        if cur is TWO_STONES:
            if prev is STONE:
                return None
            return 2 * d + 2 * self._offgrid(prev, up, down, exempt)
        if cur is STONE:
            if any(x is STONE or x is TWO_STONES for x in nbrs):
                return None
            return 3
        if cur is NEED_ONE:
            return 0 if d == 0 else None
        if d == 0 and not exempt:
            return None
        return 2 * max(0, d - 1)

    def completion(self, prev, cur, exempt=False):
        if prev is STONE:
            return None if cur in (STONE, TWO_STONES) else 0
        if prev is TWO_STONES:
            if cur is STONE:
                return None
            return 2 if cur in (TWO_STONES, None) else 0
        if prev is NEED_ONE:
            if cur is TWO_STONES or exempt:
                return 0
            return None
        return 2 if cur is TWO_STONES else 0

    def grid_loss(self, stones):
        s2 = int(np.count_nonzero(stones == 2))
        s1 = int(np.count_nonzero(stones == 1))
        return 10 * s2 + 5 * s1 - 2 * stones.size

    def valid_row(self, s, i):
        v = _vertical(s, i)
        if s[i] is NEED_ONE:
            return TWO_STONES not in v
        if s[i] is STONE:
            return TWO_STONES not in v and STONE not in v
        return True

    def first_row(self, s, i):
        if s[i] is OK:
            return TWO_STONES in _vertical(s, i)
        return True

    def _pair_rules(self, s, t, i, exempt):
        if s[i] is NEED_ONE and not exempt and t[i] is not TWO_STONES:
            return False
        if t[i] is NEED_ONE and s[i] is TWO_STONES:
            return False
        if t[i] is OK and not exempt and TWO_STONES not in (s[i], *_vertical(t, i)):
            return False
        if s[i] in (TWO_STONES, STONE) and t[i] is STONE:
            return False
        if s[i] is STONE and t[i] is TWO_STONES:
            return False
        return True

    def compatible_row(self, s, t, i):
        return self._pair_rules(s, t, i, exempt=False)

    def almost_compatible_row(self, s, t, i):
        return self._pair_rules(s, t, i, exempt=(i == 0))


class ClassicalDomination(Variant):
    """Ordinary domination: same alphabet as 2-domination, demand one."""

    key = "dom"
    name = "CLASSICAL_DOMINATION"
    alphabet = (STONE, NEED_ONE, OK)
    loss_scale = 1
    demand_weight = 1
    influence = 5
    max_height = 12

    def cost(self, cell):
        return 1 if cell is STONE else 0

    def creation(self, prev, cur, up, down, exempt=False):
        k = (prev is STONE) + (up is STONE) + (down is STONE)
        if cur is STONE:
            return k + self._offgrid(prev, up, down, exempt)
        if cur is NEED_ONE:
            return 0 if k == 0 else None
        if k == 0 and not exempt:
            return None
        return max(0, k - 1)

    def completion(self, prev, cur, exempt=False):
        if prev is NEED_ONE:
            if cur is STONE or exempt:
                return 0
            return None
        return 1 if (cur is STONE or (cur is None and prev is STONE)) else 0

    def grid_loss(self, stones):
        d = int(np.count_nonzero(stones))
        return 5 * d - stones.size

    def valid_row(self, s, i):
        if s[i] is NEED_ONE:
            return STONE not in _vertical(s, i)
        return True

    def first_row(self, s, i):
        if s[i] is OK:
            return STONE in _vertical(s, i)
        return True

    def _pair_rules(self, s, t, i, exempt):
        if s[i] is NEED_ONE and not exempt and t[i] is not STONE:
            return False
        k = sum(x is STONE for x in (*_vertical(t, i), s[i]))
        if t[i] is NEED_ONE:
            return k == 0
        if t[i] is OK and not exempt:
            return k >= 1
        return True

    def compatible_row(self, s, t, i):
        return self._pair_rules(s, t, i, exempt=False)

    def almost_compatible_row(self, s, t, i):
        return self._pair_rules(s, t, i, exempt=(i == 0))


TWO_DOM = TwoDomination()
ROMAN = RomanDomination()
CLASSICAL = ClassicalDomination()
VARIANTS = {v.key: v for v in (TWO_DOM, ROMAN, CLASSICAL)}


def get_variant(key) -> Variant:
    if isinstance(key, Variant):
        return key
    try:
        return VARIANTS[str(key).lower()]
    except KeyError:
        raise ValueError(f"unknown variant {key!r}; expected one of {sorted(VARIANTS)}") from None


# ---- column predicates ------------------------------------------------

def is_valid(s: Sequence[Cell], variant: Variant) -> bool:
    return all(variant.valid_row(s, i) for i in range(len(s)))


def is_first(s: Sequence[Cell], variant: Variant) -> bool:
    return is_valid(s, variant) and all(variant.first_row(s, i) for i in range(len(s)))


def is_dominated(s: Sequence[Cell], variant: Variant) -> bool:
    return is_valid(s, variant) and NEED_ONE not in s


def compatible(s: Sequence[Cell], t: Sequence[Cell], variant: Variant) -> bool:
    if len(s) != len(t):
        raise ValueError("columns of different heights")
    return all(variant.compatible_row(s, t, i) for i in range(len(s)))


def almost_valid(s: Sequence[Cell], variant: Variant) -> bool:
    return all(variant.almost_valid_row(s, i) for i in range(len(s)))


def almost_compatible(s: Sequence[Cell], t: Sequence[Cell], variant: Variant) -> bool:
    if len(s) != len(t):
        raise ValueError("columns of different heights")
    return all(variant.almost_compatible_row(s, t, i) for i in range(len(s)))


def almost_dominated(s: Sequence[Cell], variant: Variant) -> bool:
    return almost_valid(s, variant) and all(c is not NEED_ONE for c in s[1:])


def column_cost(s: Sequence[Cell], variant: Variant) -> int:
    return variant.column_cost(s)


def transition_loss(s: Sequence[Cell], t: Sequence[Cell], variant: Variant,
                    band: bool = True) -> int:
    """Scaled loss charged when column ``t`` is appended after ``s``.

    With ``band`` the row 0 of both columns faces the grid interior and row
    ``h - 1`` the grid edge; otherwise both ends of the column are grid edges.
    """
    if len(s) != len(t):
        raise ValueError("columns of different heights")
    total = 0
    for i in range(len(t)):
        exempt = band and i == 0
        up = None if i == 0 else t[i - 1]
        down = _at(t, i + 1)
        a = variant.completion(s[i], t[i], exempt=exempt)
        b = variant.creation(s[i], t[i], up, down, exempt=exempt)
        if a is None or b is None:
            raise ValueError(f"incompatible columns {s} -> {t}")
        total += a + b
    return total


def cell_waste(stones: np.ndarray, variant: Variant) -> np.ndarray:
    """Per-cell scaled waste of a complete assignment (receiver convention).

    Independent of the column machinery; sums to ``variant.grid_loss``.
    """
    n, m = stones.shape
    padded = np.full((n + 2, m + 2), -1, dtype=np.int64)
    padded[1:-1, 1:-1] = stones
    nbrs = [padded[:-2, 1:-1], padded[2:, 1:-1], padded[1:-1, :-2], padded[1:-1, 2:]]
    offgrid = sum((x < 0).astype(np.int64) for x in nbrs)
    if variant.key == "roman":
        t2 = sum((x == 2).astype(np.int64) for x in nbrs)
        waste = np.where(stones == 2, 2 * t2 + 2 * offgrid, 0)
        waste = np.where(stones == 1, 3 + 2 * t2, waste)
        waste = np.where(stones == 0, 2 * (t2 - 1), waste)
        return waste
    k = sum((x > 0).astype(np.int64) for x in nbrs)
    demand = 2 if variant.key == "2dom" else 1
    return np.where(stones > 0, k + offgrid, k - demand)


def column_images(cells: np.ndarray, variant: Variant) -> list[Column]:
    """Column states of a complete assignment, read left to right.

    A label depends on the cell, its left neighbour and its vertical
    neighbours; a cell that cannot be completed by its right neighbour gets
    ``None`` (the column is then not a state).
    """
    cells = np.asarray(cells)
    n, m = cells.shape
    out = []
    for j in range(m):
        col = []
        for i in range(n):
            nbrs = [cells[a, b] for a, b in ((i - 1, j), (i + 1, j), (i, j - 1))
                    if 0 <= a < n and 0 <= b < m]
            v = cells[i, j]
            if variant.key == "roman":
                label = {2: TWO_STONES, 1: STONE}.get(int(v))
                if label is None:
                    label = OK if any(x == 2 for x in nbrs) else NEED_ONE
            elif v:
                label = STONE
            else:
                k = sum(1 for x in nbrs if x)
                if variant.key == "dom":
                    label = OK if k else NEED_ONE
                else:
                    label = {0: None, 1: NEED_ONE}.get(k, OK)
            col.append(label)
        out.append(tuple(col))
    return out
