"""Column-state enumeration and transfer systems.

``TransferSystem`` holds the exact machinery for grids of fixed height
(valid states, first-column costs, dominated mask, transfer operator).
``BorderSystem`` holds the relaxed machinery for a band of height ``h``
along the grid border: the band matrix ``transfer`` (T_a) and the corner
matrix ``corner`` (C_a), both with scaled losses as weights.
"""
from __future__ import annotations

import functools
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tropical import INF
from .variants import Variant, almost_valid, get_variant, is_valid

log = logging.getLogger(__name__)

# Bump when the per-cell rules change so cached border systems are rebuilt.
RULE_VERSION = 3
CACHE_FORMAT = 1
CACHE_ENV = "GRIDDOM_CACHE_DIR"

MAX_DENSE_STATES = 5000


class CapacityError(ValueError):
    """Requested system is larger than the implementation supports."""


@functools.lru_cache(maxsize=None)
def cell_tables(variant: Variant) -> tuple[np.ndarray, np.ndarray]:
    """Tabulate ``creation`` and ``completion`` over label digits.

    Digit ``radix`` stands for an absent neighbour (off-grid, or the interior
    when the exempt flag is set).

    creation[prev, cur, up, down, exempt]; completion[prev, cur, exempt].
    """
    a = variant.radix
    labels = list(variant.alphabet) + [None]
    cre = np.full((a + 1, a, a + 1, a + 1, 2), INF, dtype=np.int64)
    for p in range(a + 1):
        for c in range(a):
            for u in range(a + 1):
                for d in range(a + 1):
                    for ex in (0, 1):
                        v = variant.creation(labels[p], labels[c], labels[u], labels[d], bool(ex))
                        if v is not None:
                            cre[p, c, u, d, ex] = v
    comp = np.full((a, a + 1, 2), INF, dtype=np.int64)
    for p in range(a):
        for c in range(a + 1):
            for ex in (0, 1):
                v = variant.completion(labels[p], labels[c], bool(ex))
                if v is not None:
                    comp[p, c, ex] = v
    return cre, comp


def _neighbours(dig: np.ndarray, absent: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-row up/down digits of each word; ``absent`` outside the column."""
    n = dig.shape[1]
    up = np.full_like(dig, absent)
    down = np.full_like(dig, absent)
    if n > 1:
        up[:, 1:] = dig[:, :-1]
        down[:, :-1] = dig[:, 1:]
    return up, down


def pair_losses(variant: Variant, prev: np.ndarray, cur: np.ndarray, *,
                exempt_prev: bool, exempt_cur: bool, top: int | None = None) -> np.ndarray:
    """Dense (len(prev), len(cur)) matrix of summed completion + creation.

    ``prev``/``cur`` are digit arrays.  Row 0 of ``cur`` sees ``top`` above it
    (a label digit) or nothing.  INF marks inconsistent pairs.
    """
    cre, comp = cell_tables(variant)
    a = variant.radix
    up, down = _neighbours(cur, a)
    if top is not None:
        up[:, 0] = top
    total = np.zeros((prev.shape[0], cur.shape[0]), dtype=np.int64)
    for i in range(cur.shape[1]):
        p = prev[:, i][:, None]
        c = cur[:, i][None, :]
        ex_c = int(exempt_cur and i == 0)
        ex_p = int(exempt_prev and i == 0)
        total += cre[p, c, up[None, :, i], down[None, :, i], ex_c] + comp[p, c, ex_p]
        np.minimum(total, INF, out=total)
    return total


def enumerate_states(variant: Variant, height: int, almost: bool = False) -> np.ndarray:
    """Word indices of the valid (or almost-valid) columns, ascending."""
    pred = almost_valid if almost else is_valid
    return np.array([i for i, w in enumerate(variant.words(height)) if pred(w, variant)],
                    dtype=np.int64)


# ---------------------------------------------------------------------------
# Fixed-height exact system
# ---------------------------------------------------------------------------

@dataclass
class TransferSystem:
    variant: Variant
    height: int
    states: np.ndarray       # word indices of valid columns
    first: np.ndarray        # F: column cost on first states, INF elsewhere
    dominated: np.ndarray    # D: 0 on dominated states, INF elsewhere
    costs: np.ndarray
    # Product-set structure of the compatibility relation: the columns that
    # may precede state s form prod_i subsets[type_rows[s, i]].
    subsets: list = field(repr=False)
    type_index: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def column(self, k: int):
        return self.variant.decode(int(self.states[k]), self.height)

    def index_of(self, column) -> int:
        word = self.variant.encode(column)
        k = int(np.searchsorted(self.states, word))
        if k == len(self.states) or self.states[k] != word:
            raise KeyError(f"{column} is not a valid state")
        return k

    def step(self, v: np.ndarray) -> np.ndarray:
        """One transfer: w[s'] = cost(s') + min over compatible s of v[s]."""
        a, n = self.variant.radix, self.height
        full = np.full(a ** n, INF, dtype=np.int64)
        full[self.states] = v
        w = full.reshape((a,) * n)
        for axis in range(n):
            w = np.stack([w.take(sub, axis=axis).min(axis=axis) for sub in self.subsets],
                         axis=axis)
        best = w.reshape(-1)
        out = np.full(len(self.states), INF, dtype=np.int64)
        ok = self.type_index >= 0
        out[ok] = best[self.type_index[ok]]
        return np.minimum(np.where(out < INF, out + self.costs, INF), INF)

    def matrix(self) -> np.ndarray:
        """Dense transfer matrix T[s][s'] (only for small systems)."""
        if len(self.states) > MAX_DENSE_STATES:
            raise CapacityError(f"{len(self.states)} states is too many for a dense matrix")
        dig = self.variant.digits(self.height)[self.states]
        feas = pair_losses(self.variant, dig, dig, exempt_prev=False, exempt_cur=False)
        return np.where(feas < INF, self.costs[None, :], INF)


@functools.lru_cache(maxsize=32)
def build_transfer_system(n: int, variant) -> TransferSystem:
    variant = get_variant(variant)
    if not 1 <= n <= variant.max_height:
        raise CapacityError(f"height {n} outside 1..{variant.max_height} for {variant.key}")
    a = variant.radix
    cre, comp = cell_tables(variant)
    states = enumerate_states(variant, n)
    dig = variant.digits(n)[states]
    up, down = _neighbours(dig, a)

    cost_of = np.array([variant.cost(c) for c in variant.alphabet], dtype=np.int64)
    costs = cost_of[dig].sum(axis=1)

    first_ok = np.all(cre[a, dig, up, down, 0] < INF, axis=1)
    first = np.where(first_ok, costs, INF)
    dom_ok = np.all(comp[dig, a, 0] < INF, axis=1)
    dominated = np.where(dom_ok, 0, INF).astype(np.int64)

    # allowed[c, u, d] = bitmask of previous labels p accepted by a cell c
    # with vertical neighbours u, d.
    allowed = np.zeros((a, a + 1, a + 1), dtype=np.int64)
    for p in range(a):
        ok = (cre[p, :, :, :, 0] < INF) & (comp[p, :a, 0][:, None, None] < INF)
        allowed |= ok.astype(np.int64) << p
    masks = allowed[dig, up, down]
    codes = sorted({int(x) for x in np.unique(masks) if x})
    subsets = [[p for p in range(a) if code >> p & 1] for code in codes]
    lookup = {code: t for t, code in enumerate(codes)}
    k = len(codes)
    type_index = np.zeros(len(states), dtype=np.int64)
    for i in range(n):
        col = np.array([lookup.get(int(x), -1) for x in masks[:, i]], dtype=np.int64)
        type_index = np.where((type_index < 0) | (col < 0), -1, type_index * k + col)
    return TransferSystem(variant, n, states, first, dominated, costs, subsets, type_index)


# ---------------------------------------------------------------------------
# Border (band + corner) system
# ---------------------------------------------------------------------------

@dataclass
class BorderSystem:
    variant: Variant
    h: int
    states: np.ndarray      # word indices of almost-valid columns
    transfer: np.ndarray    # T_a: scaled transition losses
    corner: np.ndarray      # C_a: scaled corner losses

    def __len__(self) -> int:
        return len(self.states)

    def column(self, k: int):
        return self.variant.decode(int(self.states[k]), self.h)

    def index_of(self, column) -> int:
        word = self.variant.encode(column)
        k = int(np.searchsorted(self.states, word))
        if k == len(self.states) or self.states[k] != word:
            raise KeyError(f"{column} is not an almost-valid state")
        return k


def band_matrix(variant: Variant, h: int, states: np.ndarray) -> np.ndarray:
    dig = variant.digits(h)[states]
    return pair_losses(variant, dig, dig, exempt_prev=True, exempt_cur=True)


def corner_matrix(system: BorderSystem) -> np.ndarray:
    """C_a[A][B]: least loss of an h x h corner between band columns A and B.

    Picture the bottom-right corner: A is the last column of the bottom band,
    the corner square follows it column by column, and B is the grid row just
    above the square (the first column of the right band, index 0 innermost).
    Every column of the square sees the matching cell of B above its row 0,
    the bottom row and the last column touch the grid edge.  Charged: the
    completion of A, all corner cells, and the creation of B.
    """
    return _corner_matrix(system.variant, system.h, system.states)


def _corner_matrix(variant: Variant, h: int, states: np.ndarray) -> np.ndarray:
    a = variant.radix
    labels = list(variant.alphabet)
    dig = variant.digits(h)[states]
    n = len(states)
    _, comp = cell_tables(variant)

    step_first = {b: pair_losses(variant, dig, dig, exempt_prev=True, exempt_cur=False, top=b)
                  for b in range(a)}
    step_inner = {b: pair_losses(variant, dig, dig, exempt_prev=False, exempt_cur=False, top=b)
                  for b in range(a)}
    closure = np.minimum(comp[dig, a, 0].sum(axis=1), INF)

    def eta(bcol: tuple[int, ...], c: int) -> tuple[int, ...]:
        """Creation loss of B[c] for each label of the corner cell below it."""
        cur = labels[bcol[c]]
        up_ = labels[bcol[c - 1]] if c > 0 else None
        down_ = labels[bcol[c + 1]] if c + 1 < h else None
        out = []
        for p in labels:
            v = variant.creation(p, cur, up_, down_, exempt=(c == 0))
            out.append(INF if v is None else v)
        return tuple(out)

    top_digit = dig[:, 0]
    suffix_cache: dict[tuple, np.ndarray] = {}

    def tail(sig: tuple) -> np.ndarray:
        """Best loss from corner column (h - len(sig) - 1) given B's suffix."""
        if sig in suffix_cache:
            return suffix_cache[sig]
        if not sig:
            vec = closure
        else:
            (b, e), rest = sig[0], sig[1:]
            after = tail(rest)
            w = np.minimum(after + np.asarray(e, dtype=np.int64)[top_digit], INF)
            vec = np.minimum((step_inner[b] + w[None, :]).min(axis=1), INF)
        suffix_cache[sig] = vec
        return vec

    out = np.full((n, n), INF, dtype=np.int64)
    groups: dict[tuple, list[int]] = {}
    for j in range(n):
        bcol = tuple(int(x) for x in dig[j])
        sig = tuple((bcol[c], eta(bcol, c)) for c in range(h))
        groups.setdefault(sig, []).append(j)
    for sig, cols in groups.items():
        (b, e), rest = sig[0], sig[1:]
        w = np.minimum(tail(rest) + np.asarray(e, dtype=np.int64)[top_digit], INF)
        vec = np.minimum((step_first[b] + w[None, :]).min(axis=1), INF)
        out[:, cols] = vec[:, None]
    return out


def _cache_path(variant: Variant, h: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"border-{variant.key}-h{h}-rules{RULE_VERSION}.npz"


def _load_cached(path: Path, variant: Variant, h: int) -> BorderSystem | None:
    try:
        with np.load(path, allow_pickle=False) as data:
            meta = json.loads(str(data["meta"]))
            if (meta.get("format") != CACHE_FORMAT or meta.get("variant") != variant.key
                    or meta.get("h") != h or meta.get("rules") != RULE_VERSION):
                return None
            return BorderSystem(variant, h, data["states"], data["transfer"], data["corner"])
    except (OSError, KeyError, ValueError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return None


def _store(path: Path, system: BorderSystem) -> None:
    meta = json.dumps({"format": CACHE_FORMAT, "variant": system.variant.key,
                       "h": system.h, "rules": RULE_VERSION})
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp.npz")
    np.savez_compressed(tmp, meta=np.array(meta), states=system.states,
                        transfer=system.transfer, corner=system.corner)
    os.replace(tmp, path)


@functools.lru_cache(maxsize=8)
def build_border_system(h: int, variant) -> BorderSystem:
    variant = get_variant(variant)
    if not 1 <= h <= 7:
        raise CapacityError(f"band height {h} outside 1..7")
    path = _cache_path(variant, h)
    if path is not None and path.exists():
        cached = _load_cached(path, variant, h)
        if cached is not None:
            return cached
    states = enumerate_states(variant, h, almost=True)
    if len(states) > 2 * MAX_DENSE_STATES:
        raise CapacityError(f"{len(states)} band states is too many")
    transfer = band_matrix(variant, h, states)
    system = BorderSystem(variant, h, states, transfer, np.empty((0, 0), dtype=np.int64))
    system.corner = corner_matrix(system)
    if path is not None:
        _store(path, system)
    return system
