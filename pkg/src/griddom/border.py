"""Minimum loss over the border of an n x m grid and the resulting lower bound.

The border is four bands of height h joined by four h x h corners.  Going
round the grid the bands contribute ``T_a`` powers and the corners ``C_a``:

    M = T_a^(m-2h-1) C_a T_a^(n-2h-1) C_a,      loss = min_S (M M)[S, S].

Since ``min diag(M M) = min_{S,S'} M[S,S'] + M[S',S]`` the square is never
formed explicitly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .columns import BorderSystem, build_border_system
from .tropical import INF, identity, mat_mul, mat_power, normalize
from .variants import get_variant

DEFAULT_H = 6


class HorizonExceeded(RuntimeError):
    """No power periodicity was found before ``k_max``."""


def _check_size(n: int, m: int, h: int) -> None:
    if n <= 2 * h or m <= 2 * h:
        raise ValueError(f"grid {n}x{m} too small for border height {h} (need both > {2 * h})")


def _diag_min(a: np.ndarray, b: np.ndarray) -> int:
    """min over the diagonal of (A B)[S, S] = min_{S,S'} A[S,S'] + B[S',S]."""
    value = int(np.minimum(a + b.T, INF).min())
    if value >= INF:
        raise RuntimeError("no consistent border; the band rules are inconsistent")
    return value


class LossEvaluator:
    """Border loss with cached ``T_a^e C_a`` blocks, for sweeps over (n, m)."""

    def __init__(self, system: BorderSystem):
        self.system = system
        self._powers = [identity(len(system))]
        self._blocks: dict[int, np.ndarray] = {}

    def power(self, e: int) -> np.ndarray:
        while len(self._powers) <= e:
            self._powers.append(mat_mul(self._powers[-1], self.system.transfer))
        return self._powers[e]

    def block(self, e: int) -> np.ndarray:
        """T_a^e C_a."""
        if e not in self._blocks:
            if e > 64:
                # Too far to walk one step at a time.
                self._blocks[e] = mat_mul(mat_power(self.system.transfer, e), self.system.corner)
            else:
                self._blocks[e] = mat_mul(self.power(e), self.system.corner)
        return self._blocks[e]

    def loss(self, n: int, m: int) -> int:
        h = self.system.h
        _check_size(n, m, h)
        mat = mat_mul(self.block(m - 2 * h - 1), self.block(n - 2 * h - 1))
        return _diag_min(mat, mat)

    def lower_bound(self, n: int, m: int) -> int:
        return self.system.variant.cost_from_loss(self.loss(n, m), n, m)


def border_loss_min(n: int, m: int, system: BorderSystem) -> int:
    """Minimum scaled loss over the width-h border of an n x m grid."""
    h = system.h
    _check_size(n, m, h)
    ta, ca = system.transfer, system.corner
    a = mat_mul(mat_power(ta, m - 2 * h - 1), ca)
    b = a if n == m else mat_mul(mat_power(ta, n - 2 * h - 1), ca)
    mat = mat_mul(a, b)
    return _diag_min(mat, mat)


def gamma_lower_bound(n: int, m: int, variant=None, system: BorderSystem | None = None,
                      h: int = DEFAULT_H) -> int:
    """Lower bound on the domination number from the border loss."""
    if system is None:
        system = build_border_system(h, get_variant(variant or "2dom"))
    elif variant is not None and get_variant(variant) is not system.variant:
        raise ValueError("variant does not match the border system")
    return system.variant.cost_from_loss(border_loss_min(n, m, system), n, m)


@dataclass
class LossPeriodicity:
    """T_a^(e + k) = T_a^e + p for every e >= r0."""

    r0: int
    k: int
    p: int

    def reduce(self, e: int) -> tuple[int, int]:
        """Write e as e0 + q k with e0 < r0 + k; returns (e0, q)."""
        if e < self.r0 + self.k:
            return e, 0
        q = (e - self.r0) // self.k
        return e - q * self.k, q


def loss_periodicity(system: BorderSystem, k_max: int = 200) -> LossPeriodicity:
    """First exponent pair with T_a^i = T_a^j + p (i > j), found by hashing.

    Powers satisfy T^(i+1) = T^i T, so one coincidence propagates to every
    later exponent.
    """
    ta = system.transfer
    seen: dict[bytes, tuple[int, int]] = {}
    power = ta
    for e in range(1, k_max + 1):
        if e > 1:
            power = mat_mul(power, ta)
        norm, c = normalize(power)
        key = norm.tobytes()
        if key in seen:
            j, cj = seen[key]
            return LossPeriodicity(r0=j, k=e - j, p=c - cj)
        seen[key] = (e, c)
    raise HorizonExceeded(f"T_a powers not periodic up to exponent {k_max}")


@dataclass
class PeriodicLoss:
    """Border loss for arbitrary (n, m) using only exponents below r0 + k."""

    system: BorderSystem
    period: LossPeriodicity
    _evaluator: LossEvaluator = field(init=False, repr=False)

    def __post_init__(self):
        self._evaluator = LossEvaluator(self.system)

    def loss(self, n: int, m: int) -> int:
        h = self.system.h
        _check_size(n, m, h)
        ea, qa = self.period.reduce(m - 2 * h - 1)
        eb, qb = self.period.reduce(n - 2 * h - 1)
        ev = self._evaluator
        mat = mat_mul(ev.block(ea), ev.block(eb))
        # Each power appears twice in the closed walk round the grid.
        return _diag_min(mat, mat) + 2 * (qa + qb) * self.period.p

    def lower_bound(self, n: int, m: int) -> int:
        return self.system.variant.cost_from_loss(self.loss(n, m), n, m)


def loss_record(n: int, m: int, system: BorderSystem) -> dict:
    loss = border_loss_min(n, m, system)
    return {"variant": system.variant.key, "h": system.h, "n": n, "m": m, "loss": loss,
            "lower_bound": system.variant.cost_from_loss(loss, n, m)}


def loss_json(n: int, m: int, system: BorderSystem) -> str:
    return json.dumps(loss_record(n, m, system))
