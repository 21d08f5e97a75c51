"""Exact domination numbers of n x m grids for fixed height n.

The cost vector after m columns is ``V_m = T^(m-1) F``; the answer is its
tropical dot product with the dominated mask ``D``.  ``T`` is never stored:
each step goes through ``TransferSystem.step``.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .columns import TransferSystem, build_transfer_system
from .tropical import INF, dot
from .variants import Variant, get_variant

MIN_WINDOW = 64


class HorizonExceeded(RuntimeError):
    """No periodicity was found before the requested horizon."""


def _finish(system: TransferSystem, v: np.ndarray) -> int:
    value = dot(v, system.dominated)
    if value >= INF:
        # Every grid has a dominating set, so this means the rules are broken.
        raise RuntimeError(f"no dominated completion for height {system.height}")
    return int(value)


def orbit(system: TransferSystem, m_max: int):
    """Yield ``(m, V_m)`` for m = 1 .. m_max."""
    v = system.first
    for m in range(1, m_max + 1):
        if m > 1:
            v = system.step(v)
        yield m, v


def gamma(n: int, m: int, variant) -> int:
    """Exact minimum cost of a dominating configuration of the n x m grid."""
    if m < 1:
        raise ValueError("m must be >= 1")
    system = build_transfer_system(n, get_variant(variant))
    v = system.first
    for _ in range(m - 1):
        v = system.step(v)
    return _finish(system, v)


def gamma_row(n: int, m_max: int, variant) -> list[int]:
    """[gamma(n, 1), ..., gamma(n, m_max)] from a single orbit."""
    system = build_transfer_system(n, get_variant(variant))
    return [_finish(system, v) for _, v in orbit(system, m_max)]


@dataclass
class Recurrence:
    """gamma(n, m) = gamma(n, m - r) + p for every m >= m0.

    ``base[i]`` holds gamma(n, i + 1) for 1 <= i + 1 < m0 + r.
    """

    variant: str
    n: int
    m0: int
    r: int
    p: int
    base: list[int] = field(repr=False)
    verified_to: int = 0

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "Recurrence":
        return cls(**json.loads(text))


def _normal(v: np.ndarray) -> tuple[bytes, int]:
    finite = v < INF
    c = int(v[finite].min())
    return np.where(finite, v - c, INF).tobytes(), c


def detect_recurrence(n: int, variant, m_max: int | None = None) -> Recurrence:
    """Find the first repetition of the normalized cost-vector orbit.

    With V_i = T^i F (so gamma(n, m) reads off V_(m-1)) the orbit is
    deterministic: once V_i equals V_j + p (i > j) it stays periodic.  The
    returned m0 is the first such exponent i and r = i - j.  The scalar
    relation is then confirmed directly for m0 <= m <= max(64, 4 (m0 + r))
    (or ``m_max`` if given).
    """
    variant = get_variant(variant)
    system = build_transfer_system(n, variant)
    horizon = m_max if m_max is not None else 10_000
    seen: dict[bytes, tuple[int, int]] = {}
    values: list[int] = []
    found = None
    v = system.first
    for m in range(1, horizon + 1):
        if m > 1:
            v = system.step(v)
        values.append(_finish(system, v))
        key, c = _normal(v)
        if key in seen:
            j, cj = seen[key]
            found = (m - 1, m - j, c - cj)
            break
        seen[key] = (m, c)
    if found is None:
        raise HorizonExceeded(f"no period within m <= {horizon} for n={n} ({variant.key})")
    m0, r, p = found
    window = m_max if m_max is not None else max(MIN_WINDOW, 4 * (m0 + r))
    window = max(window, m0 + r)
    while len(values) < window:
        v = system.step(v)
        values.append(_finish(system, v))
    for m in range(m0, window + 1):
        if values[m - 1] != values[m - 1 - r] + p:
            raise RuntimeError(f"recurrence broke at m={m} for n={n}")
    return Recurrence(variant.key, n, m0, r, p, values[: m0 + r - 1], verified_to=window)


def gamma_large_m(rec: Recurrence, m: int) -> int:
    if m < 1:
        raise ValueError("m must be >= 1")
    if m <= len(rec.base):
        return rec.base[m - 1]
    # Fold m back into [m0, m0 + r).
    k = (m - rec.m0) // rec.r
    return rec.base[m - k * rec.r - 1] + k * rec.p


def gamma_auto(n: int, m: int, variant: Variant | str, dp_limit: int = MIN_WINDOW) -> int:
    """Direct iteration for moderate m, recurrence extrapolation beyond."""
    if m <= dp_limit:
        return gamma(n, m, variant)
    return gamma_large_m(detect_recurrence(n, variant), m)
