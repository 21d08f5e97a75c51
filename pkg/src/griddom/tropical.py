"""Dense arithmetic over the (min, +) semiring.

Scalars are int64 numpy values; ``INF`` is the absorbing element for
``+`` and the neutral element for ``min``.  Every operation clamps its
output back to ``INF`` so that ``INF + x`` never escapes the sentinel.
Finite entries must stay below ``MAX_FINITE`` (checked, see ``check``).
"""
from __future__ import annotations

import numpy as np

INF = np.int64(1) << np.int64(60)
MAX_FINITE = np.int64(1) << np.int64(58)

# Elements per temporary block in mat_mul; bounds peak memory of the
# broadcasted (rows, k-block, cols) sum.
_BLOCK_ELEMS = 1 << 22


def asmatrix(rows) -> np.ndarray:
    """Build a tropical matrix from nested lists; ``None``/``inf`` become INF."""
    out = np.array(
        [[INF if (x is None or x == float("inf")) else int(x) for x in row] for row in rows],
        dtype=np.int64,
    )
    if out.ndim != 2:
        raise ValueError("expected a 2-d array")
    return check(out)


def asvector(values) -> np.ndarray:
    return check(np.array(
        [INF if (x is None or x == float("inf")) else int(x) for x in values], dtype=np.int64))


def check(a: np.ndarray) -> np.ndarray:
    """Clamp to INF and assert finite values stay in the documented range."""
    a = np.minimum(a, INF)
    finite = a[a < INF]
    if finite.size and (finite.min() < 0 or finite.max() >= MAX_FINITE):
        raise OverflowError("tropical weight outside [0, 2**58)")
    return a


def identity(n: int) -> np.ndarray:
    out = np.full((n, n), INF, dtype=np.int64)
    np.fill_diagonal(out, 0)
    return out


def add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Semiring addition (entrywise min)."""
    return np.minimum(a, b)


def mul(a, b):
    """Semiring multiplication of scalars or same-shape arrays (saturating +)."""
    return np.minimum(np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64), INF)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """C[i, j] = min_k A[i, k] + B[k, j]."""
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError("mat_mul expects 2-d arrays")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {b.shape}")
    rows, inner = a.shape
    cols = b.shape[1]
    out = np.full((rows, cols), INF, dtype=np.int64)
    if inner == 0:
        return out
    step = max(1, _BLOCK_ELEMS // max(1, rows * cols))
    for k0 in range(0, inner, step):
        k1 = min(inner, k0 + step)
        block = a[:, k0:k1, None] + b[None, k0:k1, :]
        np.minimum(out, block.min(axis=1), out=out)
    return np.minimum(out, INF, out=out)


def mat_power(a: np.ndarray, k: int) -> np.ndarray:
    """k-fold tropical product by repeated squaring; k = 0 gives the identity."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("mat_power expects a square matrix")
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = identity(a.shape[0])
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def vec_apply(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """w[i] = min_j A[i, j] + v[j]."""
    if a.ndim != 2 or v.ndim != 1:
        raise ValueError("vec_apply expects a matrix and a vector")
    if a.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} x {v.shape}")
    if a.shape[1] == 0:
        return np.full(a.shape[0], INF, dtype=np.int64)
    return np.minimum((a + v[None, :]).min(axis=1), INF)


def dot(u: np.ndarray, v: np.ndarray) -> np.int64:
    """Tropical inner product min_i u[i] + v[i]."""
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    if u.size == 0:
        return INF
    return min(np.int64((u + v).min()), INF)


def primitivity_exponent(a: np.ndarray, k_max: int) -> int | None:
    """Smallest k <= k_max such that every entry of A^k is finite, else None.

    Only the finiteness pattern matters, so the powers are taken as boolean
    reachability matrices.
    """
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("primitivity_exponent expects a square matrix")
    if a.shape[0] == 0:
        return None
    pattern = (a < INF).astype(np.float32)
    power = pattern.copy()
    for k in range(1, k_max + 1):
        if power.all():
            return k
        # counts stay < 2**24, exact in float32
        power = ((power @ pattern) > 0).astype(np.float32)
    return None


def normalize(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Split A into (A - c, c) with c the smallest finite entry (0 if none)."""
    finite = a[a < INF]
    if finite.size == 0:
        return a.copy(), 0
    c = int(finite.min())
    out = np.where(a < INF, a - c, INF)
    return out, c
