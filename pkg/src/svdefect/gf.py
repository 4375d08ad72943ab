"""Prime-field arithmetic and exact dense rank over GF(p).

Matrices are plain two-dimensional ``numpy.int64`` arrays of residues in
``[0, p)``.  With ``p < 2**31`` every product of two residues fits in a
signed 64-bit integer before reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_PRIME = 2147483647
MIN_PRIME = 10007
MAX_PRIME = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        p = int(self.p)
        if not MIN_PRIME <= p < MAX_PRIME:
            raise ValueError(f"modulus must lie in [{MIN_PRIME}, 2^31), got {p}")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)


def as_matrix(rows, field: FieldSpec) -> np.ndarray:
    """Coerce nested sequences of integers to a reduced int64 matrix."""
    m = np.array(rows, dtype=object)
    if m.ndim != 2:
        m = m.reshape(len(rows), -1)
    return np.asarray(m % field.p, dtype=np.int64)


def rank(m: np.ndarray, field: FieldSpec = FieldSpec()) -> int:
    """Exact rank of ``m`` over GF(p) by Gaussian elimination.

    The pivot in each column is the first nonzero entry at or below the
    current row.  ``m`` itself is never modified.
    """
    p = field.p
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if a.shape[0] > a.shape[1]:
        a = np.ascontiguousarray(a.T)
    a %= p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if below.size:
            factors = a[below, c]
            a[below, c:] = (a[below, c:] - np.outer(factors, a[r, c:])) % p
        r += 1
    return r


def kernel_dim(m: np.ndarray, field: FieldSpec = FieldSpec()) -> int:
    """Dimension of the right kernel: ``cols - rank``."""
    return int(np.shape(m)[1]) - rank(m, field)
