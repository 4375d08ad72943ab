"""Index arithmetic for the multi-graded space ``Sym_{d_0} V_0 (x) ... (x) Sym_{d_{k-1}} V_{k-1}``.

All counts are Python integers (arbitrary precision).  Monomials are
tuples of per-factor exponent tuples.  Within one factor the monomials of
degree ``d`` are listed in descending lexicographic order (``x^2, xy, y^2``)
and the full basis is the product order with factor 0 outermost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from svdefect.errors import CapacityError

MACHINE_INT_CAP = 2**48
MAX_BASIS_SIZE = 2**24

Monomial = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Shape:
    """Projective dimensions ``n`` and multi-degree ``d`` of ``X_{n,d}``."""

    n: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self) -> None:
        n = tuple(int(x) for x in self.n)
        d = tuple(int(x) for x in self.d)
        if not n or len(n) != len(d):
            raise ValueError(f"n and d must be non-empty and of equal length, got n={n}, d={d}")
        if min(n) < 1 or min(d) < 1:
            raise ValueError(f"entries of n and d must be >= 1, got n={n}, d={d}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    @property
    def k(self) -> int:
        return len(self.n)

    @property
    def N(self) -> int:
        return dim_space(self)

    @property
    def D(self) -> int:
        return dim_sum(self)

    @property
    def ambient_dim(self) -> int:
        """Dimension of the ambient projective space, ``N - 1``."""
        return self.N - 1


def dim_sym(n: int, d: int) -> int:
    """Dimension of ``Sym_d`` of an ``(n+1)``-dimensional space."""
    if n < 0 or d < 0:
        raise ValueError(f"dim_sym needs n, d >= 0, got ({n}, {d})")
    return math.comb(n + d, d)


def count(n: Sequence[int], degrees: Sequence[int]) -> int:
    """``N(n, e)`` for an arbitrary non-negative degree vector ``e``.

    Factors with degree 0 contribute 1, so splittings ``e_i`` with zero
    entries are handled without building a :class:`Shape`.
    """
    if len(n) != len(degrees):
        raise ValueError("n and degrees must have equal length")
    return math.prod(dim_sym(a, b) for a, b in zip(n, degrees))


def dim_space(shape: Shape) -> int:
    return count(shape.n, shape.d)


def dim_sum(shape: Shape) -> int:
    return sum(shape.n)


def as_machine_int(value: int, cap: int = MACHINE_INT_CAP) -> int:
    """Return ``value`` unchanged if it is below ``cap``, else raise."""
    if value >= cap:
        raise CapacityError(f"{value} exceeds the machine-integer cap {cap}")
    return int(value)


def multinomial(d: int, alpha: Sequence[int]) -> int:
    """``d! / prod(alpha_j!)``."""
    if sum(alpha) != d or min(alpha, default=0) < 0:
        raise ValueError(f"alpha={tuple(alpha)} is not a composition of {d}")
    result = 1
    remaining = d
    for a in alpha:
        result *= math.comb(remaining, a)
        remaining -= a
    return result


def _compositions(length: int, total: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(length - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def factor_monomials(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of length ``n+1`` and sum ``d``, descending lex."""
    return tuple(_compositions(n + 1, d))


@lru_cache(maxsize=None)
def _factor_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    return {alpha: j for j, alpha in enumerate(factor_monomials(n, d))}


@lru_cache(maxsize=None)
def factor_exponents(n: int, d: int) -> np.ndarray:
    """Exponent matrix of shape ``(dim_sym(n, d), n+1)``; read-only."""
    arr = np.array(factor_monomials(n, d), dtype=np.int64).reshape(-1, n + 1)
    arr.setflags(write=False)
    return arr


def basis(shape: Shape, limit: int = MAX_BASIS_SIZE) -> list[Monomial]:
    size = dim_space(shape)
    if size > limit:
        raise CapacityError(f"basis of size {size} exceeds the limit {limit}")
    per_factor = [factor_monomials(a, b) for a, b in zip(shape.n, shape.d)]
    out: list[Monomial] = [()]
    for mons in per_factor:
        out = [m + (alpha,) for m in out for alpha in mons]
    return out


def index_of(monomial: Monomial, shape: Shape) -> int:
    """Position of ``monomial`` in :func:`basis`; raises ``KeyError`` if absent."""
    if len(monomial) != shape.k:
        raise KeyError(monomial)
    index = 0
    for alpha, a, b in zip(monomial, shape.n, shape.d):
        index = index * dim_sym(a, b) + _factor_index(a, b)[tuple(alpha)]
    return index
