"""Points, tangent spaces and flattenings of the Segre-Veronese variety ``X_{n,d}``.

Coordinates follow the polynomial-coefficient convention: the rank-one
tensor ``u_0^{d_0} (x) ... (x) u_{k-1}^{d_{k-1}}`` has coordinate
``prod_i multinomial(d_i, alpha_i) * u_i^{alpha_i}`` at the basis monomial
``(alpha_0, ..., alpha_{k-1})``, i.e. the coefficients of
``prod_i (u_i . x_i)^{d_i}``.

A rank deficit observed here at a random specialization is evidence only;
certificates of defectivity come from :mod:`svdefect.criteria`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from svdefect.errors import CapacityError, InvalidSplittingError
from svdefect.gf import FieldSpec, rank
from svdefect.ms_tensor import (
    Shape,
    count,
    dim_space,
    dim_sum,
    factor_exponents,
    factor_monomials,
    multinomial,
)

DEFAULT_TRIALS = 3
DEFAULT_MAX_CELLS = 50_000_000


@dataclass(frozen=True)
class Point:
    """A point of ``X_{n,d}`` given by one nonzero vector per factor."""

    vectors: tuple[np.ndarray, ...]
    p: int

    def __post_init__(self) -> None:
        for v in self.vectors:
            if not np.any(v % self.p):
                raise ValueError("every factor vector must be nonzero")


@dataclass(frozen=True)
class Splitting:
    """A splitting ``d = e0 + e1`` of a multi-degree ``(1, ..., 1, d_last)``.

    Use :meth:`from_e0` to build one against a shape; ``validate`` checks it
    against any shape.
    """

    e0: tuple[int, ...]
    e1: tuple[int, ...]

    @classmethod
    def from_e0(cls, shape: Shape, e0: Sequence[int]) -> "Splitting":
        e0 = tuple(int(x) for x in e0)
        if len(e0) != shape.k:
            raise InvalidSplittingError(f"e0 has length {len(e0)}, expected {shape.k}")
        split = cls(e0, tuple(a - b for a, b in zip(shape.d, e0)))
        split.validate(shape)
        return split

    def e(self, i: int) -> tuple[int, ...]:
        return self.e0 if i % 2 == 0 else self.e1

    def support(self, i: int) -> tuple[int, ...]:
        """``Lambda_i``: indices where ``e_i`` is nonzero, ascending."""
        return tuple(j for j, x in enumerate(self.e(i)) if x != 0)

    def validate(self, shape: Shape) -> None:
        k = shape.k
        d = shape.d
        if len(self.e0) != k or len(self.e1) != k:
            raise InvalidSplittingError("e0 and e1 must have one entry per factor")
        if k < 2 or any(x != 1 for x in d[:-1]) or d[-1] < 2:
            raise InvalidSplittingError(f"multi-degree must be (1, ..., 1, d) with d >= 2, got {d}")
        if any(a + b != c for a, b, c in zip(self.e0, self.e1, d)):
            raise InvalidSplittingError("e0 + e1 must equal d")
        if min(self.e0) < 0 or min(self.e1) < 0:
            raise InvalidSplittingError("splitting entries must be non-negative")
        if not 1 <= self.e0[-1] <= d[-1] - 1:
            raise InvalidSplittingError(f"e0[k-1] must lie in [1, {d[-1] - 1}], got {self.e0[-1]}")
        for i in (0, 1):
            if self.support(i)[0] >= k - 1:
                raise InvalidSplittingError(f"Lambda_{i} has no index below k-1={k - 1}")


@dataclass
class TangentSystem:
    shape: Shape
    points: list[Point]
    matrix: np.ndarray
    rank: int = dc_field(default=-1)


def random_point(shape: Shape, field: FieldSpec, rng: np.random.Generator) -> Point:
    """Uniform coordinates in ``[0, p)``, redrawing any all-zero factor."""
    vectors = []
    for n_i in shape.n:
        while True:
            v = rng.integers(0, field.p, size=n_i + 1, dtype=np.int64)
            if np.any(v):
                break
        vectors.append(v)
    return Point(tuple(vectors), field.p)


@lru_cache(maxsize=None)
def _multinomials_mod(n: int, d: int, p: int) -> np.ndarray:
    arr = np.array([multinomial(d, a) % p for a in factor_monomials(n, d)], dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _power_table(u: np.ndarray, d: int, p: int) -> np.ndarray:
    table = np.ones((u.size, d + 1), dtype=np.int64)
    for e in range(1, d + 1):
        table[:, e] = table[:, e - 1] * u % p
    return table


def _monomial_values(exps: np.ndarray, powers: np.ndarray, p: int) -> np.ndarray:
    vals = np.ones(exps.shape[0], dtype=np.int64)
    for j in range(exps.shape[1]):
        vals = vals * powers[j, exps[:, j]] % p
    return vals


def factor_power(u: np.ndarray, d: int, p: int) -> np.ndarray:
    """Coordinates of ``u^d`` in ``Sym_d``; degree 0 gives ``[1]``."""
    n = u.size - 1
    exps = factor_exponents(n, d)
    vals = _monomial_values(exps, _power_table(u, d, p), p)
    return vals * _multinomials_mod(n, d, p) % p


def _factor_derivatives(u: np.ndarray, d: int, p: int) -> np.ndarray:
    """Rows ``u^{d-1} e_j`` in ``Sym_d`` coordinates, one per ``j``.

    Entry at ``alpha`` is ``multinomial(d-1, alpha - e_j) * u^{alpha - e_j}``
    when ``alpha_j >= 1``; this is ``(1/d) * d/du_j`` of :func:`factor_power`.
    """
    n = u.size - 1
    exps = factor_exponents(n, d)
    powers = _power_table(u, d, p)
    out = np.zeros((n + 1, exps.shape[0]), dtype=np.int64)
    for j in range(n + 1):
        rows = np.flatnonzero(exps[:, j] >= 1)
        lowered = exps[rows].copy()
        lowered[:, j] -= 1
        coef = np.array([multinomial(d - 1, a) % p for a in lowered.tolist()], dtype=np.int64)
        out[j, rows] = _monomial_values(lowered, powers, p) * coef % p
    return out


def _kron(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.kron(a, b) % p


def _tensor(vectors: Sequence[np.ndarray], degrees: Sequence[int], p: int) -> np.ndarray:
    out = np.ones(1, dtype=np.int64)
    for u, e in zip(vectors, degrees):
        out = _kron(out, factor_power(u, e, p), p)
    return out


def rank_one_coords(point: Point, shape: Shape) -> np.ndarray:
    """Coordinates of ``u_0^{d_0} (x) ... (x) u_{k-1}^{d_{k-1}}``, length ``N(n, d)``."""
    return _tensor(point.vectors, shape.d, point.p)


def tangent_matrix(point: Point, shape: Shape) -> np.ndarray:
    """The ``sum(n_i + 1) x N(n, d)`` matrix spanning the affine tangent space.

    Row ``(i, j)`` is ``u_0^{d_0} (x) ... (x) u_i^{d_i - 1} e_{i,j} (x) ... (x)
    u_{k-1}^{d_{k-1}}``; the derivative factor ``d_i`` is dropped.
    """
    p = point.p
    pieces = [factor_power(u, e, p) for u, e in zip(point.vectors, shape.d)]
    blocks = []
    for i, (u, e) in enumerate(zip(point.vectors, shape.d)):
        left = np.ones((1, 1), dtype=np.int64)
        for piece in pieces[:i]:
            left = _kron(left, piece[None, :], p)
        block = _kron(left, _factor_derivatives(u, e, p), p)
        for piece in pieces[i + 1 :]:
            block = _kron(block, piece[None, :], p)
        blocks.append(block)
    return np.vstack(blocks)


def _check_cells(shape: Shape, s: int, max_cells: int) -> None:
    cells = s * (dim_sum(shape) + shape.k) * dim_space(shape)
    if cells > max_cells:
        raise CapacityError(f"tangent matrix would have {cells} cells, limit is {max_cells}")


def tangent_system(
    shape: Shape,
    s: int,
    field: FieldSpec,
    rng: np.random.Generator,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> TangentSystem:
    """Stack the tangent matrices of ``s`` random points and compute the rank."""
    _check_cells(shape, s, max_cells)
    points = [random_point(shape, field, rng) for _ in range(s)]
    matrix = np.vstack([tangent_matrix(pt, shape) for pt in points])
    return TangentSystem(shape, points, matrix, rank(matrix, field))


def rank_upper_bound(shape: Shape, s: int) -> int:
    """``min{s (D + 1), N}``, the rank of a non-defective case."""
    return min(s * (dim_sum(shape) + 1), dim_space(shape))


def terracini_rank(
    shape: Shape,
    s: int,
    field: FieldSpec = FieldSpec(),
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> int:
    """Maximum stacked tangent rank over ``trials`` independent random draws.

    Trial ``t`` draws from the ``t``-th child of ``SeedSequence(seed)``, so
    results depend only on ``(seed, trials, p)``.  Reaching
    :func:`rank_upper_bound` certifies the expected dimension.
    """
    if s < 1 or trials < 1:
        raise ValueError("s and trials must be >= 1")
    _check_cells(shape, s, max_cells)
    bound = rank_upper_bound(shape, s)
    best = 0
    for child in np.random.SeedSequence(seed).spawn(trials):
        system = tangent_system(shape, s, field, np.random.default_rng(child), max_cells)
        best = max(best, system.rank)
        if best == bound:
            break
    return best


def side_matrix(points: Sequence[Point], shape: Shape, degrees: Sequence[int]) -> np.ndarray:
    """Columns are the rank-one coordinates of each point in degrees ``degrees``."""
    if not points:
        return np.zeros((count(shape.n, degrees), 0), dtype=np.int64)
    return np.stack([_tensor(pt.vectors, degrees, pt.p) for pt in points], axis=1)


def flattening_matrix(points: Sequence[Point], shape: Shape, split: Splitting, i: int) -> np.ndarray:
    """Matrix of the contraction ``Gamma_i(phi)`` for ``phi = sum_a phi_a``.

    Has ``N(n, e_i)`` rows and ``N(n, e_{i-1})`` columns, and is exactly the
    transpose of the matrix for ``i - 1``.
    """
    split.validate(shape)
    p = points[0].p if points else FieldSpec().p
    a = side_matrix(points, shape, split.e(i))
    b = side_matrix(points, shape, split.e(i - 1))
    # a @ b.T would overflow int64; accumulate rank-one terms reduced mod p.
    out = np.zeros((a.shape[0], b.shape[0]), dtype=np.int64)
    for col in range(a.shape[1]):
        out = (out + np.outer(a[:, col], b[:, col]) % p) % p
    return out


def kernel_dims(points: Sequence[Point], shape: Shape, split: Splitting, field: FieldSpec) -> tuple[int, int]:
    """``(dim B_0, dim B_1)`` where ``B_i = ker Gamma_{i-1}(phi)``."""
    out = []
    for i in (0, 1):
        g = flattening_matrix(points, shape, split, i - 1)
        out.append(g.shape[1] - rank(g, field))
    return out[0], out[1]


__all__ = [
    "DEFAULT_MAX_CELLS",
    "DEFAULT_TRIALS",
    "Point",
    "Splitting",
    "TangentSystem",
    "flattening_matrix",
    "kernel_dims",
    "random_point",
    "rank_one_coords",
    "rank_upper_bound",
    "side_matrix",
    "tangent_matrix",
    "tangent_system",
    "terracini_rank",
]
