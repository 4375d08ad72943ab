import numpy as np
import pytest

import oracles
from svdefect.errors import CapacityError, InvalidSplittingError
from svdefect.gf import FieldSpec, kernel_dim, rank
from svdefect.ms_tensor import Shape, dim_space, dim_sum
from svdefect.segre_veronese import (
    Point,
    Splitting,
    flattening_matrix,
    kernel_dims,
    random_point,
    rank_one_coords,
    tangent_matrix,
    tangent_system,
    terracini_rank,
)

FIELD = FieldSpec()
P = FIELD.p

# Frozen from the sympy tangent-rank oracle (tests/oracles.py), seeds 1 and 2.
ORACLE_RANKS = [
    ((1, 1, 2), (1, 1, 2), 5, 23),
    ((1, 1, 1), (1, 1, 2), 2, 8),
    ((1, 1, 1), (1, 1, 2), 3, 11),
    ((1, 1, 3, 1), (1, 1, 1, 2), 7, 47),
    ((2, 2, 1), (1, 1, 2), 4, 23),
]


def point(*vectors, p=P):
    return Point(tuple(np.array(v, dtype=np.int64) for v in vectors), p)


def test_random_point_deterministic_and_nonzero():
    shape = Shape((1, 1), (1, 1))
    a = random_point(shape, FIELD, np.random.default_rng(3))
    b = random_point(shape, FIELD, np.random.default_rng(3))
    for u, v in zip(a.vectors, b.vectors):
        assert np.array_equal(u, v)
        assert np.any(u)


def test_random_point_respects_small_prime():
    f = FieldSpec(10007)
    rng = np.random.default_rng(0)
    for _ in range(20):
        pt = random_point(Shape((3, 2), (1, 1)), f, rng)
        assert all(v.max() < 10007 and v.min() >= 0 for v in pt.vectors)


def test_random_points_differ_across_seeds():
    shape = Shape((2, 2), (1, 1))
    draws = {tuple(np.concatenate(random_point(shape, FIELD, np.random.default_rng(s)).vectors)) for s in range(100)}
    assert len(draws) == 100


def test_point_rejects_zero_vector():
    with pytest.raises(ValueError):
        point([0, 0], [1, 2])


@pytest.mark.parametrize(
    "n, d, vectors, expected",
    [
        ((1,), (2,), ([1, 1],), [1, 2, 1]),
        ((1,), (2,), ([1, 0],), [1, 0, 0]),
        ((1, 1), (1, 1), ([1, 2], [1, 3]), [1, 3, 2, 6]),
        ((1,), (3,), ([2, 1],), [8, 12, 6, 1]),
    ],
)
def test_rank_one_coords(n, d, vectors, expected):
    assert rank_one_coords(point(*vectors), Shape(n, d)).tolist() == expected


def test_tangent_matrix_degenerate_point():
    m = tangent_matrix(point([1, 0]), Shape((1,), (2,)))
    # rows are x*(x) and x*(y), i.e. x^2 and xy
    assert m.tolist() == [[1, 0, 0], [0, 1, 0]]
    assert rank(m) == 2


@pytest.mark.parametrize("seed", range(5))
def test_tangent_rank_three_factor(seed):
    shape = Shape((1, 1, 2), (1, 1, 2))
    pt = random_point(shape, FIELD, np.random.default_rng(seed))
    m = tangent_matrix(pt, shape)
    assert m.shape == (2 + 2 + 3, 24)
    assert rank(m) == 5


def test_tangent_row_space_contains_rank_one_point():
    shape = Shape((1, 2, 1), (1, 2, 3))
    pt = random_point(shape, FIELD, np.random.default_rng(11))
    m = tangent_matrix(pt, shape)
    assert rank(np.vstack([m, rank_one_coords(pt, shape)])) == rank(m)


GRID = [
    Shape(n, d)
    for n, d in [
        ((1,), (1,)), ((3,), (4,)), ((1, 1), (1, 1)), ((2, 3), (2, 2)), ((1, 1, 1), (1, 1, 2)),
        ((2, 1, 3), (1, 1, 3)), ((1, 1, 1, 1), (1, 1, 1, 1)), ((1, 2, 2, 1), (1, 1, 1, 4)), ((4, 4), (3, 3)),
    ]
]


@pytest.mark.parametrize("shape", GRID, ids=str)
def test_tangent_rank_is_dim_plus_one(shape):
    assert dim_space(shape) <= 5000
    pt = random_point(shape, FIELD, np.random.default_rng(0))
    m = tangent_matrix(pt, shape)
    assert m.shape == (dim_sum(shape) + shape.k, dim_space(shape))
    assert rank(m) == dim_sum(shape) + 1


@pytest.mark.parametrize("shape", GRID[:6], ids=str)
def test_terracini_single_point(shape):
    assert terracini_rank(shape, 1, FIELD, trials=1, seed=4) == dim_sum(shape) + 1


@pytest.mark.parametrize("n, d, s, expected", ORACLE_RANKS)
def test_terracini_matches_frozen_oracle(n, d, s, expected):
    assert terracini_rank(Shape(n, d), s, FIELD, trials=3, seed=0) == expected


@pytest.mark.parametrize("n, d, s", [((1, 2), (2, 1), 3), ((1, 1, 1), (1, 1, 3), 3), ((2, 1), (2, 2), 4)])
def test_terracini_matches_live_oracle(n, d, s):
    assert terracini_rank(Shape(n, d), s, FIELD, trials=2, seed=3) == oracles.tangent_rank(n, d, s, seed=5)


@pytest.mark.parametrize("shape", [Shape((1, 1, 2), (1, 1, 2)), Shape((2, 2), (1, 2)), Shape((1, 1, 1), (1, 1, 2))], ids=str)
def test_terracini_monotone_and_bounded(shape):
    ranks = [terracini_rank(shape, s, FIELD, trials=2, seed=8) for s in range(1, 7)]
    assert ranks == sorted(ranks)
    for s, r in enumerate(ranks, start=1):
        assert r <= min(s * (dim_sum(shape) + 1), dim_space(shape))


def test_terracini_deterministic():
    shape = Shape((1, 1, 2), (1, 1, 2))
    assert len({terracini_rank(shape, 5, FIELD, 3, 42) for _ in range(3)}) == 1


def test_tangent_system_records_points():
    shape = Shape((1, 1), (1, 2))
    sys_ = tangent_system(shape, 2, FIELD, np.random.default_rng(0))
    assert sys_.matrix.shape == (8, 6)
    assert len(sys_.points) == 2
    assert sys_.rank == rank(sys_.matrix)


def test_terracini_capacity():
    with pytest.raises(CapacityError):
        terracini_rank(Shape((3, 3, 3), (1, 1, 4)), 10, FIELD, max_cells=1000)


# -- splittings and flattenings ------------------------------------------------

CGG = Shape((1, 1, 2), (1, 1, 2))


def test_splitting_supports():
    split = Splitting.from_e0(CGG, (1, 0, 1))
    assert split.e1 == (0, 1, 1)
    assert split.support(0) == (0, 2)
    assert split.support(1) == (1, 2)


@pytest.mark.parametrize(
    "n, d, e0",
    [
        ((1, 1), (1, 3), (1, 1)),          # Lambda_1 has no index below k-1
        ((1, 1, 2), (1, 1, 2), (1, 0, 2)),  # e0[k-1] == d[k-1]
        ((1, 1, 2), (1, 1, 2), (1, 0, 0)),  # e0[k-1] == 0
        ((1, 1, 2), (1, 2, 2), (1, 0, 1)),  # degree not (1, ..., 1, d)
        ((1, 1, 2), (1, 1, 1), (1, 0, 1)),  # last degree < 2
        ((1, 1, 2), (1, 1, 2), (2, -1, 1)),
        ((1, 1, 2), (1, 1, 2), (1, 1)),
    ],
)
def test_invalid_splittings(n, d, e0):
    with pytest.raises(InvalidSplittingError):
        Splitting.from_e0(Shape(n, d), e0)


def _points(shape, s, seed):
    rng = np.random.default_rng(seed)
    return [random_point(shape, FIELD, rng) for _ in range(s)]


def test_flattening_rank_one():
    split = Splitting.from_e0(CGG, (1, 0, 1))
    for i in (0, 1):
        assert rank(flattening_matrix(_points(CGG, 1, 0), CGG, split, i)) == 1


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_flattening_cgg_example(seed):
    split = Splitting.from_e0(CGG, (1, 0, 1))
    pts = _points(CGG, 5, seed)
    g0 = flattening_matrix(pts, CGG, split, 0)
    g1 = flattening_matrix(pts, CGG, split, 1)
    assert g0.shape == (6, 6) and g1.shape == (6, 6)
    assert np.array_equal(g0, g1.T)
    assert rank(g0) == rank(g1) == 5
    assert kernel_dim(g0) == kernel_dim(g1) == 1
    assert kernel_dims(pts, CGG, split, FIELD) == (1, 1)


def test_flattening_rank_agrees_with_catalecticant_oracle():
    shape = Shape((1, 2, 1), (1, 1, 3))
    split = Splitting.from_e0(shape, (1, 0, 2))
    pts = _points(shape, 4, 9)
    assert rank(flattening_matrix(pts, shape, split, 0)) == oracles.catalecticant_rank(
        shape.n, shape.d, split.e0, 4, seed=1
    )


def test_flattening_saturates():
    shape = Shape((1, 1, 1), (1, 1, 2))
    split = Splitting.from_e0(shape, (1, 0, 1))
    g = flattening_matrix(_points(shape, 9, 3), shape, split, 1)
    assert g.shape == (4, 4)
    assert rank(g) == 4


@pytest.mark.parametrize("s", range(1, 9))
def test_flattening_rank_never_exceeds_s(s):
    shape = Shape((2, 1, 2), (1, 1, 3))
    split = Splitting.from_e0(shape, (1, 0, 1))
    g = flattening_matrix(_points(shape, s, s), shape, split, 0)
    assert np.array_equal(g, flattening_matrix(_points(shape, s, s), shape, split, 1).T)
    assert rank(g) == min(s, *g.shape)


def test_flattening_rejects_invalid_split():
    with pytest.raises(InvalidSplittingError):
        flattening_matrix(_points(CGG, 2, 0), CGG, Splitting((1, 0, 2), (0, 1, 0)), 0)
