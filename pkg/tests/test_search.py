import dataclasses

import pytest

from svdefect.criteria import certify
from svdefect.families import cgg_family, four_factor_family
from svdefect.gf import FieldSpec
from svdefect.ms_tensor import Shape
from svdefect.segre_veronese import Splitting
from svdefect.search import (
    SearchBounds,
    canonical_shape,
    cross_verify,
    enumerate_defective,
    iter_shapes,
    iter_splittings,
)


def keys(certs):
    return [(c.shape.n, c.shape.d, c.s) for c in certs]


def test_contains_cgg_a2():
    out = enumerate_defective(SearchBounds(3, 2, 2, 8))
    assert ((1, 1, 2), (1, 1, 2), 5) in keys(out)


def test_tiny_bounds_only_find_the_p1_cube():
    # Hand check: the only shape is (1,1,1) in degree (1,1,2) with e0=(1,0,1);
    # N(e_i) = 4, and ineq1 (1 >= 4 - s > 0) forces s = 3, where ineq0 is tight
    # (4 - 2 + 1 = 3) and F = 10 < 11.  The Terracini rank there is 11 < 12.
    out = enumerate_defective(SearchBounds(3, 1, 2, 4))
    assert keys(out) == [((1, 1, 1), (1, 1, 2), 3)]
    assert out[0].F == 10 and out[0].expected == 11


def test_contains_four_factor():
    out = enumerate_defective(SearchBounds(4, 3, 2, 7))
    assert ((1, 1, 3, 1), (1, 1, 1, 2), 7) in keys(out)


def test_deterministic_and_sorted():
    bounds = SearchBounds(4, 2, 3, 9)
    a = [c.to_record() for c in enumerate_defective(bounds)]
    b = [c.to_record() for c in enumerate_defective(bounds)]
    assert a == b
    ks = [(len(r["n"]), tuple(r["n"]), r["d"][-1], r["s"]) for r in a]
    assert ks == sorted(ks) and len(set(ks)) == len(ks)


def test_output_recertifies():
    for cert in enumerate_defective(SearchBounds(4, 3, 3, 10)):
        again = certify(cert.shape, cert.split, cert.s)
        assert again == cert
        assert canonical_shape(cert.shape) == cert.shape


def test_dedup_keeps_max_defect():
    # brute force over every splitting without the e0 symmetry reduction
    bounds = SearchBounds(4, 2, 3, 9)
    best = {}
    for shape in iter_shapes(bounds):
        k = shape.k
        for mask in range(1, 2 ** (k - 1) - 1):
            for last in range(1, shape.d[-1]):
                e0 = tuple((mask >> j) & 1 for j in range(k - 1)) + (last,)
                split = Splitting.from_e0(shape, e0)
                for s in range(1, bounds.max_s + 1):
                    cert = certify(shape, split, s)
                    if cert:
                        key = (shape.n, shape.d, s)
                        best[key] = max(best.get(key, 0), cert.defect_lb)
    out = enumerate_defective(bounds)
    assert {(c.shape.n, c.shape.d, c.s): c.defect_lb for c in out} == best


def test_splittings_cover_symmetry_classes():
    shape = Shape((1, 2, 3, 1), (1, 1, 1, 3))
    splits = list(iter_splittings(shape))
    assert all(0 in s.support(0) for s in splits)
    # degree-1 subsets containing 0 and leaving one out: {0}, {0,1}, {0,2}; times e0[-1] in {1,2}
    assert len(splits) == 6


def test_max_space_cap():
    bounds = SearchBounds(3, 3, 3, 10, max_space=30)
    assert all(c.shape.N <= 30 for c in enumerate_defective(bounds))


@pytest.mark.parametrize("kwargs", [dict(max_factors=1), dict(max_n=0), dict(max_last_degree=1), dict(max_s=0)])
def test_invalid_bounds(kwargs):
    base = dict(max_factors=3, max_n=2, max_last_degree=2, max_s=5)
    base.update(kwargs)
    with pytest.raises(ValueError):
        SearchBounds(**base)


def test_two_factors_yield_nothing():
    assert enumerate_defective(SearchBounds(2, 4, 4, 20)) == []


def test_family_completeness_small_grid():
    bounds = SearchBounds(4, 3, 2, 10)
    found = set(keys(enumerate_defective(bounds)))
    for case in [*cgg_family(2), four_factor_family(1, 2, -1)]:
        c = case.certificate
        if c.s <= 10 and max(c.shape.n) <= 3:
            assert (canonical_shape(c.shape).n, c.shape.d, c.s) in found


def test_cross_verify_examples():
    cgg = cgg_family(2)[0].certificate
    four = four_factor_family(1, 2, -1).certificate
    corrupted = dataclasses.replace(cgg, F=cgg.F - 5)
    res = cross_verify([cgg, four, corrupted], FieldSpec(), trials=3, seed=0)
    assert res[0].rank == 23 and res[0].consistent and res[0].deficit_evidence
    assert res[1].rank <= 47 and res[1].consistent
    assert res[2].consistent is False


def test_cross_verify_capacity_is_reported():
    cert = cgg_family(2)[0].certificate
    (res,) = cross_verify([cert], max_cells=10)
    assert res.rank is None and res.error and res.consistent is None
