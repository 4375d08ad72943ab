"""Bounded exhaustive search for certifiable ``(shape, splitting, s)`` tuples."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from svdefect.criteria import Certificate, certify
from svdefect.errors import CapacityError
from svdefect.gf import FieldSpec
from svdefect.ms_tensor import Shape, count, dim_space
from svdefect.segre_veronese import (
    DEFAULT_MAX_CELLS,
    DEFAULT_TRIALS,
    Splitting,
    terracini_rank,
)


@dataclass(frozen=True)
class SearchBounds:
    max_factors: int
    max_n: int
    max_last_degree: int
    max_s: int
    max_space: int | None = None

    def __post_init__(self) -> None:
        if self.max_factors < 2:
            raise ValueError("max_factors must be >= 2 for any splitting to exist")
        if self.max_n < 1 or self.max_s < 1:
            raise ValueError("max_n and max_s must be >= 1")
        if self.max_last_degree < 2:
            raise ValueError("max_last_degree must be >= 2")
        if self.max_space is not None and self.max_space < 1:
            raise ValueError("max_space must be >= 1")


def canonical_shape(shape: Shape) -> Shape:
    """Sort the degree-1 factor dimensions; the last factor stays in place."""
    return Shape(tuple(sorted(shape.n[:-1])) + shape.n[-1:], shape.d)


def iter_shapes(bounds: SearchBounds) -> Iterator[Shape]:
    """Canonical shapes with ``k >= 3``; smaller ``k`` admits no splitting."""
    dims = range(1, bounds.max_n + 1)
    for k in range(3, bounds.max_factors + 1):
        for head in itertools.combinations_with_replacement(dims, k - 1):
            for last in dims:
                for top in range(2, bounds.max_last_degree + 1):
                    shape = Shape(head + (last,), (1,) * (k - 1) + (top,))
                    if bounds.max_space is not None and dim_space(shape) > bounds.max_space:
                        continue
                    yield shape


def iter_splittings(shape: Shape) -> Iterator[Splitting]:
    """Splittings with factor 0 in ``Lambda_0``; the ``e0 <-> e1`` swap covers the rest."""
    k = shape.k
    top = shape.d[-1]
    others = range(1, k - 1)
    for size in range(0, k - 2):
        for extra in itertools.combinations(others, size):
            chosen = {0, *extra}
            for last in range(1, top):
                e0 = tuple(1 if j in chosen else 0 for j in range(k - 1)) + (last,)
                yield Splitting.from_e0(shape, e0)


def _certificates(bounds: SearchBounds) -> Iterator[Certificate]:
    for shape in iter_shapes(bounds):
        for split in iter_splittings(shape):
            s_max = min(bounds.max_s, *(count(shape.n, split.e(i)) - 1 for i in (0, 1)))
            for s in range(1, s_max + 1):
                cert = certify(shape, split, s)
                if cert is not None:
                    yield cert


def _sort_key(cert: Certificate) -> tuple:
    return (cert.shape.k, cert.shape.n, cert.shape.d[-1], cert.s)


def enumerate_defective(bounds: SearchBounds) -> list[Certificate]:
    """All certificates within ``bounds``, one per (canonical shape, s).

    Ties on ``defect_lb`` keep the first splitting in enumeration order.
    """
    best: dict[tuple, Certificate] = {}
    for cert in _certificates(bounds):
        key = _sort_key(cert)
        held = best.get(key)
        if held is None or cert.defect_lb > held.defect_lb:
            best[key] = cert
    return [best[key] for key in sorted(best)]


@dataclass(frozen=True)
class Verification:
    certificate: Certificate
    rank: int | None
    consistent: bool | None
    deficit_evidence: bool | None
    error: str | None = None


def cross_verify(
    certs: Iterable[Certificate],
    field: FieldSpec = FieldSpec(),
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> list[Verification]:
    """Check ``rank <= F + 1`` for each certificate by Terracini rank.

    ``deficit_evidence`` records whether the rank fell short of
    ``expected + 1``.  Oversized cases are reported with ``error`` set.
    """
    out = []
    for cert in certs:
        try:
            r = terracini_rank(cert.shape, cert.s, field, trials, seed, max_cells)
        except CapacityError as exc:
            out.append(Verification(cert, None, None, None, str(exc)))
            continue
        out.append(Verification(cert, r, r <= cert.F + 1, r < cert.expected + 1))
    return out
