"""Generators for the known infinite families of defective secant varieties.

Every generator validates its parameters strictly (raising
:class:`~svdefect.errors.RangeError`) and returns a :class:`FamilyCase`
whose certificate has been produced by :func:`svdefect.criteria.certify`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from svdefect.criteria import Certificate, certify, superabundant_gap
from svdefect.errors import RangeError
from svdefect.ms_tensor import Shape, dim_sum
from svdefect.segre_veronese import Splitting

FAMILY_TAGS = ("cgg-1", "cgg-2", "even", "odd-i", "odd-ii", "four-factor")


@dataclass(frozen=True)
class FamilyCase:
    tag: str
    params: dict[str, int] = field(hash=False)
    certificate: Certificate = field(hash=False)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _build(tag: str, params: dict[str, int], n, d, e0, s: int) -> FamilyCase:
    shape = Shape(n, d)
    split = Splitting.from_e0(shape, e0)
    cert = certify(shape, split, s, provenance=tag)
    if cert is None:
        raise RuntimeError(f"{tag} case {params} failed to certify; parameters were validated")
    return FamilyCase(tag, dict(params), cert)


def cgg_family(a: int) -> tuple[FamilyCase, FamilyCase]:
    """The two cases ``(1, 1, a), s = 2a + 1`` and ``(a, a, 2), s = 3a + 2``."""
    if a < 2:
        raise RangeError(f"cgg family needs a >= 2, got a={a}")
    e0 = (1, 0, 1)
    return (
        _build("cgg-1", {"a": a}, (1, 1, a), (1, 1, 2), e0, 2 * a + 1),
        _build("cgg-2", {"a": a}, (a, a, 2), (1, 1, 2), e0, 3 * a + 2),
    )


def even_a_range(n: int, d: int) -> range:
    return range(0, _ceil_div(n, d))


def even_k_range(n: int, d: int, a: int) -> range:
    return range(1, n - a * d + 1)


def even_family(n: int, d: int, a: int, k: int) -> FamilyCase:
    """Shape ``(n, n+a, 1)`` in degree ``(1, 1, 2d)`` with ``s = (n+a+1) d + k``."""
    if n < 1 or d < 1:
        raise RangeError(f"even family needs n, d >= 1, got n={n}, d={d}")
    if a not in even_a_range(n, d):
        raise RangeError(f"even family needs 0 <= a <= ceil(n/d)-1, got a={a}")
    if k not in even_k_range(n, d, a):
        raise RangeError(f"even family needs 1 <= k <= n-ad = {n - a * d}, got k={k}")
    return _build(
        "even",
        {"n": n, "d": d, "a": a, "k": k},
        (n, n + a, 1),
        (1, 1, 2 * d),
        (1, 0, d),
        (n + a + 1) * d + k,
    )


def odd_case(n: int, d: int, a: int) -> str | None:
    """``"odd-i"``, ``"odd-ii"`` or ``None`` according to which range holds ``a``."""
    if n < 1 or d < 1:
        return None
    if 0 <= a <= (n + 1) // d:
        return "odd-i"
    if (n + 1) // d + 1 <= a <= (2 * n) // d:
        return "odd-ii"
    return None


def odd_a_range(n: int, d: int) -> range:
    return range(0, max((n + 1) // d, (2 * n) // d) + 1)


def odd_k_range(n: int, d: int, a: int) -> range:
    case = odd_case(n, d, a)
    if case == "odd-i":
        return range(1, min(n + 1, a * (d + 1)))
    if case == "odd-ii":
        return range(1, min(n + a, 2 * n - a * d + 1) + 1)
    return range(0)


def odd_family(n: int, d: int, a: int, k: int) -> FamilyCase:
    """Shape ``(n, n+a, 1)`` in degree ``(1, 1, 2d+1)``, split ``(1,0,d+1) + (0,1,d)``."""
    case = odd_case(n, d, a)
    if case is None:
        raise RangeError(f"odd family: a={a} is in neither parameter range for n={n}, d={d}")
    if k not in odd_k_range(n, d, a):
        kr = odd_k_range(n, d, a)
        raise RangeError(f"odd family ({case}): k={k} outside [{kr.start}, {kr.stop - 1}]")
    s = (n + 1) * (d + 1) + k if case == "odd-i" else (n + a + 1) * d + k
    return _build(
        case,
        {"n": n, "d": d, "a": a, "k": k},
        (n, n + a, 1),
        (1, 1, 2 * d + 1),
        (1, 0, d + 1),
        s,
    )


def four_factor_k_range(n: int, d: int) -> range:
    """Integers ``k`` with ``-1 <= k < (nd - 3n + d - 2) / (2n + 1)``."""
    if n < 1 or d < 2:
        return range(0)
    top = _ceil_div(n * d - 3 * n + d - 2, 2 * n + 1) - 1
    return range(-1, top + 1)


def four_factor_family(n: int, d: int, k: int) -> FamilyCase:
    """Shape ``(1, n, dn+d+k, 1)`` in degree ``(1, 1, 1, d)`` with ``s = 2d(n+1) - 1``."""
    if n < 1 or d < 2:
        raise RangeError(f"four-factor family needs n >= 1, d >= 2, got n={n}, d={d}")
    if k not in four_factor_k_range(n, d):
        raise RangeError(
            f"four-factor family needs -1 <= k < ({n * d - 3 * n + d - 2})/({2 * n + 1}), got k={k}"
        )
    case = _build(
        "four-factor",
        {"n": n, "d": d, "k": k},
        (1, n, d * n + d + k, 1),
        (1, 1, 1, d),
        (1, 1, 0, d - 1),
        2 * d * (n + 1) - 1,
    )
    cert = case.certificate
    s = cert.s
    if superabundant_gap(cert.shape, cert.split, s) != 2 * k + 3:
        raise AssertionError("N - 1 - F != 2k + 3")
    if s * (dim_sum(cert.shape) + 1) - 1 - cert.F != -(2 * n + 1) * k + n * d - 3 * n + d - 2:
        raise AssertionError("s(D+1) - 1 - F disagrees with the closed form")
    return case


def iter_cgg(a_values) -> Iterator[FamilyCase]:
    for a in a_values:
        yield from cgg_family(a)


def iter_even(n: int, d: int) -> Iterator[FamilyCase]:
    for a in even_a_range(n, d):
        for k in even_k_range(n, d, a):
            yield even_family(n, d, a, k)


def iter_odd(n: int, d: int) -> Iterator[FamilyCase]:
    for a in odd_a_range(n, d):
        for k in odd_k_range(n, d, a):
            yield odd_family(n, d, a, k)


def iter_four_factor(n: int, d: int) -> Iterator[FamilyCase]:
    for k in four_factor_k_range(n, d):
        yield four_factor_family(n, d, k)
