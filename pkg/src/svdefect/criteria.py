"""Closed-form dimension bound and the numeric defectivity conditions.

For a splitting ``d = e0 + e1`` write ``b_i = N(n, e_i) - s``.  Then

* ``E = D - (b_0 + b_1)``
* ``F = s (D - E) + N - 1 - N(e_1) b_0 - N(e_0) b_1 + b_0 b_1``

and ``dim sigma_s <= F`` whenever ``ineq0`` and ``ineq1`` hold.  Everything
here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from svdefect.errors import ShapeMismatchError
from svdefect.ms_tensor import Shape, count, dim_space, dim_sum
from svdefect.segre_veronese import Splitting

PATH_INEQ3 = "ineq3"
PATH_INEQ_NEW = "ineq-new"


def _n_e(shape: Shape, split: Splitting, i: int) -> int:
    return count(shape.n, split.e(i))


def E_value(shape: Shape, split: Splitting, s: int) -> int:
    """Dimension of the rational subvariety through ``s`` generic points.

    Depends on ``s`` and the splitting, not only on ``n``.  May be negative.
    """
    split.validate(shape)
    return dim_sum(shape) - sum(_n_e(shape, split, i) - s for i in (0, 1))


def F_value(shape: Shape, split: Splitting, s: int) -> int:
    split.validate(shape)
    n_e = [_n_e(shape, split, i) for i in (0, 1)]
    deficits = [n_e[i] - s for i in (0, 1)]
    D = dim_sum(shape)
    E = D - sum(deficits)
    return (
        s * (D - E)
        + dim_space(shape)
        - 1
        - sum(n_e[(i - 1) % 2] * deficits[i] for i in (0, 1))
        + deficits[0] * deficits[1]
    )


def expected_dim(shape: Shape, s: int) -> int:
    """``min{s (D + 1), N} - 1``."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return min(s * (dim_sum(shape) + 1), dim_space(shape)) - 1


def superabundant_gap(shape: Shape, split: Splitting, s: int) -> int:
    """``N - 1 - F``; identically ``(N(e0) - s)(N(e1) - s)``."""
    return dim_space(shape) - 1 - F_value(shape, split, s)


def three_factor_gap(shape: Shape, split: Splitting, s: int) -> int:
    """``s (D + 1) - 1 - F`` on the family ``n = (m, m + a, 1)``, ``d = (1, 1, d)``.

    Requires ``e0 = (1, 0, d - e)`` and ``e1 = (0, 1, e)`` with ``1 <= e <= d - 1``.
    """
    n, d = shape.n, shape.d
    if shape.k != 3 or n[2] != 1 or n[1] < n[0] or d[:2] != (1, 1) or d[2] < 2:
        raise ShapeMismatchError(f"expected n=(m, m+a, 1), d=(1, 1, d>=2); got n={n}, d={d}")
    e = split.e1[2]
    if split.e0 != (1, 0, d[2] - e) or split.e1 != (0, 1, e) or not 1 <= e <= d[2] - 1:
        raise ShapeMismatchError(f"expected e0=(1,0,d-e), e1=(0,1,e); got {split.e0}, {split.e1}")
    return s * (dim_sum(shape) + 1) - 1 - F_value(shape, split, s)


@dataclass(frozen=True)
class ConditionReport:
    """Truth value and exact slack of each condition at one ``(shape, split, s)``.

    Slack conventions: ``ineq0_slack = s - max_i(...)`` (holds iff ``>= 0``);
    ``ineq1_deficit[i] = N(e_i) - s`` (must be ``> 0``) and
    ``ineq1_slack[i] = n[Lambda_i[0]] - deficit`` (must be ``>= 0``);
    ``ineq2_slack = D - E`` (must be ``> 0``); ``ineq3_slack = expected - F``
    (must be ``> 0``).
    """

    ineq0_holds: bool
    ineq0_slack: int
    ineq1_holds: tuple[bool, bool]
    ineq1_deficit: tuple[int, int]
    ineq1_slack: tuple[int, int]
    s_le_N_ei: tuple[bool, bool]
    ineq2_holds: bool
    ineq2_slack: int
    ineq3_holds: bool
    ineq3_slack: int
    ineq_new_holds: bool

    @property
    def ineq1_all(self) -> bool:
        return all(self.ineq1_holds)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ineq0": self.ineq0_holds,
            "ineq0_slack": self.ineq0_slack,
            "ineq1": list(self.ineq1_holds),
            "ineq1_deficit": list(self.ineq1_deficit),
            "ineq1_slack": list(self.ineq1_slack),
            "s_le_N_ei": list(self.s_le_N_ei),
            "ineq2": self.ineq2_holds,
            "ineq2_slack": self.ineq2_slack,
            "ineq3": self.ineq3_holds,
            "ineq3_slack": self.ineq3_slack,
            "ineq_new": self.ineq_new_holds,
        }


def check_conditions(shape: Shape, split: Splitting, s: int) -> ConditionReport:
    split.validate(shape)
    n = shape.n
    D = dim_sum(shape)
    N = dim_space(shape)
    n_e = [_n_e(shape, split, i) for i in (0, 1)]
    deficits = tuple(n_e[i] - s for i in (0, 1))
    supports = [split.support(i) for i in (0, 1)]

    worst = max(n_e[i] - sum(n[j] for j in supports[i]) + 1 for i in (0, 1))
    ineq1_slack = tuple(n[supports[i][0]] - deficits[i] for i in (0, 1))
    ineq1 = tuple(ineq1_slack[i] >= 0 and deficits[i] > 0 for i in (0, 1))
    E = D - sum(deficits)
    F = F_value(shape, split, s)
    expected = expected_dim(shape, s)
    return ConditionReport(
        ineq0_holds=worst <= s,
        ineq0_slack=s - worst,
        ineq1_holds=ineq1,
        ineq1_deficit=deficits,
        ineq1_slack=ineq1_slack,
        s_le_N_ei=tuple(s <= n_e[i] for i in (0, 1)),
        ineq2_holds=D > E,
        ineq2_slack=D - E,
        ineq3_holds=F < expected,
        ineq3_slack=expected - F,
        # s >= ceil(N / (D + 1)) without floats
        ineq_new_holds=s * (D + 1) >= N,
    )


@dataclass(frozen=True)
class Certificate:
    """A proven defective case.  ``defect_lb`` is a lower bound on the defect."""

    shape: Shape
    split: Splitting
    s: int
    F: int
    expected: int
    defect_lb: int
    report: ConditionReport
    path: str
    provenance: str = "search"

    def to_record(self) -> dict[str, Any]:
        conditions = self.report.to_dict()
        conditions["certified_by"] = self.path
        return {
            "n": list(self.shape.n),
            "d": list(self.shape.d),
            "e0": list(self.split.e0),
            "e1": list(self.split.e1),
            "s": self.s,
            "F": self.F,
            "expected": self.expected,
            "defect_lb": self.defect_lb,
            "conditions": conditions,
            "provenance": self.provenance,
        }


def certify(shape: Shape, split: Splitting, s: int, provenance: str = "search") -> Certificate | None:
    """Return a certificate iff ``ineq0``, ``ineq1`` and ``ineq3`` hold.

    When ``ineq-new`` also holds the certificate is tagged with that shortcut;
    ``ineq3`` is then a consequence and is checked rather than assumed.
    """
    report = check_conditions(shape, split, s)
    if not (report.ineq0_holds and report.ineq1_all):
        return None
    # ineq1 forces these two
    if not (report.ineq2_holds and all(report.s_le_N_ei)):
        raise AssertionError(f"ineq1 holds without ineq2/(new) at n={shape.n}, s={s}")
    if report.ineq_new_holds:
        if not report.ineq3_holds:
            raise AssertionError(f"ineq-new holds without ineq3 at n={shape.n}, s={s}")
        path = PATH_INEQ_NEW
    elif report.ineq3_holds:
        path = PATH_INEQ3
    else:
        return None
    F = F_value(shape, split, s)
    expected = expected_dim(shape, s)
    return Certificate(
        shape=shape,
        split=split,
        s=s,
        F=F,
        expected=expected,
        defect_lb=expected - F,
        report=report,
        path=path,
        provenance=provenance,
    )


def certificate_from_record(record: dict[str, Any]) -> Certificate:
    """Rebuild a certificate from :meth:`Certificate.to_record` output.

    The numbers are recomputed; a record whose stored values disagree with
    the recomputation raises ``ValueError``.
    """
    shape = Shape(tuple(record["n"]), tuple(record["d"]))
    split = Splitting.from_e0(shape, record["e0"])
    if list(split.e1) != list(record["e1"]):
        raise ValueError("e1 does not equal d - e0")
    cert = certify(shape, split, int(record["s"]), provenance=record.get("provenance", "search"))
    if cert is None:
        raise ValueError("record does not describe a certifiable case")
    if cert.to_record() != record:
        raise ValueError("record values disagree with recomputation")
    return cert
