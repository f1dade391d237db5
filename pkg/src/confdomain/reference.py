"""The worked n = 3, gamma = 0.95 constants, recomputed next to their published digits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal

from .confidence import alpha_point_reconciliation_c, chi2_tail_points, eta_log_sigma


@dataclass(frozen=True)
class Row:
    ref: str
    quantity: str
    computed: float
    published: str | None = None
    note: str | None = None

    @property
    def delta(self) -> float | None:
        if self.published is None:
            return None
        return self.computed - float(self.published)

    @property
    def agrees(self) -> bool | None:
        """Match to within one unit of the last published digit.

        Published digits are sometimes truncated rather than rounded, so a
        half-unit window would be too strict.
        """
        if self.published is None:
            return None
        unit = float(Decimal(1).scaleb(Decimal(self.published).as_tuple().exponent))
        return abs(self.delta) <= unit

    def as_dict(self) -> dict:
        return {
            "ref": self.ref,
            "quantity": self.quantity,
            "computed": self.computed,
            "published": None if self.published is None else float(self.published),
            "delta": self.delta,
            "agrees": self.agrees,
            "note": self.note,
        }


def reproduce_table(n: int = 3, gamma: float = 0.95) -> list[Row]:
    """Recompute every constant of the worked variance example.

    The published digits only apply at n = 3, gamma = 0.95; other settings
    return the computed column alone.
    """
    worked = n == 3 and gamma == 0.95

    def pub(text):
        return text if worked else None

    eta = eta_log_sigma(gamma, n, n).eta
    eta_u = eta_log_sigma(gamma, n, n - 1).eta
    chi_lo, chi_hi = chi2_tail_points(gamma, n)
    c = alpha_point_reconciliation_c(gamma, n)
    unbiased_lo = math.exp(-2 * eta_u) / (n - 1)
    return [
        Row("41", "exp(-eta)", math.exp(-eta), pub("0.1849")),
        Row("41", "exp(eta)", math.exp(eta), pub("5.4077")),
        Row("42", "mle band lo coefficient exp(-2 eta)/n", math.exp(-2 * eta) / n, pub("0.0114")),
        Row("42", "mle band hi coefficient exp(2 eta)/n", math.exp(2 * eta) / n, pub("9.748")),
        Row("48", "exp(-eta')", math.exp(-eta_u), pub("0.2265")),
        Row("48", "exp(eta')", math.exp(eta_u), pub("4.4154")),
        Row(
            "49",
            "unbiased band lo coefficient exp(-2 eta')/(n-1)",
            unbiased_lo,
            pub("0.00256"),
            note=(
                "published 0.00256 is inconsistent with exp(-eta') = 0.2265 one row up: "
                f"0.2265**2/2 = 0.02565; computed {unbiased_lo:.5f}"
            )
            if worked
            else None,
        ),
        Row(
            "49",
            "unbiased band hi coefficient exp(2 eta')/(n-1)",
            math.exp(2 * eta_u) / (n - 1),
            pub("9.748"),
        ),
        Row("54", "chi2 lower tail point", chi_lo, pub("0.0506")),
        Row("54", "chi2 upper tail point", chi_hi, pub("7.378")),
        Row("55", "alpha-point lo coefficient 1/chi2_upper", 1 / chi_hi, pub("0.1355")),
        Row(
            "55",
            "alpha-point hi coefficient 1/chi2_lower",
            1 / chi_lo,
            pub("19.763"),
            note=(
                "published 19.763 equals 1/0.0506, the reciprocal of the rounded tail point; "
                f"the unrounded point gives {1 / chi_lo:.4f}"
            )
            if worked
            else None,
        ),
        Row("100", "reconciling scale c = sqrt(chi2_lower chi2_upper)/n", c),
    ]
