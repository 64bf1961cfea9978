"""Bounds on the decay function and the multiple-access DMT condition.

* Rational approximation of tau: continued-fraction convergents sit between
  the effective Liouville constant and the pigeonhole bound 1.
* Empirical constants K_emp (lower side, N1*N2*D) and C_emp (upper side,
  N*D(N, 1)) from search records, and least-squares decay exponents.
* Exact rational evaluation of the DMT optimality condition
  ``2r + delta <= r_S(r)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Sequence

import numpy as np

from .decay_search import DecayRecord

__all__ = [
    "Convergent",
    "ExponentFit",
    "BoundsReport",
    "DmtQuery",
    "DmtResult",
    "tau_convergents",
    "approximation_quality",
    "liouville_effective_constant",
    "golden_limit_constant",
    "fit_exponent",
    "verify_bounds",
    "dmt_point_to_point",
    "dmt_rS",
    "dmt_optimality",
    "dmt_threshold",
    "parse_rational",
    "format_rational",
]

SQRT5 = math.sqrt(5.0)


# -- rational approximation of tau --------------------------------------------


def approximation_quality(h: int, k: int) -> float:
    """k * |k*tau - h|, evaluated without cancellation.

    k*tau - h = (s + k*sqrt5)/2 with s = k - 2h; when s < 0 rewrite as
    (5k^2 - s^2) / (2(k*sqrt5 - s)) so the large terms never subtract.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    s = k - 2 * h
    if s >= 0:
        resid = (s + k * SQRT5) / 2.0
    else:
        resid = (5 * k * k - s * s) / (2.0 * (k * SQRT5 - s))
    return k * abs(resid)


@dataclass(frozen=True)
class Convergent:
    h: int
    k: int
    quality: float


def tau_convergents(k_max: int) -> list[Convergent]:
    """Convergents h/k of tau = [1; 1, 1, ...] with k <= k_max, starting 2/1.

    The zeroth convergent 1/1 shares k = 1 with 2/1 and is the worse of the
    two, so it is left out.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    out = []
    h, k = 2, 1
    while k <= k_max:
        out.append(Convergent(h, k, approximation_quality(h, k)))
        h, k = h + k, h
    return out


def liouville_effective_constant() -> float:
    """C with |k*tau - h| > C/k for all integers h, k > 0.

    From x^2 - x - 1: |f(h/k)| >= 1/k^2, and when |tau - h/k| < 1 the other
    factor |h/k - tau'| is below 1 + (tau - tau') = 1 + sqrt5.
    """
    return 1.0 / (1.0 + SQRT5)


def golden_limit_constant() -> float:
    """lim k*|k*tau - h| along the convergents: 1/sqrt5."""
    return 1.0 / SQRT5


# -- exponent fitting ----------------------------------------------------------


@dataclass(frozen=True)
class ExponentFit:
    delta: float
    constant: float
    residual: float
    sample_count: int


def fit_exponent(records: Iterable[tuple[float, float]]) -> ExponentFit:
    """Least-squares line through (log N, log D); delta is minus the slope."""
    pts = [(float(n), float(d)) for n, d in records]
    if len(pts) < 2:
        raise ValueError("need at least two (N, D) points")
    if any(d <= 0 for _, d in pts):
        raise ValueError("decay values must be positive")
    if any(n <= 0 for n, _ in pts):
        raise ValueError("N must be positive")
    x = np.log([n for n, _ in pts])
    y = np.log([d for _, d in pts])
    if np.ptp(x) == 0:
        raise ValueError("need at least two distinct N")
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (slope * x + intercept)
    return ExponentFit(
        delta=float(-slope),
        constant=float(math.exp(intercept)),
        residual=float(np.sqrt(np.mean(resid**2))),
        sample_count=len(pts),
    )


# -- empirical constants -------------------------------------------------------


@dataclass
class BoundsReport:
    k_emp: float
    k_emp_box: tuple[int, int]
    c_emp: float | None
    c_emp_box: tuple[int, int] | None
    all_positive: bool
    fixed_second_fit: ExponentFit | None
    witness_products: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        fit = self.fixed_second_fit
        return {
            "k_emp": self.k_emp,
            "k_emp_box": list(self.k_emp_box),
            "c_emp": self.c_emp,
            "c_emp_box": list(self.c_emp_box) if self.c_emp_box else None,
            "all_positive": self.all_positive,
            "fixed_second_fit": None
            if fit is None
            else {
                "delta": fit.delta,
                "constant": fit.constant,
                "residual": fit.residual,
                "sample_count": fit.sample_count,
            },
            "witness_products": self.witness_products,
        }


def verify_bounds(
    records: Sequence[DecayRecord],
    witness_points: Sequence[tuple[int, int, float]] = (),
) -> BoundsReport:
    """Empirical constants for D(N1, N2) >= K/(N1*N2) and D(N, 1) <= C/N.

    ``witness_points`` are optional (N1, N2, |det|) upper-bound points from
    explicit codeword pairs; for each the product N1*N2*|det| is reported
    (it must stay bounded away from zero if the lower bound holds).
    """
    if not records:
        raise ValueError("need at least one record")
    all_positive = all(r.min_detsq.sign() > 0 for r in records)
    lower = [(r.n1 * r.n2 * r.decay_value, (r.n1, r.n2)) for r in records]
    k_emp, k_box = min(lower)
    fixed = sorted((r for r in records if r.n2 == 1), key=lambda r: r.n1)
    c_emp = c_box = None
    fit = None
    if fixed:
        c_emp, c_box = max((r.n1 * r.decay_value, (r.n1, r.n2)) for r in fixed)
        if len({r.n1 for r in fixed}) >= 2:
            fit = fit_exponent((r.n1, r.decay_value) for r in fixed)
    products = [
        {"n1": n1, "n2": n2, "abs_det": d, "n1n2_times_det": n1 * n2 * d}
        for n1, n2, d in witness_points
    ]
    return BoundsReport(k_emp, k_box, c_emp, c_box, all_positive, fit, products)


# -- DMT -----------------------------------------------------------------------


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dmt_point_to_point(p: int, q: int, x: Fraction | int | str) -> Fraction:
    """Optimal p x q DMT: linear between the corners (k, (p-k)(q-k))."""
    if p < 1 or q < 1:
        raise ValueError("antenna counts must be positive")
    x = parse_rational(x)
    kmax = min(p, q)
    if not 0 <= x <= kmax:
        raise ValueError(f"multiplexing gain {x} outside [0, {kmax}]")
    k = min(int(x), kmax - 1)
    lo = Fraction((p - k) * (q - k))
    hi = Fraction((p - k - 1) * (q - k - 1))
    return lo + (hi - lo) * (x - k)


def dmt_rS(r: Fraction | int | str) -> Fraction:
    """(2 + 2r)/3 on [0, 1/2], 2r on [1/2, 1]."""
    r = parse_rational(r)
    if not 0 <= r <= 1:
        raise ValueError(f"r = {r} outside [0, 1]")
    if r <= Fraction(1, 2):
        return (2 + 2 * r) / 3
    return 2 * r


@dataclass(frozen=True)
class DmtQuery:
    """``theoretical_2r`` uses delta = 2r; ``empirical`` uses decay_exponent * r."""

    r: Fraction
    delta_mode: Literal["theoretical_2r", "empirical"] = "theoretical_2r"
    decay_exponent: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "r", parse_rational(self.r))
        if not 0 <= self.r <= 1:
            raise ValueError(f"r = {self.r} outside [0, 1]")
        if self.delta_mode not in ("theoretical_2r", "empirical"):
            raise ValueError(f"unknown delta_mode {self.delta_mode!r}")
        if self.delta_mode == "empirical":
            if self.decay_exponent is None:
                raise ValueError("empirical mode needs decay_exponent")
            object.__setattr__(self, "decay_exponent", _as_fraction(self.decay_exponent))

    @property
    def delta(self) -> Fraction:
        # D(N) ~ N^-e with N = SNR^(r/2) gives |D|^2 ~ SNR^(-e*r)
        e = Fraction(2) if self.delta_mode == "theoretical_2r" else self.decay_exponent
        return e * self.r


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return parse_rational(x)


@dataclass(frozen=True)
class DmtResult:
    r: Fraction
    delta: Fraction
    lhs: Fraction
    rhs: Fraction
    satisfied: bool

    def to_dict(self) -> dict:
        return {
            "r": format_rational(self.r),
            "r_float": float(self.r),
            "delta": format_rational(self.delta),
            "delta_float": float(self.delta),
            "lhs": format_rational(self.lhs),
            "lhs_float": float(self.lhs),
            "rhs": format_rational(self.rhs),
            "rhs_float": float(self.rhs),
            "satisfied": self.satisfied,
        }

    def __str__(self) -> str:
        op = "≤" if self.satisfied else ">"
        verdict = "optimal" if self.satisfied else "condition violated"
        return f"{format_rational(self.lhs)} {op} {format_rational(self.rhs)} : {verdict}"


def dmt_optimality(q: DmtQuery) -> DmtResult:
    lhs = 2 * q.r + q.delta
    rhs = dmt_rS(q.r)
    return DmtResult(q.r, q.delta, lhs, rhs, lhs <= rhs)


def dmt_threshold(decay_exponent: Fraction | int | str = 2) -> Fraction:
    """Largest r in [0, 1] with (2 + e) r <= r_S(r), for delta = e*r, e >= 0.

    First piece: (2 + e) r <= (2 + 2r)/3  <=>  r <= 2/(4 + 3e), always
    below 1/2 when e > 0.  Second piece: (2 + e) r <= 2r only for e = 0.
    """
    e = _as_fraction(decay_exponent)
    if e < 0:
        raise ValueError("decay exponent must be nonnegative")
    if e == 0:
        return Fraction(1)
    return Fraction(2) / (4 + 3 * e)
