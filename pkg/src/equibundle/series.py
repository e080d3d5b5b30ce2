"""Truncated formal power series in s = t - 1 with exact coefficients.

Every signature integrand, multiplied by (t-1)^2 to clear its pole,
expands here.  The factor t^a - 1 is handled as s * u_a where u_a is a
unit with constant term a, so each expansion is a product of binomial
series and unit inverses; no closed-form coefficient tables are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ._poly import cleared, convolve
from .cyclotomic import ZeroRotation

__all__ = [
    "PowerSeries",
    "NotAUnit",
    "series_add",
    "series_sub",
    "series_mul",
    "series_scale",
    "series_invert_unit",
    "expand_binomial_power",
    "expand_point_term",
    "expand_sphere_term",
    "expand_boundary_term",
    "expand_su2_point_term",
    "expand_su2_sphere_term",
]


class NotAUnit(ArithmeticError):
    """Inversion requested for a series with zero constant term."""


@dataclass(frozen=True)
class PowerSeries:
    """Sum of coeffs[k] * s^k, exact through s^order."""

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"truncation order must be >= 0, got {self.order}")
        cs = [Fraction(c) for c in self.coeffs[: self.order + 1]]
        cs.extend([Fraction(0)] * (self.order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))

    def coeff(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return series_add(self, other)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return series_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> "PowerSeries":
        return series_scale(self, -1)

    def __str__(self) -> str:
        parts = [f"{c}*s^{k}" for k, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(s^{self.order + 1})"


def zero_series(order: int) -> PowerSeries:
    return PowerSeries((), order)


def const_series(q, order: int) -> PowerSeries:
    return PowerSeries((Fraction(q),), order)


def series_add(x: PowerSeries, y: PowerSeries) -> PowerSeries:
    n = min(x.order, y.order)
    return PowerSeries(tuple(x.coeffs[k] + y.coeffs[k] for k in range(n + 1)), n)


def series_sub(x: PowerSeries, y: PowerSeries) -> PowerSeries:
    n = min(x.order, y.order)
    return PowerSeries(tuple(x.coeffs[k] - y.coeffs[k] for k in range(n + 1)), n)


def series_scale(x: PowerSeries, q) -> PowerSeries:
    q = Fraction(q)
    return PowerSeries(tuple(c * q for c in x.coeffs), x.order)


def series_mul(x: PowerSeries, y: PowerSeries) -> PowerSeries:
    n = min(x.order, y.order)
    ax, da = cleared(x.coeffs)
    bx, db = cleared(y.coeffs)
    raw = convolve(ax, bx, upto=n)
    den = da * db
    out = [Fraction(v, den) for v in raw]
    return PowerSeries(tuple(out), n)


def series_invert_unit(x: PowerSeries) -> PowerSeries:
    """Inverse of a unit series: x * result = 1 + O(s^(order+1)).

    Runs the standard recurrence on a denominator-cleared copy; with
    B_k = b_k * a0^(k+1) every intermediate is an integer.
    """
    if x.coeffs[0] == 0:
        raise NotAUnit("constant term is zero")
    n = x.order
    ax, d = cleared(x.coeffs)
    a0 = ax[0]
    big = [1]
    for k in range(1, n + 1):
        acc = 0
        pw = 1  # a0^(j-1)
        for j in range(1, k + 1):
            aj = ax[j] if j < len(ax) else 0
            if aj:
                acc += aj * big[k - j] * pw
            pw *= a0
        big.append(-acc)
    out = []
    pw = a0
    for k in range(n + 1):
        out.append(Fraction(d * big[k], pw))
        pw *= a0
    return PowerSeries(tuple(out), n)


def _shift(x: PowerSeries, k: int) -> PowerSeries:
    """Multiply by s^k, truncating at the original order."""
    return PowerSeries((Fraction(0),) * k + x.coeffs[: x.order + 1 - k], x.order)


def _plus_const(x: PowerSeries, q) -> PowerSeries:
    cs = list(x.coeffs)
    cs[0] += Fraction(q)
    return PowerSeries(tuple(cs), x.order)


def expand_binomial_power(exponent: int, order: int) -> PowerSeries:
    """(1 + s)^exponent; negative exponents invert the positive power."""
    if exponent < 0:
        return series_invert_unit(expand_binomial_power(-exponent, order))
    return PowerSeries(tuple(Fraction(comb(exponent, k)) for k in range(order + 1)), order)


def _unit_factor(a: int, order: int) -> PowerSeries:
    """u_a with t^a - 1 = s * u_a; coefficients are C(a, k+1).

    The generalized binomial recurrence keeps exact integer values for
    negative a as well.  u_0 is the zero series.
    """
    c = Fraction(a)
    out = [c]
    for k in range(2, order + 2):
        c = c * (a - k + 1) / k
        out.append(c)
    return PowerSeries(tuple(out), order)


def expand_point_term(a: int, b: int, lam: int, order: int) -> PowerSeries:
    """(t^a+1)(t^b+1) / ((t^a-1)(t^b-1)) * (t-1)^2 * t^lam.

    The two s factors cancel the pole, so the result is a genuine
    series; its constant term is 4/(a*b).
    """
    if a == 0 or b == 0:
        raise ZeroRotation(f"rotation numbers ({a}, {b}) must be nonzero")
    num = series_mul(
        series_add(expand_binomial_power(a + lam, order), expand_binomial_power(lam, order)),
        _plus_const(expand_binomial_power(b, order), 1),
    )
    invs = series_mul(
        series_invert_unit(_unit_factor(a, order)),
        series_invert_unit(_unit_factor(b, order)),
    )
    return series_mul(num, invs)


def expand_sphere_term(c: int, alpha: int, lam: int, order: int) -> PowerSeries:
    """-4*alpha*t^c / (t^c-1)^2 * (t-1)^2 * t^lam; constant -4*alpha/c^2."""
    if c == 0:
        raise ZeroRotation("normal rotation must be nonzero")
    if alpha == 0:
        return zero_series(order)
    inv = series_invert_unit(_unit_factor(c, order))
    core = series_mul(expand_binomial_power(c + lam, order), series_mul(inv, inv))
    return series_scale(core, -4 * alpha)


def expand_boundary_term(c: int, m: int, lam: int, order: int) -> PowerSeries:
    """2m(t^c+1)/(t^c-1) * (t-1)^2 * t^lam.

    One s factor survives, so the constant term is always zero and the
    s^1 coefficient is 4m/c.
    """
    if c == 0:
        raise ZeroRotation("normal rotation must be nonzero")
    if m == 0:
        return zero_series(order)
    inv = series_invert_unit(_unit_factor(c, order))
    inner = series_mul(
        _plus_const(expand_binomial_power(c, order), 1),
        series_mul(expand_binomial_power(lam, order), inv),
    )
    return _shift(series_scale(inner, 2 * m), 1)


def expand_su2_point_term(a: int, b: int, ell: int, order: int) -> PowerSeries:
    """Point term times the rank-two character t^ell + t^(-ell)."""
    if a == 0 or b == 0:
        raise ZeroRotation(f"rotation numbers ({a}, {b}) must be nonzero")
    wts = series_add(expand_binomial_power(ell, order), expand_binomial_power(-ell, order))
    num = series_mul(
        _plus_const(expand_binomial_power(a, order), 1),
        _plus_const(expand_binomial_power(b, order), 1),
    )
    invs = series_mul(
        series_invert_unit(_unit_factor(a, order)),
        series_invert_unit(_unit_factor(b, order)),
    )
    return series_mul(series_mul(num, wts), invs)


def expand_su2_sphere_term(c: int, alpha: int, m: int, ell: int, order: int) -> PowerSeries:
    """Sphere contribution for a rank-two bundle:

        [-4*alpha*t^c/(t^c-1)^2 * (t^ell + t^-ell)
         + 2m*(t^c+1)/(t^c-1) * (t^ell - t^-ell)] * (t-1)^2.

    The m part carries t^ell - t^-ell = s*(u_ell - u_-ell), so it only
    enters at s^2 and beyond.
    """
    if c == 0:
        raise ZeroRotation("normal rotation must be nonzero")
    total = zero_series(order)
    inv = series_invert_unit(_unit_factor(c, order))
    if alpha:
        wts = series_add(
            expand_binomial_power(c + ell, order), expand_binomial_power(c - ell, order)
        )
        total = series_add(total, series_scale(series_mul(wts, series_mul(inv, inv)), -4 * alpha))
    if m and ell:
        diff = series_sub(_unit_factor(ell, order), _unit_factor(-ell, order))
        inner = series_mul(
            _plus_const(expand_binomial_power(c, order), 1), series_mul(diff, inv)
        )
        total = series_add(total, _shift(series_scale(inner, 2 * m), 2))
    return total
