"""Rho invariants of lens spaces and equivariant instanton dimensions.

All rho values are computed twice: exactly, as a Galois-stable
cyclotomic sum collapsing to a rational, and in floating point from
the trigonometric form of the same sum.  A disagreement beyond 1e-9
is a hard error, not a warning; it would mean the exact encodings
drifted from the analytic definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .action_model import GroupAction, Su2Isotropy, validate
from .congruence import gsign_value
from .cyclotomic import (
    eval_point_term,
    eval_sphere_term,
    galois_sum,
    sin2_term,
    sin_cot_term,
)
from .exact_arith import Rational

__all__ = [
    "FloatMismatch",
    "NonIntegerDimension",
    "HasSpheres",
    "NotInvolution",
    "ParityError",
    "RhoValue",
    "DimensionReport",
    "rho_lens",
    "rho_surface",
    "defect_terms",
    "quotient_invariants",
    "dim_nonequivariant",
    "dim_invariant_moduli",
    "dim_isolated_only",
    "dim_involution",
]

_FLOAT_TOL = 1e-9


class FloatMismatch(ArithmeticError):
    """Exact and floating point evaluations of a rho sum disagree."""


class NonIntegerDimension(ArithmeticError):
    """The dimension formula did not sum to an integer.

    Carries the offending total and the term breakdown so callers can
    report which contribution is inconsistent.
    """

    def __init__(self, total: Fraction, terms: tuple):
        super().__init__(f"dimension formula gave non-integer value {total}")
        self.total = total
        self.terms = terms


class HasSpheres(ValueError):
    """The isolated-points-only entry point got an action with spheres."""


class NotInvolution(ValueError):
    """dim_involution needs p = 2."""


class ParityError(ValueError):
    """chi + sign must be even for the index formula."""


@dataclass(frozen=True)
class RhoValue:
    """Exact rho invariant with its mandatory floating point witness."""

    exact: Rational
    float_check: float

    def __post_init__(self):
        if abs(float(self.exact) - self.float_check) >= _FLOAT_TOL:
            raise FloatMismatch(
                f"exact value {self.exact} vs float {self.float_check!r}"
            )

    def __str__(self) -> str:
        return str(self.exact)


def rho_lens(p: int, a: int, b: int, ell: int) -> RhoValue:
    """Rho invariant of the flat SU(2) character t^ell + t^(-ell) on
    the lens space L(p; a, b):

        (2/p) * sum_{k=1}^{p-1} cot(pi a k / p) cot(pi b k / p)
                                * sin^2(pi k ell / p)

    computed exactly through the cyclotomic encodings of cot and sin^2.
    Depends only on the residues of a, b, ell; vanishes at ell = 0.
    """
    if ell % p == 0:
        return RhoValue(Fraction(0), 0.0)
    exact = Fraction(2, p) * galois_sum(
        p,
        lambda k: -(eval_point_term(p, k, a, b) * sin2_term(p, k * ell)),
    )
    approx = (2.0 / p) * sum(
        (math.cos(math.pi * a * k / p) / math.sin(math.pi * a * k / p))
        * (math.cos(math.pi * b * k / p) / math.sin(math.pi * b * k / p))
        * math.sin(math.pi * k * ell / p) ** 2
        for k in range(1, p)
    )
    return RhoValue(exact, approx)


def rho_surface(p: int, c: int, ell: int, alpha: int, m: int) -> RhoValue:
    """Rho contribution of a fixed surface of self-intersection alpha,
    normal weight c, fiber weight ell and twisting degree m:

        (2 alpha / p) * sum_k csc^2(pi c k / p) sin^2(pi k ell / p)
      - (4 m / p)     * sum_k sin(2 pi k ell / p) cot(pi c k / p)

    with both sums exact; everything vanishes when ell = 0.
    """
    if ell % p == 0:
        return RhoValue(Fraction(0), 0.0)
    part1 = (
        Fraction(2, p)
        * galois_sum(p, lambda k: eval_sphere_term(p, k, c, alpha) * sin2_term(p, k * ell))
        if alpha
        else Fraction(0)
    )
    part2 = (
        Fraction(-4 * m, p)
        * galois_sum(p, lambda k: sin_cot_term(p, k * ell, k * c))
        if m
        else Fraction(0)
    )
    exact = part1 + part2
    approx1 = (
        (2.0 * alpha / p)
        * sum(
            math.sin(math.pi * k * ell / p) ** 2 / math.sin(math.pi * c * k / p) ** 2
            for k in range(1, p)
        )
        if alpha
        else 0.0
    )
    approx2 = (
        (-4.0 * m / p)
        * sum(
            math.sin(2 * math.pi * k * ell / p)
            * math.cos(math.pi * c * k / p)
            / math.sin(math.pi * c * k / p)
            for k in range(1, p)
        )
        if m
        else 0.0
    )
    return RhoValue(exact, approx1 + approx2)


def defect_terms(action: GroupAction) -> tuple[Rational, Rational]:
    """Euler and signature defects of the action: the amounts by which
    fixed point data corrects chi and sign when passing to the quotient.

    d_chi = (p-1) * (|points| + 2 |spheres|); d_sign sums the
    equivariant signatures of the nontrivial powers.
    """
    n = len(action.points)
    s = len(action.spheres)
    d_chi = Fraction((action.p - 1) * (n + 2 * s))
    d_sign = Fraction(0)
    for k in range(1, action.p):
        d_sign += gsign_value(action, k)
    return d_chi, d_sign


def quotient_invariants(action: GroupAction) -> tuple[Rational, Rational]:
    """(chi, sign) of the quotient space X/G as exact rationals:
    chi(X/G) = (chi(X) + d_chi)/p, sign(X/G) = (sign(X) + d_sign)/p."""
    d_chi, d_sign = defect_terms(action)
    chi_q = Fraction(action.euler + d_chi, action.p)
    sign_q = Fraction(action.signature + d_sign, action.p)
    return chi_q, sign_q


def dim_nonequivariant(k: int, chi: int, sign: int) -> int:
    """Dimension 8k - (3/2)(chi + sign) of the charge-k instanton
    moduli space on a simply connected closed four-manifold."""
    if (chi + sign) % 2 != 0:
        raise ParityError(f"chi + sign = {chi + sign} is odd")
    return 8 * k - 3 * (chi + sign) // 2


@dataclass(frozen=True)
class DimensionReport:
    """Integer dimension with its exact term-by-term breakdown."""

    dimension: int
    terms: tuple[tuple[str, Rational], ...]
    chi_quot: Rational
    sign_quot: Rational

    def display(self) -> str:
        lines = [f"  {name:28s} {value}" for name, value in self.terms]
        lines.append(f"  {'dimension':28s} {self.dimension}")
        return "\n".join(lines)


def dim_invariant_moduli(action: GroupAction, isotropy: Su2Isotropy, k: int) -> DimensionReport:
    """Dimension of the invariant part of the charge-k moduli space
    for the equivariant lift described by the (adjoint) isotropy data:

        8k/p - (3/2)(chi + sign)(X/G) + m - sum rho_lens
             + sum_{ell_j != 0} 2 + sum rho_surface

    where m counts fixed points with nontrivial fiber rotation.  The
    ell entries here are adjoint weights; they are folded into the
    canonical range before evaluation, which leaves every rho term
    unchanged.
    """
    report = validate(action)
    if not report.ok:
        raise ValueError("invalid action: " + "; ".join(report.failures()))
    isotropy.check_shape(action)
    p = action.p
    iso = isotropy.canonical(p)
    chi_q, sign_q = quotient_invariants(action)
    t_inst = Fraction(8 * k, p)
    t_quot = Fraction(-3, 2) * (chi_q + sign_q)
    m_count = sum(1 for e in iso.ell_points if e % p != 0)
    rho_l = Fraction(0)
    for pt, e in zip(action.points, iso.ell_points):
        rho_l += rho_lens(p, pt.a, pt.b, e).exact
    sphere_euler = 0
    rho_s = Fraction(0)
    for s, e, mm in zip(action.spheres, iso.ell_spheres, iso.m_spheres):
        if e % p != 0:
            sphere_euler += 2
        rho_s += rho_surface(p, s.c, e, s.alpha, mm).exact
    total = t_inst + t_quot + m_count - rho_l + sphere_euler + rho_s
    terms = (
        ("instanton_8k/p", t_inst),
        ("quotient_index", t_quot),
        ("rotated_point_count", Fraction(m_count)),
        ("minus_lens_rho_sum", -rho_l),
        ("sphere_euler_sum", Fraction(sphere_euler)),
        ("sphere_rho_sum", rho_s),
    )
    if total.denominator != 1:
        raise NonIntegerDimension(total, terms)
    return DimensionReport(int(total), terms, chi_q, sign_q)


def dim_isolated_only(action: GroupAction, isotropy: Su2Isotropy, k: int) -> DimensionReport:
    """Same as dim_invariant_moduli but only for actions whose fixed
    set is a finite set of points."""
    if action.spheres:
        raise HasSpheres(f"action has {len(action.spheres)} fixed spheres")
    return dim_invariant_moduli(action, isotropy, k)


def dim_involution(action: GroupAction, k: int) -> DimensionReport:
    """Invariant dimension for an involution with the standard odd
    lift on every fixed component.  Closed form:

        4k - (3/2)(chi + sign)(X/G) + |points| + sum_j (2 + alpha_j)

    cross-checked against the general formula with all weights 1.
    """
    if action.p != 2:
        raise NotInvolution(f"p = {action.p} is not an involution")
    iso = Su2Isotropy(
        (1,) * len(action.points),
        (1,) * len(action.spheres),
        (0,) * len(action.spheres),
        c2=k,
    )
    report = dim_invariant_moduli(action, iso, k)
    closed = (
        Fraction(4 * k)
        - Fraction(3, 2) * (report.chi_quot + report.sign_quot)
        + len(action.points)
        + sum(2 + s.alpha for s in action.spheres)
    )
    if closed != report.dimension:
        raise ArithmeticError(
            f"closed form {closed} disagrees with general formula {report.dimension}"
        )
    return report
