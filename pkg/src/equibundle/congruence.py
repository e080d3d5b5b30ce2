"""Congruence checks and solvers for rotation data and bundle isotropy.

Everything here is modular arithmetic over Z/p driven by two engines:
exact cyclotomic evaluation of the fixed-point signature sum, and a
GF(p) copy of the Taylor expansion machinery.  The GF(p) expansions
are legitimate because every expansion coefficient has denominator a
product of powers of rotation numbers, which are units mod p; tests
cross-check them against the exact rational series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .action_model import (
    FixedSphere,
    GroupAction,
    IsolatedPoint,
    LineIsotropy,
    Su2Isotropy,
    validate,
)
from .cyclotomic import eval_point_term, eval_sphere_term, from_rational
from .exact_arith import Rational, Residue, crt_solve, is_prime, signed_rep

__all__ = [
    "CongruenceReport",
    "RelationRecord",
    "NotSolvable",
    "Underdetermined",
    "Overdetermined",
    "MissingChernSquare",
    "InconsistentCounts",
    "ZeroSelfIntersection",
    "gsign_value",
    "gsignature_check",
    "check_rotation_relations",
    "theorem_a_condition",
    "solve_theorem_a",
    "check_line_bundle",
    "check_su2",
    "linking_form",
    "flat_chern_class",
    "boundary_chern_data",
    "search_realizable",
]


class NotSolvable(ArithmeticError):
    """The single free unknown has zero coefficient and nonzero residual."""


class Underdetermined(ValueError):
    """More free slots than the operation can handle."""


class Overdetermined(ValueError):
    """A solve was requested but no slot is free."""


class MissingChernSquare(ValueError):
    """The quadratic relation needs c1_squared in the isotropy record."""


class InconsistentCounts(ValueError):
    """Search profile violating the fixed point count constraint."""


class ZeroSelfIntersection(ValueError):
    """Boundary Chern data needs alpha != 0."""


class NotCoprimeRotation(ValueError):
    """A residue that must be coprime to the modulus is not."""


@dataclass(frozen=True)
class RelationRecord:
    name: str
    lhs: object
    required: object
    passed: bool

    def display(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}: {self.lhs} == {self.required}  [{verdict}]"


@dataclass(frozen=True)
class CongruenceReport:
    records: tuple[RelationRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[RelationRecord]:
        return [r for r in self.records if not r.passed]

    def display(self) -> str:
        return "\n".join(r.display() for r in self.records)


def _require_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError(f"congruence checks need an odd prime, got p = {p}")


# -- exact signature sums ------------------------------------------------


def gsign_value(action: GroupAction, k: int) -> Rational:
    """Exact equivariant signature of the k-th group element power,
    summed from fixed point data.  Always rational."""
    total = from_rational(action.p, 0)
    for pt in action.points:
        total = total + eval_point_term(action.p, k, pt.a, pt.b)
    for s in action.spheres:
        total = total + eval_sphere_term(action.p, k, s.c, s.alpha)
    return total.rational_part()


def gsignature_check(action: GroupAction) -> CongruenceReport:
    """For a homologically trivial action every equivariant signature
    equals the ordinary signature; verify this exactly for each power."""
    _require_odd_prime(action.p)
    want = Fraction(action.signature)
    records = []
    for k in range(1, action.p):
        got = gsign_value(action, k)
        records.append(RelationRecord(f"signature_power_{k}", got, want, got == want))
    return CongruenceReport(tuple(records))


# -- GF(p) expansion engine ------------------------------------------------
# Series live as int lists of fixed length order+1 with entries in [0, p).


def _gf_inv(p: int, x: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError(f"0 is not invertible mod {p}")
    return pow(x, p - 2, p)


def _gf_mul(p: int, a: list[int], b: list[int]) -> list[int]:
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j in range(n - i):
                if b[j]:
                    out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def _gf_invert(p: int, a: list[int]) -> list[int]:
    b0 = _gf_inv(p, a[0])
    out = [b0]
    for k in range(1, len(a)):
        acc = 0
        for j in range(1, k + 1):
            if a[j]:
                acc += a[j] * out[k - j]
        out.append((-b0 * acc) % p)
    return out


def _gf_binpow(p: int, e: int, n: int) -> list[int]:
    """(1+s)^e mod p through s^n; needs n <= p-2 so k stays invertible."""
    if e < 0:
        return _gf_invert(p, _gf_binpow(p, -e, n))
    out = [1]
    c = 1
    for k in range(1, n + 1):
        c = c * ((e - k + 1) % p) % p * _gf_inv(p, k) % p
        out.append(c)
    return out


def _gf_unit(p: int, a: int, n: int) -> list[int]:
    """(t^a - 1)/s mod p: coefficients C(a, k+1) for k = 0..n."""
    out = []
    c = 1
    for k in range(1, n + 2):
        c = c * ((a - k + 1) % p) % p * _gf_inv(p, k) % p
        out.append(c)
    return out


def _gf_add(p: int, a: list[int], b: list[int]) -> list[int]:
    return [(x + y) % p for x, y in zip(a, b)]


def _gf_scale(p: int, a: list[int], q: int) -> list[int]:
    q %= p
    return [x * q % p for x in a]


def _gf_shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a[: len(a) - k]


def _gf_plus_one(p: int, a: list[int]) -> list[int]:
    out = list(a)
    out[0] = (out[0] + 1) % p
    return out


def _gf_point(p: int, a: int, b: int, lam: int, n: int) -> list[int]:
    num = _gf_mul(
        p,
        _gf_add(p, _gf_binpow(p, a + lam, n), _gf_binpow(p, lam, n)),
        _gf_plus_one(p, _gf_binpow(p, b, n)),
    )
    invs = _gf_mul(p, _gf_invert(p, _gf_unit(p, a, n)), _gf_invert(p, _gf_unit(p, b, n)))
    return _gf_mul(p, num, invs)


def _gf_sphere(p: int, c: int, alpha: int, lam: int, n: int) -> list[int]:
    inv = _gf_invert(p, _gf_unit(p, c, n))
    core = _gf_mul(p, _gf_binpow(p, c + lam, n), _gf_mul(p, inv, inv))
    return _gf_scale(p, core, -4 * alpha)


def _gf_boundary(p: int, c: int, m: int, lam: int, n: int) -> list[int]:
    inv = _gf_invert(p, _gf_unit(p, c, n))
    inner = _gf_mul(
        p, _gf_plus_one(p, _gf_binpow(p, c, n)), _gf_mul(p, _gf_binpow(p, lam, n), inv)
    )
    return _gf_shift(_gf_scale(p, inner, 2 * m), 1)


def _gf_su2_point(p: int, a: int, b: int, ell: int, n: int) -> list[int]:
    wts = _gf_add(p, _gf_binpow(p, ell, n), _gf_binpow(p, -ell, n))
    num = _gf_mul(p, _gf_plus_one(p, _gf_binpow(p, a, n)), _gf_plus_one(p, _gf_binpow(p, b, n)))
    invs = _gf_mul(p, _gf_invert(p, _gf_unit(p, a, n)), _gf_invert(p, _gf_unit(p, b, n)))
    return _gf_mul(p, _gf_mul(p, num, wts), invs)


def _gf_su2_sphere(p: int, c: int, alpha: int, m: int, ell: int, n: int) -> list[int]:
    inv = _gf_invert(p, _gf_unit(p, c, n))
    total = [0] * (n + 1)
    if alpha % p:
        wts = _gf_add(p, _gf_binpow(p, c + ell, n), _gf_binpow(p, c - ell, n))
        total = _gf_add(p, total, _gf_scale(p, _gf_mul(p, wts, _gf_mul(p, inv, inv)), -4 * alpha))
    if m % p and ell % p:
        diff = [(x - y) % p for x, y in zip(_gf_unit(p, ell, n), _gf_unit(p, -ell, n))]
        inner = _gf_mul(p, _gf_plus_one(p, _gf_binpow(p, c, n)), _gf_mul(p, diff, inv))
        total = _gf_add(p, total, _gf_shift(_gf_scale(p, inner, 2 * m), 2))
    return total


def _series_records(
    p: int, total: list[int], required: list[int], prefix: str
) -> list[RelationRecord]:
    out = []
    for k, (lhs, req) in enumerate(zip(total, required)):
        out.append(RelationRecord(f"{prefix}_order_{k}", lhs, req, lhs == req))
    return out


# -- rotation data congruences ---------------------------------------------


def _relation_residues(action: GroupAction) -> list[int]:
    p = action.p
    r = [0, 0, 0, 0]
    for pt in action.points:
        a, b = pt.a, pt.b
        iv = _gf_inv(p, a * b)
        a2, b2 = a * a, b * b
        r[0] += iv
        r[1] += (a2 + b2) * iv
        r[2] += (a2 * a2 + b2 * b2 - 5 * a2 * b2) * iv
        r[3] += (2 * a2**3 - 7 * a2**2 * b2 - 7 * a2 * b2**2 + 2 * b2**3) * iv
    for s in action.spheres:
        c2 = s.c * s.c
        ivc2 = _gf_inv(p, c2)
        r[0] -= s.alpha * ivc2
        r[1] += s.alpha
        r[2] += 3 * s.alpha * c2
        r[3] += 10 * s.alpha * c2 * c2
    return [x % p for x in r]


def check_rotation_relations(action: GroupAction) -> CongruenceReport:
    """The four classical rotation-number congruences plus the full
    generic expansion check through order p-2.

    The expansion of the summed signature integrand times (t-1)^2 must
    reduce, mod p, to Sign(X) * s^2 and nothing else through s^(p-2):
    (t-1)^(p-1) is congruent to Phi_p(t) mod p, so higher terms are
    invisible to the congruence.
    """
    p = action.p
    _require_odd_prime(p)
    rel = _relation_residues(action)
    req = [0, 3 * action.signature % p, 0, 0]
    records = [
        RelationRecord(f"relation_{i + 1}", rel[i], req[i], rel[i] == req[i]) for i in range(4)
    ]
    n = p - 2
    total = [0] * (n + 1)
    for pt in action.points:
        total = _gf_add(p, total, _gf_point(p, pt.a, pt.b, 0, n))
    for s in action.spheres:
        total = _gf_add(p, total, _gf_sphere(p, s.c, s.alpha, 0, n))
    required = [0] * (n + 1)
    if n >= 2:
        required[2] = action.signature % p
    records += _series_records(p, total, required, "series")
    return CongruenceReport(tuple(records))


# -- circle bundle relations -------------------------------------------------


def _line_lhs(action: GroupAction, iso: LineIsotropy) -> int:
    p = action.p
    lhs = 0
    for pt, lam in zip(action.points, iso.lambda_points):
        lhs += lam * _gf_inv(p, pt.a * pt.b)
    for s, lam, m in zip(action.spheres, iso.lambda_spheres, iso.m_spheres):
        lhs += (s.c * m - lam * s.alpha) * _gf_inv(p, s.c * s.c)
    return lhs % p


def theorem_a_condition(action: GroupAction, isotropy: LineIsotropy) -> CongruenceReport:
    """The single realizability congruence for fiber weights on a
    circle bundle: sum of lambda/(ab) over points plus
    (c*m - lambda*alpha)/c^2 over spheres vanishes mod p."""
    _require_odd_prime(action.p)
    isotropy.check_shape(action)
    if isotropy.free_slots():
        raise Underdetermined("condition check needs a fully specified isotropy record")
    lhs = _line_lhs(action, isotropy)
    rec = RelationRecord("fiber_weight_sum", lhs, 0, lhs == 0)
    return CongruenceReport((rec,))


def solve_theorem_a(action: GroupAction, partial: LineIsotropy) -> LineIsotropy:
    """Complete an isotropy record with exactly one free slot so the
    realizability congruence holds.

    The unknown's coefficient is 1/(ab), -alpha/c^2 or 1/c; only a
    sphere weight under p | alpha can degenerate, in which case any
    value works when the rest already balances (0 is returned) and
    nothing works otherwise (NotSolvable).
    """
    p = action.p
    _require_odd_prime(p)
    partial.check_shape(action)
    slots = partial.free_slots()
    if not slots:
        raise Overdetermined("no free slot to solve for")
    if len(slots) > 1:
        raise Underdetermined(f"{len(slots)} free slots, need exactly one")
    kind, idx = slots[0]
    base = partial.with_slot(kind, idx, 0)
    residual = _line_lhs(action, base)
    if kind == "lambda":
        pt = action.points[idx]
        coeff = _gf_inv(p, pt.a * pt.b)
    elif kind == "lambda_sphere":
        s = action.spheres[idx]
        coeff = (-s.alpha) * _gf_inv(p, s.c * s.c) % p
    else:
        coeff = _gf_inv(p, action.spheres[idx].c)
    if coeff % p == 0:
        if residual == 0:
            return base  # any value satisfies the congruence; keep 0
        raise NotSolvable(
            f"slot {kind}[{idx}] has zero coefficient mod {p} and residual {residual}"
        )
    value = (-residual) * _gf_inv(p, coeff) % p
    return base.with_slot(kind, idx, signed_rep(value, p))


def check_line_bundle(action: GroupAction, isotropy: LineIsotropy) -> CongruenceReport:
    """Linear and quadratic congruences for an equivariant circle
    bundle, plus the expansion check through order min(2, p-2) whose
    second-order target is Sign(X) + 2*c1^2."""
    p = action.p
    _require_odd_prime(p)
    isotropy.check_shape(action)
    if isotropy.free_slots():
        raise Underdetermined("bundle check needs a fully specified isotropy record")
    if isotropy.c1_squared is None:
        raise MissingChernSquare("c1_squared is required for the quadratic relation")
    first = _line_lhs(action, isotropy)
    second = 0
    for pt, lam in zip(action.points, isotropy.lambda_points):
        second += lam * lam * _gf_inv(p, pt.a * pt.b)
    for s, lam, m in zip(action.spheres, isotropy.lambda_spheres, isotropy.m_spheres):
        second += (-lam * lam * s.alpha) * _gf_inv(p, s.c * s.c) + 2 * lam * m * _gf_inv(p, s.c)
    second %= p
    records = [
        RelationRecord("first_order", first, 0, first == 0),
        RelationRecord(
            "second_order", second, isotropy.c1_squared % p, second == isotropy.c1_squared % p
        ),
    ]
    # Twisted characters only pin the expansion through order 2.
    n = min(2, p - 2)
    total = [0] * (n + 1)
    for pt, lam in zip(action.points, isotropy.lambda_points):
        total = _gf_add(p, total, _gf_point(p, pt.a, pt.b, lam, n))
    for s, lam, m in zip(action.spheres, isotropy.lambda_spheres, isotropy.m_spheres):
        total = _gf_add(p, total, _gf_sphere(p, s.c, s.alpha, lam, n))
        total = _gf_add(p, total, _gf_boundary(p, s.c, m, lam, n))
    required = [0] * (n + 1)
    if n >= 2:
        required[2] = (action.signature + 2 * isotropy.c1_squared) % p
    records += _series_records(p, total, required, "series")
    return CongruenceReport(tuple(records))


def check_su2(action: GroupAction, isotropy: Su2Isotropy) -> CongruenceReport:
    """Quadratic congruence for an equivariant rank-two bundle with
    fiber character t^ell + t^(-ell), target -c2; the expansion check
    through order min(2, p-2) targets 2*Sign(X) - 4*c2 at order 2."""
    p = action.p
    _require_odd_prime(p)
    isotropy.check_shape(action)
    lhs = 0
    for pt, ell in zip(action.points, isotropy.ell_points):
        lhs += ell * ell * _gf_inv(p, pt.a * pt.b)
    for s, ell, m in zip(action.spheres, isotropy.ell_spheres, isotropy.m_spheres):
        lhs += (-ell * ell * s.alpha) * _gf_inv(p, s.c * s.c) + 2 * ell * m * _gf_inv(p, s.c)
    lhs %= p
    want = (-isotropy.c2) % p
    records = [RelationRecord("su2_weight_sum", lhs, want, lhs == want)]
    n = min(2, p - 2)
    total = [0] * (n + 1)
    for pt, ell in zip(action.points, isotropy.ell_points):
        total = _gf_add(p, total, _gf_su2_point(p, pt.a, pt.b, ell, n))
    for s, ell, m in zip(action.spheres, isotropy.ell_spheres, isotropy.m_spheres):
        total = _gf_add(p, total, _gf_su2_sphere(p, s.c, s.alpha, m, ell, n))
    required = [0] * (n + 1)
    if n >= 2:
        required[2] = (2 * action.signature - 4 * isotropy.c2) % p
    records += _series_records(p, total, required, "series")
    return CongruenceReport(tuple(records))


# -- lens space bookkeeping ---------------------------------------------------


def linking_form(n: int, a: int, b: int) -> Rational:
    """Self-linking a*b/n of the distinguished generator of the lens
    space L(n; a, b), reduced into [0, 1)."""
    from math import gcd

    if gcd(a, n) != 1 or gcd(b, n) != 1:
        raise NotCoprimeRotation(f"({a}, {b}) must be coprime to {n}")
    return Fraction((a * b) % n, n)


def flat_chern_class(n: int, a: int, b: int, lam: int) -> Residue:
    """Chern coefficient lambda/(ab) mod n of the flat circle bundle
    with holonomy weight lambda over L(n; a, b)."""
    from math import gcd

    if gcd(a * b, n) != 1:
        raise NotCoprimeRotation(f"a*b = {a * b} must be coprime to {n}")
    return Residue(lam * _inv_mod(a * b, n), n)


def _inv_mod(x: int, n: int) -> int:
    from .exact_arith import mod_inverse

    return mod_inverse(x, n).value


def boundary_chern_data(sphere: FixedSphere, lam: int, m: int, p: int) -> Residue:
    """The residue class ell mod p*|alpha| determined by

        ell = -lam * alpha   mod p^(e+1)
        ell = c * m          mod abar

    where alpha = (sign) * p^e * abar with p not dividing abar.  The
    ratio ell/c^2 is the Chern coefficient of the induced bundle on
    the boundary lens space of the sphere's neighbourhood.
    """
    if sphere.alpha == 0:
        raise ZeroSelfIntersection("alpha = 0 leaves no boundary congruence")
    abar = abs(sphere.alpha)
    e = 0
    while abar % p == 0:
        abar //= p
        e += 1
    r1 = (-lam * sphere.alpha) % p ** (e + 1)
    r2 = (sphere.c * m) % abar if abar > 1 else 0
    return crt_solve(r1, p ** (e + 1), r2, abar)


# -- realizability search -----------------------------------------------------


def _point_classes(p: int) -> list[tuple[int, int]]:
    seen = set()
    for a in range(1, p):
        for b in range(1, p):
            pt = IsolatedPoint(p, a, b)
            seen.add((pt.a, pt.b))
    return sorted(seen)


def search_realizable(
    p: int,
    n_points: int,
    n_spheres: int,
    sphere_alphas: Sequence[int],
    sign: int,
    euler: int,
    b2: int,
) -> Iterator[GroupAction]:
    """Enumerate canonical rotation data passing every rotation-number
    congruence, in deterministic lexicographic order.

    The cheap linear congruence prunes candidates before the full
    relation battery runs.
    """
    _require_odd_prime(p)
    if euler != b2 + 2:
        raise InconsistentCounts(f"chi = {euler} but b2 + 2 = {b2 + 2}")
    if n_points + 2 * n_spheres != b2 + 2:
        raise InconsistentCounts(
            f"|points| + 2|spheres| = {n_points + 2 * n_spheres} but b2 + 2 = {b2 + 2}"
        )
    if len(sphere_alphas) != n_spheres:
        raise InconsistentCounts(
            f"{len(sphere_alphas)} self-intersections given for {n_spheres} spheres"
        )
    classes = _point_classes(p)
    weights = range(1, (p - 1) // 2 + 1)
    seen_spheres: set = set()
    sphere_choices = []
    for ws in itertools.product(weights, repeat=n_spheres):
        key = tuple(sorted(zip(ws, sphere_alphas)))
        if key in seen_spheres:
            continue
        seen_spheres.add(key)
        sphere_choices.append(ws)
    for pts in itertools.combinations_with_replacement(classes, n_points):
        base_r1 = sum(_gf_inv(p, a * b) for a, b in pts)
        for ws in sphere_choices:
            r1 = base_r1 - sum(
                alpha * _gf_inv(p, w * w) for w, alpha in zip(ws, sphere_alphas)
            )
            if r1 % p != 0:
                continue
            action = GroupAction(
                p,
                tuple(IsolatedPoint(p, a, b) for a, b in pts),
                tuple(FixedSphere(p, w, alpha) for w, alpha in zip(ws, sphere_alphas)),
                sign,
                euler,
                b2,
            )
            if check_rotation_relations(action).ok:
                yield action
