"""Rotation data for cyclic group actions on closed simply connected
4-manifolds: fixed point records, linear model generators, equivariant
connected sums, and the document serialization used by the CLI.

An action of Z/p is recorded by its fixed point set: isolated points
carry tangential rotation numbers (a, b), fixed 2-spheres carry a
normal rotation c and a self-intersection alpha.  Rotation pairs are
defined up to order and simultaneous sign change; constructors
canonicalize so that equality means equality of equivalence classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .exact_arith import ModulusMismatch, is_prime, signed_rep

__all__ = [
    "IsolatedPoint",
    "FixedSphere",
    "GroupAction",
    "LineIsotropy",
    "Su2Isotropy",
    "ValidationReport",
    "BadWeights",
    "IncompatiblePoints",
    "IncompatibleSpheres",
    "ShapeMismatch",
    "DocumentError",
    "validate",
    "linear_cp2",
    "linear_cp2_bar",
    "linear_s4",
    "reverse_orientation",
    "connected_sum_points",
    "connected_sum_spheres",
    "triple_cp2_bar_action",
    "action_from_dict",
    "action_to_dict",
    "line_isotropy_from_dict",
    "line_isotropy_to_dict",
    "su2_isotropy_from_dict",
    "su2_isotropy_to_dict",
]


class BadWeights(ValueError):
    """A linear model generator received unusable rotation numbers."""


class IncompatiblePoints(ValueError):
    """Connected sum requested at points whose tangent data do not match."""


class IncompatibleSpheres(ValueError):
    """Connected sum requested at spheres with mismatched normal weights."""


class ShapeMismatch(ValueError):
    """Isotropy data whose lengths do not fit the owning action."""


class DocumentError(ValueError):
    """A document is structurally unusable (missing or mistyped fields)."""


@dataclass(frozen=True)
class IsolatedPoint:
    """Isolated fixed point with tangential rotation numbers (a, b) mod p.

    Stored canonically: the lexicographically least representative of
    {(a,b), (b,a), (-a,-b), (-b,-a)} with entries in [0, p).  Zero
    entries are representable so that validation can flag them.
    """

    p: int
    a: int
    b: int

    def __post_init__(self) -> None:
        p = self.p
        if p < 2:
            raise ValueError(f"modulus must be >= 2, got {p}")
        a, b = self.a % p, self.b % p
        best = min((a, b), (b, a), ((-a) % p, (-b) % p), ((-b) % p, (-a) % p))
        object.__setattr__(self, "a", best[0])
        object.__setattr__(self, "b", best[1])

    @property
    def degenerate(self) -> bool:
        return self.a == 0 or self.b == 0

    def orientation_reversed(self) -> "IsolatedPoint":
        """The class of the same point in the reversed-orientation manifold."""
        return IsolatedPoint(self.p, self.a, -self.b)

    def display(self) -> str:
        return f"({signed_rep(self.a, self.p)}, {signed_rep(self.b, self.p)})"


@dataclass(frozen=True)
class FixedSphere:
    """Fixed 2-sphere with normal rotation c mod p and self-intersection alpha."""

    p: int
    c: int
    alpha: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"modulus must be >= 2, got {self.p}")
        object.__setattr__(self, "c", self.c % self.p)

    @property
    def degenerate(self) -> bool:
        return self.c == 0

    def weight_class(self) -> int:
        # c and -c describe the same unoriented normal rotation
        return min(self.c, (-self.c) % self.p)

    def display(self) -> str:
        return f"(c={signed_rep(self.c, self.p)}, alpha={self.alpha})"


@dataclass(frozen=True)
class GroupAction:
    """A homologically trivial Z/p action recorded by fixed point data.

    Insertion order of points and spheres is preserved: isotropy lists
    supplied alongside an action refer to entries by position.
    """

    p: int
    points: tuple[IsolatedPoint, ...]
    spheres: tuple[FixedSphere, ...]
    signature: int
    euler: int
    b2: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "spheres", tuple(self.spheres))
        for pt in self.points:
            if pt.p != self.p:
                raise ModulusMismatch(f"point {pt} has modulus {pt.p}, action has {self.p}")
        for s in self.spheres:
            if s.p != self.p:
                raise ModulusMismatch(f"sphere {s} has modulus {s.p}, action has {self.p}")

    def data_key(self):
        """Order-insensitive identity of the underlying data."""
        return (
            self.p,
            tuple(sorted((pt.a, pt.b) for pt in self.points)),
            tuple(sorted((s.weight_class(), s.alpha) for s in self.spheres)),
            self.signature,
            self.euler,
            self.b2,
        )

    def same_data(self, other: "GroupAction") -> bool:
        return self.data_key() == other.data_key()

    def display(self) -> str:
        pts = ", ".join(pt.display() for pt in self.points) or "none"
        sph = ", ".join(s.display() for s in self.spheres) or "none"
        return (
            f"p={self.p}  points: {pts}  spheres: {sph}  "
            f"Sign={self.signature} chi={self.euler} b2={self.b2}"
        )


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple[tuple[str, bool, str], ...]
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.entries)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, passed, detail in self.entries if not passed]


def validate(action: GroupAction) -> ValidationReport:
    """Structural checks: prime order, nonzero rotations, and the fixed
    point count |points| + 2|spheres| = b2 + 2 forced by the Lefschetz
    trace of a homologically trivial action."""
    entries = []
    warnings = []
    entries.append(("prime_order", is_prime(action.p), f"p = {action.p}"))
    if action.p == 2:
        warnings.append("p = 2: dimension formulas only, congruence checks need odd p")
    bad = [pt.display() for pt in action.points if pt.degenerate]
    bad += [s.display() for s in action.spheres if s.degenerate]
    entries.append(
        ("nonzero_rotations", not bad, "zero rotation at " + ", ".join(bad) if bad else "all nonzero")
    )
    count = len(action.points) + 2 * len(action.spheres)
    entries.append(
        (
            "fixed_set_count",
            count == action.b2 + 2,
            f"|points| + 2|spheres| = {count}, b2 + 2 = {action.b2 + 2}",
        )
    )
    entries.append(
        ("euler_betti", action.euler == action.b2 + 2, f"chi = {action.euler}, b2 + 2 = {action.b2 + 2}")
    )
    return ValidationReport(tuple(entries), tuple(warnings))


# -- isotropy records ----------------------------------------------------


def _as_slot_tuple(values: Iterable) -> tuple:
    out = []
    for v in values:
        if v is None:
            out.append(None)
        else:
            out.append(int(v))
    return tuple(out)


@dataclass(frozen=True)
class LineIsotropy:
    """Circle-bundle isotropy data: fiber weight lambda at each fixed
    component, the restriction degree m at each sphere, and optionally
    the self-intersection of the first Chern class.

    None marks a slot left free for the solver.
    """

    lambda_points: tuple[Optional[int], ...]
    lambda_spheres: tuple[Optional[int], ...]
    m_spheres: tuple[Optional[int], ...]
    c1_squared: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambda_points", _as_slot_tuple(self.lambda_points))
        object.__setattr__(self, "lambda_spheres", _as_slot_tuple(self.lambda_spheres))
        object.__setattr__(self, "m_spheres", _as_slot_tuple(self.m_spheres))

    def check_shape(self, action: GroupAction) -> None:
        if len(self.lambda_points) != len(action.points):
            raise ShapeMismatch(
                f"{len(self.lambda_points)} point weights for {len(action.points)} points"
            )
        if len(self.lambda_spheres) != len(action.spheres) or len(self.m_spheres) != len(
            action.spheres
        ):
            raise ShapeMismatch(
                f"sphere data lengths ({len(self.lambda_spheres)}, {len(self.m_spheres)}) "
                f"for {len(action.spheres)} spheres"
            )

    def free_slots(self) -> list[tuple[str, int]]:
        out = []
        out += [("lambda", i) for i, v in enumerate(self.lambda_points) if v is None]
        out += [("lambda_sphere", j) for j, v in enumerate(self.lambda_spheres) if v is None]
        out += [("m", j) for j, v in enumerate(self.m_spheres) if v is None]
        return out

    def with_slot(self, kind: str, index: int, value: Optional[int]) -> "LineIsotropy":
        lp, ls, ms = list(self.lambda_points), list(self.lambda_spheres), list(self.m_spheres)
        if kind == "lambda":
            lp[index] = value
        elif kind == "lambda_sphere":
            ls[index] = value
        elif kind == "m":
            ms[index] = value
        else:
            raise ValueError(f"unknown slot kind {kind!r}")
        return LineIsotropy(tuple(lp), tuple(ls), tuple(ms), self.c1_squared)


@dataclass(frozen=True)
class Su2Isotropy:
    """Rank-two isotropy data: the fiber splits as t^ell + t^(-ell) over
    each fixed component, so ell is defined up to sign; m is the degree
    of a local reduction over each sphere and flips with ell."""

    ell_points: tuple[int, ...]
    ell_spheres: tuple[int, ...]
    m_spheres: tuple[int, ...]
    c2: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "ell_points", tuple(int(v) for v in self.ell_points))
        object.__setattr__(self, "ell_spheres", tuple(int(v) for v in self.ell_spheres))
        object.__setattr__(self, "m_spheres", tuple(int(v) for v in self.m_spheres))

    def check_shape(self, action: GroupAction) -> None:
        if len(self.ell_points) != len(action.points):
            raise ShapeMismatch(
                f"{len(self.ell_points)} point weights for {len(action.points)} points"
            )
        if len(self.ell_spheres) != len(action.spheres) or len(self.m_spheres) != len(
            action.spheres
        ):
            raise ShapeMismatch(
                f"sphere data lengths ({len(self.ell_spheres)}, {len(self.m_spheres)}) "
                f"for {len(action.spheres)} spheres"
            )

    def canonical(self, p: int) -> "Su2Isotropy":
        """Fold every ell into [0, p/2]; sphere m flips sign with its ell."""
        pts = tuple(min(e % p, (-e) % p) for e in self.ell_points)
        sph = []
        ms = []
        for e, m in zip(self.ell_spheres, self.m_spheres):
            r = e % p
            if r > p - r:
                sph.append(p - r)
                ms.append(-m)
            else:
                sph.append(r)
                ms.append(m)
        return Su2Isotropy(pts, tuple(sph), tuple(ms), self.c2)


# -- linear models -------------------------------------------------------


def linear_cp2(p: int, a: int, b: int = 0) -> GroupAction:
    """Linear action on the projective plane with weights (a, b).

    b = 0 mod p: one fixed point (a, a) and a fixed line, a sphere with
    normal weight a and self-intersection +1.  Otherwise three isolated
    fixed points (a, b), (b-a, -a), (a-b, -b).  Sign = 1, chi = 3.
    """
    if not is_prime(p):
        raise BadWeights(f"p must be prime, got {p}")
    a %= p
    b %= p
    if a == 0:
        raise BadWeights("weight a must be nonzero mod p")
    if a == b:
        raise BadWeights("equal weights give a degenerate rotation pair")
    if b == 0:
        return GroupAction(
            p, (IsolatedPoint(p, a, a),), (FixedSphere(p, a, 1),), 1, 3, 1
        )
    points = (
        IsolatedPoint(p, a, b),
        IsolatedPoint(p, b - a, -a),
        IsolatedPoint(p, a - b, -b),
    )
    return GroupAction(p, points, (), 1, 3, 1)


def linear_cp2_bar(p: int, a: int) -> GroupAction:
    """Reversed-orientation projective plane: one fixed point (a, -a)
    and a fixed sphere (c = a, alpha = -1).  Sign = -1, chi = 3."""
    if not is_prime(p):
        raise BadWeights(f"p must be prime, got {p}")
    a %= p
    if a == 0:
        raise BadWeights("weight a must be nonzero mod p")
    return GroupAction(p, (IsolatedPoint(p, a, -a),), (FixedSphere(p, a, -1),), -1, 3, 1)


def linear_s4(p: int, a: int, b: int) -> GroupAction:
    """Linear action on the 4-sphere: fixed points (a, b) and (a, -b)."""
    if not is_prime(p):
        raise BadWeights(f"p must be prime, got {p}")
    a %= p
    b %= p
    if a == 0 or b == 0:
        raise BadWeights("both weights must be nonzero mod p")
    return GroupAction(p, (IsolatedPoint(p, a, b), IsolatedPoint(p, a, -b)), (), 0, 2, 0)


def reverse_orientation(action: GroupAction) -> GroupAction:
    """The same action on the orientation-reversed manifold: rotation
    pairs (a, -b), sphere data (-c, -alpha), negated signature."""
    return GroupAction(
        action.p,
        tuple(IsolatedPoint(action.p, pt.a, -pt.b) for pt in action.points),
        tuple(FixedSphere(action.p, -s.c, -s.alpha) for s in action.spheres),
        -action.signature,
        action.euler,
        action.b2,
    )


# -- equivariant connected sums -------------------------------------------


def _check_same_p(a: GroupAction, b: GroupAction) -> None:
    if a.p != b.p:
        raise ModulusMismatch(f"cannot sum actions with p = {a.p} and p = {b.p}")


def connected_sum_points(a: GroupAction, i: int, b: GroupAction, j: int) -> GroupAction:
    """Equivariant connected sum at isolated fixed points.

    The gluing reverses orientation on one side, so the tangent data
    must match after reversal: class of (a_j, -b_j) of the second point
    equals the class of the first.  Both matched points disappear.
    """
    _check_same_p(a, b)
    pa, pb = a.points[i], b.points[j]
    if pb.orientation_reversed() != pa:
        raise IncompatiblePoints(
            f"point {pa.display()} cannot absorb {pb.display()}: "
            f"reversed class is {pb.orientation_reversed().display()}"
        )
    points = tuple(q for t, q in enumerate(a.points) if t != i) + tuple(
        q for t, q in enumerate(b.points) if t != j
    )
    return GroupAction(
        a.p,
        points,
        a.spheres + b.spheres,
        a.signature + b.signature,
        a.euler + b.euler - 2,
        a.b2 + b.b2,
    )


def connected_sum_spheres(a: GroupAction, i: int, b: GroupAction, j: int) -> GroupAction:
    """Equivariant connected sum along points of two fixed spheres.

    The boundary lens spaces match when the normal weights agree up to
    sign (the weight of an unoriented normal rotation is only defined
    up to sign).  The spheres merge into one with c from the first
    summand and added self-intersections.
    """
    _check_same_p(a, b)
    sa, sb = a.spheres[i], b.spheres[j]
    if (sa.c + sb.c) % a.p != 0 and (sa.c - sb.c) % a.p != 0:
        raise IncompatibleSpheres(
            f"sphere weights {sa.display()} and {sb.display()} differ mod {a.p}"
        )
    merged = FixedSphere(a.p, sa.c, sa.alpha + sb.alpha)
    spheres = tuple(merged if t == i else s for t, s in enumerate(a.spheres)) + tuple(
        s for t, s in enumerate(b.spheres) if t != j
    )
    return GroupAction(
        a.p,
        a.points + b.points,
        spheres,
        a.signature + b.signature,
        a.euler + b.euler - 2,
        a.b2 + b.b2,
    )


def triple_cp2_bar_action() -> GroupAction:
    """A p = 5 action on the threefold sum of reversed projective planes.

    Rotation data {(1,-1), (2,-1), (2,-1)} with one fixed sphere
    (c = 1, alpha = -2); Sign = -3, chi = 5, b2 = 3.  Built from linear
    models by one sphere sum and one point sum, then checked against
    the literal data, so it doubles as an integration test of the sum
    operations.
    """
    bar = linear_cp2_bar(5, 1)
    two = connected_sum_spheres(bar, 0, bar, 0)
    other = reverse_orientation(linear_cp2(5, 2, 1))
    j = next(
        t for t, q in enumerate(other.points) if q.orientation_reversed() == two.points[0]
    )
    out = connected_sum_points(two, 0, other, j)
    literal = GroupAction(
        5,
        (IsolatedPoint(5, 1, -1), IsolatedPoint(5, 2, -1), IsolatedPoint(5, 2, -1)),
        (FixedSphere(5, 1, -2),),
        -3,
        5,
        3,
    )
    assert out.same_data(literal), "construction drifted from the reference data"
    return out


# -- document serialization ------------------------------------------------


def _want(doc: dict, key: str, kinds, where: str):
    if key not in doc:
        raise DocumentError(f"{where}: missing field {key!r}")
    v = doc[key]
    if not isinstance(v, kinds) or isinstance(v, bool):
        raise DocumentError(f"{where}: field {key!r} has wrong type {type(v).__name__}")
    return v


def _int_list(values, where: str, allow_none: bool = False) -> list:
    if not isinstance(values, list):
        raise DocumentError(f"{where}: expected a list")
    out = []
    for v in values:
        if v is None and allow_none:
            out.append(None)
        elif isinstance(v, int) and not isinstance(v, bool):
            out.append(v)
        else:
            raise DocumentError(f"{where}: expected integers, got {v!r}")
    return out


def action_from_dict(doc: dict) -> GroupAction:
    if not isinstance(doc, dict):
        raise DocumentError("document root must be a mapping")
    p = _want(doc, "p", int, "action")
    raw_points = doc.get("points", [])
    if not isinstance(raw_points, list):
        raise DocumentError("action: points must be a list")
    points = []
    for entry in raw_points:
        pair = _int_list(entry, "action.points")
        if len(pair) != 2:
            raise DocumentError(f"action.points: expected [a, b], got {entry!r}")
        points.append(IsolatedPoint(p, pair[0], pair[1]))
    raw_spheres = doc.get("spheres", [])
    if not isinstance(raw_spheres, list):
        raise DocumentError("action: spheres must be a list")
    spheres = []
    for entry in raw_spheres:
        if not isinstance(entry, dict):
            raise DocumentError(f"action.spheres: expected mapping, got {entry!r}")
        spheres.append(
            FixedSphere(p, _want(entry, "c", int, "sphere"), _want(entry, "alpha", int, "sphere"))
        )
    return GroupAction(
        p,
        tuple(points),
        tuple(spheres),
        _want(doc, "signature", int, "action"),
        _want(doc, "euler", int, "action"),
        _want(doc, "b2", int, "action"),
    )


def action_to_dict(action: GroupAction) -> dict:
    return {
        "p": action.p,
        "points": [[signed_rep(pt.a, action.p), signed_rep(pt.b, action.p)] for pt in action.points],
        "spheres": [{"c": signed_rep(s.c, action.p), "alpha": s.alpha} for s in action.spheres],
        "signature": action.signature,
        "euler": action.euler,
        "b2": action.b2,
    }


def line_isotropy_from_dict(doc: dict) -> LineIsotropy:
    if not isinstance(doc, dict):
        raise DocumentError("line_isotropy must be a mapping")
    c1sq = doc.get("c1_squared")
    if c1sq is not None and (not isinstance(c1sq, int) or isinstance(c1sq, bool)):
        raise DocumentError("line_isotropy: c1_squared must be an integer or null")
    return LineIsotropy(
        tuple(_int_list(doc.get("lambda_points", []), "lambda_points", allow_none=True)),
        tuple(_int_list(doc.get("lambda_spheres", []), "lambda_spheres", allow_none=True)),
        tuple(_int_list(doc.get("m_spheres", []), "m_spheres", allow_none=True)),
        c1sq,
    )


def line_isotropy_to_dict(iso: LineIsotropy) -> dict:
    out = {
        "lambda_points": list(iso.lambda_points),
        "lambda_spheres": list(iso.lambda_spheres),
        "m_spheres": list(iso.m_spheres),
    }
    if iso.c1_squared is not None:
        out["c1_squared"] = iso.c1_squared
    return out


def su2_isotropy_from_dict(doc: dict) -> Su2Isotropy:
    if not isinstance(doc, dict):
        raise DocumentError("su2_isotropy must be a mapping")
    return Su2Isotropy(
        tuple(_int_list(doc.get("ell_points", []), "ell_points")),
        tuple(_int_list(doc.get("ell_spheres", []), "ell_spheres")),
        tuple(_int_list(doc.get("m_spheres", []), "m_spheres")),
        _want(doc, "c2", int, "su2_isotropy"),
    )


def su2_isotropy_to_dict(iso: Su2Isotropy) -> dict:
    return {
        "ell_points": list(iso.ell_points),
        "ell_spheres": list(iso.ell_spheres),
        "m_spheres": list(iso.m_spheres),
        "c2": iso.c2,
    }
