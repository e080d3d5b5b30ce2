import random
from fractions import Fraction

import pytest

from equibundle.action_model import (
    FixedSphere,
    GroupAction,
    IsolatedPoint,
    Su2Isotropy,
    linear_cp2_bar,
    linear_s4,
    triple_cp2_bar_action,
)
from equibundle.moduli import (
    DimensionReport,
    FloatMismatch,
    HasSpheres,
    NonIntegerDimension,
    NotInvolution,
    ParityError,
    RhoValue,
    defect_terms,
    dim_invariant_moduli,
    dim_involution,
    dim_isolated_only,
    dim_nonequivariant,
    quotient_invariants,
    rho_lens,
    rho_surface,
)

PINNED_LENS = [
    ((5, 1, -1, 1), Fraction(-3, 5)),
    ((5, 2, -1, 1), Fraction(1, 5)),
    ((5, 2, -1, -3), Fraction(-1, 5)),
]

PINNED_SURFACE = [
    ((5, 1, 1, -2, 0), Fraction(-16, 5)),
    ((5, 1, 1, -2, -1), Fraction(-4, 5)),
]


def test_pinned_lens_values():
    for args, want in PINNED_LENS:
        got = rho_lens(*args)
        assert got.exact == want
        assert abs(float(want) - got.float_check) < 1e-9


def test_pinned_surface_values():
    for args, want in PINNED_SURFACE:
        got = rho_surface(*args)
        assert got.exact == want
        assert abs(float(want) - got.float_check) < 1e-9


def test_rho_zero_weight_vanishes():
    rng = random.Random(9100)
    for _ in range(10):
        p = rng.choice([3, 5, 7, 11])
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        assert rho_lens(p, a, b, 0).exact == 0
        assert rho_lens(p, a, b, 3 * p).exact == 0
        c = rng.randrange(1, p)
        assert rho_surface(p, c, 0, rng.randrange(-4, 5), rng.randrange(-3, 4)).exact == 0


def test_rho_lens_symmetries():
    rng = random.Random(9101)
    for _ in range(25):
        p = rng.choice([3, 5, 7, 11, 13])
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        ell = rng.randrange(1, p)
        base = rho_lens(p, a, b, ell).exact
        # representative independence and evenness in the weight
        assert rho_lens(p, a + p, b - 2 * p, ell).exact == base
        assert rho_lens(p, a, b, ell + p).exact == base
        assert rho_lens(p, a, b, -ell).exact == base
        # orientation reversal of one rotation number flips the sign
        assert rho_lens(p, a, -b, ell).exact == -base


def test_rho_surface_linearity_in_twisting():
    # the framing term is linear in m, the alpha term independent of it
    rng = random.Random(9102)
    for _ in range(25):
        p = rng.choice([3, 5, 7, 11])
        c = rng.randrange(1, p)
        ell = rng.randrange(1, p)
        alpha = rng.randrange(-4, 5)
        r0 = rho_surface(p, c, ell, alpha, 0).exact
        r1 = rho_surface(p, c, ell, alpha, 1).exact
        r2 = rho_surface(p, c, ell, alpha, 2).exact
        assert r2 - r1 == r1 - r0
        assert rho_surface(p, c, ell, 0, 0).exact == 0


def test_rho_float_agreement_larger_prime():
    # every exact value is independently shadowed by the trig sum
    for ell in (1, 7, 30):
        v = rho_lens(61, 2, 5, ell)
        assert abs(float(v.exact) - v.float_check) < 1e-9
    w = rho_surface(61, 3, 11, -2, 4)
    assert abs(float(w.exact) - w.float_check) < 1e-9


def test_rho_value_rejects_disagreement():
    with pytest.raises(FloatMismatch):
        RhoValue(Fraction(1), 0.5)


def test_defects_and_quotient_on_triple_action():
    act = triple_cp2_bar_action()
    d_chi, d_sign = defect_terms(act)
    assert d_chi == 20  # (p - 1) * (n + 2s) = 4 * 5
    assert d_sign == (act.p - 1) * act.signature
    chi_q, sign_q = quotient_invariants(act)
    assert chi_q == 5
    assert sign_q == -3


def test_signature_defect_matches_power_sum():
    # Sign(g^k) = Sign for every power, so the defect is (p-1) * Sign
    act = linear_cp2_bar(7, 2)
    d_chi, d_sign = defect_terms(act)
    assert d_sign == -6
    assert d_chi == 18
    assert quotient_invariants(act) == (3, -1)


def test_headline_dimensions():
    act = triple_cp2_bar_action()
    lift1 = Su2Isotropy((1, -3, 1), (1,), (0,), c2=1)
    lift2 = Su2Isotropy((1, 1, 1), (1,), (-1,), c2=1)
    r1 = dim_invariant_moduli(act, lift1, 1)
    r2 = dim_invariant_moduli(act, lift2, 1)
    assert r1.dimension == 1
    assert r2.dimension == 3
    assert isinstance(r1, DimensionReport)
    terms1 = dict(r1.terms)
    assert terms1["instanton_8k/p"] == Fraction(8, 5)
    assert terms1["quotient_index"] == -3
    assert terms1["rotated_point_count"] == 3
    assert sum(v for _, v in r1.terms) == 1


def test_dimension_breakdown_displays():
    act = triple_cp2_bar_action()
    rep = dim_invariant_moduli(act, Su2Isotropy((1, -3, 1), (1,), (0,), c2=1), 1)
    text = rep.display()
    assert "dimension" in text and "1" in text


def test_non_integer_dimension_carries_terms():
    act = linear_s4(5, 1, 2)
    with pytest.raises(NonIntegerDimension) as info:
        dim_invariant_moduli(act, Su2Isotropy((1, 1), (), (), c2=1), 1)
    assert info.value.total == Fraction(3, 5)
    assert len(info.value.terms) > 0


def test_dimension_invariance_under_weight_conventions():
    act = triple_cp2_bar_action()
    base = dim_invariant_moduli(act, Su2Isotropy((1, 1, 1), (1,), (-1,), c2=1), 1)
    shifted = dim_invariant_moduli(act, Su2Isotropy((6, 1, 1), (1,), (-1,), c2=1), 1)
    flipped = dim_invariant_moduli(act, Su2Isotropy((-1, 1, 1), (1,), (-1,), c2=1), 1)
    flip_all = dim_invariant_moduli(act, Su2Isotropy((-1, -1, -1), (-1,), (1,), c2=1), 1)
    assert base.dimension == shifted.dimension == flipped.dimension == flip_all.dimension


def test_isolated_only_path():
    act = linear_s4(5, 1, 2)
    iso = Su2Isotropy((1, 3), (), (), c2=1)
    full = dim_invariant_moduli(act, iso, 1)
    only = dim_isolated_only(act, iso, 1)
    assert full.dimension == only.dimension == 1
    with pytest.raises(HasSpheres):
        dim_isolated_only(triple_cp2_bar_action(), Su2Isotropy((1, 1, 1), (1,), (0,), c2=1), 1)


def test_nonequivariant_dimension():
    assert dim_nonequivariant(1, 2, 0) == 5  # standard sphere, charge 1
    assert dim_nonequivariant(2, 4, 0) == 10
    with pytest.raises(ParityError):
        dim_nonequivariant(1, 3, 0)


def test_involution_dimension():
    act = GroupAction(2, (IsolatedPoint(2, 1, 1),) * 2, (), 0, 2, 0)
    rep = dim_involution(act, 1)
    # 8k/2 - (3/2)(chi_q + sign_q) + m + sum over spheres
    assert rep.dimension == 4 - 3 + 2
    with_sphere = GroupAction(
        2, (IsolatedPoint(2, 1, 1),) * 2, (FixedSphere(2, 1, -4),), 0, 4, 2
    )
    rep2 = dim_involution(with_sphere, 1)
    assert rep2.dimension == 1  # 4 - 3 + 2 + (2 - 4), cross-checked internally
    with pytest.raises(NotInvolution):
        dim_involution(linear_s4(5, 1, 2), 1)


def test_invariant_moduli_validates_action():
    bad = GroupAction(5, (IsolatedPoint(5, 1, 2),), (), 1, 3, 1)
    with pytest.raises(ValueError):
        dim_invariant_moduli(bad, Su2Isotropy((1,), (), (), c2=1), 1)
