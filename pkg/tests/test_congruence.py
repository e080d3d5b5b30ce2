import random
from fractions import Fraction

import pytest

from equibundle.action_model import (
    FixedSphere,
    GroupAction,
    IsolatedPoint,
    LineIsotropy,
    Su2Isotropy,
    linear_cp2,
    linear_cp2_bar,
    linear_s4,
    reverse_orientation,
    triple_cp2_bar_action,
)
from equibundle.congruence import (
    InconsistentCounts,
    MissingChernSquare,
    NotCoprimeRotation,
    NotSolvable,
    Overdetermined,
    Underdetermined,
    ZeroSelfIntersection,
    _gf_boundary,
    _gf_point,
    _gf_sphere,
    _gf_su2_point,
    _gf_su2_sphere,
    boundary_chern_data,
    check_line_bundle,
    check_rotation_relations,
    check_su2,
    flat_chern_class,
    gsign_value,
    gsignature_check,
    linking_form,
    search_realizable,
    solve_theorem_a,
    theorem_a_condition,
)
from equibundle.exact_arith import rational_mod
from equibundle.series import (
    expand_boundary_term,
    expand_point_term,
    expand_sphere_term,
    expand_su2_point_term,
    expand_su2_sphere_term,
)

PRIMES = [3, 5, 7, 11, 13]


def _model_pool(p, rng, count=4):
    pool = [linear_cp2(p, 1, 0), linear_cp2_bar(p, 1), linear_s4(p, 1, 2 % p or 1)]
    while len(pool) < count:
        a = rng.randrange(1, p)
        b = rng.randrange(1, p)
        if a != b and (a + b) % p != 0:
            pool.append(linear_cp2(p, a, b))
        else:
            pool.append(linear_cp2_bar(p, a))
    return pool


def test_gsign_value_equals_signature_on_models():
    rng = random.Random(8300)
    for p in PRIMES:
        for act in _model_pool(p, rng, 5):
            for k in range(1, p):
                assert gsign_value(act, k) == Fraction(act.signature)


def test_gsign_reverses_sign_under_orientation_flip():
    rng = random.Random(8301)
    for _ in range(20):
        p = rng.choice(PRIMES)
        a = rng.randrange(1, p)
        act = linear_cp2(p, a, 0)
        rev = reverse_orientation(act)
        for k in range(1, p):
            assert gsign_value(rev, k) == -gsign_value(act, k)


def test_gsignature_check_on_connected_sums():
    # gluing preserves the exact signature identity
    from equibundle.action_model import connected_sum_spheres

    a = linear_cp2_bar(5, 1)
    ab = connected_sum_spheres(a, 0, linear_cp2_bar(5, 1), 0)
    assert gsignature_check(ab).ok
    assert gsignature_check(triple_cp2_bar_action()).ok


def test_gsignature_check_requires_odd_prime():
    act = GroupAction(2, (IsolatedPoint(2, 1, 1),) * 2, (), 0, 2, 0)
    with pytest.raises(ValueError):
        gsignature_check(act)


def _exact_mod_p(series, p, order):
    out = []
    for j in range(order + 1):
        out.append(rational_mod(series.coeff(j), p).value)
    return out


def test_gf_expansions_match_exact_series():
    # the GF(p) fast path must agree with the exact rational expansion
    # reduced mod p, coefficient by coefficient, through order p-2
    rng = random.Random(8302)
    for p in PRIMES:
        n = p - 2
        for _ in range(6):
            a = rng.randrange(1, p)
            b = rng.randrange(1, p)
            c = rng.randrange(1, p)
            alpha = rng.randrange(-6, 7)
            m = rng.randrange(-4, 5)
            lam = rng.randrange(0, p)
            ell = rng.randrange(0, p)
            pairs = [
                (_gf_point(p, a, b, lam, n), expand_point_term(a, b, lam, n)),
                (_gf_sphere(p, c, alpha, lam, n), expand_sphere_term(c, alpha, lam, n)),
                (_gf_boundary(p, c, m, lam, n), expand_boundary_term(c, m, lam, n)),
                (_gf_su2_point(p, a, b, ell, n), expand_su2_point_term(a, b, ell, n)),
                (
                    _gf_su2_sphere(p, c, alpha, m, ell, n),
                    expand_su2_sphere_term(c, alpha, m, ell, n),
                ),
            ]
            for got, exact in pairs:
                assert got == _exact_mod_p(exact, p, n)


def test_rotation_relations_pass_on_linear_models():
    rng = random.Random(8303)
    for p in PRIMES:
        for act in _model_pool(p, rng, 5):
            report = check_rotation_relations(act)
            assert report.ok, [r.display() for r in report.failures()]
            names = [r.name for r in report.records]
            assert names[:4] == ["relation_1", "relation_2", "relation_3", "relation_4"]
            assert f"series_order_{p - 2}" in names


def test_rotation_relations_fail_on_perturbation():
    base = linear_cp2(5, 1, 2)
    pts = list(base.points)
    bad = GroupAction(
        5,
        (IsolatedPoint(5, pts[0].a + 1, pts[0].b),) + tuple(pts[1:]),
        (),
        base.signature,
        base.euler,
        base.b2,
    )
    assert not check_rotation_relations(bad).ok


def test_rotation_relations_need_odd_prime():
    act = GroupAction(2, (IsolatedPoint(2, 1, 1),) * 2, (), 0, 2, 0)
    with pytest.raises(ValueError):
        check_rotation_relations(act)


def test_relation_two_is_implied_by_relation_one_and_series():
    # random fixed data adjusted so relation (1) holds and Sign is read
    # off the order-2 series coefficient: relation (2) must follow
    rng = random.Random(8304)
    for _ in range(100):
        p = rng.choice(PRIMES)
        n_pts = rng.randrange(1, 5)
        n_sph = rng.randrange(1, 3)
        points = tuple(
            IsolatedPoint(p, rng.randrange(1, p), rng.randrange(1, p)) for _ in range(n_pts)
        )
        cs = [rng.randrange(1, p) for _ in range(n_sph)]
        alphas = [rng.randrange(-5, 6) for _ in range(n_sph - 1)]
        # solve relation (1) for the last self-intersection
        r1 = sum(pow(pt.a * pt.b, p - 2, p) for pt in points)
        r1 -= sum(al * pow(c * c, p - 2, p) for c, al in zip(cs, alphas))
        last = r1 * (cs[-1] ** 2) % p
        alphas.append(last if last != 0 else p)
        spheres = tuple(FixedSphere(p, c, al) for c, al in zip(cs, alphas))
        b2 = n_pts + 2 * n_sph - 2
        probe = GroupAction(p, points, spheres, 0, b2 + 2, b2)
        rep = check_rotation_relations(probe)
        by_name = {r.name: r for r in rep.records}
        assert by_name["relation_1"].passed
        if p == 3:
            # 3 * Sign vanishes mod 3, so relation (2) already follows
            assert by_name["relation_2"].passed
            continue
        sign = by_name["series_order_2"].lhs  # the order-2 residue is Sign mod p
        act = GroupAction(p, points, spheres, sign, b2 + 2, b2)
        rep2 = check_rotation_relations(act)
        by_name2 = {r.name: r for r in rep2.records}
        assert by_name2["series_order_2"].passed
        assert by_name2["relation_2"].passed


def test_constant_isotropy_satisfies_condition():
    # with every fiber weight equal and no twisting, the condition is
    # lam * relation(1), which vanishes on data passing the battery
    rng = random.Random(8305)
    for p in PRIMES:
        for act in _model_pool(p, rng, 4):
            lam = rng.randrange(0, 3 * p)
            iso = LineIsotropy(
                (lam,) * len(act.points), (lam,) * len(act.spheres), (0,) * len(act.spheres)
            )
            assert theorem_a_condition(act, iso).ok


def test_condition_on_canonical_bundle_data():
    rng = random.Random(8306)
    for _ in range(30):
        p = rng.choice(PRIMES)
        a = rng.randrange(1, p)
        b = rng.randrange(1, p)
        if a == b:
            continue
        lam = rng.randrange(-p, p)
        act = linear_cp2(p, a, b)
        iso = LineIsotropy((lam, lam + a, lam + b), (), ())
        assert theorem_a_condition(act, iso).ok


def test_condition_requires_complete_record():
    act = linear_cp2(5, 1, 0)
    with pytest.raises(Underdetermined):
        theorem_a_condition(act, LineIsotropy((None,), (1,), (0,)))


def test_solve_fixed_line_twisting():
    # CP^2 with a fixed line: the twisting degree solves to -1
    for p in PRIMES:
        for a in range(1, p):
            act = linear_cp2(p, a, 0)
            lam = 2 * a  # canonical-bundle fiber weight at the point
            partial = LineIsotropy((lam,), (a,), (None,))
            done = solve_theorem_a(act, partial)
            assert done.m_spheres[0] % p == (-1) % p


def test_solve_third_point_weight():
    # canonical data with the last fiber weight blank solves to lam + b
    rng = random.Random(8307)
    for _ in range(30):
        p = rng.choice(PRIMES)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        if a == b:
            continue
        lam = rng.randrange(0, p)
        act = linear_cp2(p, a, b)
        done = solve_theorem_a(act, LineIsotropy((lam, lam + a, None), (), ()))
        assert done.lambda_points[2] % p == (lam + b) % p


def test_solve_slot_count_errors():
    act = linear_cp2(5, 1, 0)
    with pytest.raises(Underdetermined):
        solve_theorem_a(act, LineIsotropy((None,), (None,), (0,)))
    with pytest.raises(Overdetermined):
        solve_theorem_a(act, LineIsotropy((1,), (1,), (0,)))


def test_solve_degenerate_coefficient():
    # a sphere weight slot with p | alpha has zero coefficient: the
    # congruence either holds for every value or for none
    p = 5
    act = GroupAction(
        p, (IsolatedPoint(p, 1, 1),), (FixedSphere(p, 1, p),), 0, 5, 3
    )
    # residual with lambda_sphere = 0: 1/(1*1) * lam_pt + m/c
    solvable = LineIsotropy((p,), (None,), (0,))  # lam_pt = p == 0 mod p
    done = solve_theorem_a(act, solvable)
    assert done.lambda_spheres[0] == 0
    assert theorem_a_condition(act, done).ok
    stuck = LineIsotropy((1,), (None,), (0,))
    with pytest.raises(NotSolvable):
        solve_theorem_a(act, stuck)


def test_solve_matches_brute_force_exhaustively():
    # single point, single sphere, p in {3, 5}: compare against a scan
    # of all residues for each slot kind
    for p in (3, 5):
        for a in range(1, p):
            for b in range(1, p):
                for c in range(1, p):
                    for alpha in (1, -1, p, -2):
                        act = GroupAction(
                            p,
                            (IsolatedPoint(p, a, b),),
                            (FixedSphere(p, c, alpha),),
                            0,
                            5,
                            3,
                        )
                        for kind, blank in [
                            ("lambda", LineIsotropy((None,), (1,), (1,))),
                            ("lambda_sphere", LineIsotropy((1,), (None,), (1,))),
                            ("m", LineIsotropy((1,), (1,), (None,))),
                        ]:
                            idx = 0
                            witnesses = [
                                v
                                for v in range(p)
                                if theorem_a_condition(act, blank.with_slot(kind, idx, v)).ok
                            ]
                            if witnesses:
                                got = solve_theorem_a(act, blank)
                                value = {
                                    "lambda": got.lambda_points[0],
                                    "lambda_sphere": got.lambda_spheres[0],
                                    "m": got.m_spheres[0],
                                }[kind]
                                assert value % p in witnesses
                                if len(witnesses) == 1:
                                    assert value % p == witnesses[0]
                            else:
                                with pytest.raises(NotSolvable):
                                    solve_theorem_a(act, blank)


def test_solve_random_round_trips():
    rng = random.Random(8308)
    done = 0
    while done < 200:
        p = rng.choice(PRIMES)
        act = rng.choice(_model_pool(p, rng, 4))
        n, s = len(act.points), len(act.spheres)
        iso = LineIsotropy(
            tuple(rng.randrange(0, p) for _ in range(n)),
            tuple(rng.randrange(0, p) for _ in range(s)),
            tuple(rng.randrange(-3, 4) for _ in range(s)),
        )
        slots = [("lambda", i) for i in range(n)]
        slots += [("lambda_sphere", j) for j in range(s)]
        slots += [("m", j) for j in range(s)]
        kind, idx = rng.choice(slots)
        blank = iso.with_slot(kind, idx, None)
        try:
            completed = solve_theorem_a(act, blank)
        except NotSolvable:
            continue
        assert theorem_a_condition(act, completed).ok
        done += 1


def test_line_bundle_canonical_data():
    act = linear_cp2(7, 1, 3)
    iso = LineIsotropy((2, 3, 5), (), (), c1_squared=1)
    report = check_line_bundle(act, iso)
    assert report.ok
    names = {r.name for r in report.records}
    assert {"first_order", "second_order", "series_order_2"} <= names


def test_line_bundle_missing_chern_square():
    act = linear_cp2(7, 1, 3)
    with pytest.raises(MissingChernSquare):
        check_line_bundle(act, LineIsotropy((2, 3, 5), (), ()))


def test_line_bundle_wrong_chern_square_fails():
    act = linear_cp2(7, 1, 3)
    report = check_line_bundle(act, LineIsotropy((2, 3, 5), (), (), c1_squared=2))
    assert not report.ok


def test_line_bundle_representative_independence():
    # shifting any fiber weight by a multiple of p changes nothing
    rng = random.Random(8309)
    for _ in range(20):
        p = rng.choice(PRIMES)
        a = rng.randrange(1, p)
        act = linear_cp2(p, a, 0)
        lam, lam_f, m = rng.randrange(0, p), rng.randrange(0, p), rng.randrange(-3, 4)
        base = check_line_bundle(act, LineIsotropy((lam,), (lam_f,), (m,), c1_squared=4))
        shifted = check_line_bundle(
            act,
            LineIsotropy((lam + 3 * p,), (lam_f - 2 * p,), (m,), c1_squared=4),
        )
        assert base.records == shifted.records


def test_su2_examples():
    # standard sphere lift and both bar lifts
    s4 = linear_s4(7, 1, 3)
    assert check_su2(s4, Su2Isotropy((1, 2), (), (), c2=1)).ok
    bar = linear_cp2_bar(5, 1)
    assert check_su2(bar, Su2Isotropy((1,), (0,), (0,), c2=1)).ok
    assert check_su2(bar, Su2Isotropy((3,), (3,), (-1,), c2=1)).ok


def test_su2_weight_sign_flip_invariance():
    # ell -> -ell with m -> -m fixes every record
    rng = random.Random(8310)
    for _ in range(20):
        p = rng.choice(PRIMES)
        a = rng.randrange(1, p)
        bar = linear_cp2_bar(p, a)
        ell_p, ell_s, m = rng.randrange(0, p), rng.randrange(0, p), rng.randrange(-3, 4)
        c2 = rng.randrange(0, 5)
        one = check_su2(bar, Su2Isotropy((ell_p,), (ell_s,), (m,), c2=c2))
        two = check_su2(bar, Su2Isotropy((-ell_p,), (-ell_s,), (-m,), c2=c2))
        three = check_su2(bar, Su2Isotropy((ell_p + p,), (ell_s - p,), (m,), c2=c2))
        assert one.records == two.records == three.records


def test_su2_wrong_charge_fails():
    s4 = linear_s4(7, 1, 3)
    assert not check_su2(s4, Su2Isotropy((1, 2), (), (), c2=2)).ok


def test_linking_form():
    assert linking_form(5, 1, 2) == Fraction(2, 5)
    assert linking_form(7, 3, 5) == Fraction(1, 7)  # 15 = 14 + 1
    with pytest.raises(NotCoprimeRotation):
        linking_form(6, 2, 1)


def test_flat_chern_class():
    r = flat_chern_class(5, 1, 2, 3)
    assert (r.value * 2) % 5 == 3
    assert r.modulus == 5


def test_boundary_chern_data_small_grid():
    # both congruences of the gluing data hold on a small exhaustive grid
    for p in (3, 5, 7):
        for c in (1, 2):
            for alpha in range(-15, 16):
                if alpha == 0:
                    continue
                sphere = FixedSphere(p, c, alpha)
                abar = abs(alpha)
                e = 0
                while abar % p == 0:
                    abar //= p
                    e += 1
                for lam in range(p):
                    for m in range(abar):
                        r = boundary_chern_data(sphere, lam, m, p)
                        assert r.modulus == p * abs(alpha)
                        assert (r.value + lam * alpha) % p ** (e + 1) == 0
                        if abar > 1:
                            assert (r.value - c * m) % abar == 0


def test_boundary_chern_zero_alpha():
    with pytest.raises(ZeroSelfIntersection):
        boundary_chern_data(FixedSphere(5, 1, 0), 1, 1, 5)


def test_search_includes_linear_model():
    found = list(search_realizable(5, 1, 1, [1], 1, 3, 1))
    lin = linear_cp2(5, 1, 0)
    assert any(act.same_data(lin) for act in found)
    for act in found:
        assert check_rotation_relations(act).ok


def test_search_deterministic():
    run1 = [a.data_key() for a in search_realizable(7, 2, 0, [], 0, 2, 0)]
    run2 = [a.data_key() for a in search_realizable(7, 2, 0, [], 0, 2, 0)]
    assert run1 == run2


def test_search_inconsistent_counts():
    with pytest.raises(InconsistentCounts):
        list(search_realizable(5, 2, 0, [], 0, 3, 0))  # chi != b2 + 2
    with pytest.raises(InconsistentCounts):
        list(search_realizable(5, 1, 0, [], 0, 2, 0))  # 1 point != b2 + 2
    with pytest.raises(InconsistentCounts):
        list(search_realizable(5, 1, 1, [], 1, 3, 1))  # missing alpha


def test_search_results_canonical_and_valid():
    from equibundle.action_model import validate

    found = list(search_realizable(5, 3, 1, [-2], -3, 5, 3))
    for act in found:
        assert validate(act).ok
        # every yielded dataset satisfies the full battery by contract
        assert check_rotation_relations(act).ok
    triple = triple_cp2_bar_action()
    assert any(act.same_data(triple) for act in found)
