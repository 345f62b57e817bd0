"""Tests for the symmetry families and finite-order laws."""

import random
from fractions import Fraction

import pytest

from superflows.cyclotomic import CycNum, root_of_unity
from superflows.flows import ClosedFormFlow, catalog
from superflows.homog import HomPoly, RatVF, monomial_field
from superflows.matgroup import Mat2, matrix_finite_order
from superflows.symmetry import (
    check_field_symmetry,
    check_flow_symmetry,
    cross_check_finite_order,
    delta_tilde,
    diagonal_symmetry_solve,
    family_finite_order,
    flow_symmetry_family,
    gamma_4k1,
    gamma_4k3,
    gamma_sph,
)


def field_points(rng, n=20):
    return [(rng.uniform(0.5, 1.5), rng.uniform(0.5, 1.5)) for _ in range(n)]


def test_identity_is_a_symmetry():
    ok, resid = check_field_symmetry(Mat2.identity(), monomial_field(0, 0, 2, 0))
    assert ok and resid == 0.0


def test_gamma_c_fixes_radical_x_field():
    rng = random.Random(31)
    fam = gamma_4k3(1)
    field = monomial_field(0, 0, 2, 0)
    pts = field_points(rng)
    for _ in range(20):
        member = fam.matrix_numeric(fam.sample_params(rng))
        ok, resid = check_field_symmetry(member, field, pts)
        assert ok, resid


def test_diag_2_3_fails_exponent_relation():
    rng = random.Random(32)
    ok, resid = check_field_symmetry(
        ((2, 0), (0, 3)), monomial_field(0, 0, 2, 0), field_points(rng)
    )
    assert not ok and resid > 1e-3


def test_exact_route_for_cyclotomic_diagonal():
    # diag(c^4, c^3) with c = zeta_5 fixes y^4/x^2 . 0 exactly
    fam = gamma_4k3(1)
    member = fam.matrix_exact(root_of_unity(5))
    ok, resid = check_field_symmetry(member, monomial_field(0, 0, 2, 0))
    assert ok and resid == 0.0


def test_flow_symmetries_all_families():
    rng = random.Random(33)
    for flow in catalog():
        if flow.family == "level0":
            continue
        fam = flow_symmetry_family(flow)
        samples = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(20)]
        for _ in range(20):
            member = fam.matrix_numeric(fam.sample_params(rng))
            ok, resid = check_flow_symmetry(member, flow, samples)
            assert ok, (flow.label, resid)


def test_field_symmetries_all_families():
    # the family of each cataloged flow also fixes that flow's vector field
    rng = random.Random(40)
    for flow in catalog():
        if flow.family == "level0":
            continue
        fam = flow_symmetry_family(flow)
        field = flow.vector_field()
        pts = field_points(rng)
        for _ in range(20):
            member = fam.matrix_numeric(fam.sample_params(rng))
            ok, resid = check_field_symmetry(member, field, pts)
            assert ok, (flow.label, resid)


def test_shear_is_not_a_radical_symmetry():
    rng = random.Random(34)
    flow = ClosedFormFlow("radical_x", 1)
    samples = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(20)]
    ok, resid = check_flow_symmetry(((1, 1), (0, 1)), flow, samples)
    assert not ok and resid > 1e-8


def test_random_matrices_fail_flow_symmetry():
    rng = random.Random(35)
    flow = ClosedFormFlow("parabolic")
    samples = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(20)]
    for _ in range(20):
        entries = [complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(4)]
        if abs(entries[0] * entries[3] - entries[1] * entries[2]) < 0.1:
            continue
        ok, resid = check_flow_symmetry(
            ((entries[0], entries[1]), (entries[2], entries[3])), flow, samples
        )
        assert not ok


def test_family_closure_under_product():
    # gamma_(c1) gamma_(c2) = gamma_(c1 c2) for the diagonal power families
    rng = random.Random(36)
    for fam in (gamma_4k3(1), gamma_4k3(2), gamma_4k1(1)):
        for _ in range(20):
            c1, c2 = fam.sample_params(rng), fam.sample_params(rng)
            m1, m2 = fam.matrix_numeric(c1), fam.matrix_numeric(c2)
            m12 = fam.matrix_numeric(c1 * c2)
            prod = (
                (m1[0][0] * m2[0][0], 0j),
                (0j, m1[1][1] * m2[1][1]),
            )
            assert abs(prod[0][0] - m12[0][0]) <= 1e-9 * abs(m12[0][0])
            assert abs(prod[1][1] - m12[1][1]) <= 1e-9 * abs(m12[1][1])


def test_family_closure_exact():
    fam = gamma_4k3(1)
    c1, c2 = root_of_unity(5), root_of_unity(7, 3)
    assert fam.matrix_exact(c1) * fam.matrix_exact(c2) == fam.matrix_exact(c1 * c2)


def test_diagonal_solve_known_families():
    assert diagonal_symmetry_solve(monomial_field(0, 0, 2, 0)).exponents == (4, 3)
    assert diagonal_symmetry_solve(monomial_field(1, 3, 0, 1)).exponents == (2, 3)
    # k = 0: a diagonal family exists but is only part of the symmetry group
    assert diagonal_symmetry_solve(monomial_field(0, 0, 0, 0)).exponents == (2, 1)


def test_diagonal_solve_rejects_non_monomial():
    square = HomPoly(2, [1, -2, 1])
    with pytest.raises(ValueError):
        diagonal_symmetry_solve(RatVF(square, square))


def test_diagonal_solve_matches_radical_exponents():
    for k in (1, 2, 3):
        fam = diagonal_symmetry_solve(ClosedFormFlow("radical_x", k).vector_field())
        assert fam.exponents == (2 * k + 2, 2 * k + 1)
        fam = diagonal_symmetry_solve(ClosedFormFlow("radical_y", k).vector_field())
        assert fam.exponents == (2 * k, 2 * k + 1)


def test_solved_family_members_fix_the_field():
    rng = random.Random(37)
    field = monomial_field(0, 0, 2, 0)
    fam = diagonal_symmetry_solve(field)
    pts = field_points(rng)
    for _ in range(10):
        ok, resid = check_field_symmetry(fam.matrix_numeric(fam.sample_params(rng)), field, pts)
        assert ok, resid


def test_finite_order_identity_and_infinite():
    assert family_finite_order(gamma_sph(), (1, 0)) == 1
    assert family_finite_order(gamma_sph(), (1, 2)) is None
    assert family_finite_order(delta_tilde(), (2, 1)) is None  # b=2, d=1
    assert family_finite_order(delta_tilde(), (0.5, CycNum.rational(2))) is None


def test_delta_with_sixth_root():
    for b in (0, 3, Fraction(2, 7)):
        assert family_finite_order(delta_tilde(), (b, root_of_unity(6))) == 6


def test_finite_order_against_matrix_powering():
    # family law vs brute-force powering, orders up to 60
    for r in (2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60):
        d = root_of_unity(r)
        for b in (0, 1, Fraction(1, 2)):
            law = family_finite_order(delta_tilde(), (b, d))
            brute = cross_check_finite_order(delta_tilde(), (CycNum.rational(b), d), bound=70)
            assert law == brute, (r, b)
            law = family_finite_order(gamma_sph(), (d, b))
            brute = cross_check_finite_order(gamma_sph(), (d, CycNum.rational(b)), bound=70)
            assert law == brute, (r, b)


def test_diagonal_power_family_orders():
    fam = gamma_4k3(1)  # diag(c^4, c^3)
    assert family_finite_order(fam, CycNum.rational(1)) == 1
    assert family_finite_order(fam, root_of_unity(12)) == 12
    assert family_finite_order(fam, CycNum.rational(2)) is None
    member = fam.matrix_exact(root_of_unity(12))
    assert matrix_finite_order(member, 100) == 12


def test_order_six_generator_exact():
    z3 = root_of_unity(3)
    gamma = gamma_sph().matrix_exact((-(z3 ** 2), CycNum.zero()))
    # matches [[zeta, 0], [zeta + zeta^(-1), -zeta^(-1)]] entrywise
    assert gamma == Mat2(z3, 0, z3 + z3 ** 2, -(z3 ** 2))
    ident = Mat2.identity(gamma.conductor)
    assert gamma ** 6 == ident
    for j in range(1, 6):
        assert gamma ** j != ident
    # and it fixes the sph field exactly
    field = ClosedFormFlow("sph_inf").vector_field()
    assert field.conjugate(gamma) == field


def test_resample_retry_filters_bad_sample_sets():
    # a sample list of nonsense still fails, but a genuine symmetry checked on
    # a fresh draw passes after the retry
    rng = random.Random(39)
    flow = ClosedFormFlow("parabolic")
    fam = delta_tilde()
    member = fam.matrix_numeric(fam.sample_params(rng))
    good = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(10)]
    ok, resid = check_flow_symmetry(member, flow, good, resample=lambda: good)
    assert ok
    off = ((1.7, 0.3), (0.2, 0.9))
    ok, _ = check_flow_symmetry(off, flow, good, resample=lambda: good)
    assert not ok


def test_gamma_sph_random_draw_fixes_sph_flow():
    rng = random.Random(38)
    flow = ClosedFormFlow("sph_inf")
    fam = gamma_sph()
    samples = [(flow.sample_point(rng), flow.sample_time(rng)) for _ in range(20)]
    for _ in range(20):
        ok, resid = check_flow_symmetry(fam.matrix_numeric(fam.sample_params(rng)), flow, samples)
        assert ok, resid
