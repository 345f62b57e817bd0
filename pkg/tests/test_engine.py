"""Tests for the invariant-space computation and superflow decision."""

import cmath
import random

import pytest

from superflows.cyclotomic import root_of_unity
from superflows.engine import (
    character_sum_bruteforce,
    classify_alpha,
    find_superflow,
    invariant_space,
    monomial_survival,
)
from superflows.homog import monomial_field
from superflows.matgroup import Mat2, alpha_group, generate_group, tau


def float_character_sum(m, i, ell, component):
    """Independent numeric oracle for the averaging sums."""
    if component == "first":
        w = (-1) ** (i + ell) * cmath.exp(2j * cmath.pi * (2 * i - 2 * ell - 3) / m)
    else:
        w = (-1) ** (i + ell + 1) * cmath.exp(2j * cmath.pi * (2 * i - 2 * ell - 1) / m)
    return sum(w ** s for s in range(2 * m))


def test_survival_known_cases():
    assert monomial_survival(7, 0, 2, "first") is True
    assert monomial_survival(7, 2, 2, "first") is False
    # exponent condition holds but the sign factor kills the second component
    assert monomial_survival(7, 4, 0, "second") is False


def test_survival_against_float_oracle():
    # wide (i, ell) windows, every odd m up to 19
    for m in range(3, 20, 2):
        for i in range(0, 2 * m):
            for ell in range(0, m):
                for component in ("first", "second"):
                    numeric = abs(float_character_sum(m, i, ell, component)) > 1e-6
                    assert monomial_survival(m, i, ell, component) == numeric


def test_bruteforce_sum_exact_values():
    total = character_sum_bruteforce(7, 0, 2, "first")
    assert total == 14
    assert character_sum_bruteforce(7, 2, 2, "first").is_zero()
    assert character_sum_bruteforce(7, 4, 0, "second").is_zero()


def test_invariant_space_trivial_group():
    triv = generate_group([Mat2.identity()])
    assert len(invariant_space(triv, 0, 0)) == 6


def test_invariant_space_known_superflow_fields():
    assert invariant_space(alpha_group(7), 2, 0) == [monomial_field(0, 0, 2, 0)]
    assert invariant_space(alpha_group(5), 0, 1) == [monomial_field(1, 3, 0, 1)]


def test_invariant_space_zero_below_minimal_degree():
    # m = 4k+3: nothing below denominator degree 2k; m = 4k+1: below 2k-1
    for k in (1, 2, 3):
        group = alpha_group(4 * k + 3)
        for deg in range(2 * k):
            for lx in range(deg + 1):
                assert invariant_space(group, lx, deg - lx) == []
        group = alpha_group(4 * k + 1)
        for deg in range(2 * k - 1):
            for lx in range(deg + 1):
                assert invariant_space(group, lx, deg - lx) == []


def test_character_and_reynolds_methods_agree():
    for m in (3, 5, 7):
        group = alpha_group(m)
        for deg in range(0, 4):
            for lx in range(deg + 1):
                fast = invariant_space(group, lx, deg - lx, method="character")
                slow = invariant_space(group, lx, deg - lx, method="reynolds")
                assert fast == slow


def test_find_superflow_examples():
    v7 = find_superflow(alpha_group(7), 4)
    assert v7.status == "superflow"
    assert v7.denom_degree == 2
    assert v7.field == monomial_field(0, 0, 2, 0)

    v8 = find_superflow(alpha_group(8), 6)
    assert v8.status == "none" and v8.shortcut_used

    v3 = find_superflow(alpha_group(3), 2)
    assert v3.status == "superflow"
    assert v3.denom_degree == 0
    assert v3.field == monomial_field(0, 0, 0, 0)


def test_minimal_degree_fields_for_odd_m():
    # m = 4k+3 gives y^(2k+2)/x^(2k) . 0 at degree 2k, nothing below;
    # m = 4k+1 mirrors with 0 . x^(2k+1)/y^(2k-1) at degree 2k-1
    for k in (1, 2, 3):
        m = 4 * k + 3
        verdict = find_superflow(alpha_group(m))
        assert verdict.denom_degree == 2 * k
        assert verdict.field == monomial_field(0, 0, 2 * k, 0)
        m = 4 * k + 1
        verdict = find_superflow(alpha_group(m))
        assert verdict.denom_degree == 2 * k - 1
        assert verdict.field == monomial_field(1, 2 * k + 1, 0, 2 * k - 1)


def test_diagonal_inverse_pair_is_not_unique():
    # xi = zeta^(-1) always yields at least a two-dimensional space
    for m in (5, 7):
        group = generate_group([Mat2.diagonal(root_of_unity(m), root_of_unity(m, m - 1))])
        verdict = find_superflow(group, 4)
        assert verdict.status == "not_unique"
        assert verdict.dimension >= 2


def test_scaling_a_candidate_does_not_change_the_verdict():
    group = alpha_group(7)
    space = invariant_space(group, 2, 0)
    scaled = [f.scale(root_of_unity(7, 3) * 5) for f in space]
    assert [f.normalized() for f in scaled] == space


def test_shortcut_agrees_with_generic_scan():
    for m in (4, 8, 12):
        group = alpha_group(m)
        fast = find_superflow(group)
        slow = find_superflow(group, max_denom_degree=group.order, minus_i_shortcut=False)
        assert fast.status == slow.status == "none"
        assert fast.shortcut_used and not slow.shortcut_used


def test_classification_statuses():
    rows = classify_alpha(3, 12)
    statuses = {row.m: row.status for row in rows}
    for m in (3, 5, 6, 7, 9, 10, 11):
        assert statuses[m] == "superflow"
    for m in (4, 8, 12):
        assert statuses[m] == "none"


def test_classification_fields_and_reductions():
    rows = {row.m: row for row in classify_alpha(3, 12)}
    assert rows[7].field == monomial_field(0, 0, 2, 0)
    assert rows[7].field.pretty() == "y^4/x^2 • 0"
    assert rows[6].reduction == 3
    assert rows[10].reduction == 5
    assert rows[7].reduction is None
    assert rows[6].group_order == 6


def test_verdict_invariant_under_tau_conjugation():
    for m in (5, 7):
        group = alpha_group(m)
        conjugated = group.conjugated_by(tau())
        a = find_superflow(group)
        b = find_superflow(conjugated)
        assert a.status == b.status == "superflow"
        assert a.denom_degree == b.denom_degree
        assert b.field == a.field.conjugate(tau()).normalized()


def test_antidiagonal_group_uses_reynolds_path():
    # <tau> contains an antidiagonal element, so the scan runs on plain
    # averaging; swap-invariant polynomial fields form a 3-dim space
    group = generate_group([tau()])
    verdict = find_superflow(group, 2)
    assert verdict.status == "not_unique"
    assert verdict.denom_degree == 0
    assert verdict.dimension == 3
    space = invariant_space(group, 0, 0)
    for field in space:
        assert field.conjugate(tau()) == field


def test_rejects_non_monomial_preserving_groups():
    shear = Mat2(1, 1, 0, -1)
    group = generate_group([shear])
    with pytest.raises(ValueError):
        find_superflow(group)


def test_classify_rejects_bad_range():
    with pytest.raises(ValueError):
        classify_alpha(5, 4)
    with pytest.raises(ValueError):
        classify_alpha(1, 4)
