"""Cartan data, pairings, the invariant form, and uniform reflections."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from alcoves.rootdata import (
    Weight,
    build_affine_data,
    coroot_of_root,
    data_to_json,
    delta_weight,
    form,
    fundamental_weights,
    inverse_cartan,
    lambda0,
    pair,
    positive_roots,
    reflect,
    rho,
    root_coords,
    root_is_negative,
    simple_coroot,
    simple_root,
    theta,
    theta_coroot,
    weight,
)

A1 = build_affine_data("A", 1)
A2 = build_affine_data("A", 2)
A3 = build_affine_data("A", 3)


def test_a1_cartan_matrix():
    assert A1.cartan == ((2, -2), (-2, 2))


def test_a2_cartan_matrix():
    assert A2.cartan == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def test_cartan_transpose_convention():
    # cartan[j][i] = <alpha_i, h_j> for every node pair
    for data in (A1, A2, A3):
        for i in data.nodes():
            for j in data.nodes():
                assert pair(simple_root(data, i), simple_coroot(data, j)) == \
                    data.cartan[j][i]


def test_unsupported_types():
    with pytest.raises(ValueError, match="not simply laced"):
        build_affine_data("B", 2)
    with pytest.raises(ValueError, match="symmetrizer"):
        build_affine_data("C", 3)
    with pytest.raises(ValueError, match="unsupported rank for type D"):
        build_affine_data("D", 1)
    with pytest.raises(ValueError):
        build_affine_data("A", 0)


def test_alpha0_is_delta_minus_theta():
    for data in (A1, A2, A3):
        a0 = simple_root(data, 0)
        assert a0 == delta_weight(data) - theta(data)


def test_alpha0_coroot():
    assert simple_coroot(A1, 0).k == (-1,) and simple_coroot(A1, 0).kK == 1
    assert simple_coroot(A2, 0).k == (-1, -1) and simple_coroot(A2, 0).kK == 1


def test_delta_pairs_to_zero():
    d = delta_weight(A2)
    for j in A2.nodes():
        assert pair(d, simple_coroot(A2, j)) == 0


def test_lambda0_pairings():
    L0 = lambda0(A2)
    assert pair(L0, simple_coroot(A2, 0)) == 1
    for i in A2.finite_nodes():
        assert pair(L0, simple_coroot(A2, i)) == 0


def test_theta_equals_rho_in_a2():
    assert theta(A2) == rho(A2)
    assert theta(A2).omega == (1, 1)


def test_a1_simple_root_is_twice_omega():
    assert simple_root(A1, 1).omega == (2,)


def test_fundamental_weights_pairings():
    for data in (A1, A2, A3):
        omegas, lambdas, rh, rhv = fundamental_weights(data)
        for i, om in enumerate(omegas, start=1):
            for j in data.finite_nodes():
                assert pair(om, simple_coroot(data, j)) == int(i == j)
        # Lambda_i = omega_i + comark_i Lambda_0; Lambda_i(alpha_j_vee) = delta_ij
        for i, Li in enumerate(lambdas):
            for j in data.nodes():
                assert pair(Li, simple_coroot(data, j)) == int(i == j)
        assert rh == rho(data)
        assert all(k == 1 for k in rhv.k)


def test_inverse_cartan_values():
    assert inverse_cartan(A1) == ((Fraction(1, 2),),)
    assert inverse_cartan(A2) == (
        (Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(2, 3)),
    )


def test_form_normalization():
    # (alpha_i, alpha_i) = 2 and (omega_i, omega_j) = (C^-1)_ij
    for data in (A1, A2, A3):
        cinv = inverse_cartan(data)
        for i in data.finite_nodes():
            assert form(data, simple_root(data, i), simple_root(data, i)) == 2
            for j in data.finite_nodes():
                oi = weight(data, omega=tuple(int(a == i) for a in data.finite_nodes()))
                oj = weight(data, omega=tuple(int(a == j) for a in data.finite_nodes()))
                assert form(data, oi, oj) == cinv[i - 1][j - 1]


def test_form_computes_coroot_pairings():
    # form(lam, beta) = <lam, beta_vee> for roots beta
    for data in (A1, A2):
        for beta in positive_roots(data):
            bv = coroot_of_root(data, beta)
            lam = rho(data)
            assert form(data, lam, beta) == pair(lam, bv)


def test_reflect_s0_on_level_two():
    lam = weight(A1, omega=(1,), level=2)
    assert reflect(A1, 0, lam) == Weight(Fraction(-1), (3,), 2)


def test_reflect_s0_on_alpha1():
    out = reflect(A1, 0, simple_root(A1, 1))
    assert out == Weight(Fraction(2), (-2,), 0)


def test_reflections_are_involutions():
    lam = weight(A2, delta=3, omega=(2, -1), level=1)
    for i in A2.nodes():
        assert reflect(A2, i, reflect(A2, i, lam)) == lam


def test_positive_root_counts():
    assert len(positive_roots(A1)) == 1
    assert len(positive_roots(A2)) == 3
    assert len(positive_roots(A3)) == 6


def test_root_sign_classification():
    assert not root_is_negative(A2, simple_root(A2, 1))
    assert root_is_negative(A2, -simple_root(A2, 1))
    assert not root_is_negative(A2, simple_root(A2, 0))   # delta - theta > 0
    assert root_is_negative(A2, -simple_root(A2, 0))
    with pytest.raises(ValueError):
        root_is_negative(A2, weight(A2))


def test_root_coords_of_theta():
    assert root_coords(A2, theta(A2)) == (Fraction(1), Fraction(1))
    assert theta_coroot(A2).k == (1, 1)


def test_a0_coroot_pairs_with_theta():
    # <theta, alpha_0_vee> = -2 and <alpha_0, h_theta> = -2
    assert pair(theta(A2), simple_coroot(A2, 0)) == -2
    from alcoves.rootdata import CorootVec
    assert pair(simple_root(A2, 0), CorootVec(A2.comarks, 0)) == -2


def test_json_round_trip_shape():
    blob = data_to_json(A2)
    assert blob["type"] == "A" and blob["rank"] == 2
    assert blob["cartan"][0][1] == -1


small_weights = st.builds(
    lambda d, a, b, lv: weight(A2, delta=d, omega=(a, b), level=lv),
    st.integers(-4, 4), st.integers(-5, 5), st.integers(-5, 5),
    st.integers(-3, 3),
)


@given(small_weights)
def test_reflect_preserves_level_and_form(lam):
    for i in A2.nodes():
        out = reflect(A2, i, lam)
        assert out.level == lam.level
        # the finite-part form changes only through the delta/level mix;
        # at level 0 it is preserved on the nose
        if lam.level == 0:
            assert form(A2, out, out) == form(A2, lam, lam)


@given(small_weights, small_weights)
def test_form_is_symmetric_and_bilinear(x, y):
    assert form(A2, x, y) == form(A2, y, x)
    assert form(A2, x + y, x + y) == \
        form(A2, x, x) + 2 * form(A2, x, y) + form(A2, y, y)


@given(st.integers(1, 4))
def test_row_zero_matches_marks(n):
    data = build_affine_data("A", n)
    # pairing of alpha_0 against each finite coroot agrees with -theta
    for j in data.finite_nodes():
        assert data.cartan[j][0] == -pair(theta(data), simple_coroot(data, j))
