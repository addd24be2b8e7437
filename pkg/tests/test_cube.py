"""Transform kernel: round trips, Plancherel, convolution, adjacency."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kwisent.cube import (
    CubeFunction,
    Density,
    Spectrum,
    adjacency_apply,
    convolve,
    convolve_direct,
    dimension_cap,
    inner_product,
    inverse_wht,
    level_max_abs,
    level_profile,
    point_mass_density,
    subset_sizes,
    uniform_density,
    weight_one_indicator,
    wht,
)
from kwisent.errors import DimensionError


def random_function(n, rng):
    return CubeFunction(n, rng.uniform(-1.0, 1.0, size=1 << n))


def wht_direct(f):
    """O(4^n) definition of the transform; the independent oracle."""
    size = f.size
    coeffs = np.empty(size)
    for s in range(size):
        signs = 1.0 - 2.0 * (np.bitwise_count(np.arange(size) & s) & 1)
        coeffs[s] = float((f.values * signs).sum()) / size
    return coeffs


def convolve_loop(f, g):
    """Literal double sum, pure Python."""
    size = f.size
    out = np.zeros(size)
    for x in range(size):
        out[x] = sum(f.values[y] * g.values[y ^ x] for y in range(size)) / size
    return out


def test_uniform_density_spectrum():
    s = wht(uniform_density(4))
    expect = np.zeros(16)
    expect[0] = 1.0
    np.testing.assert_array_equal(s.coeffs, expect)


def test_point_mass_spectrum_all_ones():
    s = wht(point_mass_density(4))
    np.testing.assert_array_equal(s.coeffs, np.ones(16))


@pytest.mark.parametrize("n", [3, 5])
def test_weight_one_indicator_spectrum(n):
    # 2^n * coeff(S) = n - 2|S|, the adjacency eigenvalue on level |S|
    coeffs = wht(weight_one_indicator(n)).coeffs * (1 << n)
    levels = subset_sizes(n).astype(int)
    np.testing.assert_array_equal(coeffs, n - 2.0 * levels)


def test_wht_matches_direct_summation_oracle():
    rng = np.random.default_rng(1)
    for n in (2, 4, 6):
        f = random_function(n, rng)
        np.testing.assert_allclose(wht(f).coeffs, wht_direct(f), atol=1e-12)


def test_inverse_of_unit_spectra():
    e0 = np.zeros(8)
    e0[0] = 1.0
    np.testing.assert_array_equal(inverse_wht(Spectrum(3, e0)).values, np.ones(8))
    back = inverse_wht(Spectrum(3, np.ones(8)))
    np.testing.assert_array_equal(back.values, point_mass_density(3).values)


@given(st.integers(min_value=1, max_value=12), st.integers())
@settings(max_examples=30)
def test_round_trip_property(n, seed):
    rng = np.random.default_rng(seed % (2**32))
    f = random_function(n, rng)
    back = inverse_wht(wht(f))
    assert np.max(np.abs(back.values - f.values)) < 1e-12


def test_convolution_identity_element():
    rng = np.random.default_rng(2)
    f = random_function(6, rng)
    out = convolve(f, point_mass_density(6))
    np.testing.assert_allclose(out.values, f.values, atol=1e-12)


def test_convolution_with_uniform_is_constant_mean():
    rng = np.random.default_rng(3)
    g = random_function(5, rng)
    out = convolve(uniform_density(5), g)
    np.testing.assert_allclose(out.values, g.values.mean(), atol=1e-12)


def test_convolution_matches_double_sum_oracle():
    rng = np.random.default_rng(4)
    for n in (2, 4, 6):
        f, g = random_function(n, rng), random_function(n, rng)
        expect = convolve_loop(f, g)
        np.testing.assert_allclose(convolve(f, g).values, expect, atol=1e-10)
        np.testing.assert_allclose(convolve_direct(f, g).values, expect, atol=1e-10)


def test_convolution_theorem_per_coefficient():
    rng = np.random.default_rng(5)
    for n in (4, 8):
        f, g = random_function(n, rng), random_function(n, rng)
        lhs = wht(convolve(f, g)).coeffs
        rhs = wht(f).coeffs * wht(g).coeffs
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_inner_product_basics():
    one = uniform_density(5)
    assert inner_product(one, one) == 1.0


@given(st.integers())
@settings(max_examples=40)
def test_plancherel_property(seed):
    rng = np.random.default_rng(seed % (2**32))
    f, g = random_function(8, rng), random_function(8, rng)
    spectral = float((wht(f).coeffs * wht(g).coeffs).sum())
    assert abs(inner_product(f, g) - spectral) < 1e-10


def test_adjacency_on_constants_and_point_mass():
    n = 6
    af = adjacency_apply(uniform_density(n))
    np.testing.assert_array_equal(af.values, np.full(1 << n, float(n)))
    ap = adjacency_apply(CubeFunction(n, (np.arange(1 << n) == 0).astype(float)))
    np.testing.assert_array_equal(ap.values, weight_one_indicator(n).values)


def test_adjacency_matches_neighbor_loop_exactly():
    rng = np.random.default_rng(6)
    for n in (3, 7, 10):
        f = CubeFunction(n, rng.integers(-50, 50, size=1 << n).astype(float))
        expect = np.zeros(1 << n)
        for x in range(1 << n):
            expect[x] = sum(f.values[x ^ (1 << i)] for i in range(n))
        np.testing.assert_array_equal(adjacency_apply(f).values, expect)


def test_adjacency_equals_scaled_convolution():
    # pins the 2^n factor between the adjacency operator and convolution
    rng = np.random.default_rng(7)
    for n in (3, 6, 9):
        f = random_function(n, rng)
        lhs = adjacency_apply(f).values
        rhs = (1 << n) * convolve(weight_one_indicator(n), f).values
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_adjacency_spectral_multipliers():
    rng = np.random.default_rng(8)
    n = 7
    f = random_function(n, rng)
    lhs = wht(adjacency_apply(f)).coeffs
    rhs = (n - 2.0 * subset_sizes(n)) * wht(f).coeffs
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


def test_rayleigh_quotient_capped_by_degree():
    rng = np.random.default_rng(9)
    n = 8
    x = rng.uniform(0.1, 1.0, size=1 << n)
    for _ in range(200):
        f = CubeFunction(n, x)
        af = adjacency_apply(f)
        quotient = inner_product(af, f) / inner_product(f, f)
        assert abs(quotient) <= n + 1e-9
        x = af.values / np.linalg.norm(af.values)


@given(st.integers())
@settings(max_examples=40)
def test_rayleigh_nonnegative_for_nonnegative_functions(seed):
    rng = np.random.default_rng(seed % (2**32))
    f = CubeFunction(6, rng.uniform(0.0, 1.0, size=64))
    assert inner_product(adjacency_apply(f), f) >= 0.0


def test_level_profile_examples():
    n = 5
    np.testing.assert_array_equal(
        level_profile(wht(uniform_density(n))), np.eye(n + 1)[0]
    )
    profile = level_profile(wht(point_mass_density(n)))
    expect = np.array([1.0, 5.0, 10.0, 10.0, 5.0, 1.0])
    np.testing.assert_array_equal(profile, expect)


def test_level_profile_sums_to_second_moment():
    rng = np.random.default_rng(10)
    f = random_function(9, rng)
    total = level_profile(wht(f)).sum()
    assert abs(total - inner_product(f, f)) < 1e-10


def test_level_max_abs_tracks_largest_coefficient():
    coeffs = np.zeros(16)
    coeffs[0b0011] = -0.25
    coeffs[0b0101] = 0.5
    out = level_max_abs(Spectrum(4, coeffs))
    np.testing.assert_array_equal(out, [0.0, 0.0, 0.5, 0.0, 0.0])


def test_validation_errors():
    with pytest.raises(DimensionError):
        CubeFunction(3, np.zeros(7))
    with pytest.raises(ValueError):
        CubeFunction(2, np.array([1.0, np.nan, 0.0, 0.0]))
    with pytest.raises(ValueError):
        Density(2, np.array([2.0, 2.0, -0.5, 0.5]))
    with pytest.raises(ValueError):
        Density(2, np.array([1.0, 1.0, 1.0, 1.5]))
    with pytest.raises(DimensionError):
        convolve(uniform_density(3), uniform_density(4))


def test_dimension_cap_env_override(monkeypatch):
    with pytest.raises(DimensionError):
        CubeFunction(dimension_cap() + 1, np.zeros(4))  # size check after cap check
    monkeypatch.setenv("KWISENT_MAX_N", "4")
    assert dimension_cap() == 4
    with pytest.raises(DimensionError):
        uniform_density(5)


def test_values_are_immutable():
    f = uniform_density(3)
    with pytest.raises(ValueError):
        f.values[0] = 2.0
