import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catenoid import CliffordSpec, DomainError, SpaceForm, clifford_radii, clifford_sff, warp


@pytest.mark.parametrize("c", [-2.0, -1.0, 0.0, 1.0, 3.0])
def test_warp_initial_values(c):
    w = warp(SpaceForm(c, 3), 0.0)
    assert (w.f, w.df, w.ddf) == (0.0, 1.0, 0.0)


def test_warp_closed_forms():
    assert warp(SpaceForm(-1.0, 3), 1.0).f == pytest.approx(1.1752011936438015, rel=1e-15)
    assert warp(SpaceForm(-1.0, 3), 1.0).df == pytest.approx(1.5430806348152438, rel=1e-15)
    assert warp(SpaceForm(0.0, 3), 2.5).f == 2.5
    w = warp(SpaceForm(4.0, 3), 0.3)
    assert w.f == pytest.approx(math.sin(0.6) / 2.0, rel=1e-15)
    assert w.df == pytest.approx(math.cos(0.6), rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(c=st.floats(-4.0, 4.0), t=st.floats(0.0, 0.999))
def test_warp_pythagorean_identity(c, t):
    sf = SpaceForm(c, 3)
    y = t * min(sf.y_max, 3.0)
    w = warp(sf, y)
    scale = w.df**2 + abs(c) * w.f**2
    assert abs(w.df**2 + c * w.f**2 - 1.0) <= 1e-14 * scale
    assert w.ddf == -c * w.f


@pytest.mark.parametrize("c", [1e-9, -1e-9, 0.5e-3, -0.5e-3])
def test_warp_series_branch_matches_closed_form(c):
    mpmath = pytest.importorskip("mpmath")
    sf = SpaceForm(c, 3)
    y0 = math.sqrt(1e-8 / abs(c))
    k = mpmath.sqrt(abs(mpmath.mpf(c)))
    for y in (y0 * (1 - 1e-6), y0 * (1 + 1e-6)):
        w = warp(sf, y)
        if c < 0:
            f, df = mpmath.sinh(k * y) / k, mpmath.cosh(k * y)
        else:
            f, df = mpmath.sin(k * y) / k, mpmath.cos(k * y)
        assert w.f == pytest.approx(float(f), rel=2e-16)
        assert w.df == pytest.approx(float(df), rel=2e-16)


def test_warp_domain():
    with pytest.raises(DomainError):
        warp(SpaceForm(0.0, 3), -0.1)
    with pytest.raises(DomainError):
        warp(SpaceForm(1.0, 3), 2.0)
    assert warp(SpaceForm(1.0, 3), math.pi / 2).f == pytest.approx(1.0)


def test_spaceform_validation():
    for c, n in [(math.nan, 3), (math.inf, 3), (0.0, 1), (0.0, 2.5)]:
        with pytest.raises(DomainError):
            SpaceForm(c, n)
    assert SpaceForm(4.0, 3).y_max == pytest.approx(math.pi / 4)
    assert math.isinf(SpaceForm(-1.0, 3).y_max)


@pytest.mark.parametrize("m,n,c", [(0, 3, 1.0), (3, 3, 1.0), (1, 3, 0.0), (1, 3, -1.0)])
def test_clifford_spec_validation(m, n, c):
    with pytest.raises(DomainError):
        CliffordSpec(m, n, c)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("n", range(2, 9))
def test_clifford_sff(n, c):
    for m in range(1, n):
        spec = CliffordSpec(m, n, c)
        sff = clifford_sff(spec)
        assert sff.trace == 0.0
        assert sff.norm_sq == pytest.approx(n * c, rel=1e-12)
        assert sff.lam == pytest.approx(math.sqrt(c) * math.sqrt((n - m) / m), rel=1e-14)
        assert sff.nu == pytest.approx(-math.sqrt(c) * math.sqrt(m / (n - m)), rel=1e-14)
        assert sorted(sff.eigenvalues()) == sorted([sff.lam] * m + [sff.nu] * (n - m))
        r1, r2 = clifford_radii(spec)
        # the two factor spheres lie on the sphere of radius 1/sqrt(c)
        assert r1 * r1 + r2 * r2 == pytest.approx(1.0 / c, rel=1e-14)
        # principal curvatures of S^m(r1) x S^(n-m)(r2) in S^(n+1)(1/sqrt c)
        assert sff.lam == pytest.approx(r2 / (r1 * math.sqrt(1.0 / c)) * c * (1.0 / c), rel=1e-12)


def test_clifford_unit_sphere_values():
    sff = clifford_sff(CliffordSpec(1, 3))
    assert sff.lam == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert sff.nu == pytest.approx(-math.sqrt(0.5), rel=1e-15)
    assert sff.norm_sq == pytest.approx(3.0, rel=1e-15)
