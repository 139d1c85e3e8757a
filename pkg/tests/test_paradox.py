import math
from decimal import Context, Decimal

import pytest

from convsphere.exact import p_hyper
from convsphere.montecarlo import estimate_coverage
from convsphere.paradox import analyze, inner_radius_decimal, l_max_decimal


def test_ten_dimensions():
    rep = analyze(10)
    assert rep.inner_radius == pytest.approx(2.162277660, abs=1e-9)
    assert rep.l_max == pytest.approx(12.649110640, abs=1e-9)
    assert rep.inner_exceeds_2 and rep.inner_pokes_outside
    assert rep.face_distance == 2.0
    assert rep.corner_sphere_count == 1024
    assert rep.frac_corner_exact == pytest.approx(0.0024904, rel=1e-4)


def test_boundary_cases():
    assert analyze(4).inner_radius == 1.0
    nine = analyze(9)
    assert nine.inner_radius == 2.0
    assert not nine.inner_exceeds_2
    assert not nine.inner_pokes_outside


def test_threshold_is_ten():
    assert min(n for n in range(2, 200) if analyze(n).inner_exceeds_2) == 10
    assert all(analyze(n).inner_exceeds_2 == (n >= 10) for n in range(2, 200))


@pytest.mark.parametrize("n", range(2, 60))
def test_report_invariants(n):
    rep = analyze(n)
    assert rep.inner_radius > 0
    assert rep.l_max == pytest.approx(2 * (2 * math.sqrt(n)))
    assert rep.frac_corner_exact == float(p_hyper(n))
    total = rep.frac_corner_exact + rep.frac_inner_raw + rep.frac_uncovered_lower_bound
    assert total == pytest.approx(1.0, abs=1e-12)
    # inner sphere tangent to the corner spheres
    assert rep.inner_radius + 1 == math.sqrt(n)


@pytest.mark.parametrize("n", [2, 3, 10, 37, 1000])
def test_tangency_high_precision(n):
    ctx = Context(prec=60)
    r = inner_radius_decimal(n, 60)
    assert ctx.add(r, Decimal(1)) == ctx.sqrt(Decimal(n))


def test_l_max_ten_to_twelve_digits():
    assert str(Context(prec=12).plus(l_max_decimal(10))) == "12.6491106407"


def test_rejects_small_n():
    with pytest.raises(ValueError):
        analyze(1)
    with pytest.raises(TypeError):
        analyze(2.5)


@pytest.mark.parametrize("n", range(2, 9))
def test_corner_fraction_matches_sampling(n):
    rep = analyze(n)
    cov = estimate_coverage(n, 200_000, seed=100 + n)
    se = cov.std_err(rep.frac_corner_exact)
    assert abs(cov.frac_corner - rep.frac_corner_exact) <= 4 * se


@pytest.mark.parametrize("n", range(2, 10))
def test_inner_fraction_raw_matches_sampling_before_clipping(n):
    # for n < 10 the inner ball lies inside the cube, so the raw fraction is exact
    rep = analyze(n)
    cov = estimate_coverage(n, 200_000, seed=200 + n)
    se = cov.std_err(rep.frac_inner_raw)
    assert abs(cov.frac_inner - rep.frac_inner_raw) <= 4 * se
