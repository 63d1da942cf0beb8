import math
import pytest
from hypothesis import given, settings, strategies as st
from bounds import (
    argmin_x,
    best_beta,
    beta_sweep,
    boundary_term,
    case_two_terms,
    combined_lower_bound,
    curve,
    curve_minimizer,
    f_eval,
    f_expanded,
    line,
    min_f,
    plot_fig1,
    sweep_betas,
)


def test_f_at_corners():
    assert f_eval(0.0, 0.0, 0.3, 1.0) == pytest.approx(1 - math.exp(-1))
    assert f_eval(1.0, 1.0, 0.7, 0.89) == pytest.approx(1 - math.exp(-0.89))
    assert f_eval(0.0, 1.0, 1.0, 0.89) == pytest.approx(0.66219, abs=1e-5)


@pytest.mark.parametrize("z1, z2, x", [(0.6, 0.5, 0.0), (-0.1, 0.5, 0.0), (0.2, 1.2, 0.0), (0.1, 0.2, 1.5)])
def test_f_domain(z1, z2, x):
    with pytest.raises(ValueError):
        f_eval(z1, z2, x, 0.89)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.0, 1.0),
    st.floats(0.05, 1.0),
)
def test_expanded_form_agrees(a, b, x, beta):
    z1, z2 = min(a, b), max(a, b)
    assert f_expanded(z1, z2, x, beta) == pytest.approx(f_eval(z1, z2, x, beta), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.05, 1.0))
def test_argmin_x_is_an_endpoint_minimum(a, b, beta):
    z1, z2 = min(a, b), max(a, b)
    x = argmin_x(z1, z2, beta)
    best = f_eval(z1, z2, x, beta)
    for other in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert best <= f_eval(z1, z2, other, beta) + 1e-12


def test_curve_minimizer_is_stationary():
    beta = 0.89
    z = curve_minimizer(beta)
    assert z == pytest.approx(1 + math.log(line(beta) / beta) / beta)
    for dz in (-0.01, 0.01):
        assert curve(beta, z) <= curve(beta, z + dz)


def test_curve_matches_f_on_z1_zero():
    beta = 0.95
    for z2 in (0.1, 0.4, 0.8):
        assert curve(beta, z2) == pytest.approx(f_eval(0.0, z2, 1.0, beta))


def test_boundary_term_at_one():
    assert boundary_term(0.9, 1.0) == pytest.approx(line(0.9))


@pytest.mark.parametrize("beta, expected", [(0.89, 0.589313), (1.0, 0.554179)])
def test_min_f_values(beta, expected):
    report = min_f(beta, grid=256)
    assert report.minimum == pytest.approx(expected, abs=1e-4)
    assert report.minimum <= report.grid_minimum + 1e-12
    assert report.line == pytest.approx(line(beta))
    assert len(report.curve_x) == 1000


def test_min_f_is_a_lower_bound():
    report = min_f(0.89, grid=256)
    for z1, z2, x in [(0.0, 0.5, 1.0), (0.3, 0.6, 0.0), (0.0, 0.0, 0.0), (0.5, 1.0, 1.0)]:
        assert f_eval(z1, z2, x, 0.89) >= report.minimum - 1e-9


def test_min_f_input_checks():
    with pytest.raises(ValueError, match="grid"):
        min_f(0.89, grid=16)
    with pytest.raises(ValueError, match="beta"):
        min_f(1.5)


def test_case_two_terms_order():
    first, second = case_two_terms(0.89)
    assert first == pytest.approx(curve(0.89, curve_minimizer(0.89)))
    assert second <= line(0.89) + 1e-12


def test_combined_lower_bound_is_f():
    assert combined_lower_bound(0.1, 0.4, 0.7, 0.89) == f_eval(0.1, 0.4, 0.7, 0.89)


def test_sweep_betas():
    betas = sweep_betas()
    assert betas[0] == 0.8 and betas[-1] == 1.0
    assert len(betas) == 21


def test_best_beta_small_sweep():
    table = beta_sweep([0.85, 0.89, 0.95], grid=256)
    assert list(table.columns) == ["beta", "minimum", "z1", "z2", "x", "source", "line"]
    assert best_beta(table) == 0.89


@pytest.mark.slow
def test_best_beta_full_sweep():
    table = beta_sweep()
    assert best_beta(table) == 0.89
    assert table["minimum"].max() >= 0.5893


def test_plot_fig1(tmp_path):
    out = plot_fig1(0.89, 200, str(tmp_path / "figs" / "fig1.svg"))
    text = open(out).read()
    assert text.lstrip().startswith("<?xml") or "<svg" in text


def test_plot_needs_samples(tmp_path):
    with pytest.raises(ValueError):
        plot_fig1(0.89, 10, str(tmp_path / "x.svg"))
