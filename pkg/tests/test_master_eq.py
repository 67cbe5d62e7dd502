from fractions import Fraction

import numpy as np
import pytest

from growthlab.master_eq import (
    IncompleteDiagonalError,
    degree_distribution,
    residuals,
    solve_q,
    truncation_mass,
)


def exact_q(kmax, lmax):
    """Same recurrence in rational arithmetic."""
    q = {}
    get = lambda k, l: q.get((k, l), Fraction(0))
    for l in range(1, lmax + 1):
        for k in range(kmax + 1):
            src = Fraction(1, 2) if l == 1 and k in (0, 1) else Fraction(0)
            q[k, l] = ((k - 1) * get(k - 1, l) + (k + 1) * get(k + 1, l - 1) + src) / (2 * k + 1)
    return q


@pytest.fixture(scope="module")
def grid():
    return solve_q(400, 400)


def test_initial_values(grid):
    assert grid[0, 1] == 0.5
    assert grid[1, 1] == pytest.approx(1 / 6, abs=1e-17)
    assert grid[2, 1] == pytest.approx(1 / 30, abs=1e-17)
    assert grid[0, 2] == pytest.approx(1 / 6, abs=1e-17)


def test_boundary_and_sign(grid):
    assert np.all(grid.q[:, 0] == 0)
    assert np.all(grid.q >= 0)
    assert grid.q.sum() <= 1


def test_residuals(grid):
    assert np.abs(residuals(grid)).max() <= 1e-14


def test_matches_rational_solution():
    q = exact_q(12, 12)
    g = solve_q(12, 12)
    for (k, l), v in q.items():
        assert g[k, l] == pytest.approx(float(v), rel=1e-13, abs=1e-300)


def test_degree_distribution(grid):
    p = degree_distribution(grid, 10)
    assert p[1] == 0.5
    assert p[2] == pytest.approx(1 / 3, abs=1e-16)
    full = degree_distribution(grid)
    assert 1 - full.sum() < 1e-6


def test_incomplete_diagonal():
    g = solve_q(10, 5)
    with pytest.raises(IncompleteDiagonalError):
        degree_distribution(g, 6)
    assert len(degree_distribution(g)) == 6


def test_truncation_mass():
    assert truncation_mass(solve_q(1, 1)) == pytest.approx(1 / 3)
    assert truncation_mass(solve_q(2, 1)) == pytest.approx(1 - (1 / 2 + 1 / 6 + 1 / 30))
    masses = [truncation_mass(solve_q(m, m)) for m in (10, 50, 100, 400)]
    assert all(0 <= m <= 1 for m in masses)
    assert masses == sorted(masses, reverse=True)
    assert masses[-1] < 1e-6


def test_monotone_mass_sub_grid(grid):
    small = solve_q(40, 30)
    np.testing.assert_allclose(grid.q[:41, :31] >= small.q - 1e-18, True)
    assert grid.q.sum() >= small.q.sum()
