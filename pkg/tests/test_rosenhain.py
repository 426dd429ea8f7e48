import numpy as np
import pytest

from kummer import rosenhain as R
from kummer.equations import build_equations
from kummer.theta_core import even_theta_vector, random_period_matrix


def test_counts_and_orbits():
    assert R.quadruple_counts() == {"distinct": 80, "multiset": 80}
    orbits = R.quadruple_orbits()
    assert sorted(len(o) for o in orbits) == [4] * 20


def test_printed_table_matches_expansion():
    matched = R.printed_quadruples()
    assert len(matched) == 20 and all(len(v) == 1 for v in matched.values())
    computed = R.computed_incidence()
    for name, rec in R.PRINTED_INCIDENCE.items():
        assert str(computed[name][0]) == str(rec)


def test_table_has_80_distinct():
    table = R.hyperplane_table()
    assert len(table) == len({h.key for h in table}) == 80


def test_hyperplanes_contain_their_lines():
    rng = np.random.default_rng(5)
    a = even_theta_vector(random_period_matrix(rng))
    lines = R.thirty_two_lines(a)
    assert len(lines) == 32
    quadrics = build_equations(a**2)
    assert all(R.line_on_surface(line, quadrics) for line in lines.values())
    for h, inc in R.hyperplane_table_with_incidence()[:12]:
        form = h.coefficients(a)
        for k in inc.tropes:
            assert R.hyperplane_contains_line(form, lines[f"D{k}"])
        for k in inc.exceptionals:
            assert R.hyperplane_contains_line(form, lines[f"E{k}"])


def test_F_identity_sign():
    rng = np.random.default_rng(1)
    from kummer.theta_core import random_point

    r = R.F_identity_ratio(random_point(rng), random_period_matrix(rng))
    assert abs(r - 1) < 1e-9  # +1/4, not the printed -1/4


def test_vanishing_table():
    rng = np.random.default_rng(0)
    assert (R.vanishing_table_check(random_period_matrix(rng)) == R.printed_vanishing_matrix()).all()


def test_rank_deficient_system():
    with pytest.raises(R.RankDeficient):
        R.line_from_hyperplanes([[1, 0, 0, 0, 0, 0]] * 4)
