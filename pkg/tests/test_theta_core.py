import numpy as np
import pytest
from hypothesis import given, strategies as st

from kummer.theta_core import (
    EVEN_CHARACTERISTICS,
    NUMBERING,
    ODD_CHARACTERISTICS,
    Characteristic,
    PeriodMatrix,
    even_theta_vector,
    genus1_theta,
    random_period_matrix,
    random_point,
    theta,
)

labels = st.integers(1, 16)


def test_numbering_parity():
    assert len(EVEN_CHARACTERISTICS) == 10 and len(ODD_CHARACTERISTICS) == 6
    assert all(not c.is_odd for c in EVEN_CHARACTERISTICS)
    assert all(c.is_odd for c in ODD_CHARACTERISTICS)
    assert Characteristic.parse("01,11").label == 12


@given(labels, labels)
def test_addition_is_a_group(i, j):
    a, b = NUMBERING[i], NUMBERING[j]
    assert (a + b) == (b + a)
    assert (a + b + b) == a
    assert (a + a).label == 1


def test_genus2_double_one_is_even():
    # [11;11] in genus 2 has 4 a.b = 2, so it is even
    assert not Characteristic.parse("11,11").is_odd


@given(labels)
def test_parity_symmetry(k):
    rng = np.random.default_rng(k)
    w = random_period_matrix(rng)
    z = random_point(rng)
    c = NUMBERING[k]
    sign = -1 if c.is_odd else 1
    assert abs(theta(c, -z, w) - sign * theta(c, z, w)) < 1e-10 * max(1, abs(theta(c, z, w)))


def test_period_matrix_validation():
    with pytest.raises(ValueError):
        PeriodMatrix.from_entries(1j, 0.1, -1j)
    w = PeriodMatrix.from_entries(1.1j, 0.2j, 0.9j)
    assert np.all(np.abs(even_theta_vector(w)) > 0)


def test_genus1_jacobi_at_i():
    t = {k: genus1_theta(k, 0, 1j) for k in ("00", "01", "10")}
    assert abs(t["00"] ** 4 - t["01"] ** 4 - t["10"] ** 4) < 1e-12
