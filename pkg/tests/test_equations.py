import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kummer import equations as E
from kummer.fields import PrimeField, RationalField
from kummer.theta_core import NUMBERING, even_theta_vector, random_period_matrix, random_point

F19 = PrimeField(19)
coords = st.lists(st.integers(-30, 30), min_size=4, max_size=4).filter(any)


@given(coords)
def test_net_and_ranks_exact(b):
    Q = RationalField()
    asq = E.veronese([Q(x) for x in b])
    if any(Q.is_zero(a) for a in asq):
        return
    qs = E.build_equations(asq)
    assert all(E.quadric_rank(q, Q) == 4 for q in qs)
    for q in qs[3:]:
        E.net_coefficients(q, qs[:3], Q)
    assert Q.is_zero(E.detM_check(asq, Q))


@given(coords)
def test_e578_determinant_closed_form(b):
    Q = RationalField()
    asq = E.veronese([Q(x) for x in b])
    if any(Q.is_zero(a) for a in asq):
        return
    # computed value; the printed coefficient -8 does not hold
    assert E.e578_determinant(asq, Q) == -asq[9] * asq[8] ** 2


def test_equations_vanish_on_phi():
    rng = np.random.default_rng(2)
    w = random_period_matrix(rng)
    x = E.phi(random_point(rng), w)
    assert max(E.equation_residuals(x, even_theta_vector(w) ** 2).values()) < 1e-9


@settings(max_examples=20)
@given(st.integers(1, 16))
def test_two_torsion_translation_preserves_surface(k):
    rng = np.random.default_rng(k)
    w = random_period_matrix(rng)
    x = E.two_torsion_translate(E.phi(random_point(rng), w), NUMBERING[k])
    assert max(E.equation_residuals(x, even_theta_vector(w) ** 2).values()) < 1e-9


def test_not_in_net():
    asq = [F19(v) for v in (9, 11, 11, 11, 5, 5, 5, 7, 7, 7)]
    qs = E.build_equations(asq)
    bogus = E.DiagonalQuadric("bad", tuple(F19(v) for v in (1, 0, 0, 0, 0, 0)))
    with pytest.raises(E.NotInNet):
        E.net_coefficients(bogus, qs[:3], F19)


def test_rosenhain_roots_example():
    asq = [F19(v) * 11 for v in (9, 11, 11, 11, 5, 5, 5, 7, 7, 7)]
    lam = E.rosenhain_form(asq, F19)
    assert sorted({0, 1, *(int(v) for v in lam)}) == [0, 1, 4, 9, 11]
