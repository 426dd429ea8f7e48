import pytest

from kummer import finite_field as ff
from kummer.fields import PrimeField

F = PrimeField(19)


def test_example_reproduced():
    out = ff.reproduce_example_19()
    assert out["ok"], out["first_mismatch"]
    assert out["scaling"] == 11


def test_lift_default_and_anchored():
    asq = [F(v) for v in ff.EXAMPLE_VERONESE]
    default = ff.lift_squares(asq, F)
    assert default.check(asq)
    assert [int(r) for r in default.roots] == [3, 7, 7, 7, 9, 9, 9, 8, 8, 8]
    anchored = ff.lift_squares(asq, F, scalings=(ff.anchored_scaling(asq, F),))
    assert tuple(int(r) for r in anchored.roots) == ff.EXAMPLE_LIFT


def test_not_liftable():
    asq = [F(1)] * 9 + [F(2)]  # 2 is a non-residue mod 19, 1 is a residue
    with pytest.raises(ff.NotLiftable):
        ff.lift_squares(asq, F)


@pytest.mark.parametrize("p,nonzero", [(3, 0), (5, 96), (7, 96), (11, 576), (13, 1440), (17, 3360)])
def test_emptiness(p, nonzero):
    assert ff.search_admissible(p) == []
    assert len(ff.search_admissible(p, "nonzero")) == nonzero


def test_p19_points():
    assert sorted(q.b for q in ff.search_admissible(19)) == [(1, 3, 3, 3), (1, 15, 15, 15)]


def test_projective_points_count():
    assert sum(1 for _ in ff.projective_points(5)) == (5**4 - 1) // 4


def test_thirty_two_lines():
    rep = ff.thirty_two_lines(ff.EXAMPLE_B, ff.EXAMPLE_LIFT, F)
    assert rep.ok


def test_e11_verdict():
    out = ff.e11_resolution()
    assert out["verdict"] == "H11"
    assert out["H11"]["on_surface"] and not out["printed X1+X3-X6"]["on_surface"]
