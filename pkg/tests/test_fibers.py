import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kummer import fibers
from kummer.fields import PrimeField, RationalField

Q = RationalField()


@pytest.mark.parametrize(
    "b,tag",
    [((1, 0, 0, 0), fibers.Stratum.EIGHT_PLANES), ((2, 3, 0, 0), fibers.Stratum.CONE_PAIR), ((1, 3, 3, 3), fibers.Stratum.SMOOTH_JACOBIAN)],
)
def test_classify(b, tag):
    assert fibers.classify(b, Q).tag == tag


def test_pattern_counts():
    counts = {tag: len(p) for tag, p in fibers.STRATUM_PATTERNS.items()}
    assert counts == {fibers.Stratum.PRODUCT_ABELIAN: 10, fibers.Stratum.CONE_PAIR: 15, fibers.Stratum.EIGHT_PLANES: 15}


def test_product_fiber_exact():
    F = PrimeField(10007)
    rng = np.random.default_rng(0)
    while True:
        s, t = [int(v) for v in rng.integers(1, F.p, 2)], [int(v) for v in rng.integers(1, F.p, 2)]
        try:
            pf = fibers.product_fiber(s, t, F)
            break
        except (fibers.NoRoot, fibers.OnBoundary):
            continue
    assert pf.ok
    assert all(F.is_zero(v) for v in pf.data.pythagorean())


def test_product_fiber_boundary():
    with pytest.raises(fibers.OnBoundary):
        fibers.product_fiber((1, 1), (2, 1), Q)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 40), st.integers(2, 40))
def test_cone_pair_relations(t0, t1):
    if t0 == t1:
        return
    cp = fibers.cone_pair_fiber((t0, t1), Q)
    assert cp.relations_hold
    assert cp.identically_zero == ["E3"]
    assert all(r < 3 for r in cp.vertex_jacobian_rank.values())


def test_cone_pair_on_corner():
    with pytest.raises(fibers.OnCorner):
        fibers.cone_pair_fiber((1, 1), Q)


def test_corner():
    cf = fibers.corner_fiber(Q)
    assert cf.face_vector == (8, 12, 6)
    assert cf.planes_on_fiber
    assert cf.identically_zero == ["E3", "E6", "E7"]


@pytest.mark.parametrize("stratum", ["L", "P0"])
def test_minors(stratum):
    rng = np.random.default_rng(1)
    for i in range(3):
        b, x = fibers.sample_stratum_point(stratum, rng, x1_zero=bool(i % 2))
        assert all(item["ok"] for item in fibers.smoothness_minors(b, x, stratum).values())


def test_genus1_model():
    res = fibers.genus1_model_check(0.1 + 1.2j, 0.13 - 0.05j)
    assert max(res.values()) < 1e-8


def test_segre_diagram():
    assert fibers.segre_diagram_residual(0.1 + 1.1j, -0.2 + 0.9j) < 1e-9
