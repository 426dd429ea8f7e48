import pytest

from kummer.identities import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small(name):
    assert run_suite(name, trials=3, seed=11) < 1e-7


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
