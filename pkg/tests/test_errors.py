import pytest

from besselwave import errors


def test_context_in_message():
    exc = errors.NearPole("on a zero", nu=0, z=2j)
    assert exc.context == {"nu": 0, "z": 2j}
    assert "nu=0" in str(exc) and "on a zero" in str(exc)


def test_with_context_keeps_type_and_merges():
    exc = errors.QuadratureNonFinite("bad node", t=1.0)
    more = exc.with_context(x=0.5)
    assert type(more) is errors.QuadratureNonFinite
    assert more.context == {"t": 1.0, "x": 0.5}
    assert exc.context == {"t": 1.0}


@pytest.mark.parametrize("cls,base", [
    (errors.InvalidOrder, ValueError),
    (errors.BesselOverflow, OverflowError),
    (errors.StepTooLarge, ArithmeticError),
    (errors.ConfigError, ValueError),
    (errors.ComputeError, RuntimeError),
])
def test_hierarchy(cls, base):
    assert issubclass(cls, errors.BesselWaveError)
    assert issubclass(cls, base)
