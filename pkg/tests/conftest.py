from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nazeta.acceptance import fixture_curve, fixture_zeta
from nazeta.curves import CurveModel, parse_curve
from nazeta.acceptance import fixture_text

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(rats, min_size=0, max_size=7)


@pytest.fixture(scope="session")
def curve():
    return fixture_curve()


@pytest.fixture(scope="session")
def curve2():
    # y^2 = x^5 + x^2 + 1, which has p_1 != 0 at 3, 5 and 7
    return parse_curve(fixture_text("x5+x2+1.curve"))[0]


@pytest.fixture(scope="session")
def z3():
    return fixture_zeta(3)


@pytest.fixture(scope="session")
def z5():
    return fixture_zeta(5)
