from fractions import Fraction

import pytest

from ndcheck import SystemParams


@pytest.fixture
def unit_params():
    """Speed-1 world: distances and times coincide."""
    return SystemParams(
        v=Fraction(1),
        v_adv=Fraction(1),
        nd_range=Fraction(10),
        delta_relay=Fraction(1),
        msg_duration_default=Fraction(1),
    )


@pytest.fixture
def radio_params():
    """100 m discovery range at 3e8 m/s with a 40 ns relay delay."""
    return SystemParams(
        v=Fraction(300_000_000),
        v_adv=Fraction(300_000_000),
        nd_range=Fraction(100),
        delta_relay=Fraction(1, 25_000_000),
        msg_duration_default=Fraction(1, 1_000_000),
    )
