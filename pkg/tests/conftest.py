import pytest

from conic_forge.geometry import Point
from conic_forge.sim import Scenario, ScenarioOptions

# seven robots on y = 0.3x + 1 and two crashed ones off it
ON_LINE = [Point(x, 0.3 * x + 1) for x in (0, 1, 2.5, 3, 4.2, 5, 7)]
TYPE_I_LINE = ON_LINE + [Point(1, 5), Point(3.5, -4)]

TYPE_O_FIVE = [Point(0, 0), Point(4, 0.5), Point(1, 3), Point(-2, 2.2), Point(5, -3)]


@pytest.fixture
def line_scenario():
    return Scenario(f=2, positions=TYPE_I_LINE, crashed={7, 8}, seed=3)


@pytest.fixture
def type_o_scenario():
    return Scenario(f=2, positions=TYPE_O_FIVE, crashed={1, 3}, seed=5)


@pytest.fixture
def at_most_scenario():
    return Scenario(
        f=2,
        positions=TYPE_O_FIVE,
        crashed={4},
        seed=5,
        options=ScenarioOptions(at_most_f=True),
    )
