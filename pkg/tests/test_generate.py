import pytest

from conic_forge import files
from conic_forge.classifier import ConfigKind, TypeISubtype, classify_configuration
from conic_forge.errors import ModeError, SamplingExhausted
from conic_forge.generate import check_mode, fit_n, generate, modes_for
from conic_forge.sim import check_assumptions, run


def test_modes_for_each_fault_count():
    assert modes_for(1) == ["typeO"]
    assert modes_for(2) == ["typeO", "typeI_asym", "typeI_reflective", "typeI_rotational", "terminal"]
    assert "collinear" in modes_for(3)
    assert "cocircular" not in modes_for(3)
    assert "cocircular" in modes_for(4)
    assert "typeI_rotational" not in modes_for(5)


@pytest.mark.parametrize(
    "f, n, mode, kw, match",
    [
        (2, 4, "typeO", {}, "2f\\+1"),
        (1, 5, "typeI_asym", {}, "only has the typeO mode"),
        (3, 6, "typeI_rotational", {}, "n >= 9"),
        (4, 9, "typeI_rotational", {}, "f = 2 and f = 3"),
        (2, 5, "collinear", {}, "f >= 3"),
        (5, 11, "cocircular", {}, "f = 4"),
        (3, 7, "terminal", {"at_most_f": True}, "at-most-f"),
        (2, 5, "spiral", {}, "unknown mode"),
    ],
)
def test_check_mode(f, n, mode, kw, match):
    with pytest.raises(ModeError, match=match):
        check_mode(f, n, mode, **kw)


def test_fit_n():
    assert fit_n(2, "typeI_rotational", 7) == 7
    assert fit_n(3, "typeI_rotational", 7) == 9
    assert fit_n(3, "typeI_rotational", 10) == 12
    assert fit_n(4, "typeO", 10) == 10


def test_generation_is_deterministic():
    assert generate(3, 8, 42, "typeO") == generate(3, 8, 42, "typeO")
    assert generate(3, 8, 42, "typeO") != generate(3, 8, 43, "typeO")


@pytest.mark.parametrize(
    "f, n, mode, kind",
    [
        (1, 4, "typeO", None),
        (2, 5, "typeO", ConfigKind.TYPE_O),
        (2, 7, "typeI_asym", ConfigKind.TYPE_I),
        (3, 8, "terminal", ConfigKind.TERMINAL),
        (3, 7, "collinear", ConfigKind.TYPE_O),
        (4, 9, "cocircular", ConfigKind.TYPE_O),
        (5, 12, "typeI_asym", ConfigKind.TYPE_I),
    ],
)
def test_generated_scenarios_match_their_mode(f, n, mode, kind):
    scenario = generate(f, n, 7, mode, attempts=5000)
    assert scenario.n == n
    assert len(scenario.crashed) == f
    assert scenario.mode == mode
    check_assumptions(scenario)
    if kind is not None:
        assert classify_configuration(scenario.positions, f).kind is kind


def test_type_i_crashes_are_the_off_pattern_robots():
    scenario = generate(4, 10, 3, "typeI_asym", attempts=5000)
    config = classify_configuration(scenario.positions, 4)
    assert config.subtype is TypeISubtype.ASYM
    assert config.off_pattern == scenario.crashed


@pytest.mark.parametrize(
    "f, n, mode, subtype",
    [
        (2, 7, "typeI_reflective", TypeISubtype.REFLECTIVE),
        (2, 6, "typeI_rotational", TypeISubtype.ROTATIONAL),
        (2, 5, "typeI_rotational", TypeISubtype.ROTATIONAL),
        (2, 7, "typeI_rotational", TypeISubtype.ROTATIONAL),
    ],
)
def test_symmetric_modes(f, n, mode, subtype):
    scenario = generate(f, n, 1, mode, attempts=5000)
    assert scenario.options.allow_reflective_initial
    assert classify_configuration(scenario.positions, f).subtype is subtype


def test_at_most_f_crashes_fewer():
    counts = {len(generate(3, 9, seed, "typeO", at_most_f=True).crashed) for seed in range(12)}
    assert counts <= {0, 1, 2, 3}
    assert len(counts) > 1


def test_exhausted_sampling():
    with pytest.raises(SamplingExhausted):
        generate(5, 11, 0, "typeI_asym", attempts=0)


def test_generated_scenarios_load_back(tmp_path):
    scenario = generate(2, 6, 9, "typeI_asym")
    path = tmp_path / "gen.toml"
    files.save_scenario(scenario, path)
    assert files.load_scenario(path) == scenario


def test_odd_rotational_line_scenario_has_a_robot_on_the_crossing():
    scenario = generate(2, 5, 1, "typeI_rotational")
    config = classify_configuration(scenario.positions, 2)
    center = config.symmetry.center
    assert sum(p.distance(center) < 1e-9 for p in scenario.positions) == 1
    trace = run(scenario)
    assert trace.verdict.success, trace.verdict.reason
    assert trace.verdict.rounds_used == 1
