import math

import pytest

from conic_forge import sim
from conic_forge.errors import ScenarioError
from conic_forge.generate import fit_n, generate, modes_for
from conic_forge.geometry import Point
from conic_forge.sim import (
    Frame,
    RoundTrace,
    Scenario,
    ScenarioOptions,
    check_assumptions,
    pick_candidate,
    round_bound,
    run,
    step,
    verify,
)


def test_frame_round_trip():
    frame = Frame(1.1, (3.0, -2.0))
    p = Point(0.5, 7.25)
    assert frame.to_world(frame.to_local(p)).distance(p) < 1e-12
    mirrored = Frame(0.4, (1.0, 1.0), mirrored=True)
    assert mirrored.to_local(mirrored.to_world(p)).distance(p) < 1e-12
    assert Frame().is_identity


def test_pick_candidate_prefers_larger_x_then_y():
    assert pick_candidate([Point(0, 5), Point(1, 0)]) == Point(1, 0)
    assert pick_candidate([Point(1, 0), Point(1, 2)]) == Point(1, 2)


def test_step_on_terminal_snapshot():
    points = [Point(x, 2 * x) for x in (0, 1, 2, 3, 5)]
    nxt, plan = step(points, 2, crashed={0, 4})
    assert plan.is_empty
    assert nxt == tuple(points)


def test_point_formation_two_positions_takes_one_round():
    scenario = Scenario(f=1, positions=[Point(0, 0), Point(5, 5)], crashed={0})
    trace = run(scenario)
    assert trace.verdict.success
    assert trace.verdict.rounds_used == 1
    assert trace.rounds[-1] == (Point(0, 0), Point(0, 0))


def test_point_formation_three_robots():
    scenario = Scenario(f=1, positions=[Point(0, 0), Point(4, 0), Point(0, 3)], crashed={1})
    trace = run(scenario)
    assert trace.verdict.success
    assert trace.verdict.rounds_used == 2
    assert all(p.distance(Point(4, 0)) < 1e-9 for p in trace.rounds[-1])


def test_type_i_line_needs_one_round(line_scenario):
    trace = run(line_scenario)
    assert trace.verdict.success, trace.verdict.reason
    assert trace.verdict.rounds_used == 1
    assert len(trace.rounds) == len(trace.plans) + 1
    assert all(check.passed for check in trace.checks)


def test_type_o_run_takes_two_rounds(type_o_scenario):
    trace = run(type_o_scenario)
    assert trace.verdict.success, trace.verdict.reason
    assert trace.verdict.rounds_used == 2
    assert trace.plans[0].label == "type-o"
    assert trace.plans[1].label == "type-i-asym"


def test_at_most_f_run(at_most_scenario):
    trace = run(at_most_scenario)
    assert trace.verdict.success, trace.verdict.reason
    assert trace.verdict.rounds_used <= 2


def test_crashed_robots_never_move(type_o_scenario):
    trace = run(type_o_scenario)
    for config in trace.rounds:
        for i in type_o_scenario.crashed:
            assert config[i] == type_o_scenario.positions[i]


def test_runs_are_deterministic(type_o_scenario):
    assert run(type_o_scenario).rounds == run(type_o_scenario).rounds


def test_frames_do_not_change_the_trace(line_scenario, type_o_scenario):
    for scenario in (line_scenario, type_o_scenario):
        plain = run(scenario)
        framed = run(scenario, randomize_frames=True)
        assert len(plain.rounds) == len(framed.rounds)
        for a, b in zip(plain.rounds, framed.rounds):
            assert all(p.distance(q) < 1e-8 for p, q in zip(a, b))


def test_verifier_catches_a_skipped_move(line_scenario):
    trace = run(line_scenario)
    final = list(trace.rounds[-1])
    final[0] = line_scenario.positions[0]
    broken = RoundTrace(rounds=trace.rounds[:-1] + [tuple(final)], plans=trace.plans)
    failed = {c.name for c in verify(broken, line_scenario) if not c.passed}
    assert failed & {"pattern", "quasi-uniform"}


def test_initial_terminal_scenario_is_accepted():
    points = [Point(x, 2 * x) for x in (0, 1, 2, 3, 5)]
    scenario = Scenario(f=2, positions=points, crashed={0, 4})
    trace = run(scenario)
    assert trace.verdict.success
    assert trace.verdict.rounds_used == 0
    faulty = next(c for c in trace.checks if c.name == "faulty-identified")
    assert faulty.passed


def test_round_limit_is_a_failure(type_o_scenario):
    trace = run(type_o_scenario, max_rounds=1)
    assert not trace.verdict.success
    assert "within 1 rounds" in trace.verdict.reason
    assert str(trace.verdict).startswith("Failure(")


def test_round_bound():
    assert round_bound(Scenario(f=1, positions=[Point(0, 0), Point(1, 1)], crashed={0})) == 1
    collinear = [Point(x, 0) for x in range(7)]
    assert round_bound(Scenario(f=3, positions=collinear, crashed={0, 1, 2})) == 3
    generic = [Point(math.cos(k), math.sin(2.3 * k) + k) for k in range(7)]
    assert round_bound(Scenario(f=3, positions=generic, crashed={0, 3, 5})) in (2, 3)


@pytest.mark.parametrize(
    "points, crashed, f, assumption",
    [
        ([Point(k, k * k) for k in range(4)], {0, 1}, 2, "robot count"),
        ([Point(0, 0), Point(0, 0), Point(3, 1), Point(2, 5), Point(7, 2)], {2, 3}, 2, "distinct positions"),
        ([Point(1, 1), Point(-1, 1), Point(-1, -1), Point(1, -1), Point(0, 3)], {0, 1}, 2, "asymmetry"),
        ([Point(0, 0), Point(4, 0.5), Point(1, 3), Point(-2, 2.2), Point(5, -3)], {0}, 2, "crashed robots"),
    ],
)
def test_assumptions(points, crashed, f, assumption):
    with pytest.raises(ScenarioError) as info:
        check_assumptions(Scenario(f=f, positions=points, crashed=crashed))
    assert info.value.assumption == assumption


def test_robot_count_message():
    with pytest.raises(ScenarioError, match="at least 2f\\+1"):
        check_assumptions(Scenario(f=2, positions=[Point(k, k * k) for k in range(4)], crashed={0, 1}))


def test_crashed_robots_in_convex_position():
    # (2, 1) lies inside the triangle of the other three crashed robots
    points = [
        Point(0, 0),
        Point(4, 0),
        Point(2, 3),
        Point(2, 1),
        Point(7, 5),
        Point(-3, 6),
        Point(9, -2),
        Point(-5, -4),
        Point(11, 3),
    ]
    with pytest.raises(ScenarioError) as info:
        check_assumptions(Scenario(f=4, positions=points, crashed={0, 1, 2, 3}))
    assert info.value.assumption == "convex position"


def test_reflective_start_needs_the_option():
    kite = [Point(-1, 0), Point(1, 0), Point(0, 5), Point(0, 2), Point(-3, 7), Point(3, 7)]
    kite.append(Point(0, -4))
    with pytest.raises(ScenarioError):
        check_assumptions(Scenario(f=2, positions=kite, crashed={0, 1}))
    allowed = Scenario(
        f=2, positions=kite, crashed={0, 1}, options=ScenarioOptions(allow_reflective_initial=True)
    )
    check_assumptions(allowed)


def test_faulty_check_fails_when_a_mover_is_left_behind(line_scenario):
    trace = run(line_scenario)
    final = list(trace.rounds[-1])
    final[0] = line_scenario.positions[0]
    broken = RoundTrace(rounds=trace.rounds[:-1] + [tuple(final)], plans=trace.plans)
    faulty = next(c for c in verify(broken, line_scenario) if c.name == "faulty-identified")
    assert not faulty.passed


def test_faulty_check_does_not_hide_errors(line_scenario, monkeypatch):
    trace = run(line_scenario)

    def broken(points, f, span):
        raise AttributeError("span")

    monkeypatch.setattr(sim, "identify_faulty", broken)
    with pytest.raises(AttributeError):
        verify(trace, line_scenario)


GENERATED = [
    (f, mode, seed)
    for f in range(1, 6)
    for mode in modes_for(f)
    for seed in (0, 1)
]


@pytest.mark.parametrize("f, mode, seed", GENERATED)
def test_generated_scenarios_form_the_pattern(f, mode, seed):
    n = fit_n(f, mode, (2 if f == 1 else 2 * f + 1) + 2 * seed + 1)
    scenario = generate(f, n, seed, mode)
    # symmetric starts resolve two-candidate choices per frame, keep them fixed
    frames = mode in ("typeO", "typeI_asym")
    trace = run(scenario, randomize_frames=frames)
    assert trace.verdict.success, trace.verdict.reason
    assert trace.verdict.rounds_used <= round_bound(scenario)
    assert all(c.passed for c in trace.checks)
    if mode in ("collinear", "cocircular"):
        assert round_bound(scenario) == 3
