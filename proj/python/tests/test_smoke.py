import json
import math
import os
from pathlib import Path

import pytest

import conemorse as cm

SCENARIOS = Path(os.environ.get("CONEMORSE_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))

CONE = """alpha = pi/2
p_r = 1
p_theta = 0
q_r = 1
q_theta = pi/5
"""


def quarter():
    s = cm.ConeSurface(math.pi / 2)
    return s, cm.make_point(s, 1, 0), cm.make_point(s, 1, math.pi / 5)


def test_geodesics_on_the_quarter_cone():
    s, p, q = quarter()
    gs = cm.enumerate_all(s, p, q)
    assert len(gs) == 5
    assert gs.classical_count == 4
    energies = [g.energy for g in gs.geodesics]
    assert energies == sorted(energies)
    assert energies[0] == pytest.approx(0.38196601125, abs=1e-9)
    assert gs.geodesics[-1].is_broken and gs.geodesics[-1].energy == 4.0
    assert gs.geodesics[-1].sheet is None
    assert cm.geodesic_count(s, p, q) == 4


def test_local_distance_and_errors():
    plane = cm.ConeSurface(2 * math.pi)
    length, route = cm.local_distance(plane, cm.make_point(plane, 1, 0), cm.make_point(plane, 1, math.pi))
    assert length == pytest.approx(2.0)
    assert route == "through_vertex"
    with pytest.raises(ValueError):
        cm.ConeSurface(-1.0)
    with pytest.raises(ValueError, match="vertex endpoint unsupported"):
        cm.enumerate_classical(plane, cm.make_point(plane, 0, 0), cm.make_point(plane, 1, 0))


def test_flow_reaches_the_minimizer():
    s, p, q = quarter()
    start = cm.chord_interpolation(s, p, q, 32)
    r = cm.flow_to_critical(start)
    assert r.converged
    assert r.energy == pytest.approx(0.38196601125, rel=1e-6)
    assert all(b <= a for a, b in zip(r.energy_trace, r.energy_trace[1:]))
    assert cm.classify_limit(r, cm.enumerate_all(s, p, q)) == "classical(0)"
    assert len(r.path.nodes) == 33


def test_series():
    a = cm.FormalSeries([3, 3])
    assert str(a) == "3 + 3λ"
    assert cm.divide_one_plus_lambda(a) == cm.FormalSeries([3])
    with pytest.raises(ArithmeticError):
        cm.divide_one_plus_lambda(cm.FormalSeries([1]))


def test_scenario_parsing():
    sc = cm.parse_scenario(CONE, "inline")
    assert sc.alpha == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError, match="inline:6: unknown key"):
        cm.parse_scenario(CONE + "colour = red\n", "inline")
    assert cm.load_scenario(SCENARIOS / "cone.txt").name == "cone"


def test_reports_are_json_and_svg():
    sc = cm.parse_scenario(CONE)
    g = json.loads(cm.geodesics_json(sc))
    assert g["classical_count"] == 4
    assert cm.develop_svg(sc).startswith("<svg")
    sc.flow_samples = 4
    f = json.loads(cm.flow_json(sc))
    assert len(f["records"]) == 4


def test_morse_relation_on_the_plane():
    sc = cm.load_scenario(SCENARIOS / "plane.txt")
    run = cm.morse(sc)
    assert run.relation_holds
    assert run.quotient == cm.FormalSeries([])
    assert run.essential_components == 1
    levels = run.level_indices
    assert [str(i) for _, i in levels] == ["1", "0"]
    assert json.loads(run.json())["relation"]["holds"] is True
