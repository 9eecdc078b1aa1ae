import math
import os
import tempfile

import pytest

import htee


def symmetric_pair():
    return htee.InterferenceNetwork([1.0, 1.0], [0.0, 1.0, 1.0, 0.0], [1.0, 1.0], 1.0)


def test_rates():
    net = htee.InterferenceNetwork([1.0, 1.0], [0.0, 0.5, 0.5, 0.0], [1.0, 1.0], 1.0)
    assert htee.sinr(net, [1.0, 1.0], 0) == pytest.approx(1 / 1.5)
    assert htee.rate(net, [1.0, 1.0], 0) == pytest.approx(math.log2(5 / 3))
    single = htee.InterferenceNetwork([1.0], [0.0], [1.0], 1.0)
    assert htee.gee(single, htee.PowerModel([4.0], 1.6), [3.0]) == pytest.approx(2 / 13.6)


def test_box_helpers():
    a, b = htee.bisect(htee.Box([0.0, 0.0], [2.0, 1.0]))
    assert (a.lower, a.upper) == ([0.0, 0.0], [1.0, 1.0])
    assert (b.lower, b.upper) == ([1.0, 0.0], [2.0, 1.0])
    r = htee.reduce_box_powersum(htee.Box([1.0, 1.0], [5.0, 5.0]), 4.0)
    assert r.upper == [3.0, 3.0]
    assert htee.reduce_box_powersum(htee.Box([3.0, 3.0], [5.0, 5.0]), 4.0) is None


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        htee.InterferenceNetwork([1.0], [0.0], [0.0], 1.0)
    with pytest.raises(ValueError):
        htee.brute_force_grid(symmetric_pair(), htee.PowerModel([1.0, 1.0], 1.0), htee.ProblemKind.TPmax, [1.0, 1.0], 10)


def test_grid_oracle():
    res = htee.brute_force_grid(symmetric_pair(), htee.PowerModel([1.0, 1.0], 1.0), htee.ProblemKind.TPmax, [10.0, 10.0], 500)
    assert res.feasible
    assert res.value == pytest.approx(math.log2(11))


def test_strategies_on_generated_network():
    params = htee.ScenarioParams()
    net, dep = htee.generate(htee.stream_seed(2020, 0), params)
    assert net.size == 4
    assert sorted(dep["association"]) == [0, 1, 2, 3]
    assert params.noise_power() == pytest.approx(1.4297908225037019e-15)
    p_max = [htee.dbm_to_watt(23)] * 4
    pm = params.power_model()
    tp = htee.solve_instance(htee.Strategy.TP, net, pm, p_max)
    h = htee.solve_instance(htee.Strategy.HTEE, net, pm, p_max)
    g = htee.solve_instance(htee.Strategy.GEE, net, pm, p_max)
    assert tp.solved and h.solved and g.solved
    assert h.throughput >= 0.95 * tp.r_star - 0.01 * net.bandwidth
    assert h.total_power <= tp.total_power + 0.01 * p_max[0]
    assert g.gee >= tp.gee * (1 - 1e-3)
    assert htee.InterferenceNetwork.from_text(net.to_text()).alpha == net.alpha


def test_sweep_writes_csv():
    with tempfile.TemporaryDirectory() as d:
        n = htee.run_sweep_config("p_dbm = -10:10:0\nrealizations = 2\nmaster_seed = 3\n", d)
        assert n == 2
        with open(os.path.join(d, "throughput.csv")) as f:
            lines = f.read().splitlines()
        assert lines[0].startswith("p_dbm,tp_tp,tp_htee,tp_gee")
        assert len(lines) == 3
