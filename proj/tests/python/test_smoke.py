import math

import pytest

import sphereq


def test_reindex():
    assert sphereq.reindex([1, 0, 1]) == 5
    assert sphereq.reindex([0, 0, 0]) == 0


def test_from_angles_known_value():
    amps = sphereq.from_angles(1, [math.pi / 3, math.pi / 2])
    assert amps[0].real == pytest.approx(0.5, abs=1e-12)
    assert amps[1].imag == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    assert sum(abs(a) ** 2 for a in amps) == pytest.approx(1.0, abs=1e-12)


def test_round_trip():
    theta = [0.4, 0.9, 1.2, 2.2]
    amps = sphereq.from_angles(2, theta)
    back, degenerate = sphereq.to_angles(2, amps)
    assert not degenerate
    assert back == pytest.approx(theta, abs=1e-10)


def test_op_combine_and_coeff_map_agree():
    ta = [0.5, 0.8, 0.3, 1.1]
    tb = [0.7, 0.2, 0.9, 0.4]
    combined = sphereq.op_combine("add", 2, ta, tb)
    assert combined == pytest.approx([(a + b) / 2 for a, b in zip(ta, tb)])
    direct = sphereq.coeff_map("add", 2, ta, tb)
    via = sphereq.from_angles(2, combined)
    assert max(abs(d - v) for d, v in zip(direct, via)) < 1e-9


def test_normalize_and_channel():
    state, constant = sphereq.normalize(1, [3.0, 4.0])
    assert constant == pytest.approx(5.0)
    gain = sphereq.channel_gain(1, [1.0, 0.0], [0.6, 0.8])
    assert gain == pytest.approx(0.6)
    projected = sphereq.apply_channel(1, [1.0, 0.0], [0.6, 0.8])
    assert projected[0] == pytest.approx(0.6)
    assert projected[1] == pytest.approx(0.0)


def test_skorohod_reflect():
    v, i = sphereq.skorohod_reflect([0.0, 1.0, -1.0, 0.5])
    assert i == pytest.approx([0.0, 0.0, 1.0, 1.0])
    assert v == pytest.approx([0.0, 1.0, 0.0, 1.5])


def test_rbm_mean():
    samples = sphereq.rbm_samples(0.0, 1.0, 0.0, 1.0, 4000, steps=2048, seed=7)
    mean = sum(samples) / len(samples)
    assert mean == pytest.approx(math.sqrt(2 / math.pi), rel=0.05)


def test_ks():
    a = [float(i) for i in range(100)]
    assert sphereq.ks_statistic(a, a) == 0.0
    assert sphereq.ks_statistic([1.0, 2.0], [10.0, 11.0]) == 1.0
    assert sphereq.ks_critical(0.01, 2000, 2000) == pytest.approx(0.0515, abs=1e-3)


def test_errors():
    with pytest.raises(sphereq.ZeroVectorError):
        sphereq.normalize(1, [0.0, 0.0])
    with pytest.raises(sphereq.DomainError):
        sphereq.to_angles(1, [-1.0, 0.0])
