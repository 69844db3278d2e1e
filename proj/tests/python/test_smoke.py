import math

import numpy as np
import pytest

onebitprec = pytest.importorskip("onebitprec")


def test_realify_round_trip():
    v = np.array([1 + 2j, -0.5 + 0.25j])
    vr = onebitprec.realify_vector(v)
    assert vr.tolist() == [1.0, -0.5, 2.0, 0.25]
    assert np.array_equal(onebitprec.complexify_vector(vr), v)


def test_bnb_matches_exhaustive_small():
    H = onebitprec.draw_channel(123, 2, 1, 3)
    s = onebitprec.draw_symbols(456, 2)
    bnb = onebitprec.bnb_precode(H, s)
    exh = onebitprec.exhaustive_precode(H, s)
    assert bnb.epsilon == pytest.approx(exh.epsilon, abs=1e-9)
    assert bnb.stats.visited_total >= 6
    # one-bit output has unit energy
    assert np.linalg.norm(bnb.x) == pytest.approx(1.0, abs=1e-12)


def test_bound_sandwich():
    H = onebitprec.draw_channel(7, 2, 1, 4)
    s = onebitprec.draw_symbols(8, 2)
    _, eps_relax = onebitprec.relax_precode(H, s)
    eps_bnb = onebitprec.bnb_precode(H, s).epsilon
    eps_approx = onebitprec.approx_1bit_precode(H, s).epsilon
    assert eps_relax >= eps_bnb - 1e-9
    assert eps_bnb >= eps_approx - 1e-9


def test_margin_consistency():
    H = onebitprec.draw_channel(5, 2, 1, 4)
    s = onebitprec.draw_symbols(6, 2)
    res = onebitprec.bnb_precode(H, s)
    assert onebitprec.min_threshold_distance(H, s, res.x) == pytest.approx(
        res.epsilon, abs=1e-9
    )


def test_lookup_table_rotation():
    H = onebitprec.draw_channel(9, 2, 1, 3)
    table = onebitprec.build_lookup_table(H, "bnb")
    assert len(table.entries) == 4
    s = onebitprec.draw_symbols(10, 2)
    x = table.lookup(s)
    direct = onebitprec.bnb_precode(H, s)
    assert onebitprec.min_threshold_distance(H, s, x) == pytest.approx(
        direct.epsilon, abs=1e-9
    )


def test_simulate_ber_deterministic():
    a = onebitprec.simulate_ber("approx", 2, 1, 3, [0.0, 10.0], 100, 77)
    b = onebitprec.simulate_ber("approx", 2, 1, 3, [0.0, 10.0], 100, 77)
    assert [r.bit_errors for r in a] == [r.bit_errors for r in b]
    assert all(0.0 <= r.ber <= 1.0 for r in a)


def test_sum_rate_caps():
    H = onebitprec.draw_channel(3, 2, 1, 4)
    table = onebitprec.build_lookup_table(H, "bnb")
    rates = onebitprec.sum_rate(H, table, 2, 1, 0.1)
    assert len(rates) == 2
    assert all(0.0 <= r <= 2.0 + 1e-9 for r in rates)


def test_snr_to_sigma():
    assert onebitprec.snr_to_sigma(10.0, 1.0) == pytest.approx(0.1)
    assert onebitprec.snr_to_sigma(3.0, 2.0) == pytest.approx(
        2.0 / math.pow(10.0, 0.3)
    )
