from fractions import Fraction as F

import pytest

import cbtau


def test_block_sum_first_coefficient():
    p = {"theta_0": F(1, 3), "theta_t": F(2, 5), "sigma": F(3, 7), "theta_1": F(-1, 4), "theta_inf": F(5, 6)}
    b = cbtau.block_sum("full4", p, 2)
    assert b[0] == 1
    t0, tt, s, t1, ti = (p[k] for k in ("theta_0", "theta_t", "sigma", "theta_1", "theta_inf"))
    n1 = ((tt + s) ** 2 - t0**2) * ((t1 + s) ** 2 - ti**2) / (4 * s * s)
    n2 = ((tt - s) ** 2 - t0**2) * ((t1 - s) ** 2 - ti**2) / (4 * s * s)
    assert b[1] == n1 + n2


def test_icb_rank1_a1():
    th, b, t0, tt = F(2, 3), F(-1, 5), F(1, 7), F(3, 4)
    a = cbtau.icb_rank1(th, b, t0, tt, 1)
    assert a[1] == 2 * (b - th) * (b * b - tt * tt) + 2 * b * ((th - b) ** 2 - t0 * t0)


def test_verify_ode_exact_and_numeric():
    p = {"theta_0": F(1, 3), "theta_t": F(2, 7), "theta": F(3, 11), "beta": F(1, 5)}
    assert cbtau.verify_ode("pv", p, order=5)[0]
    ok, m = cbtau.verify_ode("pv", p, order=5, exact=False, digits=50)
    assert ok and m < 1e-35


def test_solve_c_small_orders():
    ok, nullity, table = cbtau.solve_c(2, symmetric=False)
    assert ok and nullity == 0
    assert table["[1]|[1]|[1]|[1]"] == 2
    assert cbtau.q_stat([6, 4, 4, 3, 2, 1]) == 187


def test_cli_and_errors(tmp_path, monkeypatch):
    monkeypatch.setenv("CBTAU_CACHE_DIR", str(tmp_path))
    code, out, _ = cbtau.cli("cache", "stats")
    assert code == 0 and out == {"entries": 0}
    code, _, err = cbtau.cli("nekrasov", "sum", "--kind", "bogus")
    assert code == 2 and err
    with pytest.raises(cbtau.CbtauError):
        cbtau.block_sum("pv", {"sigma": F(1, 3)}, 2)
