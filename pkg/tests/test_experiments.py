import json
import math

import numpy as np
import pytest

from piltz.bounds.catalog import theta_cub
from piltz.errors import ConfigError, PoleAt1, Unsupported
from piltz.experiments import (
    ExperimentConfig, delta_rows_consistent, geometric_grid, named_group, rprime_main_constant, run,
    run_delta, with_overrides,
)


def cfg(**kw):
    return ExperimentConfig(**kw)


def test_grid_shape():
    g = geometric_grid(1e3, 1e7, 64)
    assert len(g) == 64 and g[0] == 1000 and g[-1] == 10 ** 7
    assert all(isinstance(x, int) for x in g) and g == sorted(set(g))
    r = geometric_grid(1, 1024, 11, ratio=2)
    assert r == [2 ** k for k in range(11)]


def test_synthetic_power_law():
    rep = run_delta(cfg(kind="delta", x_max=10 ** 7), delta_override=lambda x: x ** 0.3)
    assert rep.fit.theta_hat == pytest.approx(0.3, abs=1e-9)
    assert rep.summary.startswith("field=synthetic")


def test_rational_divisor_count_is_floor():
    rep = run(cfg(kind="delta", field="Q", m=1, x_max=10 ** 9, x_min=1.5, grid_points=64))
    for row in rep.rows:
        assert row["I"] == math.floor(row["x"])
        assert -1 < row["delta"] <= 0
    assert rep.fit is None and "DegenerateFit" in rep.extra["fit_error"]


@pytest.mark.parametrize("label,m", [("Q", 2), ("Q(i)", 1), ("Q(sqrt5)", 2), ("quartic283", 1)])
def test_rows_satisfy_the_identity(label, m):
    rep = run(cfg(kind="delta", field=label, m=m, x_max=10 ** 5))
    assert delta_rows_consistent(rep.rows)
    for r in rep.rows:
        assert isinstance(r["I"], int) and r["I"] >= 0
        assert r["delta"] == r["I"] - r["main"]


def test_delta_report_contents():
    rep = run(cfg(kind="delta", field="Q(i)", m=1, x_max=10 ** 5))
    obj = json.loads(rep.to_json())
    assert obj["schema"] == 1
    assert obj["config"]["field"] == "Q(i)" and "threads" not in obj["config"]
    assert {"huxley", "conjecture"} <= {b["source"] for b in obj["bounds"]}
    assert obj["fit"]["method"] == "running_max"
    assert rep.to_csv().splitlines()[0] == "x,I,main,delta"
    assert "theta_hat=" in rep.summary and "best=131/416(huxley)" in rep.summary


DESK_CASES = [
    ("Q", 4), ("Q", 5), ("Q", 6),
    ("Q(i)", 2), ("Q(sqrt-3)", 2), ("Q(sqrt2)", 2), ("Q(sqrt5)", 2),
    ("Q(i)", 3), ("Q(sqrt-3)", 3), ("Q(sqrt2)", 3), ("Q(sqrt5)", 3),
    ("Q(i)", 4), ("Q(sqrt-3)", 4),
    ("quartic283", 1), ("quintic2869", 1),
]
# Measured fits above the bound at x_max = 10^6 (and still above it at 10^7;
# Q with m = 4 also at 10^8).  The oscillation amplitude of d_m carries a large
# log-power constant, so the desk-scale slope sits far above its limit.
ABOVE_AT_DESK_SCALE = {("Q", 4), ("Q", 5), ("Q", 6), ("Q(i)", 4)}


def _desk_param(label, m):
    if (label, m) in ABOVE_AT_DESK_SCALE:
        return pytest.param(label, m, marks=pytest.mark.xfail(
            strict=True, reason="desk-scale growth of the divisor error exceeds the asymptotic exponent"))
    return pytest.param(label, m)


@pytest.mark.parametrize("label,m", [_desk_param(*c) for c in DESK_CASES])
def test_fitted_exponent_below_cubic_bound(fields, label, m):
    K = fields[label]
    assert m * K.degree >= 4
    rep = run(cfg(kind="delta", field=label, m=m, x_max=10 ** 6))
    assert rep.fit.theta_hat < theta_cub(K.degree, m)


def test_unsupported_main_term():
    with pytest.raises(Unsupported):
        run(cfg(kind="delta", field="cubic23", m=2, x_max=10 ** 4))


def test_rprime_rational_example():
    rep = run(cfg(kind="rprime", field="Q", r=1, ell=2, x_min=1, x_max=10, grid_points=8))
    last = rep.rows[-1]
    assert (last["x"], last["I"]) == (10.0, 63)
    assert last["main"] == pytest.approx(600 / math.pi ** 2, rel=1e-9)
    assert last["ratio"] == pytest.approx(1.036, abs=1e-3)


def test_rprime_gaussian_ratio():
    rep = run(cfg(kind="rprime", field="Q(i)", r=2, ell=1, x_max=10 ** 4))
    assert 0.99 <= rep.rows[-1]["ratio"] <= 1.01
    assert {b["source"] for b in rep.bounds} == {"lindelof"}


def test_rprime_bounds_for_quartic_with_beta():
    rep = run(cfg(kind="rprime", field="quartic283", r=2, ell=1, x_max=10 ** 4, beta=0.25))
    uni = [b for b in rep.bounds if b["source"] == "cubi_uniform"][0]
    assert (uni["theta_num"], uni["theta_den"]) == (8, 9)  # 14/(2*9) + (4/9)(1/4)
    assert 0.99 <= rep.rows[-1]["ratio"] <= 1.01


def test_rprime_pole_guard(fields):
    with pytest.raises(PoleAt1):
        rprime_main_constant(fields["Q"], 1, 1)
    c, err = rprime_main_constant(fields["Q(i)"], 2, 1)
    assert c == pytest.approx(math.pi / 4 / 1.5067030099229850, rel=1e-12)
    assert err < 1e-6


def test_convexity_runner():
    rep = run(cfg(kind="convexity", field="Q(i)", sigma=0.5, t_min=16, t_max=4096, grid_points=9))
    assert [round(r["t"]) for r in rep.rows] == [2 ** k for k in range(4, 13)]
    assert rep.fit.theta_hat <= 0.6


def test_atkinson_runner():
    rep = run(cfg(kind="atkinson", y=40, A=2, B=50))
    row = rep.rows[0]
    assert abs(row["re"] - math.cos(40)) <= 1
    assert row["prediction"] == math.cos(40)


def test_expsum_runner_is_seeded():
    a = run(cfg(kind="expsum", field="Q(i)", seed=7, instances=3))
    b = run(cfg(kind="expsum", field="Q(i)", seed=7, instances=3))
    c = run(cfg(kind="expsum", field="Q(i)", seed=8, instances=3))
    assert a.to_json() == b.to_json() != c.to_json()
    assert len(a.rows) == 3 and a.extra["prop_ideal_sum"] >= 0


def test_omega_runner():
    rep = run(cfg(kind="omega", group="S3"))
    assert [(r["delta_num"], r["delta_den"]) for r in rep.rows] == [(1, 2), (0, 1), (1, 6)]
    assert rep.extra["R"] == 2 and rep.extra["lambda"] == pytest.approx(1.0)
    assert named_group("C2").n == 2 and named_group("D4").n == 4
    with pytest.raises(ConfigError):
        named_group("Z3")


def test_catalog_runner():
    rep = run(cfg(kind="catalog", n=4, m=1))
    assert "best=5/9(cub)" in rep.summary
    rep = run(cfg(kind="catalog", n=4, m=1, beta=0))
    assert "cubi_uniform" in {r["source"] for r in rep.rows}


def test_config_validation(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"kind": "delta", "bogus": 1})
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"m": 2})
    with pytest.raises(ConfigError):
        cfg(kind="delta", grid_points=7)
    with pytest.raises(ConfigError):
        cfg(kind="delta", x_max=2 ** 31 + 1)
    with pytest.raises(ConfigError):
        cfg(kind="delta", window=0)
    with pytest.raises(ConfigError):
        cfg(kind="delta", seed=-1)
    with pytest.raises(ConfigError):
        cfg(kind="nope")
    with pytest.raises(ConfigError):
        cfg(kind="catalog", beta=-1)
    p = tmp_path / "c.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError):
        ExperimentConfig.load(p)
    p.write_text(json.dumps({"kind": "delta", "field": "Q(i)", "x_max": 5000}))
    c = ExperimentConfig.load(p)
    assert (c.field, c.x_max) == ("Q(i)", 5000)
    assert with_overrides(c, m=None, x_max=6000).x_max == 6000


def test_report_regeneration_is_byte_identical(tmp_path):
    c = cfg(kind="delta", field="Q(sqrt5)", m=2, x_max=10 ** 5, output=str(tmp_path / "a.json"))
    run(c).write()
    first = (tmp_path / "a.json").read_bytes()
    run(c).write()
    assert (tmp_path / "a.json").read_bytes() == first
    run(c).write(tmp_path / "b.csv", fmt="csv")
    assert (tmp_path / "b.csv").read_text().startswith("x,I,main,delta\n")
