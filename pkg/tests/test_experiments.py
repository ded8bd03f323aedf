import math

import pytest

from robustnet.experiments import (CSV_COLUMNS, ExperimentSpec, SweepRow, growth_p,
                                   monotone_within_wilson, run_boundary_concentration,
                                   run_growth_sweep, run_property_sr_check, run_sweep,
                                   run_threshold_sweep, threshold_p, wilson_interval)
from robustnet.robustness import TooLargeError


@pytest.mark.parametrize("n, k, r, x, expected", [
    (100, 2, 1, 0.0, 0.046052),
    (100, 2, 2, 0.0, 0.061324),
    (100, 3, 1, 0.0, 0.023026),
])
def test_threshold_p_examples(n, k, r, x, expected):
    assert threshold_p(n, k, r, x) == pytest.approx(expected, abs=1e-6)


def test_threshold_p_formula_and_domain():
    n, k, r, x = 50, 3, 3, 1.5
    by_hand = (math.log(n) + (r - 1) * math.log(math.log(n)) + x) / ((k - 1) * n)
    assert threshold_p(n, k, r, x) == by_hand
    assert threshold_p(8, 2, 2, -100) == 0.0
    assert threshold_p(8, 2, 2, 100) == 1.0
    with pytest.raises(ValueError):
        threshold_p(2, 2, 1)


def test_growth_p():
    assert growth_p(100, 2, 2.0) == pytest.approx(2 * math.log(100) / 100)
    for c in (1.0, 0.5):
        with pytest.raises(ValueError):
            growth_p(100, 2, c)
        with pytest.raises(ValueError):
            ExperimentSpec(n_list=(100,), p_rule="c_over_threshold", c_values=(c,))


def test_wilson_interval():
    lo, hi = wilson_interval(0, 20)
    assert lo == pytest.approx(0.0, abs=1e-12) and 0 < hi < 0.2
    lo, hi = wilson_interval(20, 20)
    assert hi == pytest.approx(1.0) and lo > 0.8
    # z = 1.96, p_hat = 1/2, n = 100: centre 0.5, half-width z sqrt(1/4n + z^2/4n^2)/(1+z^2/n)
    z, n = 1.959963984540054, 100
    half = z * math.sqrt(0.25 / n + z * z / (4 * n * n)) / (1 + z * z / n)
    lo, hi = wilson_interval(50, 100)
    assert (lo, hi) == pytest.approx((0.5 - half, 0.5 + half), abs=1e-9)


def test_boundary_at_p1_is_exact():
    res = run_boundary_concentration(20, 3, 1.0, trials=3, seed=0)
    assert res.value("boundary_mean", 20, res.rows[0].x_or_c) == 20 * 20 * 2
    assert res.get("exceedance")[0].value == 0.0


def test_property_sr_extremes():
    full = run_property_sr_check(6, 2, 1, None, 5, p=1.0).rows[0]
    assert full.value == 1.0
    empty = run_property_sr_check(6, 2, 1, None, 5, p=0.0).rows[0]
    assert empty.value == 0.0
    hi = run_property_sr_check(6, 2, 2, 4.0, 40, base_seed=1).rows[0].value
    lo = run_property_sr_check(6, 2, 2, -4.0, 40, base_seed=1).rows[0].value
    assert hi >= lo
    with pytest.raises(TooLargeError):
        run_property_sr_check(13, 2, 1, 0.0, 5)


def _small_spec(**kw):
    base = dict(n_list=(5, 6), k=2, r=2, x_offsets=(-2.0, 0.0, 2.0), trials=20, base_seed=3,
                metrics=("min_deg_ge_r", "robust_exact", "robust_certified", "lambda2",
                         "i_exact", "i_bounds"))
    base.update(kw)
    return ExperimentSpec(**base)


def test_sweep_rows_and_invariants():
    spec = _small_spec()
    res = run_threshold_sweep(spec)
    assert len(res.rows) == 2 * 3 * len(spec.metrics)
    for n in spec.n_list:
        for x in spec.x_offsets:
            exact = res.value("robust_exact", n, x)
            assert exact <= res.value("min_deg_ge_r", n, x)
            assert res.value("robust_certified", n, x) <= exact
            b = res.get("i_bounds", n, x)[0]
            assert b.ci_lo <= res.value("i_exact", n, x) + 1e-9 <= b.ci_hi + 1e-9
            for row in res.get("min_deg_ge_r", n, x):
                assert row.ci_lo <= row.value <= row.ci_hi
                assert row.trials == 20


def test_csv_header_and_shape():
    text = run_sweep(_small_spec(n_list=(5,), x_offsets=(0.0,), trials=3)).to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert all(len(ln.split(",")) == len(CSV_COLUMNS) for ln in lines[1:])


def test_worker_count_does_not_change_output():
    spec = _small_spec(trials=8)
    assert run_sweep(spec, workers=1).to_csv() == run_sweep(spec, workers=2).to_csv()


def test_cap_violation_yields_nan_row():
    spec = _small_spec(n_list=(6,), x_offsets=(0.0,), trials=2, robust_cap=8,
                       metrics=("robust_exact", "min_deg_ge_r"))
    res = run_sweep(spec)
    capped = res.get("robust_exact")[0]
    assert math.isnan(capped.value) and capped.indeterminate == 2
    assert not math.isnan(res.get("min_deg_ge_r")[0].value)


def test_spec_json_roundtrip(tmp_path):
    spec = _small_spec(family="interdependent", intra="er:p")
    path = tmp_path / "spec.json"
    import json
    path.write_text(json.dumps(spec.to_dict()))
    assert ExperimentSpec.load(path) == spec


@pytest.mark.parametrize("kw", [
    dict(trials=0), dict(n_list=()), dict(k=1), dict(family="tree"), dict(p_rule="magic"),
    dict(metrics=("nope",)), dict(p_rule="explicit", p_values=(1.5,)),
])
def test_spec_validation(kw):
    with pytest.raises(ValueError):
        _small_spec(**kw)


def test_growth_sweep_defaults():
    spec = ExperimentSpec(n_list=(20,), k=2, p_rule="c_over_threshold", c_values=(2.0,),
                          trials=3)
    res = run_growth_sweep(spec)
    assert {r.metric for r in res.rows} >= {"lambda2_over_np", "d_max_bound"}
    with pytest.raises(ValueError):
        run_growth_sweep(_small_spec())


def _row(value, lo, hi):
    return SweepRow("k_partite", 8, 2, 2, 0.0, 0.1, "m", value, lo, hi, 100, 0)


def test_monotone_within_wilson():
    assert monotone_within_wilson([_row(0.1, 0.05, 0.15), _row(0.5, 0.4, 0.6)])
    assert monotone_within_wilson([_row(0.5, 0.45, 0.55), _row(0.45, 0.4, 0.5)])
    assert not monotone_within_wilson([_row(0.9, 0.85, 0.95), _row(0.5, 0.45, 0.55)])
