import math

import pytest

from dfdoracle.bench import fit_exponent, format_table, measure, run


def test_fit_exponent():
    ns = [2 ** e for e in range(5, 12)]
    assert fit_exponent(ns, [n ** 0.5 for n in ns]) == pytest.approx(0.5)
    assert fit_exponent(ns, [3.0] * len(ns)) == pytest.approx(0.0, abs=1e-12)
    assert fit_exponent(ns, [math.log(n) for n in ns]) < 0.4


def test_measure_and_run_are_deterministic():
    a = measure(256, queries=5, seed=3)
    b = measure(256, queries=5, seed=3)
    for key in ("k4_touches", "small_touches", "segment_touches"):
        assert a[key] == b[key] > 0
    rows, fits = run([128, 256], queries=4, seed=0, graph=False)
    assert [r["n"] for r in rows] == [128, 256]
    assert set(fits) == {"k4_touches", "small_touches"}
    assert "exponent" in format_table(rows, fits)
