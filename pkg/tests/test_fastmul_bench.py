import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import oracle_product
from fastclifford import BenchReport, DimensionError, Multivector, fast_mul, geometric_product_naive, run_benchmarks
from fastclifford.bench import time_call


def test_fast_mul_examples(rng):
    a = Multivector.random(2, rng)
    one = Multivector.scalar(1.0, 2)
    assert np.allclose(fast_mul(one, a).coeffs, a.coeffs, rtol=0, atol=1e-15)
    prod = fast_mul(Multivector.e(0, 1), Multivector.etilde(0, 1))
    assert prod.terms() == {0b11: -1.0}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fast_mul_matches_naive(n, rng):
    for _ in range(20):
        a, b = Multivector.random(n, rng), Multivector.random(n, rng)
        ref = geometric_product_naive(a, b).coeffs
        assert np.linalg.norm(fast_mul(a, b).coeffs - ref) <= 1e-10 * np.linalg.norm(ref)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_fast_mul_blade_pairs_against_word_oracle(n):
    eye = np.eye(4**n)
    for p in range(4**n):
        for q in range(4**n):
            got = fast_mul(Multivector(n, eye[p]), Multivector(n, eye[q])).coeffs
            assert np.array_equal(got, oracle_product(eye[p], eye[q], n))


@st.composite
def int_triple(draw):
    n = draw(st.integers(0, 3))
    vals = st.lists(st.integers(-4, 4), min_size=4**n, max_size=4**n)
    return [Multivector(n, draw(vals)) for _ in range(3)]


@given(int_triple())
def test_fast_mul_associative_and_distributive(abc):
    a, b, c = abc
    assert np.array_equal(fast_mul(fast_mul(a, b), c).coeffs, fast_mul(a, fast_mul(b, c)).coeffs)
    assert np.array_equal(fast_mul(a, b + c).coeffs, (fast_mul(a, b) + fast_mul(a, c)).coeffs)


def test_fast_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        fast_mul(Multivector.scalar(1.0, 1), Multivector.scalar(1.0, 2))


# harness ------------------------------------------------------------------


def synthetic(exponent, sizes=range(3, 8)):
    return [1e-9 * (4.0**n) ** exponent for n in sizes]


def test_report_slope_recovers_exponent():
    sizes = list(range(3, 8))
    report = BenchReport(sizes, {"a": synthetic(1.0), "b": synthetic(2.0)})
    assert math.isclose(report.slope("a"), 1.0, abs_tol=1e-9)
    assert math.isclose(report.slopes["b"], 2.0, abs_tol=1e-9)
    assert math.isclose(report.slope("b", n_min=5), 2.0, abs_tol=1e-9)
    with pytest.raises(ValueError):
        report.slope("a", n_min=7)


def test_report_validation():
    with pytest.raises(ValueError):
        BenchReport([3, 3], {"a": [1.0, 1.0]})
    with pytest.raises(ValueError):
        BenchReport([3, 4], {"a": [1.0, 0.0]})
    with pytest.raises(ValueError):
        BenchReport([3, 4], {"a": [1.0]})


def test_report_serialisation():
    report = BenchReport([1, 2], {"naive": [2e-6, 3e-5], "fast": [1e-6, 4e-6]})
    assert report.times_naive == [2e-6, 3e-5]
    assert report.times_parity is None
    rows = report.rows()
    assert rows[1] == {"n": 2, "N": 16, "naive_ns": 30000, "fast_ns": 4000}
    csv = report.to_csv().splitlines()
    assert csv[0] == "n,N,naive_ns,fast_ns"
    assert csv[2] == "2,16,30000,4000"
    table = report.to_table().splitlines()
    assert "naive [s]" in table[0] and table[-1].lstrip().startswith("slope")
    assert len({len(line) for line in table}) == 1


def test_time_call_budget():
    calls = []
    t, reps = time_call(lambda: calls.append(1), repetitions=3, budget=10.0)
    assert reps == 3 and t > 0
    calls.clear()
    t, reps = time_call(lambda: calls.append(1), repetitions=3, budget=0.0)
    assert reps == 1 and len(calls) == 1


def test_run_benchmarks_small():
    report = run_benchmarks(1, 3, repetitions=3, budget=0.5)
    assert report.sizes == [1, 2, 3]
    assert set(report.times) == {"naive", "fast", "transform", "parity", "beta"}
    assert all(t > 0 for ts in report.times.values() for t in ts)


def test_run_benchmarks_parallel_series():
    report = run_benchmarks(1, 2, repetitions=3, series=("transform",), parallel=True)
    assert set(report.times) == {"transform", "transform_parallel"}


def test_run_benchmarks_rejects_bad_arguments():
    with pytest.raises(ValueError):
        run_benchmarks(1, 2, repetitions=2)
    with pytest.raises(ValueError):
        run_benchmarks(3, 2)
    with pytest.raises(ValueError):
        run_benchmarks(5, 12)
