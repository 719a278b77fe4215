import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fastclifford import (
    BasisError,
    Multivector,
    RepMatrix,
    alpha_coeffs,
    beta_coeffs,
    fft_left,
    fft_right,
    geometric_product_naive,
    imaginary_flip,
    parity_flip,
    rep_reversal,
    reverse_coeffs,
)


def closed_form_beta(m: np.ndarray) -> np.ndarray:
    # independent O(N) formula: complement both indices and apply a weighted
    # popcount sign over the xor of row and column
    dim = m.shape[0]
    n = dim.bit_length() - 1
    idx = np.arange(dim)
    x = idx[:, None] ^ idx[None, :]
    weight = sum(((x >> b) & 1) * (n - 1 - b) for b in range(n)) if n else np.zeros_like(x)
    sign = 1 - 2 * (weight & 1)
    flipped = m[np.ix_(dim - 1 - idx, dim - 1 - idx)]
    return sign * flipped


@st.composite
def int_mv(draw, n_max=4):
    n = draw(st.integers(0, n_max))
    vals = draw(st.lists(st.integers(-4, 4), min_size=4**n, max_size=4**n))
    return Multivector(n, vals)


def test_parity_flip_examples():
    assert np.array_equal(parity_flip(RepMatrix(np.eye(4))).entries, np.eye(4))
    m = RepMatrix([[1, 2], [3, 4]])
    assert parity_flip(m).entries.tolist() == [[1, -2], [-3, 4]]
    e0 = Multivector.e(0, 1)
    assert np.array_equal(parity_flip(fft_right(e0)).entries, fft_right(-e0).entries)


def test_imaginary_flip_examples():
    assert np.array_equal(imaginary_flip(RepMatrix(np.eye(8))).entries, np.eye(8))
    et = Multivector.etilde(0, 1)
    assert imaginary_flip(fft_right(et)).entries.tolist() == [[0, -1], [1, 0]]
    e0 = Multivector.e(0, 1)
    assert imaginary_flip(fft_right(e0)).entries.tolist() == [[0, 1], [1, 0]]


def test_rep_reversal_examples():
    assert np.array_equal(rep_reversal(RepMatrix(np.eye(4))).entries, np.eye(4))
    e0 = Multivector.e(0, 1)
    assert np.array_equal(rep_reversal(fft_right(e0)).entries, fft_right(e0).entries)
    assert rep_reversal(fft_right(Multivector.blade(0b11, 1))).entries.tolist() == [[-1, 0], [0, 1]]


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_conjugacy_with_coefficient_maps(n, rng):
    for _ in range(3):
        a = Multivector.random(n, rng, integer=True)
        m = fft_right(a)
        assert np.array_equal(parity_flip(m).entries, fft_right(alpha_coeffs(a)).entries)
        assert np.array_equal(imaginary_flip(m).entries, fft_right(beta_coeffs(a)).entries)
        assert np.array_equal(rep_reversal(m).entries, fft_right(reverse_coeffs(a)).entries)


@pytest.mark.parametrize("n", [3, 5])
def test_conjugacy_floats(n, rng):
    a = Multivector.random(n, rng)
    m = fft_right(a)
    for on_matrix, on_coeffs in ((parity_flip, alpha_coeffs), (imaginary_flip, beta_coeffs), (rep_reversal, reverse_coeffs)):
        expect = fft_right(on_coeffs(a)).entries
        assert np.linalg.norm(on_matrix(m).entries - expect) <= 1e-10 * np.linalg.norm(expect)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 6])
def test_imaginary_flip_matches_closed_form(n, rng):
    m = RepMatrix(rng.standard_normal((2**n, 2**n)))
    assert np.array_equal(imaginary_flip(m).entries, closed_form_beta(m.entries))


@given(int_mv())
def test_involutions(a):
    m = fft_right(a)
    for op in (parity_flip, imaginary_flip, rep_reversal):
        assert np.array_equal(op(op(m)).entries, m.entries)


@given(int_mv(3), st.data())
def test_automorphism_and_anti_automorphism(a, data):
    vals = data.draw(st.lists(st.integers(-4, 4), min_size=4**a.n, max_size=4**a.n))
    b = Multivector(a.n, vals)
    A, B = fft_right(a), fft_right(b)
    AB = A @ B
    for op in (parity_flip, imaginary_flip):
        assert np.array_equal(op(AB).entries, (op(A) @ op(B)).entries)
    assert np.array_equal(rep_reversal(AB).entries, (rep_reversal(B) @ rep_reversal(A)).entries)


@given(int_mv())
def test_transpose_identities(a):
    m = fft_right(a)
    assert np.array_equal(m.entries.T, fft_right(beta_coeffs(reverse_coeffs(a))).entries)
    assert np.array_equal(fft_right(reverse_coeffs(a)).entries, imaginary_flip(RepMatrix(m.entries.T)).entries)


def test_inputs_untouched_by_default(rng):
    m = fft_right(Multivector.random(3, rng))
    before = m.entries.copy()
    for op in (parity_flip, imaginary_flip, rep_reversal):
        op(m)
    assert np.array_equal(m.entries, before)


@pytest.mark.parametrize("op", [parity_flip, imaginary_flip, rep_reversal])
def test_inplace_variants(op, rng):
    a = Multivector.random(3, rng)
    expect = op(fft_right(a)).entries
    m = fft_right(a)
    out = op(m, inplace=True)
    assert out.entries is m.entries
    assert np.array_equal(out.entries, expect)
    assert not out.entries.flags.writeable


@pytest.mark.parametrize("op", [parity_flip, imaginary_flip, rep_reversal])
def test_left_basis_rejected(op):
    with pytest.raises(BasisError):
        op(fft_left(Multivector.e(0, 1)))


def test_complex_matrices(rng):
    a = Multivector.random(2, rng, complex_=True)
    m = fft_right(a)
    assert np.allclose(parity_flip(m).entries, fft_right(alpha_coeffs(a)).entries, rtol=0, atol=1e-12)
    assert np.allclose(imaginary_flip(m).entries, fft_right(beta_coeffs(a)).entries, rtol=0, atol=1e-12)
