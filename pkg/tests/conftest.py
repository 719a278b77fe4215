"""Shared oracles and fixtures.

The oracles here are deliberately written without touching the package
kernels: blades are multiplied by sorting explicit generator lists, and the
matrix images are assembled from Kronecker products of 2x2 blocks.
"""

from functools import lru_cache, reduce

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
J = np.array([[0.0, 1.0], [-1.0, 0.0]])
Z = np.diag([1.0, -1.0])


def generators(mask: int, n: int) -> list[tuple[int, int]]:
    """Generators of the canonical blade, in order: ``(k, 1)`` is ~e_k, ``(k, 0)`` is e_k."""
    out = []
    for k in range(n - 1, -1, -1):
        if mask >> (2 * k + 1) & 1:
            out.append((k, 1))
        if mask >> (2 * k) & 1:
            out.append((k, 0))
    return out


def _order_key(g):
    k, tilde = g
    return (-k, 0 if tilde else 1)


def literal_blade_mul(a: int, b: int, n: int) -> tuple[int, int]:
    """Multiply two canonical blades by bubble-sorting the generator word."""
    word = generators(a, n) + generators(b, n)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if _order_key(word[j]) > _order_key(word[j + 1]):
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    mask = 0
    i = 0
    while i < len(word):
        if i + 1 < len(word) and word[i] == word[i + 1]:
            if word[i][1]:
                sign = -sign
            i += 2
        else:
            k, tilde = word[i]
            mask |= 1 << (2 * k + tilde)
            i += 1
    return sign, mask


def oracle_product(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(4**n, dtype=np.result_type(a, b))
    for p in np.flatnonzero(a):
        for q in np.flatnonzero(b):
            s, m = literal_blade_mul(int(p), int(q), n)
            out[m] += s * a[p] * b[q]
    return out


def _kron(*factors):
    return reduce(np.kron, factors, np.eye(1))


@lru_cache(maxsize=None)
def generator_matrix(k: int, tilde: int, n: int) -> np.ndarray:
    """Right-basis image of e_k or ~e_k: ``Z..Z (X or J) I..I``, most significant pair first."""
    middle = J if tilde else X
    return _kron(*([Z] * (n - 1 - k) + [middle] + [I2] * k))


@lru_cache(maxsize=None)
def blade_matrices(n: int) -> np.ndarray:
    dim = 2**n
    out = np.empty((4**n, dim, dim))
    for mask in range(4**n):
        m = np.eye(dim)
        for k, tilde in generators(mask, n):
            m = m @ generator_matrix(k, tilde, n)
        out[mask] = m
    out.flags.writeable = False
    return out


def oracle_right(coeffs: np.ndarray, n: int) -> np.ndarray:
    return np.tensordot(coeffs, blade_matrices(n), axes=1)


def oracle_left(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Left image: generators map to transposes, so blades map to the transposed reversed product."""
    dim = 2**n
    total = np.zeros((dim, dim), dtype=np.result_type(coeffs, np.float64))
    for mask in np.flatnonzero(coeffs):
        m = np.eye(dim)
        for k, tilde in generators(int(mask), n):
            m = m @ generator_matrix(k, tilde, n).T
        total = total + coeffs[mask] * m
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
