"""Where each minimal-ideal coefficient lands in a representation matrix.

A multivector expands over minimal ideals as ``sum_{sigma, rho} a[sigma, rho]
e^rho P_sigma`` (left) or ``sum P_sigma e^rho a[sigma, rho]`` (right), with
``e^rho = e_0^{rho_0} e_1^{rho_1} ...`` in ascending order.  Every pair
``(sigma, rho)`` owns exactly one matrix entry:

* right basis: row ``sigma``, column ``sigma ^ rho``
* left basis:  row ``sigma ^ rho``, column ``sigma``

The sign of that entry is read off the transform of ``e^rho`` once per
``n`` and cached.  The left expansion uses the projectors
``make_projector(sigma, mirrored=True)``, which ``fft_left`` maps to the
diagonal unit at ``(sigma, sigma)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .algebra import Multivector, geometric_product_naive, make_projector
from .errors import DimensionError
from .transform import RepMatrix, SpinorBasis, fft_left, fft_right


class EntryLocator(NamedTuple):
    row: int
    col: int
    sign: int


def ascending_blade(rho: int, n: int) -> Multivector:
    """``e^rho`` with factors in ascending index order."""
    mask = 0
    for k in range(n):
        if rho >> k & 1:
            mask |= 1 << (2 * k)
    g = bin(rho).count("1")
    sign = -1.0 if (g * (g - 1) // 2) & 1 else 1.0
    return Multivector.blade(mask, n, sign)


@lru_cache(maxsize=None)
def sign_table(n: int, basis: SpinorBasis) -> np.ndarray:
    """``table[sigma, rho]`` is the sign of the entry owned by ``(sigma, rho)``."""
    basis = SpinorBasis(basis)
    dim = 2**n
    table = np.empty((dim, dim), dtype=np.int8)
    sigma = np.arange(dim)
    for rho in range(dim):
        blade = ascending_blade(rho, n)
        if basis is SpinorBasis.RIGHT:
            image = fft_right(blade).entries
            table[:, rho] = image[sigma, sigma ^ rho].real
        else:
            image = fft_left(blade).entries
            table[:, rho] = image[sigma ^ rho, sigma].real
    table.flags.writeable = False
    return table


def _check_index(value: int, n: int, name: str) -> None:
    if not 0 <= value < 2**n:
        raise DimensionError(f"{name}={value} out of range for n={n}")


def locate_entry(sigma: int, rho: int, n: int, basis: SpinorBasis | str = SpinorBasis.RIGHT) -> EntryLocator:
    _check_index(sigma, n, "sigma")
    _check_index(rho, n, "rho")
    basis = SpinorBasis(basis)
    sign = int(sign_table(n, basis)[sigma, rho])
    if basis is SpinorBasis.RIGHT:
        return EntryLocator(sigma, sigma ^ rho, sign)
    return EntryLocator(sigma ^ rho, sigma, sign)


def entry_grade(i: int, j: int) -> int:
    """Grade of the blade ``e^rho`` feeding entry ``(i, j)``: ``popcount(i ^ j)``."""
    return (int(i) ^ int(j)).bit_count()


def grade_parity_mask(n: int) -> np.ndarray:
    """Boolean ``2**n x 2**n`` array, True where the entry grade is odd."""
    idx = np.arange(2**n)
    return (np.bitwise_count(idx[:, None] ^ idx[None, :]) & 1).astype(bool)


def ideal_element(sigma: int, rho: int, n: int, basis: SpinorBasis | str = SpinorBasis.RIGHT) -> Multivector:
    """``P_sigma e^rho`` (right) or ``e^rho P_sigma`` (left), built blade by blade."""
    basis = SpinorBasis(basis)
    blade = ascending_blade(rho, n)
    if basis is SpinorBasis.RIGHT:
        return geometric_product_naive(make_projector(sigma, n), blade)
    return geometric_product_naive(blade, make_projector(sigma, n, mirrored=True))


def scatter(coeffs: np.ndarray, basis: SpinorBasis | str = SpinorBasis.RIGHT) -> RepMatrix:
    """Assemble a matrix from ideal coefficients ``coeffs[sigma, rho]``."""
    coeffs = np.asarray(coeffs)
    dim = coeffs.shape[0]
    n = dim.bit_length() - 1
    if coeffs.shape != (dim, dim) or 2**n != dim:
        raise DimensionError(f"coefficient table must be 2**n square, got {coeffs.shape}")
    basis = SpinorBasis(basis)
    signed = coeffs * sign_table(n, basis)
    sigma = np.arange(dim)[:, None]
    rho = np.arange(dim)[None, :]
    out = np.zeros((dim, dim), dtype=np.result_type(coeffs.dtype, np.float64))
    if basis is SpinorBasis.RIGHT:
        out[sigma, sigma ^ rho] = signed
    else:
        out[sigma ^ rho, sigma] = signed
    return RepMatrix(out, basis)


def gather(m: RepMatrix) -> np.ndarray:
    """Inverse of :func:`scatter`: read ``coeffs[sigma, rho]`` off a matrix."""
    dim = m.dim
    sigma = np.arange(dim)[:, None]
    rho = np.arange(dim)[None, :]
    if m.basis is SpinorBasis.RIGHT:
        values = m.entries[sigma, sigma ^ rho]
    else:
        values = m.entries[sigma ^ rho, sigma]
    return values * sign_table(m.n, m.basis)


def format_bits(value: int, n: int, symbols: str = "01") -> str:
    """``value`` as ``n`` symbols, most significant pair first."""
    return "".join(symbols[value >> k & 1] for k in range(n - 1, -1, -1))


def layout_grid(n: int, basis: SpinorBasis | str = SpinorBasis.RIGHT) -> list[list[str]]:
    """Label every entry with the coefficient it holds, e.g. ``-11^+-``.

    A label reads ``sign rho ^ sigma`` with ``rho`` in 0/1 digits and
    ``sigma`` in +/- symbols; at ``n = 0`` only the sign is left.
    """
    dim = 2**n
    grid = [[""] * dim for _ in range(dim)]
    for sigma in range(dim):
        for rho in range(dim):
            loc = locate_entry(sigma, rho, n, basis)
            sign = "+" if loc.sign > 0 else "-"
            label = f"{format_bits(rho, n)}^{format_bits(sigma, n, '+-')}" if n else ""
            grid[loc.row][loc.col] = sign + label
    return grid
