"""Dense multivectors of Cl(n,n) and the blade-by-blade geometric product.

Basis blades are addressed by a 2n-bit mask: bit ``2k`` marks ``e_k``
(squares to +1) and bit ``2k+1`` marks ``~e_k`` (squares to -1).  The
canonical blade of a mask lists its generators in descending bit order,
i.e. ``~e_{n-1} e_{n-1} ... ~e_0 e_0``.  With this layout the two top mask
bits cut a coefficient array into four contiguous quarters.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from . import _kernels
from .errors import DimensionError, ScalarDomainError

ODD_BITS = 0xAAAAAAAAAAAAAAAA
Scalar = Union[float, complex]


class SignedBlade(NamedTuple):
    sign: int
    mask: int


def grade(mask: int) -> int:
    return int(mask).bit_count()


def tilde_count(mask: int) -> int:
    return (int(mask) & ODD_BITS).bit_count()


def _check_mask(mask: int, n: int) -> None:
    if not 0 <= mask < 4**n:
        raise DimensionError(f"blade mask {mask} out of range for n={n}")


def blade_mul(a: int, b: int, n: int) -> SignedBlade:
    """Product of two canonical blades.

    Every generator of ``b`` has to travel left past the generators of
    ``a`` that sit below it in bit order; the parity of those moves is a
    popcount over a prefix mask.  Shared ``~e_k`` then contribute -1 each.
    """
    _check_mask(a, n)
    _check_mask(b, n)
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += (a & (low - 1)).bit_count()
        rest ^= low
    swaps += (a & b & ODD_BITS).bit_count()
    return SignedBlade(-1 if swaps & 1 else 1, a ^ b)


def _as_scalar_array(values) -> np.ndarray:
    arr = np.asarray(values)
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128)
    if arr.dtype.kind in "biuf":
        return arr.astype(np.float64)
    raise ScalarDomainError(f"unsupported scalar type {arr.dtype}")


def n_from_length(length: int) -> int:
    n = (length.bit_length() - 1) // 2
    if length <= 0 or 4**n != length:
        raise DimensionError(f"coefficient array length {length} is not a power of 4")
    return n


class Multivector:
    """Element of Cl(n,n) stored as ``4**n`` coefficients indexed by mask.

    The coefficient array is copied on construction and marked read-only.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        coeffs = _as_scalar_array(coeffs).copy()
        if coeffs.ndim != 1 or coeffs.shape[0] != 4**n:
            raise DimensionError(f"expected {4**n} coefficients for n={n}, got shape {coeffs.shape}")
        coeffs.setflags(write=False)
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def _trusted(cls, n: int, coeffs: np.ndarray) -> Multivector:
        # internal fast path for freshly computed float64/complex128 buffers
        coeffs.setflags(write=False)
        obj = cls.__new__(cls)
        obj.n = n
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_array(cls, coeffs) -> Multivector:
        coeffs = np.asarray(coeffs)
        return cls(n_from_length(coeffs.shape[0]), coeffs)

    @classmethod
    def zeros(cls, n: int, dtype=np.float64) -> Multivector:
        return cls(n, np.zeros(4**n, dtype=dtype))

    @classmethod
    def scalar(cls, value: Scalar, n: int) -> Multivector:
        return cls.blade(0, n, value)

    @classmethod
    def blade(cls, mask: int, n: int, value: Scalar = 1.0) -> Multivector:
        _check_mask(mask, n)
        coeffs = np.zeros(4**n, dtype=_as_scalar_array(value).dtype)
        coeffs[mask] = value
        return cls(n, coeffs)

    @classmethod
    def e(cls, k: int, n: int) -> Multivector:
        return cls.blade(1 << (2 * k), n)

    @classmethod
    def etilde(cls, k: int, n: int) -> Multivector:
        return cls.blade(1 << (2 * k + 1), n)

    @classmethod
    def from_terms(cls, n: int, terms: dict, dtype=None) -> Multivector:
        if dtype is None:
            dtype = np.complex128 if any(np.iscomplexobj(v) for v in terms.values()) else np.float64
        coeffs = np.zeros(4**n, dtype=dtype)
        for mask, value in terms.items():
            _check_mask(mask, n)
            coeffs[mask] = value
        return cls(n, coeffs)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator, *, complex_=False, integer=False) -> Multivector:
        size = 4**n
        if integer:
            draw = lambda: rng.integers(-4, 5, size).astype(np.float64)
        else:
            draw = lambda: rng.standard_normal(size)
        coeffs = draw() + 1j * draw() if complex_ else draw()
        return cls(n, coeffs)

    @property
    def dtype(self) -> np.dtype:
        return self.coeffs.dtype

    @property
    def is_complex(self) -> bool:
        return self.coeffs.dtype.kind == "c"

    def terms(self) -> dict:
        return {int(m): self.coeffs[m].item() for m in np.flatnonzero(self.coeffs)}

    def _other(self, other) -> Multivector:
        if not isinstance(other, Multivector):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"n mismatch: {self.n} vs {other.n}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Multivector(self.n, self.coeffs + other.coeffs)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return Multivector(self.n, self.coeffs - other.coeffs)

    def __neg__(self):
        return Multivector(self.n, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product_naive(self, other)
        if np.isscalar(other):
            return Multivector(self.n, self.coeffs * other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return Multivector(self.n, other * self.coeffs)
        return NotImplemented

    def __repr__(self):
        terms = ", ".join(f"{m:#0{2 * self.n + 2}b}: {v}" for m, v in self.terms().items())
        return f"Multivector(n={self.n}, {{{terms}}})"


def geometric_product_naive(a: Multivector, b: Multivector) -> Multivector:
    """Blade-by-blade product: every coefficient pair is multiplied once.

    Cost is exactly ``N**2`` scalar multiply-adds for ``N = 4**n``; the
    pairs are grouped so that the bulk of the work runs as dense matrix
    products, which does not change what is summed.
    """
    if a.n != b.n:
        raise DimensionError(f"n mismatch: {a.n} vs {b.n}")
    return Multivector._trusted(a.n, _kernels.naive_product(a.coeffs, b.coeffs, a.n))


@lru_cache(maxsize=None)
def _mask_signs(n: int, which: str) -> np.ndarray:
    masks = np.arange(4**n, dtype=np.int64)
    if which == "alpha":
        flips = np.bitwise_count(masks)
    elif which == "beta":
        flips = np.bitwise_count(masks & (ODD_BITS & (4**n - 1)))
    else:
        g = np.bitwise_count(masks).astype(np.int64)
        flips = g * (g - 1) // 2
    signs = 1.0 - 2.0 * (flips & 1)
    signs.flags.writeable = False
    return signs


def alpha_coeffs(a: Multivector) -> Multivector:
    """Parity automorphism: negate odd-grade blades."""
    return Multivector(a.n, a.coeffs * _mask_signs(a.n, "alpha"))


def beta_coeffs(a: Multivector) -> Multivector:
    """Negate every ``~e_k``: blades with an odd number of tilde factors flip."""
    return Multivector(a.n, a.coeffs * _mask_signs(a.n, "beta"))


def reverse_coeffs(a: Multivector) -> Multivector:
    return Multivector(a.n, a.coeffs * _mask_signs(a.n, "reverse"))


def parse_sigma(sigma, n: int | None = None) -> tuple[int, int]:
    """Normalise an ideal label to ``(bits, n)``.

    Strings are written most significant pair first, using ``+``/``0`` and
    ``-``/``1``; bit ``k`` of the result belongs to generator pair ``k``.
    """
    if isinstance(sigma, str):
        table = {"+": "0", "0": "0", "-": "1", "−": "1", "1": "1"}
        try:
            digits = "".join(table[ch] for ch in sigma)
        except KeyError as exc:
            raise ValueError(f"bad sigma string {sigma!r}") from exc
        if n is not None and len(digits) != n:
            raise DimensionError(f"sigma {sigma!r} has length {len(digits)}, expected {n}")
        return (int(digits, 2) if digits else 0), len(digits)
    if n is None:
        raise ValueError("n is required for integer sigma")
    if not 0 <= sigma < 2**n:
        raise DimensionError(f"sigma {sigma} out of range for n={n}")
    return int(sigma), n


def make_projector(sigma, n: int | None = None, *, mirrored: bool = False) -> Multivector:
    """Minimal-ideal projector ``prod_k (1 + (-1)**sigma_k ~e_k e_k) / 2``.

    With ``mirrored=True`` each factor uses ``e_k ~e_k`` instead, which is
    the labelling the left-spinor transform puts on its columns.
    """
    bits, n = parse_sigma(sigma, n)
    proj = Multivector.scalar(1.0, n)
    for k in range(n):
        sign = -1.0 if bits >> k & 1 else 1.0
        if mirrored:
            sign = -sign
        factor = Multivector.from_terms(n, {0: 0.5, 3 << (2 * k): 0.5 * sign})
        proj = geometric_product_naive(proj, factor)
    return proj
