"""Geometric product through the right-spinor representation."""

from __future__ import annotations

from .algebra import Multivector
from .errors import DimensionError
from .transform import fft_right, ifft_right


def fast_mul(a: Multivector, b: Multivector) -> Multivector:
    """``ifft_right(fft_right(a) @ fft_right(b))``.

    Two forward transforms, one dense ``2**n`` matrix product and one inverse
    transform: ``O(N log N + N**1.5)`` against ``O(N**2)`` blade by blade.
    """
    if a.n != b.n:
        raise DimensionError(f"n mismatch: {a.n} vs {b.n}")
    return ifft_right(fft_right(a) @ fft_right(b))
