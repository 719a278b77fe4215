"""Parity, imaginary flip and reversal computed directly on right-basis images.

For ``M = fft_right(a)``:

* ``parity_flip(M) == fft_right(alpha(a))`` negates the entries whose row
  and column indices differ in an odd number of bits, ``O(N)``.
* ``imaginary_flip(M) == fft_right(beta(a))`` exchanges the diagonal
  quarter pairs, parity-flips each quarter and recurses, ``O(N log N)``.
* ``rep_reversal(M) == fft_right(a*)`` is ``imaginary_flip(M.T)``.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .transform import RepMatrix, SpinorBasis, _require_basis


def _output(m: RepMatrix, inplace: bool) -> np.ndarray:
    _require_basis(m, SpinorBasis.RIGHT)
    if inplace:
        m.entries.setflags(write=True)
        return m.entries
    return np.array(m.entries)


def parity_flip(m: RepMatrix, *, inplace: bool = False) -> RepMatrix:
    """Entry ``(i, j)`` times ``(-1)**popcount(i ^ j)``.

    With ``inplace=True`` the input matrix buffer is overwritten and must not
    be used afterwards.
    """
    _require_basis(m, SpinorBasis.RIGHT)
    if inplace:
        out = m.entries
        out.setflags(write=True)
    else:
        out = np.empty_like(m.entries)
    _kernels.parity_flip(m.entries, out)
    return RepMatrix._trusted(out, SpinorBasis.RIGHT)


def imaginary_flip(m: RepMatrix, *, inplace: bool = False) -> RepMatrix:
    out = _output(m, inplace)
    _kernels.imaginary_flip(out, m.n)
    return RepMatrix._trusted(out, SpinorBasis.RIGHT)


def rep_reversal(m: RepMatrix, *, inplace: bool = False) -> RepMatrix:
    out = _output(m, inplace)
    _kernels.transpose_inplace(out)
    _kernels.imaginary_flip(out, m.n)
    return RepMatrix._trusted(out, SpinorBasis.RIGHT)
