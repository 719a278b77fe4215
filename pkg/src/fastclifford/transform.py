"""Fast matrix representations of Cl(n,n) and the complex algebra Cl_C(2n).

``fft_right`` peels off the top generator pair ``(e, ~e)`` of a multivector
``A00 + e A01 + ~e A10 + ~e e A11`` and builds::

    [[F(A00 + A11),  F(alpha(A01 + A10))],
     [F(A01 - A10),  F(alpha(A00 - A11))]]

recursively, for ``O(N log N)`` additions in total.  ``fft_left`` is the
analogous recursion over left ideals.  Reading a canonical coefficient array
with the generators moved to the right of each block gives
``(A00, alpha(A01), alpha(A10), -A11)`` for the barred blocks, and the left
image works out to ``fft_left(a) == fft_right(beta(a)) == fft_right(a*)^T``.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

from . import _kernels
from .algebra import ODD_BITS, Multivector
from .errors import BasisError, DimensionError, ScalarDomainError


class SpinorBasis(str, Enum):
    RIGHT = "right"
    LEFT = "left"


class RepMatrix:
    """A ``2**n x 2**n`` image of a multivector, tagged with its basis.

    The entries are copied on construction and marked read-only.
    """

    __slots__ = ("entries", "basis")

    def __init__(self, entries, basis: SpinorBasis | str = SpinorBasis.RIGHT):
        entries = np.asarray(entries)
        if entries.dtype.kind not in "biufc":
            raise ScalarDomainError(f"unsupported matrix dtype {entries.dtype}")
        entries = entries.astype(np.complex128 if entries.dtype.kind == "c" else np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"representation must be square, got shape {entries.shape}")
        dim = entries.shape[0]
        if dim < 1 or dim & (dim - 1):
            raise DimensionError(f"matrix dimension {dim} is not a power of two")
        entries.setflags(write=False)
        self.entries = entries
        self.basis = SpinorBasis(basis)

    @classmethod
    def _trusted(cls, entries: np.ndarray, basis: SpinorBasis) -> RepMatrix:
        # internal fast path for freshly computed float64/complex128 buffers
        entries.setflags(write=False)
        obj = cls.__new__(cls)
        obj.entries = entries
        obj.basis = basis
        return obj

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def dtype(self) -> np.dtype:
        return self.entries.dtype

    def __matmul__(self, other: RepMatrix) -> RepMatrix:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if other.basis != self.basis:
            raise BasisError(f"cannot multiply {self.basis.value} by {other.basis.value} matrix")
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return RepMatrix._trusted(self.entries @ other.entries, self.basis)

    def __add__(self, other: RepMatrix) -> RepMatrix:
        if not isinstance(other, RepMatrix):
            return NotImplemented
        if other.basis != self.basis or other.dim != self.dim:
            raise DimensionError("operands differ in basis or dimension")
        return RepMatrix(self.entries + other.entries, self.basis)

    def __repr__(self):
        return f"RepMatrix(dim={self.dim}, basis={self.basis.value}, dtype={self.dtype})"


def _forward(a: Multivector, butterfly) -> np.ndarray:
    work = np.array(a.coeffs)
    butterfly(work, a.n)
    dim = 2**a.n
    out = np.empty((dim, dim), dtype=work.dtype)
    _kernels.digits_to_matrix(work, out, _kernels.spread_bits(a.n))
    return out


def _inverse(m: RepMatrix, butterfly) -> Multivector:
    n = m.n
    work = np.empty(4**n, dtype=m.dtype)
    _kernels.matrix_to_digits(m.entries, work, _kernels.spread_bits(n))
    butterfly(work, n)
    return Multivector._trusted(n, work)


def _require_basis(m: RepMatrix, basis: SpinorBasis) -> None:
    if not isinstance(m, RepMatrix):
        raise TypeError(f"expected RepMatrix, got {type(m).__name__}")
    if m.basis is not basis:
        raise BasisError(f"expected a {basis.value}-basis matrix, got {m.basis.value}")


def fft_right(a: Multivector, *, parallel: bool = False) -> RepMatrix:
    """Right-spinor matrix representation of ``a``.

    ``parallel=True`` spreads each level's butterflies over threads; the
    arithmetic per entry is unchanged, so results are bitwise identical.
    """
    butterfly = _kernels.right_forward_parallel if parallel else _kernels.right_forward
    return RepMatrix._trusted(_forward(a, butterfly), SpinorBasis.RIGHT)


def ifft_right(m: RepMatrix) -> Multivector:
    _require_basis(m, SpinorBasis.RIGHT)
    return _inverse(m, _kernels.right_inverse)


def fft_left(a: Multivector) -> RepMatrix:
    """Left-spinor matrix representation of ``a``.

    Each level splits the barred blocks into
    ``[[A00 + A11, A01 - A10], [alpha(A01 + A10), alpha(A00 - A11)]]``.
    """
    return RepMatrix._trusted(_forward(a, _kernels.left_forward), SpinorBasis.LEFT)


def ifft_left(m: RepMatrix) -> Multivector:
    _require_basis(m, SpinorBasis.LEFT)
    return _inverse(m, _kernels.left_inverse)


def fft(a: Multivector, basis: SpinorBasis | str = SpinorBasis.RIGHT) -> RepMatrix:
    return fft_right(a) if SpinorBasis(basis) is SpinorBasis.RIGHT else fft_left(a)


def ifft(m: RepMatrix) -> Multivector:
    return ifft_right(m) if m.basis is SpinorBasis.RIGHT else ifft_left(m)


# --- complex algebra ---------------------------------------------------------
# Cl_C(2n) has generators e'_0 .. e'_{2n-1}, all squaring to +1, with blades
# indexed by a 2n-bit mask in descending generator order.  The isomorphism
# e'_{2k} -> e_k, e'_{2k+1} -> -i ~e_k keeps masks and generator order, so
# the only change is a phase (-i)**(number of odd generators) per blade.


@lru_cache(maxsize=None)
def complex_phases(n: int) -> np.ndarray:
    masks = np.arange(4**n, dtype=np.int64)
    odd = np.bitwise_count(masks & (ODD_BITS & (4**n - 1))) % 4
    phases = np.array([1, -1j, -1, 1j], dtype=np.complex128)[odd]
    phases.flags.writeable = False
    return phases


def to_split(x: Multivector) -> Multivector:
    """Apply the isomorphism Cl_C(2n) -> Cl_C(n,n) to coefficients."""
    if not x.is_complex:
        raise ScalarDomainError("the complex isomorphism needs complex scalars")
    return Multivector(x.n, x.coeffs * complex_phases(x.n))


def from_split(y: Multivector) -> Multivector:
    if not y.is_complex:
        raise ScalarDomainError("the complex isomorphism needs complex scalars")
    return Multivector(y.n, y.coeffs * np.conj(complex_phases(y.n)))


def clifft(x: Multivector) -> RepMatrix:
    """Complex matrix representation of an element of Cl_C(2n).

    ``x.n`` counts generator pairs, so the input has ``2 * x.n`` generators
    and the output is ``2**x.n`` square.
    """
    return fft_right(to_split(x))


def iclifft(m: RepMatrix) -> Multivector:
    _require_basis(m, SpinorBasis.RIGHT)
    if m.dtype.kind != "c":
        m = RepMatrix(m.entries.astype(np.complex128), m.basis)
    return from_split(ifft_right(m))
