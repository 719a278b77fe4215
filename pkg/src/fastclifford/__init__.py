"""Fast matrix representations for the Clifford algebras Cl(n,n) and Cl_C(2n)."""

from .algebra import (
    Multivector,
    SignedBlade,
    alpha_coeffs,
    beta_coeffs,
    blade_mul,
    geometric_product_naive,
    grade,
    make_projector,
    parse_sigma,
    reverse_coeffs,
    tilde_count,
)
from .automorphisms import imaginary_flip, parity_flip, rep_reversal
from .bench import BenchReport, run_benchmarks
from .errors import BasisError, CliffordError, DimensionError, ScalarDomainError
from .fastmul import fast_mul
from .structure import (
    EntryLocator,
    entry_grade,
    gather,
    grade_parity_mask,
    ideal_element,
    locate_entry,
    scatter,
)
from .transform import (
    RepMatrix,
    SpinorBasis,
    clifft,
    fft,
    fft_left,
    fft_right,
    from_split,
    iclifft,
    ifft,
    ifft_left,
    ifft_right,
    to_split,
)

__version__ = "0.1.0"

__all__ = [
    "BasisError",
    "BenchReport",
    "CliffordError",
    "DimensionError",
    "EntryLocator",
    "Multivector",
    "RepMatrix",
    "ScalarDomainError",
    "SignedBlade",
    "SpinorBasis",
    "alpha_coeffs",
    "beta_coeffs",
    "blade_mul",
    "clifft",
    "entry_grade",
    "fast_mul",
    "fft",
    "fft_left",
    "fft_right",
    "from_split",
    "gather",
    "geometric_product_naive",
    "grade",
    "grade_parity_mask",
    "iclifft",
    "ideal_element",
    "ifft",
    "ifft_left",
    "ifft_right",
    "imaginary_flip",
    "locate_entry",
    "make_projector",
    "parity_flip",
    "parse_sigma",
    "rep_reversal",
    "reverse_coeffs",
    "run_benchmarks",
    "scatter",
    "tilde_count",
    "to_split",
]
