"""Invariant suite behind ``fastclifford selfcheck``.

Every check returns a :class:`CheckResult`; failing checks carry the inputs
that broke them so the CLI can write them out as multivector files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Multivector,
    alpha_coeffs,
    beta_coeffs,
    geometric_product_naive,
    reverse_coeffs,
)
from .automorphisms import imaginary_flip, parity_flip, rep_reversal
from .fastmul import fast_mul
from .fileformat import MultivectorFile
from .structure import grade_parity_mask, ideal_element, layout_grid, locate_entry
from .transform import RepMatrix, SpinorBasis, clifft, fft, iclifft, ifft

PAIRS = 100
FLOAT_TOL = 1e-10
ROUNDTRIP_TOL = 1e-12

# left-basis layout for n=2: entry (row, col) holds sign * a[sigma][rho],
# sigma and rho written most significant pair first
CL22_LEFT = [
    ["+00^++", "+01^+-", "+10^-+", "+11^--"],
    ["+01^++", "+00^+-", "+11^-+", "+10^--"],
    ["+10^++", "-11^+-", "+00^-+", "-01^--"],
    ["-11^++", "+10^+-", "-01^-+", "+00^--"],
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    counterexample: list[MultivectorFile] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def rel_err(x: np.ndarray, y: np.ndarray) -> float:
    """Frobenius norm of ``x - y`` relative to ``y`` (absolute when ``y`` is 0)."""
    scale = np.linalg.norm(y)
    diff = np.linalg.norm(np.asarray(x) - np.asarray(y))
    return float(diff / scale) if scale > 0 else float(diff)


def _random_pairs(n: int, rng, count: int, **kw):
    for _ in range(count):
        yield Multivector.random(n, rng, **kw), Multivector.random(n, rng, **kw)


def _worst(name: str, cases, tol: float) -> CheckResult:
    """``cases`` yields ``(error, inputs)``; the check passes when every error <= tol."""
    worst, culprit, count = 0.0, [], 0
    for err, inputs in cases:
        count += 1
        if err > worst or (err > tol and not culprit):
            worst, culprit = err, inputs
    ok = worst <= tol
    detail = f"{count} cases, max err {worst:.2e}" + ("" if tol == 0 else f" <= {tol:g}" if ok else f" > {tol:g}")
    files = [a if isinstance(a, MultivectorFile) else MultivectorFile(a) for a in culprit]
    return CheckResult(name, ok, detail, [] if ok else files)


def _blade_images(n: int, basis: SpinorBasis) -> np.ndarray:
    return np.stack([fft(Multivector.blade(m, n), basis).entries for m in range(4**n)])


def check_homomorphism(n_max: int, rng) -> list[CheckResult]:
    out = []
    for basis in SpinorBasis:
        def floats():
            for n in range(0, min(n_max, 5) + 1):
                for a, b in _random_pairs(n, rng, PAIRS):
                    lhs = fft(geometric_product_naive(a, b), basis).entries
                    rhs = fft(a, basis).entries @ fft(b, basis).entries
                    yield rel_err(rhs, lhs), (a, b)

        def blades():
            for n in range(0, min(n_max, 3) + 1):
                images = _blade_images(n, basis)
                prods = np.einsum("pij,qjk->pqik", images, images)
                for p in range(4**n):
                    for q in range(4**n):
                        a, b = Multivector.blade(p, n), Multivector.blade(q, n)
                        lhs = fft(geometric_product_naive(a, b), basis).entries
                        yield float(np.abs(lhs - prods[p, q]).max()), (a, b)

        out.append(_worst(f"homomorphism[{basis.value}] random pairs", floats(), FLOAT_TOL))
        out.append(_worst(f"homomorphism[{basis.value}] blade pairs exact", blades(), 0.0))
    return out


def check_fast_mul(n_max: int, rng) -> list[CheckResult]:
    def floats():
        for n in range(0, min(n_max, 5) + 1):
            for a, b in _random_pairs(n, rng, PAIRS):
                yield rel_err(fast_mul(a, b).coeffs, geometric_product_naive(a, b).coeffs), (a, b)

    def blades():
        for n in range(0, min(n_max, 3) + 1):
            for p in range(4**n):
                for q in range(4**n):
                    a, b = Multivector.blade(p, n), Multivector.blade(q, n)
                    diff = fast_mul(a, b).coeffs - geometric_product_naive(a, b).coeffs
                    yield float(np.abs(diff).max()), (a, b)

    return [
        _worst("fast_mul vs naive random pairs", floats(), FLOAT_TOL),
        _worst("fast_mul vs naive blade pairs exact", blades(), 0.0),
    ]


def check_roundtrips(n_max: int, rng) -> list[CheckResult]:
    out = []
    top = min(n_max, 5)
    for basis in SpinorBasis:
        def floats():
            for n in range(0, top + 1):
                for _ in range(10):
                    a = Multivector.random(n, rng)
                    yield rel_err(ifft(fft(a, basis)).coeffs, a.coeffs), (a,)

        def integers():
            for n in range(0, top + 1):
                for _ in range(10):
                    a = Multivector.random(n, rng, integer=True)
                    yield float(np.abs(ifft(fft(a, basis)).coeffs - a.coeffs).max()), (a,)

        out.append(_worst(f"roundtrip[{basis.value}]", floats(), ROUNDTRIP_TOL))
        out.append(_worst(f"roundtrip[{basis.value}] integer exact", integers(), 0.0))

    def complex_floats():
        for n in range(0, top + 1):
            for _ in range(10):
                x = Multivector.random(n, rng, complex_=True)
                yield rel_err(iclifft(clifft(x)).coeffs, x.coeffs), (MultivectorFile(x, True),)

    def complex_integers():
        for n in range(0, top + 1):
            for _ in range(10):
                x = Multivector.random(n, rng, complex_=True, integer=True)
                yield float(np.abs(iclifft(clifft(x)).coeffs - x.coeffs).max()), (MultivectorFile(x, True),)

    out.append(_worst("roundtrip[complex]", complex_floats(), ROUNDTRIP_TOL))
    out.append(_worst("roundtrip[complex] integer exact", complex_integers(), 0.0))
    return out


def check_generator_symmetry(n_max: int, rng=None) -> list[CheckResult]:
    def real_cases():
        for n in range(1, min(n_max, 6) + 1):
            for k in range(n):
                e = Multivector.e(k, n)
                m = fft(e).entries
                yield float(np.abs(m - m.T).max()), (e,)
                et = Multivector.etilde(k, n)
                m = fft(et).entries
                yield float(np.abs(m + m.T).max()), (et,)

    def complex_cases():
        for n in range(1, min(n_max, 5) + 1):
            for k in range(2 * n):
                x = Multivector.blade(1 << k, n, 1.0 + 0j)
                m = clifft(x).entries
                yield float(np.abs(m - m.conj().T).max()), (MultivectorFile(x, True),)

    return [
        _worst("generators: e_k symmetric, ~e_k antisymmetric", real_cases(), 0.0),
        _worst("complex generators Hermitian", complex_cases(), 0.0),
    ]


def check_automorphisms(n_max: int, rng) -> list[CheckResult]:
    pairs = [
        ("parity_flip", parity_flip, alpha_coeffs),
        ("imaginary_flip", imaginary_flip, beta_coeffs),
        ("rep_reversal", rep_reversal, reverse_coeffs),
    ]
    samples = [
        Multivector.random(n, rng, integer=True)
        for n in range(0, min(n_max, 5) + 1)
        for _ in range(10)
    ]
    out = []
    for name, on_matrix, on_coeffs in pairs:
        cases = (
            (float(np.abs(on_matrix(fft(a)).entries - fft(on_coeffs(a)).entries).max()), (a,))
            for a in samples
        )
        out.append(_worst(f"{name} conjugate to coefficient map", cases, 0.0))

    def reversal_via_transpose():
        for a in samples:
            m = fft(a)
            flipped = imaginary_flip(RepMatrix(m.entries.T))
            yield float(np.abs(flipped.entries - fft(reverse_coeffs(a)).entries).max()), (a,)

    def transpose_identity():
        for a in samples:
            lhs = fft(a).entries.T
            rhs = fft(beta_coeffs(reverse_coeffs(a))).entries
            yield float(np.abs(lhs - rhs).max()), (a,)

    out.append(_worst("F(a*) = imaginary_flip(F(a)^T)", reversal_via_transpose(), 0.0))
    out.append(_worst("F(a)^T = F(beta(a*))", transpose_identity(), 0.0))
    return out


def check_structure(n_max: int, rng) -> list[CheckResult]:
    out = []
    if n_max >= 2:
        grid = layout_grid(2, SpinorBasis.LEFT)
        ok = grid == CL22_LEFT
        out.append(CheckResult("structure: n=2 left layout", ok, "" if ok else f"got {grid}"))

    def consistency():
        for n in range(0, min(n_max, 4) + 1):
            for basis in SpinorBasis:
                for sigma in range(2**n):
                    for rho in range(2**n):
                        image = fft(ideal_element(sigma, rho, n, basis), basis).entries
                        loc = locate_entry(sigma, rho, n, basis)
                        expect = np.zeros_like(image)
                        expect[loc.row, loc.col] = loc.sign
                        yield float(np.abs(image - expect).max()), ()

    out.append(_worst("structure: locate_entry matches transformed ideal elements", consistency(), 0.0))

    def parity_mask():
        for n in range(0, min(n_max, 6) + 1):
            a = Multivector.random(n, rng, integer=True)
            m = fft(a).entries
            negated = parity_flip(fft(a)).entries
            expect = np.where(grade_parity_mask(n), -m, m)
            yield float(np.abs(negated - expect).max()), (a,)

    out.append(_worst("structure: parity mask marks the entries parity_flip negates", parity_mask(), 0.0))
    return out


CHECKS = (
    check_homomorphism,
    check_fast_mul,
    check_roundtrips,
    check_generator_symmetry,
    check_automorphisms,
    check_structure,
)


def run_selfcheck(n_max: int = 6, seed: int = 0) -> list[CheckResult]:
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    rng = np.random.default_rng(seed)
    results = []
    for check in CHECKS:
        results.extend(check(n_max, rng))
    return results
