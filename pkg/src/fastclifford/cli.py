"""Command-line front end.

Exit codes: 0 success, 1 self-check failure, 2 malformed input,
3 dimension/basis/algebra mismatch, 4 size limit exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import fileformat
from .algebra import Multivector, alpha_coeffs, beta_coeffs, geometric_product_naive, reverse_coeffs
from .automorphisms import imaginary_flip, parity_flip, rep_reversal
from .bench import run_benchmarks
from .errors import BasisError, CliffordError, DimensionError, ScalarDomainError
from .fastmul import fast_mul
from .fileformat import FormatError, MatrixFile, MultivectorFile
from .selfcheck import run_selfcheck
from .structure import format_bits, grade_parity_mask, layout_grid, locate_entry
from .transform import SpinorBasis, clifft, fft, from_split, iclifft, ifft, to_split

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MALFORMED = 2
EXIT_MISMATCH = 3
EXIT_TOO_LARGE = 4

STRUCTURE_MAX_N = 8

log = logging.getLogger("fastclifford")


class CommandError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path, kind=None):
    try:
        obj = fileformat.load(path)
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}", EXIT_MALFORMED) from None
    if kind is not None and not isinstance(obj, kind):
        expected = "matrix" if kind is MatrixFile else "multivector"
        raise CommandError(f"{path or 'stdin'}: expected a {expected} file", EXIT_MALFORMED)
    return obj


def cmd_transform(args) -> int:
    obj = _load(args.input)
    direction = args.direction or ("inverse" if isinstance(obj, MatrixFile) else "forward")
    if direction == "forward":
        if not isinstance(obj, MultivectorFile):
            raise CommandError("forward transform needs a multivector file", EXIT_MALFORMED)
        basis = SpinorBasis(args.basis or "right")
        if args.complex and not obj.complex_algebra:
            raise CommandError(f"--complex needs a ccl(2n) input, got {obj.algebra}", EXIT_MISMATCH)
        if obj.complex_algebra:
            if basis is not SpinorBasis.RIGHT:
                raise CommandError("ccl(2n) inputs only have a right-basis transform", EXIT_MISMATCH)
            result = clifft(obj.value)
        else:
            result = fft(obj.value, basis)
        fileformat.dump(MatrixFile(result), args.out)
        return EXIT_OK
    if not isinstance(obj, MatrixFile):
        raise CommandError("inverse transform needs a matrix file", EXIT_MALFORMED)
    m = obj.value
    if args.basis and SpinorBasis(args.basis) is not m.basis:
        raise CommandError(f"field 'basis': file says {m.basis.value}, --basis says {args.basis}", EXIT_MISMATCH)
    if args.complex:
        fileformat.dump(MultivectorFile(iclifft(m), complex_algebra=True), args.out)
    else:
        fileformat.dump(MultivectorFile(ifft(m)), args.out)
    return EXIT_OK


def _product(a: MultivectorFile, b: MultivectorFile, mode: str) -> Multivector:
    mul = fast_mul if mode == "fast" else geometric_product_naive
    if a.complex_algebra:
        return from_split(mul(to_split(a.value), to_split(b.value)))
    return mul(a.value, b.value)


def cmd_mul(args) -> int:
    if args.a in (None, "-") and args.b in (None, "-"):
        raise CommandError("at most one operand can come from stdin", EXIT_MALFORMED)
    a = _load(args.a, MultivectorFile)
    b = _load(args.b, MultivectorFile)
    if a.algebra != b.algebra:
        raise CommandError(f"field 'algebra': {a.algebra} vs {b.algebra}", EXIT_MISMATCH)
    if a.value.is_complex != b.value.is_complex:
        raise CommandError("field 'scalar': operands use different scalar domains", EXIT_MISMATCH)
    result = _product(a, b, args.mode)
    if args.compare:
        other = _product(a, b, "naive" if args.mode == "fast" else "fast")
        naive, fast = (other, result) if args.mode == "fast" else (result, other)
        scale = np.abs(naive.coeffs).max(initial=0.0)
        dev = np.abs(fast.coeffs - naive.coeffs).max(initial=0.0)
        print(f"max relative deviation: {dev / scale if scale else dev:.3e}", file=sys.stderr)
    fileformat.dump(MultivectorFile(result, a.complex_algebra), args.out)
    return EXIT_OK


_MATRIX_AUTO = {"alpha": parity_flip, "beta": imaginary_flip, "reversal": rep_reversal}
_COEFF_AUTO = {"alpha": alpha_coeffs, "beta": beta_coeffs, "reversal": reverse_coeffs}


def cmd_auto(args) -> int:
    obj = _load(args.input)
    if isinstance(obj, MatrixFile):
        if obj.value.basis is not SpinorBasis.RIGHT:
            raise CommandError("automorphisms act on right-basis matrices only", EXIT_MISMATCH)
        fileformat.dump(MatrixFile(_MATRIX_AUTO[args.which](obj.value)), args.out)
        return EXIT_OK
    op = _COEFF_AUTO[args.which]
    if obj.complex_algebra:
        value = from_split(op(to_split(obj.value)))
    else:
        value = op(obj.value)
    fileformat.dump(MultivectorFile(value, obj.complex_algebra), args.out)
    return EXIT_OK


def structure_text(n: int, basis: SpinorBasis) -> str:
    lines = [f"# structure n={n} basis={basis.value}", "entries:"]
    for sigma in range(2**n):
        for rho in range(2**n):
            loc = locate_entry(sigma, rho, n, basis)
            sign = "+" if loc.sign > 0 else "-"
            prefix = f"sigma={format_bits(sigma, n, '+-')} rho={format_bits(rho, n)} -> " if n else ""
            lines.append(f"{prefix}{sign} at ({loc.row},{loc.col})")
    grid = layout_grid(n, basis)
    width = max(len(cell) for row in grid for cell in row)
    lines.append("grid:")
    lines += [" ".join(cell.rjust(width) for cell in row) for row in grid]
    lines.append("parity:")
    lines += [" ".join("o" if odd else "e" for odd in row) for row in grade_parity_mask(n)]
    return "\n".join(lines) + "\n"


def cmd_structure(args) -> int:
    if args.n < 0:
        raise CommandError(f"n must be non-negative, got {args.n}", EXIT_MALFORMED)
    if args.n > STRUCTURE_MAX_N:
        raise CommandError(f"n={args.n} exceeds the structure limit {STRUCTURE_MAX_N}", EXIT_TOO_LARGE)
    _write(structure_text(args.n, SpinorBasis(args.basis or "right")), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        report = run_benchmarks(
            args.n_min, args.n_max, args.repetitions, budget=args.budget, parallel=args.parallel, seed=args.seed
        )
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_TOO_LARGE if "n_max" in str(exc) else EXIT_MALFORMED) from None
    _write(report.to_csv() if args.csv else report.to_table(), args.out)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    if args.n_max < 0:
        raise CommandError(f"--n-max must be non-negative, got {args.n_max}", EXIT_MALFORMED)
    results = run_selfcheck(args.n_max, args.seed)
    lines = [r.line() for r in results]
    failed = [r for r in results if not r.ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} properties hold")
    for r in failed:
        for i, mv in enumerate(r.counterexample):
            lines.append(f"# counterexample for {r.name!r}, operand {i}")
            lines.append(fileformat.emit(mv).rstrip("\n"))
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fastclifford", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis=True):
        if basis:
            p.add_argument("--basis", choices=["right", "left"], help="spinor basis (default right)")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("transform", help="multivector <-> matrix representation")
    p.add_argument("input", nargs="?", help="input file (default stdin)")
    p.add_argument("--direction", choices=["forward", "inverse"], help="default: inferred from the file kind")
    p.add_argument("--complex", action="store_true", help="treat multivectors as elements of ccl(2n)")
    common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("mul", help="geometric product of two multivector files")
    p.add_argument("a")
    p.add_argument("b", nargs="?", help="second operand (default stdin)")
    p.add_argument("--mode", choices=["naive", "fast"], default="fast")
    p.add_argument("--compare", action="store_true", help="run both modes and report the deviation on stderr")
    common(p, basis=False)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("auto", help="apply alpha, beta or reversal")
    p.add_argument("which", choices=["alpha", "beta", "reversal"])
    p.add_argument("input", nargs="?", help="matrix or multivector file (default stdin)")
    common(p, basis=False)
    p.set_defaults(func=cmd_auto)

    p = sub.add_parser("structure", help="entry layout, signs and parity mask")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("bench", help="time the kernels and fit log-log slopes")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--budget", type=float, default=10.0, help="seconds above which one sample is enough")
    p.add_argument("--parallel", action="store_true", help="also time the threaded transform")
    p.add_argument("--csv", action="store_true", help="machine-readable rows instead of a table")
    p.add_argument("--seed", type=int, default=0)
    common(p, basis=False)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selfcheck", help="run the invariant suite")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    common(p, basis=False)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FormatError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (DimensionError, BasisError, ScalarDomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CliffordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
