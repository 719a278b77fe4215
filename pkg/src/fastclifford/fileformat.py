"""Plain-text files for multivectors and representation matrices.

A multivector file::

    kind: multivector
    algebra: cl(2,2)
    n: 2
    scalar: real
    terms:
    0b0001 1.5
    0b1100 -2.0

``algebra`` is ``cl(n,n)`` or ``ccl(2n)``; masks may be written in decimal or
as ``0b`` binary and omitted masks are zero.  Complex terms carry two numbers,
real then imaginary.  A matrix file::

    kind: matrix
    dim: 2
    basis: right
    scalar: real
    entries:
    0.0 1.0
    1.0 0.0

with ``dim**2`` entries in row-major order (two numbers each when complex).
Floats are written with ``repr`` so every double survives a roundtrip.
Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector
from .errors import CliffordError, DimensionError
from .transform import RepMatrix, SpinorBasis


class FormatError(CliffordError):
    """Input text does not follow the file grammar."""


@dataclass(frozen=True)
class MultivectorFile:
    value: Multivector
    complex_algebra: bool = False

    @property
    def algebra(self) -> str:
        n = self.value.n
        return f"ccl({2 * n})" if self.complex_algebra else f"cl({n},{n})"


@dataclass(frozen=True)
class MatrixFile:
    value: RepMatrix


_ALGEBRA = re.compile(r"(?:cl\((\d+),(\d+)\)|ccl\((\d+)\))$")
_SECTIONS = {"terms": "multivector", "entries": "matrix"}
_HEADER_KEYS = {
    "multivector": {"kind", "algebra", "n", "scalar"},
    "matrix": {"kind", "dim", "basis", "scalar"},
}


def _number(x: float) -> str:
    return repr(float(x))


def _parse_float(token: str, where: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise FormatError(f"{where}: {token!r} is not a number") from None


def _parse_int(token: str, field: str) -> int:
    try:
        return int(token, 0)
    except ValueError:
        raise FormatError(f"field {field!r}: {token!r} is not an integer") from None


def _scalar_kind(header: dict) -> bool:
    scalar = header.get("scalar", "real")
    if scalar not in ("real", "complex"):
        raise FormatError(f"field 'scalar': expected real or complex, got {scalar!r}")
    return scalar == "complex"


def _split(text: str) -> tuple[str, dict, list[tuple[int, str]]]:
    header: dict[str, str] = {}
    kind = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is not None:
            body.append((lineno, line))
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise FormatError(f"line {lineno}: expected 'key: value', got {line!r}")
        if key in _SECTIONS and not value.strip():
            kind = _SECTIONS[key]
            continue
        if key in header:
            raise FormatError(f"line {lineno}: duplicate field {key!r}")
        header[key] = value.strip().lower()
    if kind is None:
        raise FormatError("missing 'terms:' or 'entries:' section")
    if header.get("kind", kind) != kind:
        raise FormatError(f"field 'kind': {header['kind']!r} does not match the {kind} section")
    unknown = set(header) - _HEADER_KEYS[kind]
    if unknown:
        raise FormatError(f"unknown field(s) {', '.join(sorted(unknown))} in {kind} header")
    return kind, header, body


def _parse_multivector(header: dict, body) -> MultivectorFile:
    if "algebra" not in header:
        raise FormatError("missing field 'algebra'")
    match = _ALGEBRA.fullmatch(header["algebra"].replace(" ", ""))
    if not match:
        raise FormatError(f"field 'algebra': expected cl(n,n) or ccl(2n), got {header['algebra']!r}")
    if match.group(3) is not None:
        generators = int(match.group(3))
        if generators % 2:
            raise FormatError(f"field 'algebra': ccl needs an even generator count, got {generators}")
        n, complex_algebra = generators // 2, True
    else:
        p, q = int(match.group(1)), int(match.group(2))
        if p != q:
            raise FormatError(f"field 'algebra': only split signatures cl(n,n) are supported, got cl({p},{q})")
        n, complex_algebra = p, False
    if "n" in header and _parse_int(header["n"], "n") != n:
        raise DimensionError(f"field 'n': {header['n']} disagrees with algebra {header['algebra']}")
    is_complex = _scalar_kind(header)
    if complex_algebra and not is_complex:
        raise FormatError("field 'scalar': ccl algebras need complex scalars")
    width = 3 if is_complex else 2
    coeffs = np.zeros(4**n, dtype=np.complex128 if is_complex else np.float64)
    seen = set()
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != width:
            raise FormatError(f"line {lineno}: expected mask and {width - 1} number(s), got {line!r}")
        mask = _parse_int(tokens[0], "mask")
        if not 0 <= mask < 4**n:
            raise DimensionError(f"line {lineno}: mask {tokens[0]} out of range for n={n}")
        if mask in seen:
            raise FormatError(f"line {lineno}: duplicate mask {tokens[0]}")
        seen.add(mask)
        value = _parse_float(tokens[1], f"line {lineno}")
        if is_complex:
            value = complex(value, _parse_float(tokens[2], f"line {lineno}"))
        coeffs[mask] = value
    return MultivectorFile(Multivector(n, coeffs), complex_algebra)


def _parse_matrix(header: dict, body) -> MatrixFile:
    for key in ("dim", "basis"):
        if key not in header:
            raise FormatError(f"missing field {key!r}")
    dim = _parse_int(header["dim"], "dim")
    if dim < 1 or dim & (dim - 1):
        raise DimensionError(f"field 'dim': {dim} is not a power of two")
    try:
        basis = SpinorBasis(header["basis"])
    except ValueError:
        raise FormatError(f"field 'basis': expected right or left, got {header['basis']!r}") from None
    is_complex = _scalar_kind(header)
    tokens = [(lineno, tok) for lineno, line in body for tok in line.split()]
    per_entry = 2 if is_complex else 1
    if len(tokens) != per_entry * dim * dim:
        raise DimensionError(f"field 'entries': expected {per_entry * dim * dim} numbers for dim={dim}, got {len(tokens)}")
    values = np.array([_parse_float(tok, f"line {lineno}") for lineno, tok in tokens])
    if is_complex:
        values = values[0::2] + 1j * values[1::2]
    return MatrixFile(RepMatrix(values.reshape(dim, dim), basis))


def parse(text: str) -> MultivectorFile | MatrixFile:
    kind, header, body = _split(text)
    if kind == "multivector":
        return _parse_multivector(header, body)
    return _parse_matrix(header, body)


def emit(obj: MultivectorFile | MatrixFile) -> str:
    if isinstance(obj, MatrixFile):
        m = obj.value
        is_complex = m.dtype.kind == "c"
        lines = [
            "kind: matrix",
            f"dim: {m.dim}",
            f"basis: {m.basis.value}",
            f"scalar: {'complex' if is_complex else 'real'}",
            "entries:",
        ]
        for row in m.entries:
            if is_complex:
                lines.append(" ".join(f"{_number(z.real)} {_number(z.imag)}" for z in row))
            else:
                lines.append(" ".join(_number(x) for x in row))
        return "\n".join(lines) + "\n"
    mv = obj.value
    is_complex = mv.is_complex
    lines = [
        "kind: multivector",
        f"algebra: {obj.algebra}",
        f"n: {mv.n}",
        f"scalar: {'complex' if is_complex else 'real'}",
        "terms:",
    ]
    width = max(2 * mv.n, 1)
    for mask in np.flatnonzero(mv.coeffs):
        value = mv.coeffs[mask]
        nums = f"{_number(value.real)} {_number(value.imag)}" if is_complex else _number(value)
        lines.append(f"0b{int(mask):0{width}b} {nums}")
    return "\n".join(lines) + "\n"


def load(path: str | None) -> MultivectorFile | MatrixFile:
    """Parse a file, or stdin when ``path`` is None or ``-``."""
    if path is None or path == "-":
        return parse(sys.stdin.read())
    with open(path) as fh:
        return parse(fh.read())


def dump(obj: MultivectorFile | MatrixFile, path: str | None = None) -> None:
    text = emit(obj)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
