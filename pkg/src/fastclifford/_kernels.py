"""Compiled inner loops.

Everything here works on raw numpy arrays; validation and the public types
live in the modules that call into this one.  Kernels are written once and
numba specialises them for float64 and complex128.
"""

from functools import lru_cache

import numpy as np
from numba import njit, prange

@njit(cache=True, inline="always")
def parity(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True, inline="always")
def _sign(x):
    # (-1)**popcount(x)
    return 1 - 2 * parity(x)


@njit(cache=True)
def _prefix_parity(p, nbits):
    # bit y of the result is the parity of the bits of p strictly below y
    out = 0
    acc = 0
    for y in range(nbits):
        out |= acc << y
        acc ^= (p >> y) & 1
    return out


@njit(cache=True)
def _sign_keys(nbits):
    size = 1 << nbits
    odd = 0
    for y in range(1, nbits, 2):
        odd |= 1 << y
    keys = np.empty(size, dtype=np.int64)
    for p in range(size):
        keys[p] = _prefix_parity(p, nbits) ^ (p & odd)
    return keys


@lru_cache(maxsize=None)
def sign_keys(n):
    """Per-mask keys ``k`` with ``sign(p, q) = (-1)**popcount(k[p] & q)``.

    The key folds the reordering parity (generators of ``q`` moving past the
    lower generators of ``p``) together with the ``-1`` of every shared
    tilde generator.
    """
    keys = _sign_keys(2 * n)
    keys.flags.writeable = False
    return keys


@lru_cache(maxsize=None)
def sign_table(n):
    """Dense ``(4**n, 4**n)`` table of blade product signs, as float64."""
    keys = sign_keys(n)
    q = np.arange(1 << (2 * n), dtype=np.int64)
    table = 1.0 - 2.0 * (np.bitwise_count(keys[:, None] & q[None, :]) & 1)
    table.flags.writeable = False
    return table


@njit(cache=True)
def _naive_product(a, b, c, sh, sl, hbits, lbits):
    # c[p ^ q] += sign(p, q) a[p] b[q] over all N**2 pairs.  Splitting the
    # masks into a high part (hbits) and a low part (lbits) factors the sign
    # as sh * sl * (-1)**(|pl| |qh|), and for a fixed low index of p the
    # remaining double sum over (ph, qh, ql) is one dense matrix product.
    H = 1 << hbits
    L = 1 << lbits
    A = a.reshape(H, L)
    B = b.reshape(H, L)
    C = c.reshape(H, L)
    W = np.empty((H, H), dtype=c.dtype)
    BP = np.empty((H, L), dtype=c.dtype)
    for pl in range(L):
        for rh in range(H):
            for qh in range(H):
                ph = rh ^ qh
                W[rh, qh] = A[ph, pl] * sh[ph, qh]
        lpar = parity(pl)
        for qh in range(H):
            cross = 1 - 2 * (lpar & parity(qh))
            for rl in range(L):
                ql = pl ^ rl
                BP[qh, rl] = B[qh, ql] * (sl[pl, ql] * cross)
        C += np.dot(W, BP)


def naive_product(a, b, n):
    dtype = np.result_type(a.dtype, b.dtype)
    a = np.ascontiguousarray(a, dtype=dtype)
    b = np.ascontiguousarray(b, dtype=dtype)
    c = np.zeros(a.shape, dtype=dtype)
    low = n // 2
    high = n - low
    sh = sign_table(high).astype(dtype)
    sl = sign_table(low).astype(dtype)
    _naive_product(a, b, c, sh, sl, 2 * high, 2 * low)
    return c


# --- fast transforms -------------------------------------------------------
# The coefficient buffer is processed level by level.  At level l the buffer
# is (4**l blocks) x (4 quarters) x (S = 4**(n-l-1)) and every butterfly
# reads four values at stride S and writes them back to the same slots.
# After the last level the base-4 digit l of a position holds
# (row bit, column bit) of level l, most significant level first.


@njit(cache=True)
def right_forward(x, n):
    for level in range(n):
        S = 1 << (2 * (n - level - 1))
        for base in range(0, x.shape[0], 4 * S):
            for t in range(S):
                s = _sign(t)
                i0 = base + t
                x0 = x[i0]
                x1 = x[i0 + S]
                x2 = x[i0 + 2 * S]
                x3 = x[i0 + 3 * S]
                x[i0] = x0 + x3
                x[i0 + S] = s * (x1 + x2)
                x[i0 + 2 * S] = x1 - x2
                x[i0 + 3 * S] = s * (x0 - x3)


@njit(cache=True)
def right_inverse(x, n):
    for level in range(n - 1, -1, -1):
        S = 1 << (2 * (n - level - 1))
        for base in range(0, x.shape[0], 4 * S):
            for t in range(S):
                s = _sign(t)
                i0 = base + t
                u0 = x[i0]
                u1 = s * x[i0 + S]
                u2 = x[i0 + 2 * S]
                u3 = s * x[i0 + 3 * S]
                x[i0] = 0.5 * (u0 + u3)
                x[i0 + S] = 0.5 * (u1 + u2)
                x[i0 + 2 * S] = 0.5 * (u1 - u2)
                x[i0 + 3 * S] = 0.5 * (u0 - u3)


@njit(cache=True)
def left_forward(x, n):
    for level in range(n):
        S = 1 << (2 * (n - level - 1))
        for base in range(0, x.shape[0], 4 * S):
            for t in range(S):
                s = _sign(t)
                i0 = base + t
                x0 = x[i0]
                x1 = x[i0 + S]
                x2 = x[i0 + 2 * S]
                x3 = x[i0 + 3 * S]
                x[i0] = x0 - x3
                x[i0 + S] = s * (x1 - x2)
                x[i0 + 2 * S] = x1 + x2
                x[i0 + 3 * S] = s * (x0 + x3)


@njit(cache=True)
def left_inverse(x, n):
    for level in range(n - 1, -1, -1):
        S = 1 << (2 * (n - level - 1))
        for base in range(0, x.shape[0], 4 * S):
            for t in range(S):
                s = _sign(t)
                i0 = base + t
                y0 = x[i0]
                y1 = s * x[i0 + S]
                y2 = x[i0 + 2 * S]
                y3 = s * x[i0 + 3 * S]
                x[i0] = 0.5 * (y0 + y3)
                x[i0 + S] = 0.5 * (y2 + y1)
                x[i0 + 2 * S] = 0.5 * (y2 - y1)
                x[i0 + 3 * S] = 0.5 * (y3 - y0)


@njit(cache=True, parallel=True)
def right_forward_parallel(x, n):
    # same butterflies as right_forward; each level's N/4 of them are independent
    quarter = x.shape[0] // 4
    for level in range(n):
        S = 1 << (2 * (n - level - 1))
        for idx in prange(quarter):
            t = idx % S
            i0 = (idx - t) * 4 + t
            s = _sign(t)
            x0 = x[i0]
            x1 = x[i0 + S]
            x2 = x[i0 + 2 * S]
            x3 = x[i0 + 3 * S]
            x[i0] = x0 + x3
            x[i0 + S] = s * (x1 + x2)
            x[i0 + 2 * S] = x1 - x2
            x[i0 + 3 * S] = s * (x0 - x3)


@lru_cache(maxsize=None)
def spread_bits(n):
    """``spread[i]`` places bit k of ``i`` at bit 2k."""
    i = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(i)
    for k in range(n):
        out |= ((i >> k) & 1) << (2 * k)
    out.flags.writeable = False
    return out


@njit(cache=True)
def digits_to_matrix(x, out, spread):
    dim = out.shape[0]
    for r in range(dim):
        hi = spread[r] << 1
        for c in range(dim):
            out[r, c] = x[hi | spread[c]]


@njit(cache=True)
def matrix_to_digits(m, x, spread):
    dim = m.shape[0]
    for r in range(dim):
        hi = spread[r] << 1
        for c in range(dim):
            x[hi | spread[c]] = m[r, c]


# --- automorphisms on matrices ---------------------------------------------


@njit(cache=True)
def parity_flip(m, out):
    # parity(i ^ j) = parity(i) ^ parity(j), so the sign factors into a row
    # sign times a column sign and the inner loop vectorises
    dim = m.shape[0]
    col = np.empty(dim)
    for j in range(dim):
        col[j] = _sign(j)
    for i in range(dim):
        if parity(i):
            for j in range(dim):
                out[i, j] = -col[j] * m[i, j]
        else:
            for j in range(dim):
                out[i, j] = col[j] * m[i, j]


@njit(cache=True)
def imaginary_flip(m, n):
    # one pass per recursion level: exchange the diagonal quarter pairs of
    # every block and flip the odd entries of each quarter
    dim = m.shape[0]
    for level in range(n):
        h = 1 << (n - level - 1)
        low = h - 1
        for i in range(dim):
            if i & h:
                continue
            for j in range(dim):
                if j & h:
                    continue
                s = _sign((i ^ j) & low)
                tl = m[i, j]
                tr = m[i, j | h]
                bl = m[i | h, j]
                br = m[i | h, j | h]
                m[i, j] = s * br
                m[i | h, j | h] = s * tl
                m[i, j | h] = s * bl
                m[i | h, j] = s * tr


@njit(cache=True)
def transpose_inplace(m):
    dim = m.shape[0]
    for i in range(dim):
        for j in range(i + 1, dim):
            t = m[i, j]
            m[i, j] = m[j, i]
            m[j, i] = t
