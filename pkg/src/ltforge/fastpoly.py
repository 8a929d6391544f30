"""Packed integer polynomial kernels.

Coefficient lists are non-negative ints mod p^M.  Multiplication packs
them into one big integer (Kronecker substitution) so GMP does the heavy
lifting; bivariate series in triangular layout are embedded on a strided
exponent grid first.
"""

from __future__ import annotations

import gmpy2

from .padic import ppow


def _slot_bits(p, M, nterms):
    return 2 * ppow(p, M).bit_length() + max(1, nterms).bit_length() + 1


def mul_1d(a, b, p, M, cap):
    """Truncated product of coefficient lists mod p^M through degree cap."""
    if not a or not b:
        return []
    pm = ppow(p, M)
    bits = _slot_bits(p, M, min(len(a), len(b)))
    prod = gmpy2.pack([x % pm for x in a], bits) * \
        gmpy2.pack([x % pm for x in b], bits)
    out = gmpy2.unpack(prod, bits)[: cap + 1]
    return [int(c) % pm for c in out]


def compose_1d(outer, inner, p, M, cap):
    """outer(inner(X)) mod p^M through degree cap; inner[0] must be 0."""
    if inner and inner[0] % ppow(p, M):
        raise ValueError("inner constant term must vanish")
    pm = ppow(p, M)
    acc = [outer[-1] % pm]
    for k in range(len(outer) - 2, -1, -1):
        acc = mul_1d(acc, inner, p, M, cap)
        if not acc:
            acc = [0]
        acc[0] = (acc[0] + outer[k]) % pm
    return acc + [0] * (cap + 1 - len(acc))


def pow_list_1d(base, top, p, M, cap):
    """[base^m for m in 0..top], each truncated at cap."""
    out = [[1]]
    cur = [1]
    for _ in range(top):
        cur = mul_1d(cur, base, p, M, cap)
        out.append(cur)
    return out


# -- triangular bivariate layout ------------------------------------------------

def tri_size(D):
    return (D + 1) * (D + 2) // 2


def tri_index(D, i, j):
    # row-major by i: row i holds j = 0..D-i
    return i * (D + 1) - i * (i - 1) // 2 + j


def tri_iter(D):
    for i in range(D + 1):
        for j in range(D + 1 - i):
            yield i, j


def mul_2d(a, b, p, M, D):
    """Truncated product of triangular coefficient lists (total degree D)."""
    pm = ppow(p, M)
    stride = 2 * D + 1
    bits = _slot_bits(p, M, tri_size(D))
    ga = [0] * (stride * (D + 1))
    gb = [0] * (stride * (D + 1))
    for i, j in tri_iter(D):
        ga[i + stride * j] = a[tri_index(D, i, j)] % pm
        gb[i + stride * j] = b[tri_index(D, i, j)] % pm
    prod = gmpy2.pack(ga, bits) * gmpy2.pack(gb, bits)
    flat = gmpy2.unpack(prod, bits)
    out = [0] * tri_size(D)
    n = len(flat)
    for i, j in tri_iter(D):
        k = i + stride * j
        if k < n:
            out[tri_index(D, i, j)] = int(flat[k]) % pm
    return out


def compose_outer_2d(outer, inner_tri, p, M, D):
    """outer(S(X,Y)) for univariate outer and triangular S with S(0,0)=0."""
    pm = ppow(p, M)
    if inner_tri[tri_index(D, 0, 0)] % pm:
        raise ValueError("inner constant term must vanish")
    acc = [0] * tri_size(D)
    acc[0] = outer[-1] % pm
    for k in range(len(outer) - 2, -1, -1):
        acc = mul_2d(acc, inner_tri, p, M, D)
        acc[0] = (acc[0] + outer[k]) % pm
    return acc


def outer_product_2d(u, v, p, M, D):
    """u(X)*v(Y) on the triangular grid (u, v univariate lists)."""
    pm = ppow(p, M)
    out = [0] * tri_size(D)
    for i, a in enumerate(u[: D + 1]):
        if a:
            for j, b in enumerate(v[: D + 1 - i]):
                if b:
                    out[tri_index(D, i, j)] = a * b % pm
    return out
