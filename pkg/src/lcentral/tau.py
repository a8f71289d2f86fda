"""Exact coefficient table of the weight-12 level-1 cusp form.

The product q*prod(1-q^n)^24 is built as the eighth power of Jacobi's sparse
series prod(1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}: three squarings of a
dense array.  Production route: number-theoretic transforms modulo five
30-bit primes recombined by CRT, which keeps every intermediate in int64 and
the final values exact.  Oracle route (`tau_table_bigint`): the same three
squarings done by packing coefficients into Python big integers (Kronecker
substitution), sharing no arithmetic with the NTT path.  The two must agree
coefficient for coefficient; tests hold them to that.
"""

from __future__ import annotations

from math import isqrt, prod

import numpy as np

# p = c * 2^e + 1 with generator g; every p supports transforms up to 2^21
NTT_PRIMES: tuple[tuple[int, int], ...] = (
    (998244353, 3),     # 119 * 2^23 + 1
    (1004535809, 3),    # 479 * 2^21 + 1
    (469762049, 3),     # 7 * 2^26 + 1
    (167772161, 3),     # 5 * 2^25 + 1
    (754974721, 11),    # 45 * 2^24 + 1
)

_PRODUCT = prod(p for p, _ in NTT_PRIMES)

_SMALL_TAU = {1: 1, 2: -24, 3: 252, 4: -1472, 5: 4830, 6: -6048,
              7: -16744, 8: 84480, 9: -113643, 10: -115920,
              11: 534612, 12: -370944, 13: -577738}


def cube_series_terms(limit: int) -> list[tuple[int, int]]:
    """Sparse (exponent, coefficient) pairs of prod(1-q^n)^3 below `limit`."""
    out = []
    k = 0
    while k * (k + 1) // 2 < limit:
        out.append((k * (k + 1) // 2, (2 * k + 1) * (-1 if k & 1 else 1)))
        k += 1
    return out


# ---------------------------------------------------------------------------
# NTT route
# ---------------------------------------------------------------------------

def _bit_reverse_indices(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _root_powers(root: int, n: int, p: int) -> np.ndarray:
    t = np.ones(n, dtype=np.int64)
    cur = root % p
    k = 1
    while k < n:
        m = min(2 * k, n)
        t[k:m] = t[:m - k] * cur % p
        cur = cur * cur % p
        k *= 2
    return t


def _ntt(a: np.ndarray, p: int, root: int) -> np.ndarray:
    n = a.shape[0]
    a = a[_bit_reverse_indices(n)]
    powers = _root_powers(root, n, p)
    length = 2
    while length <= n:
        half = length >> 1
        stride = n // length
        tw = powers[0:half * stride:stride]
        blk = a.reshape(-1, length)
        lo = blk[:, :half].copy()
        hi = blk[:, half:] * tw % p
        blk[:, :half] = (lo + hi) % p
        blk[:, half:] = (lo - hi) % p
        length <<= 1
    return a


def _square_mod(a: np.ndarray, p: int, g: int, out_len: int) -> np.ndarray:
    """Coefficients of (sum a_i q^i)^2 mod p, truncated to out_len."""
    need = 2 * a.shape[0] - 1
    n = 1 << (need - 1).bit_length()
    if (p - 1) % n:
        raise ValueError(f"transform size {n} unsupported by prime {p}")
    root = pow(g, (p - 1) // n, p)
    fa = np.zeros(n, dtype=np.int64)
    fa[:a.shape[0]] = a
    fa = _ntt(fa, p, root)
    fa = fa * fa % p
    fa = _ntt(fa, p, pow(root, p - 2, p))
    fa = fa * pow(n, p - 2, p) % p
    return fa[:out_len]


def _tau_residues(limit: int, p: int, g: int) -> np.ndarray:
    arr = np.zeros(limit, dtype=np.int64)
    for e, c in cube_series_terms(limit):
        arr[e] = c % p
    for _ in range(3):
        arr = _square_mod(arr, p, g, limit)
    return arr


def tau_table(limit: int) -> list[int]:
    """tau(n) for 1 <= n <= limit, exact; index n of the returned list.

    limit is the number of coefficients; entry 0 is a placeholder zero.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    # coefficient magnitudes stay far inside the CRT range: |tau(n)| grows
    # like n^(11/2) times a divisor count, and five primes give ~145 bits
    if 4 * limit ** 6 >= _PRODUCT:
        raise ValueError("limit too large for the configured prime set")
    residues = [_tau_residues(limit, p, g) for p, g in NTT_PRIMES]
    primes = [p for p, _ in NTT_PRIMES]
    basis = []
    for p in primes:
        q = _PRODUCT // p
        basis.append(q * pow(q % p, -1, p) % _PRODUCT)
    half = _PRODUCT // 2
    out = [0] * (limit + 1)
    for i in range(limit):
        x = sum(int(r[i]) * e for r, e in zip(residues, basis)) % _PRODUCT
        out[i + 1] = x - _PRODUCT if x > half else x
    for n, v in _SMALL_TAU.items():
        if n <= limit and out[n] != v:
            raise ArithmeticError(f"tau({n}) reproduced as {out[n]}, not {v}")
    return out


# ---------------------------------------------------------------------------
# big-integer oracle route
# ---------------------------------------------------------------------------

_SLOT_BYTES = 16  # 128-bit slots; ample for every coefficient below the cap
_ORACLE_CAP = 20001


def _pack(coeffs: list[int]) -> int:
    return int.from_bytes(
        b"".join(c.to_bytes(_SLOT_BYTES, "little") for c in coeffs), "little")


def _unpack(x: int, count: int) -> list[int]:
    raw = x.to_bytes(count * _SLOT_BYTES, "little")
    return [int.from_bytes(raw[i * _SLOT_BYTES:(i + 1) * _SLOT_BYTES], "little")
            for i in range(count)]


def _square_bigint(coeffs: list[int], out_len: int) -> list[int]:
    """Exact polynomial square via packed integer multiplication.

    Signed input is split into nonnegative parts; (P - N)^2 is reassembled
    from the three nonnegative products so digit extraction never sees a
    negative limb.
    """
    pos = [c if c > 0 else 0 for c in coeffs]
    neg = [-c if c < 0 else 0 for c in coeffs]
    P, N = _pack(pos), _pack(neg)
    n = len(coeffs)
    pp = _unpack(P * P, 2 * n)
    nn = _unpack(N * N, 2 * n)
    pn = _unpack(P * N, 2 * n)
    return [pp[i] + nn[i] - 2 * pn[i] for i in range(out_len)]


def tau_table_bigint(limit: int) -> list[int]:
    """Slow exact route for cross-checking tau_table; capped by design."""
    if not 1 <= limit <= _ORACLE_CAP:
        raise ValueError(f"oracle route is limited to {_ORACLE_CAP} coefficients")
    coeffs = [0] * limit
    for e, c in cube_series_terms(limit):
        coeffs[e] = c
    for _ in range(3):
        coeffs = _square_bigint(coeffs, limit)
    return [0] + coeffs


def hecke_eigenvalue_defect(table: list[int], m: int, n: int) -> int:
    """tau(m n) - tau(m) tau(n) for coprime m, n; zero iff multiplicative."""
    from math import gcd
    if gcd(m, n) != 1:
        raise ValueError("defect is defined for coprime arguments")
    return table[m * n] - table[m] * table[n]
