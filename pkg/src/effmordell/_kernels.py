"""Hot loops of the rational point search.

The prefilter walks the (p, q) rectangle and keeps coprime pairs for which
F(p, q) is a square modulo every sieve modulus.  Since F(p, q) mod m only
depends on (p mod m, q mod m), each modulus is a 2-D lookup table built
once per curve.  Survivors still need the exact integer square-root test.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, default_backend, njit

BASE_MODULI = (64, 63, 65, 11)
# extra primes cut survivors on curves whose form is a square modulo many small moduli
EXTRA_PRIMES = (17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
SIEVE_MODULI = BASE_MODULI + EXTRA_PRIMES


def residue_tables(coeffs, moduli=SIEVE_MODULI) -> np.ndarray:
    """Boolean array ``T[t, x, z]``: is F(x, z) a square mod ``moduli[t]``."""
    size = max(moduli)
    tables = np.zeros((len(moduli), size, size), dtype=np.bool_)
    for t, m in enumerate(moduli):
        squares = np.zeros(m, dtype=np.bool_)
        squares[(np.arange(m) ** 2) % m] = True
        x = np.arange(m, dtype=np.int64)[:, None]
        z = np.arange(m, dtype=np.int64)[None, :]
        value = np.zeros((m, m), dtype=np.int64)
        for i, a in enumerate(coeffs):
            # powers reduced mod m at each step keep everything far from int64 overflow
            term = a % m * (pow_mod(x, i, m) * pow_mod(z, 6 - i, m) % m) % m
            value = (value + term) % m
        tables[t, :m, :m] = squares[value]
    return tables


def pow_mod(base: np.ndarray, exponent: int, m: int) -> np.ndarray:
    out = np.ones_like(base)
    for _ in range(exponent):
        out = out * base % m
    return out


def prefilter_block_numpy(q_lo, q_hi, B, tables, moduli):
    ps_out, qs_out = [], []
    p = np.arange(-B, B + 1, dtype=np.int64)
    p_res = [p % m for m in moduli]
    for q in range(q_lo, q_hi + 1):
        mask = np.ones(p.shape, dtype=np.bool_)
        for t, m in enumerate(moduli):
            mask &= tables[t, p_res[t], q % m]
        cand = p[mask]
        cand = cand[np.gcd(cand, q) == 1]
        if cand.size:
            ps_out.append(cand)
            qs_out.append(np.full(cand.size, q, dtype=np.int64))
    if not ps_out:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy()
    return np.concatenate(ps_out), np.concatenate(qs_out)


@njit(cache=True, nogil=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _prefilter_block_jit(q_lo, q_hi, B, tables, moduli, p_res):
    cap = 4096
    ps = np.empty(cap, dtype=np.int64)
    qs = np.empty(cap, dtype=np.int64)
    count = 0
    nmod = moduli.shape[0]
    width = 2 * B + 1
    for q in range(q_lo, q_hi + 1):
        for idx in range(width):
            keep = True
            for t in range(nmod):
                if not tables[t, p_res[t, idx], q % moduli[t]]:
                    keep = False
                    break
            if not keep:
                continue
            p = idx - B
            if _gcd(abs(p), q) != 1:
                continue
            if count == cap:
                cap *= 2
                grown_p = np.empty(cap, dtype=np.int64)
                grown_q = np.empty(cap, dtype=np.int64)
                grown_p[:count] = ps[:count]
                grown_q[:count] = qs[:count]
                ps, qs = grown_p, grown_q
            ps[count] = p
            qs[count] = q
            count += 1
    return ps[:count], qs[:count]


def prefilter_block_numba(q_lo, q_hi, B, tables, moduli):
    if not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    moduli = np.asarray(moduli, dtype=np.int64)
    p = np.arange(-B, B + 1, dtype=np.int64)
    p_res = p[None, :] % moduli[:, None]
    return _prefilter_block_jit(q_lo, q_hi, B, tables, moduli, p_res)


BACKENDS = {"numpy": prefilter_block_numpy, "numba": prefilter_block_numba}


def prefilter_block(q_lo, q_hi, B, tables, moduli=SIEVE_MODULI, backend=None):
    """Candidate pairs (p, q) with ``q_lo <= q <= q_hi``, ``|p| <= B``, gcd(p, q) = 1."""
    return BACKENDS[backend or default_backend()](q_lo, q_hi, B, tables, moduli)
