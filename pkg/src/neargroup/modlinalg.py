"""Linear systems ``A x = b`` over Z/NZ.

The modulus is split into prime powers (CRT).  Over Z/p^e every nonzero
entry is a unit times a power of p, so picking the pivot of least p-adic
valuation gives a diagonal (Smith-like) form with plain row and column
operations.  Free variables are set to zero, which makes the solution
deterministic.
"""
from __future__ import annotations

from typing import Optional

import numpy as np


def factorize(n: int) -> dict:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation(a: np.ndarray, p: int, e: int) -> np.ndarray:
    """p-adic valuation of entries mod p^e (``e`` for zero)."""
    v = np.zeros(a.shape, dtype=np.int64)
    a = a.copy()
    for _ in range(e):
        m = (a % p == 0) & (v < e)
        v[m] += 1
        a[m] //= p
    v[a == 0] = e
    return v


def solve_prime_power(A, b, p: int, e: int) -> Optional[np.ndarray]:
    q = p ** e
    A = np.array(A, dtype=np.int64) % q
    b = np.array(b, dtype=np.int64) % q
    m, n = A.shape
    V = np.eye(n, dtype=np.int64)
    diag = []
    t = 0
    while t < min(m, n):
        sub = A[t:, t:]
        val = _valuation(sub, p, e)
        if val.min() >= e:
            break
        i, j = np.unravel_index(np.argmin(val), val.shape)
        i, j = i + t, j + t
        A[[t, i]] = A[[i, t]]
        b[[t, i]] = b[[i, t]]
        A[:, [t, j]] = A[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]
        v = int(val.min())
        unit = int(A[t, t]) // p ** v
        uinv = pow(unit, -1, q)
        A[t] = A[t] * uinv % q
        b[t] = b[t] * uinv % q
        pv = p ** v
        # every entry below/right of the pivot has valuation >= v
        f = A[:, t] // pv
        f[t] = 0
        A = (A - f[:, None] * A[t][None, :]) % q
        b = (b - f * b[t]) % q
        g = A[t, :] // pv
        g[t] = 0
        A = (A - A[:, t][:, None] * g[None, :]) % q
        V = (V - V[:, t][:, None] * g[None, :]) % q
        diag.append(v)
        t += 1
    y = np.zeros(n, dtype=np.int64)
    for k, v in enumerate(diag):
        pv = p ** v
        if b[k] % pv:
            return None
        # pivot p^v: y ≡ b/p^v modulo p^{e-v}; the smallest representative
        y[k] = (b[k] // pv) % (q // pv)
    if np.any(b[len(diag):] % q):
        return None
    x = V @ y % q
    return x


def solve_mod(A, b, N: int) -> Optional[np.ndarray]:
    """One solution of ``A x ≡ b (mod N)`` or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if N == 1:
        return np.zeros(A.shape[1], dtype=np.int64)
    x = np.zeros(A.shape[1], dtype=np.int64)
    mod = 1
    for p, e in factorize(N).items():
        q = p ** e
        xq = solve_prime_power(A, b, p, e)
        if xq is None:
            return None
        # CRT: x ≡ x (mod mod), x ≡ xq (mod q)
        t = ((xq - x) * pow(mod, -1, q)) % q
        x = x + mod * t
        mod *= q
    x %= N
    assert np.all((A @ x - b) % N == 0)
    return x
