"""Fixed-order truncated power-series arithmetic on float coefficient arrays.

Orders stay below ~10 everywhere, so the quadratic/cubic coefficient loops
are irrelevant for cost.  Arrays hold coefficients of u^0, u^1, ... and are
truncated (never padded semantically) to the requested order.
"""

from __future__ import annotations

import math

import numpy as np


def ps_mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Product truncated to order n (n+1 coefficients)."""
    out = np.zeros(n + 1)
    for i in range(min(len(a), n + 1)):
        ai = a[i]
        if ai == 0.0:
            continue
        jmax = min(len(b), n + 1 - i)
        out[i : i + jmax] += ai * b[:jmax]
    return out


def ps_recip(a: np.ndarray, n: int) -> np.ndarray:
    """1/a truncated to order n; requires a[0] != 0."""
    out = np.zeros(n + 1)
    out[0] = 1.0 / a[0]
    for k in range(1, n + 1):
        s = 0.0
        for i in range(1, min(k, len(a) - 1) + 1):
            s += a[i] * out[k - i]
        out[k] = -s / a[0]
    return out


def ps_sqrt(a: np.ndarray, n: int) -> np.ndarray:
    """sqrt(a) truncated to order n; requires a[0] > 0."""
    out = np.zeros(n + 1)
    out[0] = math.sqrt(a[0])
    for k in range(1, n + 1):
        s = a[k] if k < len(a) else 0.0
        for i in range(1, k):
            s -= out[i] * out[k - i]
        out[k] = s / (2.0 * out[0])
    return out


def ps_int(a: np.ndarray, n: int) -> np.ndarray:
    """Antiderivative with zero constant, truncated to order n."""
    out = np.zeros(n + 1)
    for k in range(min(len(a), n)):
        out[k + 1] = a[k] / (k + 1.0)
    return out


def ps_revert(a: np.ndarray, n: int) -> np.ndarray:
    """Reversion of w = sum_{k>=1} a_k u^k (a[0] = 0, a[1] != 0): returns b
    with u = sum_{k>=1} b_k w^k to order n."""
    if a[0] != 0.0:
        raise ValueError("series reversion requires zero constant term")
    if a[1] == 0.0:
        raise ValueError("series reversion requires nonzero linear term")
    b = np.zeros(n + 1)
    b[1] = 1.0 / a[1]
    for k in range(2, n + 1):
        # coefficient of w^k in sum_m a_m B(w)^m must vanish; powers m >= 2
        # only involve b_1..b_{k-1}
        part = b.copy()
        part[k:] = 0.0
        acc = 0.0
        pw = part.copy()
        for m in range(2, k + 1):
            pw = ps_mul(pw, part, k)
            if m < len(a) and a[m] != 0.0:
                acc += a[m] * pw[k]
        b[k] = -acc / a[1]
    return b


def ps_eval(a: np.ndarray, u: float) -> float:
    """Horner evaluation of the truncated series at u."""
    s = 0.0
    for k in range(len(a) - 1, -1, -1):
        s = s * u + a[k]
    return s
