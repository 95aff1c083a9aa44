"""Special-function kernels: Legendre polynomials and Bessel J0/J1.

Bessel evaluation is a two-regime scheme.  Below ``_SERIES_CUTOFF`` the
Maclaurin series is summed in double-double (compensated) arithmetic,
which keeps the heavy cancellation of the alternating series far below
the 1e-13 relative target.  At and above the cutoff the Hankel
amplitude-phase asymptotic expansion takes over, summed to its smallest
term, with the phase ``x - pi/4`` (or ``3 pi/4``) reduced in double-double
so no digits are lost in the subtraction.

Relative accuracy degrades to absolute accuracy in the immediate
neighbourhood of a Bessel zero, as for any fixed-precision evaluation.
"""

from __future__ import annotations

import math

from ..errors import InvalidParams, NonFiniteValue

__all__ = ["legendre_p", "LegendreRecurrence", "bessel_j", "bessel_taylor_pair"]

_SERIES_CUTOFF = 18.0

# Dekker's splitter: 2**27 + 1.
_SPLITTER = 134217729.0

# pi/4 and 3*pi/4 as double-double constants.
_PIO4 = (0.7853981633974483, 3.061616997868383e-17)
_THREE_PIO4 = (2.356194490192345, 9.184850993605148e-17)


# ---------------------------------------------------------------------------
# Legendre polynomials
# ---------------------------------------------------------------------------


def legendre_p(k: int, x: float) -> float:
    """P_k(x) by the upward three-term recurrence from P_0 = 1, P_1 = x."""
    if k < 0 or k != int(k):
        raise InvalidParams("Legendre degree must be a non-negative integer")
    if not math.isfinite(x):
        raise NonFiniteValue(f"Legendre argument {x!r}")
    if k == 0:
        return 1.0
    p_prev = 1.0
    p_cur = x
    for n in range(1, k):
        p_prev, p_cur = p_cur, ((2 * n + 1) * x * p_cur - n * p_prev) / (n + 1)
    return p_cur


class LegendreRecurrence:
    """Stateful P_n(x) evaluator at a fixed argument.

    Keeps the whole recurrence chain, so a scan over increasing degrees
    costs O(1) amortized per degree.
    """

    def __init__(self, x: float):
        if not math.isfinite(x):
            raise NonFiniteValue(f"Legendre argument {x!r}")
        self.x = x
        self._values = [1.0, x]

    def value(self, k: int) -> float:
        if k < 0:
            raise InvalidParams("Legendre degree must be non-negative")
        vals = self._values
        x = self.x
        while len(vals) <= k:
            n = len(vals) - 1
            vals.append(((2 * n + 1) * x * vals[n] - n * vals[n - 1]) / (n + 1))
        return vals[k]


# ---------------------------------------------------------------------------
# Double-double helpers (enough for the Bessel series)
# ---------------------------------------------------------------------------


def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _quick_two_sum(a, b):
    # Requires |a| >= |b|.
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(a, b):
    s, e = _two_sum(a[0], b[0])
    e += a[1] + b[1]
    return _quick_two_sum(s, e)


def _dd_mul(a, b):
    p, e = _two_prod(a[0], b[0])
    e += a[0] * b[1] + a[1] * b[0]
    return _quick_two_sum(p, e)


def _dd_div_float(a, d):
    q1 = a[0] / d
    p, e = _two_prod(q1, d)
    r = ((a[0] - p) - e + a[1]) / d
    return _quick_two_sum(q1, r)


# ---------------------------------------------------------------------------
# Bessel J0 / J1
# ---------------------------------------------------------------------------


def _bessel_series_pair(x: float) -> tuple[float, float]:
    """(J0, J1) from the Maclaurin series in double-double arithmetic.

    The alternating series loses roughly x/ln(10) digits to cancellation;
    the doubled working precision absorbs that for x below the cutoff.
    """
    qh, ql = _two_prod(x, x)
    q = (qh / 4.0, ql / 4.0)  # (x/2)^2, division by 4 is exact
    t0 = (1.0, 0.0)
    t1 = (1.0, 0.0)
    s0 = t0
    s1 = t1
    for k in range(1, 220):
        t0 = _dd_div_float(_dd_mul(t0, q), float(-k * k))
        t1 = _dd_div_float(_dd_mul(t1, q), float(-k * (k + 1)))
        s0 = _dd_add(s0, t0)
        s1 = _dd_add(s1, t1)
        if abs(t0[0]) < 1e-40 and abs(t1[0]) < 1e-40:
            break
    j0 = s0[0] + s0[1]
    j1 = (x / 2.0) * (s1[0] + s1[1])
    return j0, j1


def _hankel_pq(mu: float, x: float) -> tuple[float, float]:
    """Amplitude series P, Q of the large-x expansion, summed to the
    smallest term (the series is asymptotic, so terms eventually grow)."""
    p = 1.0
    q = 0.0
    a = 1.0
    for m in range(1, 60):
        a_next = a * (mu - (2 * m - 1) ** 2) / (8.0 * m * x)
        if m > 2 and abs(a_next) >= abs(a):
            break
        a = a_next
        k, rem = divmod(m, 2)
        if rem:  # odd m feeds Q with sign (-1)^k
            q += a if k % 2 == 0 else -a
        else:  # even m feeds P with sign (-1)^k
            p += a if k % 2 == 0 else -a
        if abs(a) < 1e-20:
            break
    return p, q


def _phase_trig(x: float, shift: tuple[float, float]) -> tuple[float, float]:
    """cos and sin of ``x - shift`` with the reduction done in double-double."""
    s, e = _two_sum(x, -shift[0])
    e -= shift[1]
    hi, lo = _quick_two_sum(s, e)
    c = math.cos(hi)
    si = math.sin(hi)
    return c - si * lo, si + c * lo


def _bessel_asymptotic(order: int, x: float) -> float:
    mu = 4.0 * order * order
    p, q = _hankel_pq(mu, x)
    cos_chi, sin_chi = _phase_trig(x, _PIO4 if order == 0 else _THREE_PIO4)
    return math.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)


def bessel_j(order: int, x: float) -> float:
    """Bessel function J0 or J1 for x >= 0."""
    if order not in (0, 1):
        raise InvalidParams("only orders 0 and 1 are supported")
    if not math.isfinite(x):
        raise NonFiniteValue(f"Bessel argument {x!r}")
    if x < 0:
        raise InvalidParams("Bessel argument must be non-negative")
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x < _SERIES_CUTOFF:
        pair = _bessel_series_pair(x)
        return pair[order]
    return _bessel_asymptotic(order, x)


def bessel_taylor_pair(center: float, order: int) -> tuple[list[float], list[float]]:
    """Scaled Taylor coefficients of (J0, J1) at ``center``.

    Returns two lists ``c`` with ``c[i] = f^(i)(center) / i!`` for
    i = 0..order, built from J0' = -J1 and J1' = J0 - J1/t.  At the
    origin the Maclaurin coefficients are used directly.
    """
    if order < 0:
        raise InvalidParams("derivative order must be non-negative")
    if center < 0:
        raise InvalidParams("Bessel expansion point must be non-negative")
    if center == 0.0:
        c0 = [0.0] * (order + 1)
        c1 = [0.0] * (order + 1)
        for k in range(0, order // 2 + 1):
            if 2 * k <= order:
                c0[2 * k] = (-0.25) ** k / (math.factorial(k) ** 2)
            if 2 * k + 1 <= order:
                c1[2 * k + 1] = (
                    (-1.0) ** k
                    / (2.0 ** (2 * k + 1) * math.factorial(k) * math.factorial(k + 1))
                )
        return c0, c1
    u = [bessel_j(0, center)]
    v = [bessel_j(1, center)]
    w: list[float] = []  # local expansion of J1(t)/t
    for i in range(order):
        w_i = (v[i] - (w[i - 1] if i else 0.0)) / center
        w.append(w_i)
        u.append(-v[i] / (i + 1))
        v.append((u[i] - w_i) / (i + 1))
    return u[: order + 1], v[: order + 1]
