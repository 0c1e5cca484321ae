"""Storage/bandwidth tradeoff quantities in exact rationals.

Covers the functional-repair capacity, the MBR and MSR points, the
time-sharing baseline between them, bounds on what LRCs achieve when used as
regenerating codes, and the sequences ``(n + m, k + m, d + m)`` as ``m`` grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .analysis import singleton_bound
from .lrc import NoPlanError, plan_construction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def func_capacity(k: int, d: int, alpha, gamma) -> Fraction:
    """``sum_{j<k} min(alpha, (d - j) gamma / d)`` in closed form.

    Term ``j`` saturates at ``alpha`` exactly when ``j <= d - d alpha/gamma``.
    """
    alpha, gamma = _q(alpha), _q(gamma)
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    if alpha <= 0 or gamma <= 0:
        raise ValueError("alpha and gamma must be positive")
    saturated = max(0, min(k, math.floor(d - d * alpha / gamma) + 1))
    # remaining terms j = saturated..k-1 contribute (d - j) gamma / d
    a, b = d - (k - 1), d - saturated
    tail = Fraction((a + b) * (b - a + 1), 2) if saturated < k else Fraction(0)
    return saturated * alpha + tail * gamma / d


def mbr_point(B, k: int, d: int) -> tuple[Fraction, Fraction]:
    B = _q(B)
    if not 1 <= k <= d or B <= 0:
        raise ValueError("need 1 <= k <= d and B > 0")
    a = 2 * d * B / (k * (2 * d - k + 1))
    return a, a


def msr_point(B, k: int, d: int) -> tuple[Fraction, Fraction]:
    B = _q(B)
    if not 1 <= k <= d or B <= 0:
        raise ValueError("need 1 <= k <= d and B > 0")
    return B / k, d * B / (k * (d - k + 1))


def gamma_range(k: int, d: int, alpha) -> tuple[Fraction, Fraction]:
    """Repair bandwidth at the MBR and MSR points for node size ``alpha``."""
    alpha = _q(alpha)
    return alpha, d * alpha / (d - k + 1)


def share_from_gamma(k: int, d: int, alpha, gamma) -> Fraction:
    """Weight ``s`` of the MBR code in the time-sharing mix reaching ``gamma``.

    For ``k = 1`` both endpoints coincide and ``s = 1`` by convention.
    """
    alpha, gamma = _q(alpha), _q(gamma)
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    lo, hi = gamma_range(k, d, alpha)
    if not lo <= gamma <= hi:
        raise ValueError(f"gamma={gamma} outside [{lo}, {hi}]")
    if k == 1:
        return Fraction(1)
    return Fraction(d, k - 1) - (d - k + 1) * gamma / ((k - 1) * alpha)


def gamma_from_share(k: int, d: int, alpha, s) -> Fraction:
    alpha, s = _q(alpha), _q(s)
    if not 0 <= s <= 1:
        raise ValueError(f"share must lie in [0, 1], got {s}")
    return s * alpha + (1 - s) * d * alpha / (d - k + 1)


def timeshare_perf(k: int, d: int, alpha, gamma) -> Fraction:
    """File size stored by time-sharing MBR and MSR codes at bandwidth ``gamma``."""
    alpha, gamma = _q(alpha), _q(gamma)
    share_from_gamma(k, d, alpha, gamma)  # domain check
    return k * alpha / 2 * (1 + (d - k + 1) * gamma / (d * alpha))


def timeshare_threshold(N: int, D: int, R: int, Delta: int) -> Fraction:
    """Right-hand side of the LRC-beats-time-sharing inequality."""
    return Fraction(N - D + 1, 2) * (1 + Fraction(R * (D - Delta + 1), N - Delta + 1))


def beats_timeshare(N: int, K: int, D: int, R: int, Delta: int) -> bool:
    return K > timeshare_threshold(N, D, R, Delta)


@dataclass(frozen=True)
class CapacityBounds:
    lower: int
    upper: int
    lower_R: Optional[int] = None
    note: str = ""

    def as_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "lower_R": self.lower_R, "note": self.note}


def _plan_dimension(N: int, D: int, R: int, Delta: int) -> Optional[int]:
    try:
        return plan_construction(N, D, R, Delta).K
    except NoPlanError:
        return None


def lrc_capacity_bounds(n: int, k: int, d: int, gamma: int) -> CapacityBounds:
    """Lower and upper bounds on the largest LRC file size at ``alpha = 1``.

    The lower bound is the best constructible dimension over localities
    ``R <= gamma``; the upper bound combines the LRC distance bound with
    the functional-repair capacity.
    """
    if not 1 <= k <= d <= n or gamma < 1:
        raise ValueError(f"need 1 <= k <= d <= n and gamma >= 1, got {(n, k, d, gamma)}")
    D, Delta = n - k + 1, n - d + 1
    by_distance = max((K for K in range(1, n + 1) if singleton_bound(n, K, gamma, Delta) >= D), default=0)
    upper = min(by_distance, math.floor(func_capacity(k, d, 1, gamma)))
    if Delta == 1:
        # locality with Delta = 1 is vacuous; an [n, k] MDS code does it
        return CapacityBounds(min(k, upper), upper, None, "Delta = 1: MDS code")
    best, best_R = 0, None
    for R in range(1, gamma + 1):
        K = _plan_dimension(n, D, R, Delta)
        if K is not None and K > best:
            best, best_R = K, R
    note = "" if best_R is not None else "no construction for any R <= gamma"
    return CapacityBounds(best, upper, best_R, note)


def lrc_capacity_lower(n: int, k: int, d: int, alpha, gamma) -> Fraction:
    """Constructive lower bound scaled to node size ``alpha``."""
    alpha, gamma = _q(alpha), _q(gamma)
    g = math.floor(gamma / alpha)
    if g < 1:
        return Fraction(0)
    return alpha * lrc_capacity_bounds(n, k, d, g).lower


@dataclass(frozen=True)
class TradeoffRow:
    m: Optional[int]
    n: int
    share_s: Fraction
    gamma: Fraction
    lrc_value: Fraction
    timeshare_value: Fraction
    func_capacity: Fraction
    alpha: Fraction = Fraction(1)
    lrc_limit: Optional[Fraction] = None
    timeshare_limit: Optional[Fraction] = None
    func_limit: Optional[Fraction] = None
    precondition_ok: bool = True
    branch: str = ""

    def _rate(self, x: Fraction) -> Fraction:
        return x / (self.n * self.alpha)

    @property
    def lrc_rate(self) -> Fraction:
        return self._rate(self.lrc_value)

    @property
    def timeshare_rate(self) -> Fraction:
        return self._rate(self.timeshare_value)

    @property
    def func_capacity_rate(self) -> Fraction:
        return self._rate(self.func_capacity)


def limits(n: int, d: int, s) -> tuple[Fraction, Fraction, Fraction]:
    """Large-``m`` limits of the LRC, time-sharing and functional rates."""
    s = _q(s)
    if s == 1:
        return Fraction(1, n - d + 1), Fraction(1, 2), Fraction(1, 2)
    return Fraction(1), 1 - s / 2, Fraction(1)


def _construction_ok(N: int, K: int, R: int, Delta: int) -> bool:
    return 0 < R < K <= N - -(-K // R) * (Delta - 1)


def sequence_row(n: int, k: int, d: int, s, m: int) -> TradeoffRow:
    s = _q(s)
    nm, km, dm = n + m, k + m, d + m
    gamma = gamma_from_share(km, dm, 1, s)
    lrc_lim, ts_lim, fn_lim = limits(n, d, s)
    if s == 0 and k == d:
        K, ok, branch = km, True, "mds"
    else:
        R = math.floor(gamma)
        S = Fraction(m + k + d - n, n - d + R)
        K = math.floor(S * R)
        ok, branch = _construction_ok(nm, K, R, nm - dm + 1), "lrc"
    return TradeoffRow(
        m=m,
        n=nm,
        share_s=s,
        gamma=gamma,
        lrc_value=Fraction(K),
        timeshare_value=timeshare_perf(km, dm, 1, gamma),
        func_capacity=func_capacity(km, dm, 1, gamma),
        lrc_limit=lrc_lim,
        timeshare_limit=ts_lim,
        func_limit=fn_lim,
        precondition_ok=ok,
        branch=branch,
    )


def asymptotic_sequence(n: int, k: int, d: int, share_s, m_values: Sequence[int]) -> list[TradeoffRow]:
    """Rows for ``(n + m, k + m, d + m)`` at ``gamma_m = s + (1 - s) d_m/(d_m - k_m + 1)``.

    Off the MDS branch (``s = 0`` and ``k = d``) the LRC uses
    ``R_m = floor(gamma_m)`` and ``K_m = floor(S_m R_m)`` with
    ``S_m = (m + k + d - n) / (n - d + R_m)``. Rows where the existence
    condition ``0 < R < K <= N - ceil(K/R)(Delta - 1)`` fails are kept and
    flagged with ``precondition_ok = False``.
    """
    s = _q(share_s)
    if not 0 <= s <= 1:
        raise ValueError(f"share must lie in [0, 1], got {s}")
    if not 1 <= k <= d <= n:
        raise ValueError(f"need 1 <= k <= d <= n, got {(n, k, d)}")
    return [sequence_row(n, k, d, s, m) for m in m_values]


def cor_ratios(n: int, k: int, d: int, share_s) -> tuple[Fraction, Fraction]:
    """Limits of functional/LRC and time-share/LRC capacity ratios."""
    s = _q(share_s)
    if not 0 <= s <= 1:
        raise ValueError(f"share must lie in [0, 1], got {s}")
    if not 1 <= k <= d <= n:
        raise ValueError(f"need 1 <= k <= d <= n, got {(n, k, d)}")
    if s == 1:
        r = Fraction(n - d + 1, 2)
        return r, r
    return Fraction(1), 1 - s / 2


def tradeoff_curve(k: int, d: int, alpha, steps: int, n: Optional[int] = None) -> list[TradeoffRow]:
    """Sweep ``s = 0, 1/steps, ..., 1`` between the MSR and MBR endpoints."""
    alpha = _q(alpha)
    if steps < 1:
        raise ValueError("steps must be positive")
    n = d + 1 if n is None else n
    if not 1 <= k <= d <= n:
        raise ValueError(f"need 1 <= k <= d <= n, got {(n, k, d)}")
    rows = []
    for i in range(steps + 1):
        s = Fraction(i, steps)
        gamma = gamma_from_share(k, d, alpha, s)
        rows.append(
            TradeoffRow(
                m=None,
                n=n,
                share_s=s,
                gamma=gamma,
                lrc_value=lrc_capacity_lower(n, k, d, alpha, gamma),
                timeshare_value=timeshare_perf(k, d, alpha, gamma),
                func_capacity=func_capacity(k, d, alpha, gamma),
                alpha=alpha,
            )
        )
    return rows
