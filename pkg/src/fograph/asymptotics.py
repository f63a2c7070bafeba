"""Closed-form numeric predictions for game depth on random graphs.

All formulas drop vanishing and bounded error terms; outputs are
asymptotic predictions with uncontrolled error at finite n.  Root finding
uses plain bisection for robustness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

TOWER_CAP = 5  # tower(6) has more bits than addressable memory


class AsymptoticsError(ValueError):
    pass


@dataclass
class PredictionReport:
    n: int
    p: float
    r_lower: float = math.nan
    dense_upper: float = math.nan
    d0_upper: float = math.nan
    f_nk: float = math.nan
    mu: float = math.nan
    M: float = math.nan
    k_bound: float = math.nan
    lam: dict = field(default_factory=dict)
    fk: dict = field(default_factory=dict)
    alpha: float = math.nan
    s_of_c: float = math.nan
    c0: float = math.nan
    giant_fraction: float = math.nan
    t2_prediction: float = math.nan
    log_star: int = 0
    tower_value: Optional[int] = None
    F_bound_log2: Optional[int] = None

    def to_json(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            if isinstance(v, float) and math.isnan(v):
                continue
            if v is None:
                continue
            out[k] = v
        return out


# ---------------------------------------------------------------------------
# Dense regime


def dense_predictions(n: int, p: float) -> PredictionReport:
    """Lower bound on depth, the bounded-difference upper term, and the
    zero-alternation upper coefficient for G(n, p)."""
    if not (0 < p <= 0.5):
        raise AsymptoticsError("need 0 < p <= 1/2")
    if n < 3:
        raise AsymptoticsError("need n >= 3")
    q = 1 - p
    base = 1 / p
    ln = math.log
    logb = lambda x: ln(x) / ln(base)
    r = logb(n) - 2 * logb(ln(n)) + logb(ln(base))
    entropy = -p * ln(p) - q * ln(q)
    dense_upper = 2 * ln(ln(n)) / entropy
    d0_upper = 2 * ln(n) / (-ln(p * p + q * q))
    return PredictionReport(n=n, p=p, r_lower=r, dense_upper=dense_upper,
                            d0_upper=d0_upper)


# ---------------------------------------------------------------------------
# Tuning at p = 1/2


def log_f(n: int, k: int) -> float:
    """log of f(n,k) = C(n-k/2, k/2) (n-k) (1-2^-k)^(n-k-1)."""
    h = k // 2
    return (math.lgamma(n - h + 1) - math.lgamma(h + 1) - math.lgamma(n - k + 1)
            + math.log(n - k) + (n - k - 1) * math.log1p(-(2.0 ** -k)))


@dataclass
class HalfTuning:
    k: int
    n_star: int
    f_nk: float
    mu: float
    M: float
    k_bound: float
    k_bound_ok: bool


def half_tuning(k: int) -> HalfTuning:
    """Smallest n with f(n,k) <= 10 log2(n) on the decreasing side, plus
    the derived expectation quantities at that n.

    The k-inequality carries a vanishing term in its source; since k is an
    integer, the check absorbs it by rounding the bound up.
    """
    if k % 2 or k < 4:
        raise AsymptoticsError("k must be even and >= 4")
    lo, hi = 2 * k + 2, 10 ** 9
    while lo < hi:
        mid = (lo + hi) // 2
        if log_f(mid, k) <= math.log(10 * math.log2(mid)):
            hi = mid
        else:
            lo = mid + 1
    n = lo
    f = math.exp(log_f(n, k))
    h = k // 2
    logM = (math.lgamma(n - h + 1) - math.lgamma(h + 1) - math.lgamma(n - k + 1)
            + math.log(n - k))
    bound = math.log2(n) - 2 * math.log2(math.log(n)) + math.log2(math.log(2)) + 1
    return HalfTuning(k=k, n_star=n, f_nk=f, mu=f, M=math.exp(logM),
                      k_bound=bound, k_bound_ok=k <= math.ceil(bound))


# ---------------------------------------------------------------------------
# Sparse regime


def lambda_k(n: int, p: float, k: int) -> float:
    """Expected number of order-k tree components of G(n,p)."""
    if k < 1 or not 0 <= p <= 1:
        raise AsymptoticsError("need k >= 1, 0 <= p <= 1")
    if p in (0.0, 1.0):
        if k == 1:
            return float(n) if p == 0 else 0.0
        return 0.0
    q = 1 - p
    logv = (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
            + (k - 2) * math.log(k) + (k - 1) * math.log(p)
            + (k * (n - k) + k * (k - 1) // 2 - k + 1) * math.log(q))
    return math.exp(logv)


def f_k(c: float, k: int) -> float:
    """Limit of lambda_k / n at fixed average degree c = pn."""
    if k < 1 or c <= 0:
        raise AsymptoticsError("need k >= 1, c > 0")
    logv = ((k - 1) * math.log(c) + (k - 2) * math.log(k)
            - math.lgamma(k + 1) - c * k)
    return math.exp(logv)


# ---------------------------------------------------------------------------
# Special constants


def _bisect(f: Callable[[float], float], lo: float, hi: float,
            tol: float = 1e-13) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise AsymptoticsError("bisection interval does not bracket a root")
    for _ in range(200):
        mid = (lo + hi) / 2
        fm = f(mid)
        if abs(fm) < 1e-15 or hi - lo < tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def alpha_root() -> float:
    """Positive root of exp(-a + a e^-a) + 1 = exp(a e^-a)."""
    def f(a: float) -> float:
        t = a * math.exp(-a)
        return math.exp(-a + t) + 1 - math.exp(t)
    return _bisect(f, 1.0, 2.0)


def giant_s(c: float) -> float:
    """Solution s in (0, 1] of s e^-s = c e^-c; s = c for c <= 1 by
    continuity."""
    if c <= 0:
        raise AsymptoticsError("need c > 0")
    if c <= 1:
        return c
    # solved in log form to survive large c, where c e^-c underflows
    target = math.log(c) - c
    return _bisect(lambda s: math.log(s) - s - target, 1e-300, 1.0)


def c0_root() -> float:
    """Average degree where the giant fraction 1 - s(c)/c meets the
    two-tree-density curve c e^-2c / 2."""
    def f(c: float) -> float:
        return (1 - giant_s(c) / c) - c * math.exp(-2 * c) / 2
    return _bisect(f, 1.0001, 1.5)


# ---------------------------------------------------------------------------
# log* and the tower


def log_star(n: int) -> int:
    """Iterations of binary log until the value drops below 1.

    Powers of two stay in exact integer arithmetic, so tower-sized inputs
    work; other values fall through to floats.
    """
    if n < 1:
        raise AsymptoticsError("need n >= 1")
    count = 0
    x = n
    while x >= 1:
        if isinstance(x, int) and x & (x - 1) == 0:
            x = x.bit_length() - 1
        else:
            x = math.log2(x)
        count += 1
    return count


def tower(k: int) -> int:
    """tower(0)=1, tower(k)=2^tower(k-1); refuses k beyond the cap."""
    if k < 0:
        raise AsymptoticsError("need k >= 0")
    if k > TOWER_CAP:
        raise AsymptoticsError(f"tower({k}) exceeds representable size")
    v = 1
    for _ in range(k):
        v = 1 << v
    return v


def logstar_lower_bound(n: int, c0_offset: int = 1, c_margin: int = 1) -> int:
    """Largest k with F_bound(k) * margin < n, F_bound(k) = tower(k + offset).

    The offset and margin are declared conventions standing in for an
    effective but unspecified constant.
    """
    if n < 1:
        raise AsymptoticsError("need n >= 1")
    best = 0
    for k in range(0, TOWER_CAP - c0_offset + 1):
        if tower(k + c0_offset) * c_margin < n:
            best = k
        else:
            break
    return best


def full_report(n: int, p: float, k: Optional[int] = None) -> PredictionReport:
    """Everything at once; the tuning block only when k is given and even."""
    rep = dense_predictions(n, p)
    c = p * n
    rep.lam = {j: lambda_k(n, p, j) for j in range(1, 5)}
    rep.fk = {j: f_k(c, j) for j in range(1, 5)} if c > 0 else {}
    rep.alpha = alpha_root()
    rep.s_of_c = giant_s(c) if c > 0 else math.nan
    rep.c0 = c0_root()
    if c > 1:
        rep.giant_fraction = 1 - rep.s_of_c / c
        rep.t2_prediction = c * math.exp(-2 * c) / 2 * n
    rep.log_star = log_star(n)
    # reported in log2 to keep the serialized report bounded in size
    rep.F_bound_log2 = tower(min(log_star(n), TOWER_CAP - 1))
    if k is not None and k % 2 == 0 and k >= 4:
        t = half_tuning(k)
        rep.f_nk, rep.mu, rep.M, rep.k_bound = t.f_nk, t.mu, t.M, t.k_bound
    return rep
