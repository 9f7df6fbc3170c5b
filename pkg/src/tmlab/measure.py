"""Potential evaluation, Birkhoff-sum enclosures, and cylinder measures.

The measure under study is the Thue-Morse measure lifted to the binary shift.
It is the g-measure of g = g_tilde o pi2 with g_tilde(t) = (1 - cos(2 pi t))/2,
equivalently the equilibrium measure of the potential psi = log g_tilde o pi2,
which is log-singular at the two constant sequences.

All log-measure arithmetic is in natural log.  Every function that returns a
:class:`LogBound` guarantees enclosure semantics: the true value lies inside
[lo, hi].  Interval endpoints computed in floating point are padded outward by
a few ulps so that the guarantee survives rounding.

Two independent numerical routes to cylinder measures are provided and must
not be collapsed into one: the transfer-operator estimator
(:func:`cylinder_measure_estimate`) and direct quadrature against the
truncated Riesz product (:func:`riesz_quadrature`).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .words import (AlternationCode, BinaryWord, SymbolSource,
                    alternation_encode, pi2_interval)

__all__ = [
    "LogBound",
    "MeasureEstimate",
    "BudgetError",
    "DEFAULT_BUDGET",
    "DEFAULT_LOOKAHEAD",
    "DEFAULT_ANCHORS",
    "g_tilde",
    "log_g_tilde",
    "psi_interval",
    "birkhoff_sum",
    "birkhoff_block_form",
    "cylinder_log_bounds",
    "cylinder_measure_estimate",
    "riesz_quadrature",
]

LOG2 = math.log(2.0)
LOGPI = math.log(math.pi)

#: Default cap on enumeration work, counted as 2**depth * (len(word) + depth)
#: for the estimator and panels * levels for the quadrature.
DEFAULT_BUDGET = 1 << 28

#: Default lookahead for potential evaluation.  Beyond 64 positions the
#: expansion-value interval is narrower than a double ulp, so away from the
#: singularity the enclosure width is already at rounding level.
DEFAULT_LOOKAHEAD = 64

# Relative outward padding applied to computed interval endpoints.
_PAD = float(8.0 * np.finfo(float).eps)


class BudgetError(RuntimeError):
    """Raised when a requested computation exceeds its operation budget."""


@dataclass(frozen=True)
class LogBound:
    """Closed interval [lo, hi] enclosing a log-measure or Birkhoff sum.

    ``lo`` may be -inf (a legal enclosure endpoint at the singularity).
    Values are natural-log quantities.
    """

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_strictly(self, x: float) -> bool:
        return self.lo < x < self.hi

    def intersects(self, other: "LogBound") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other: "LogBound") -> "LogBound":
        return LogBound(self.lo + other.lo, self.hi + other.hi)

    @staticmethod
    def sum(bounds: Sequence["LogBound"]) -> "LogBound":
        los = [b.lo for b in bounds]
        his = [b.hi for b in bounds]
        lo = -math.inf if any(map(math.isinf, los)) else math.fsum(los)
        hi = math.fsum(his)
        return LogBound(lo, hi)


@dataclass(frozen=True)
class MeasureEstimate:
    """Transfer-operator estimate of a cylinder measure, stored in log space.

    ``anchor_spread`` is the max-min range of the estimate over the anchor
    points (absolute, in value space); it is the reported convergence
    diagnostic since no quantitative mixing rate is available.
    ``within_bounds`` records whether the value passed the rigorous sandwich
    check against :func:`cylinder_log_bounds` (checked, not assumed).
    """

    log_value: float
    depth: int
    anchor_spread: float
    bounds: LogBound
    within_bounds: bool

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def _pad_out(lo: float, hi: float) -> LogBound:
    """Pad endpoints outward so float rounding cannot break enclosure."""
    lo, hi = float(lo), float(hi)
    lo_p = lo if math.isinf(lo) else lo - _PAD * (1.0 + abs(lo))
    hi_p = hi + _PAD * (1.0 + abs(hi))
    return LogBound(lo_p, hi_p)


def g_tilde(t: float) -> float:
    """(1 - cos(2 pi t)) / 2 on [0, 1], evaluated as sin(pi t)**2.

    The sine form avoids cancellation near the endpoints, where the function
    vanishes quadratically.  Symmetric under t -> 1 - t; zero only at 0 and 1.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"g_tilde domain is [0, 1], got {t}")
    return math.sin(math.pi * t) ** 2


def log_g_tilde(t: float) -> float:
    """Natural log of :func:`g_tilde`; -inf at the endpoints."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"log_g_tilde domain is [0, 1], got {t}")
    if t == 0.0 or t == 1.0:
        return -math.inf
    return 2.0 * math.log(math.sin(math.pi * min(t, 1.0 - t)))


def _log_g_at(t: Fraction) -> float:
    # Fold to the distance from the nearest endpoint before converting to
    # float: 1 - t is exact in rational arithmetic, while float(t) collapses
    # to 1.0 for t within an ulp of 1 and would turn a finite value into -inf.
    fold = min(t, 1 - t)
    return 2.0 * math.log(math.sin(math.pi * float(fold)))


def psi_interval(src: SymbolSource, shift: int = 0,
                 lookahead: int = DEFAULT_LOOKAHEAD) -> LogBound:
    """Enclosure of psi applied to the ``shift``-fold shift of ``src``.

    The first ``lookahead`` symbols of the shifted tail confine the expansion
    value to a closed dyadic interval; log g_tilde is then bracketed by its
    values at the endpoints (it is monotone on either side of 1/2).  If the
    interval touches 0 or 1 the lower endpoint is -inf and the upper endpoint
    falls back to the distance bound 2*log(pi*d), with d the largest distance
    from the singular endpoint that the interval allows.
    """
    if lookahead < 2:
        raise ValueError("lookahead must be >= 2")
    if shift < 0:
        raise ValueError("shift must be >= 0")
    iv = pi2_interval(src.window(shift + 1, lookahead))
    a, b = iv.lo, iv.hi
    if a == 0 or b == 1:
        d = float(b if a == 0 else 1 - a)
        hi = min(0.0, 2.0 * math.log(math.pi * min(d, 0.5)) + _PAD)
        return LogBound(-math.inf, hi)
    half = Fraction(1, 2)
    if b <= half:
        lo_v, hi_v = _log_g_at(a), _log_g_at(b)
    elif a >= half:
        lo_v, hi_v = _log_g_at(b), _log_g_at(a)
    else:
        lo_v, hi_v = min(_log_g_at(a), _log_g_at(b)), 0.0
    bound = _pad_out(lo_v, hi_v)
    # g_tilde <= 1 always, so 0 is a valid cap on the upper endpoint.
    return LogBound(bound.lo, min(bound.hi, 0.0))


def birkhoff_sum(src: SymbolSource, n: int,
                 lookahead: int = DEFAULT_LOOKAHEAD) -> LogBound:
    """Enclosure of the n-term Birkhoff sum of psi along ``src``.

    Interval sum of per-shift enclosures with compensated accumulation.  The
    lower endpoint is -inf exactly when some term's window touches the
    singularity at this horizon.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return LogBound.sum([psi_interval(src, k, lookahead) for k in range(n)])


def birkhoff_block_form(code: AlternationCode, n: int) -> LogBound:
    """Closed-form Birkhoff-sum enclosure from the alternation profile.

    For N_m <= n < N_{m+1} and r = N_{m+1} - n, the sum of the n potential
    values lies in [-A log 2, -A log 2 + 2 n log pi] with the exact integer
    A = n + f_{m+1} - r**2.  The per-symbol bounds behind this are
    2 log(2 d) <= log g_tilde <= 2 log(pi d) at distance d from the nearest
    singular endpoint, hence the slack of 2 log pi per symbol.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cum = code.cumulative_lengths()
    if n >= cum[-1]:
        raise ValueError(
            f"need blocks past position {n}; profile covers only {cum[-1]}")
    # number of completed blocks before position n
    m = bisect.bisect_right(cum, n)
    r = cum[m] - n  # remaining length of block m+1; 0 < r <= block(m+1)
    A = n + code.f(m + 1) - r * r
    lo = -A * LOG2
    return _pad_out(lo, lo + 2.0 * n * LOGPI)


def cylinder_log_bounds(word: BinaryWord) -> LogBound:
    """Rigorous enclosure of log mu([word]) from the word's block profile.

    With n = len(word) and f = sum of squared block lengths of the word,
    log mu([word]) lies in [-(n + 1 + f) log 2, -(n + f) log 2 + 2 n log pi].
    """
    if len(word) == 0:
        raise ValueError("word must be non-empty")
    code = alternation_encode(word)
    n = len(word)
    f = code.f(len(code))
    lo = -(n + 1 + f) * LOG2
    hi = -(n + f) * LOG2 + 2.0 * n * LOGPI
    return _pad_out(lo, hi)


def _default_anchors() -> tuple[SymbolSource, SymbolSource]:
    # Expansion values 1/3 and 2/3: maximally far from the singularity, and
    # closed under bit flip so that flip symmetry holds for the average.
    return (SymbolSource.periodic("01"), SymbolSource.periodic("10"))


DEFAULT_ANCHORS = _default_anchors()


def _check_anchor(anchor: SymbolSource, horizon: int) -> None:
    if not anchor.declared_nondyadic:
        raise ValueError(f"anchor {anchor!r} is not declared non-dyadic")
    bits = anchor.window(1, horizon).bits
    if bits.min() == bits.max():
        raise ValueError(
            f"anchor {anchor!r} violates its non-dyadic promise within "
            f"horizon {horizon}")


def _log_g_array(t: np.ndarray) -> np.ndarray:
    return 2.0 * np.log(np.sin(np.pi * np.minimum(t, 1.0 - t)))


def _enumerated_log_sum(word: BinaryWord, depth: int, anchor_value: float
                        ) -> float:
    """log of sum over all depth-step extensions v of g_{n+depth}(word.v.x).

    The expansion values of all shifted tails are generated by one backward
    sweep: t_{j-1} = (bit_j + t_j) / 2 starting from the anchor value.  Terms
    span hundreds of orders of magnitude, so the reduction is a two-pass
    max-shifted sum with exact compensated accumulation of the shifted
    exponentials.
    """
    n = len(word)
    total = n + depth
    count = 1 << depth
    idx = np.arange(count, dtype=np.int64)
    t = np.full(count, anchor_value, dtype=np.float64)
    acc = np.zeros(count, dtype=np.float64)
    wbits = word.bits
    for j in range(total, 0, -1):
        if j <= n:
            b: object = float(wbits[j - 1])
        else:
            b = ((idx >> (total - j)) & 1).astype(np.float64)
        t = 0.5 * (b + t)
        acc += _log_g_array(t)
    m = float(acc.max())
    return m + math.log(math.fsum(np.exp(acc - m)))


def cylinder_measure_estimate(word: BinaryWord, depth: int,
                              anchors: Optional[Sequence[SymbolSource]] = None,
                              budget: int = DEFAULT_BUDGET,
                              lookahead: int = DEFAULT_LOOKAHEAD
                              ) -> MeasureEstimate:
    """Transfer-operator estimate of mu([word]) at enumeration depth ``depth``.

    Iterating the transfer operator ``depth`` times turns the cylinder
    indicator into the sum of g-weights over all binary extensions, evaluated
    at anchor points; invariance of the measure makes this an approximation of
    the cylinder measure whose quality improves with depth.  The reported
    value is the anchor average; the anchor spread is the error proxy.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(word) == 0:
        raise ValueError("word must be non-empty")
    work = (1 << depth) * (len(word) + depth)
    if work > budget:
        raise BudgetError(
            f"enumeration work 2**{depth} * {len(word) + depth} = {work} "
            f"exceeds budget {budget}; reduce the depth")
    srcs = list(anchors) if anchors is not None else list(DEFAULT_ANCHORS)
    if not srcs:
        raise ValueError("at least one anchor is required")
    logs = []
    for anchor in srcs:
        _check_anchor(anchor, lookahead)
        logs.append(_enumerated_log_sum(word, depth, anchor.pi2_float(0, lookahead)))
    m = max(logs)
    log_mean = m + math.log(math.fsum(math.exp(v - m) for v in logs) / len(logs))
    spread = math.exp(max(logs)) - math.exp(min(logs))
    bounds = cylinder_log_bounds(word)
    return MeasureEstimate(log_value=log_mean, depth=depth,
                           anchor_spread=spread, bounds=bounds,
                           within_bounds=bool(bounds.contains(log_mean)))


def riesz_quadrature(word: BinaryWord, levels: int, subdivisions: int,
                     budget: int = DEFAULT_BUDGET) -> float:
    """Midpoint-rule integral of the truncated Riesz product over [word].

    Integrates prod_{m < levels} (1 - cos(2 pi 2**m x)) over the dyadic
    interval of ``word`` using ``subdivisions`` equal panels.  The integrand
    contains frequencies up to 2**levels - 1, so panels must out-resolve the
    top frequency; with subdivisions >= 2**(levels + 4 - len(word)) the panel
    width is 16 times finer than the shortest period.  Serves as the
    independent cross-check oracle for :func:`cylinder_measure_estimate`.
    """
    n = len(word)
    if levels < n:
        raise ValueError("levels must be at least the word length")
    q = int(subdivisions)
    if q < 1 or q & (q - 1):
        raise ValueError("subdivisions must be a power of two")
    if q * max(levels, 1) > budget:
        raise BudgetError(
            f"quadrature work {q} * {levels} exceeds budget {budget}")
    iv = pi2_interval(word)
    a = float(iv.lo)
    h = float(iv.width) / q
    x = a + (np.arange(q, dtype=np.float64) + 0.5) * h
    acc = np.ones(q, dtype=np.float64)
    for m in range(levels):
        acc *= 1.0 - np.cos((2.0 * math.pi * (1 << m)) * x)
    return h * math.fsum(acc)
