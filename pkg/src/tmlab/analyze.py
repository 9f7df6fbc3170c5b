"""Trajectories, liminf/limsup estimation, and structural identity checks.

The central objects are the block-boundary-interpolating sequences

    xi_mu(n)  = (f_m + (n - N_m)**2) / n**2      for N_m <= n < N_{m+1},
    xi_psi(n) = (f_m - (N_m - n)**2) / n**2      for N_{m-1} <= n < N_m,

whose accumulation points carry the quadratic-scaling behaviour of the
measure decay and the Birkhoff sums respectively.  Trajectory values are
exact rationals; only the presentation layer rounds.

Liminf/limsup proxies are tail-window extrema with the window reported, never
presented as proved limits: the constructions under test converge along
explicit subsequences and the sampling grid contains them (all block
boundaries plus the single interior vertex of each block).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .construct import BlockBernoulliMeasure, FiberMeasure
from .measure import LOG2, LOGPI
from .spectrum import eta, joint_dim
from .words import AlternationCode, SymbolSource

__all__ = [
    "Trajectory",
    "LimitEstimate",
    "ConvexityReport",
    "ENCLOSURE_COLUMNS",
    "xi_mu_at",
    "xi_psi_at",
    "xi_mu_trajectory",
    "xi_psi_trajectory",
    "f_trajectory",
    "filtered_ratio_interpolated",
    "limit_estimates",
    "convexity_identity_check",
    "large_block_density",
    "density_floor_check",
    "local_dimension_trace",
    "scaling_enclosure_table",
]

ENCLOSURE_COLUMNS = ("n", "mu_term", "mu_lo", "mu_hi",
                     "psi_term", "psi_lo", "psi_hi")


@dataclass(frozen=True)
class Trajectory:
    """A sampled scalar sequence with strictly increasing integer indices."""

    indices: tuple
    values: tuple
    normalization: str

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise ValueError("indices and values must have equal length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.indices)

    def floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def rows(self):
        return zip(self.indices, self.values)


@dataclass(frozen=True)
class LimitEstimate:
    """Tail-window extrema standing in for liminf/limsup (never a proof)."""

    liminf_hat: float
    limsup_hat: float
    window: tuple

    def __post_init__(self):
        if not self.liminf_hat <= self.limsup_hat:
            raise ValueError("liminf estimate exceeds limsup estimate")


def _locate_completed(code: AlternationCode, n: int) -> int:
    """Number m of blocks completed by position n (N_m <= n)."""
    cum = code.cumulative_lengths()
    if n > cum[-1]:
        raise ValueError(
            f"profile covers positions up to {cum[-1]} < {n}; add blocks")
    return bisect.bisect_right(cum, n)


def xi_mu_at(code: AlternationCode, n: int) -> Fraction:
    """Exact measure-decay interpolant (f_m + (n - N_m)^2) / n^2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = _locate_completed(code, n)
    nm = code.N(m) if m else 0
    fm = code.f(m) if m else 0
    return Fraction(fm + (n - nm) ** 2, n * n)


def xi_psi_at(code: AlternationCode, n: int) -> Fraction:
    """Exact Birkhoff interpolant (f_m - (N_m - n)^2) / n^2.

    Here m is the index of the block containing position n (the block may be
    incomplete at n); at a boundary n = N_m both conventions agree and give
    exactly F_m.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cum = code.cumulative_lengths()
    if n > cum[-1]:
        raise ValueError(
            f"profile covers positions up to {cum[-1]} < {n}; add blocks")
    m = bisect.bisect_left(cum, n) + 1  # block containing n
    return Fraction(code.f(m) - (code.N(m) - n) ** 2, n * n)


def _sample_grid(code: AlternationCode, n_max: int, ratio: float = 1.01,
                 boundary_cap: int = 20000) -> list[int]:
    """Geometric index grid plus block boundaries plus interior vertices.

    Extrema of the interpolants on each block occur at a boundary or at the
    single interior vertex n = (1 -/+ F_m) N_m, so sampling those indices
    makes tail extrema of the sampled trajectory exact up to integer rounding
    of the vertex.
    """
    samples = set()
    n = 1
    while n <= n_max:
        samples.add(n)
        n = max(n + 1, int(math.ceil(n * ratio)))
    cum = code.cumulative_lengths()
    upto = bisect.bisect_right(cum, n_max)
    stride = max(1, (upto + boundary_cap - 1) // boundary_cap)
    for m in range(1, upto + 1, stride):
        nm = cum[m - 1]
        samples.add(nm)
        f_over_n = Fraction(code.f(m), nm)  # F_m * N_m, exact
        for vertex in (nm + f_over_n, nm - f_over_n):
            base = int(vertex)
            for cand in (base, base + 1):
                if 1 <= cand <= n_max:
                    samples.add(cand)
    return sorted(s for s in samples if s <= n_max)


def xi_mu_trajectory(code: AlternationCode, n_max: int,
                     samples: Optional[Sequence[int]] = None) -> Trajectory:
    """Exact-rational trajectory of the measure-decay interpolant."""
    grid = list(samples) if samples is not None else _sample_grid(code, n_max)
    values = tuple(xi_mu_at(code, n) for n in grid)
    return Trajectory(tuple(grid), values, "xi_mu: -log mu(C_n)/(n^2 log 2)")


def xi_psi_trajectory(code: AlternationCode, n_max: int,
                      samples: Optional[Sequence[int]] = None) -> Trajectory:
    """Exact-rational trajectory of the Birkhoff interpolant."""
    grid = list(samples) if samples is not None else _sample_grid(code, n_max)
    values = tuple(xi_psi_at(code, n) for n in grid)
    return Trajectory(tuple(grid), values, "xi_psi: -S_n psi/(n^2 log 2)")


def f_trajectory(code: AlternationCode, m_max: int, lam: int
                 ) -> dict[str, Trajectory]:
    """Block-indexed trajectories of F_m, filtered F, and block densities.

    Returns trajectories keyed 'F', 'F_lam', 'ell', 'rho', sharing the index
    set 1..m_max.  F and F_lam and ell are exact rationals; rho is a float
    with NaN where it is undefined (no large block yet).
    """
    if lam < 1:
        raise ValueError("lam must be >= 1")
    if not 1 <= m_max <= len(code):
        raise IndexError(f"m_max {m_max} out of range 1..{len(code)}")
    ms = tuple(range(1, m_max + 1))
    F_vals, Fl_vals, ell_vals, rho_vals = [], [], [], []
    N = 0
    f = 0
    big_sq = 0
    big_len = 0
    for m in ms:
        b = code.block(m)
        N += b
        f += b * b
        if b >= lam:
            big_sq += b * b
            big_len += b
        nsq = N * N
        F_vals.append(Fraction(f, nsq))
        Fl_vals.append(Fraction(big_sq, nsq))
        ell_vals.append(Fraction(big_len, N))
        rho_vals.append(math.nan if big_sq == 0
                        else big_len / math.sqrt(big_sq))
    return {
        "F": Trajectory(ms, tuple(F_vals), "F_m = f_m/N_m^2"),
        "F_lam": Trajectory(ms, tuple(Fl_vals), f"filtered F (lam={lam})"),
        "ell": Trajectory(ms, tuple(ell_vals), f"large-block density (lam={lam})"),
        "rho": Trajectory(ms, tuple(rho_vals), f"renormalized density (lam={lam})"),
    }


def filtered_ratio_interpolated(code: AlternationCode, lam: int, j: int,
                                t: float) -> float:
    """Filtered ratio at fractional block index r = j + t, 0 <= t <= 1.

    Interpolates the block count continuously through block j+1 by letting
    N_r = N_j + t * n_{j+1} while the filtered sum stays at its index-j value;
    useful for reading levels between block boundaries.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    big_sq = sum(b * b for b in code.blocks[:j] if b >= lam)
    n_r = code.N(j) + t * code.block(j + 1)
    return big_sq / n_r**2


def limit_estimates(traj: Trajectory, tail_fraction: float) -> LimitEstimate:
    """Min/max of the trailing fraction of samples, with the window reported."""
    if not 0.0 < tail_fraction < 1.0:
        raise ValueError("tail_fraction must lie in (0, 1)")
    count = len(traj)
    start = min(count - 1, int(math.floor(count * (1.0 - tail_fraction))))
    tail_idx = traj.indices[start:]
    tail_vals = [float(v) for v in traj.values[start:]
                 if not (isinstance(v, float) and math.isnan(v))]
    if not tail_vals:
        raise ValueError("tail window contains no defined samples")
    return LimitEstimate(liminf_hat=min(tail_vals), limsup_hat=max(tail_vals),
                         window=(tail_idx[0], tail_idx[-1]))


@dataclass(frozen=True)
class ConvexityReport:
    """Outcome of the renormalized-density recursion check at one index.

    case 1: small block, density unchanged (checked exactly);
    case 2: large block, level not raised, density strictly increases;
    case 3: large block raising the level, density is the convex combination
            p*rho_{k-1} + (1-p)*eta(levels) (residual reported).
    A report with applicable=False carries a skip reason, not a failure.
    ``contraction`` is the observed one-step ratio |rho_k - eta| /
    |rho_{k-1} - eta| in case 3; it is reported for inspection only, since no
    uniform contraction constant is asserted.
    """

    k: int
    applicable: bool
    case: Optional[int]
    residual: Optional[float]
    rho_prev: Optional[float]
    rho_curr: Optional[float]
    ok: Optional[bool]
    detail: str = ""
    contraction: Optional[float] = None


def convexity_identity_check(code: AlternationCode, lam: int, k: int
                             ) -> ConvexityReport:
    """Check the one-step recursion of the renormalized large-block density.

    At index k with previous level g = F_lam(k-1) and new level d = F_lam(k),
    the qualifying case (block >= lam, 0 < g < d) must satisfy

        rho_k = p * rho_{k-1} + (1 - p) * eta(g, d),   p = sqrt(g/d) N_{k-1}/N_k,

    which is an algebraic identity of the counters; the residual is pure
    floating-point noise.  The other two cases are verified in exact rational
    arithmetic.  Indices where rho_{k-1} is undefined are skipped.
    """
    if k < 2:
        raise ValueError("k must be >= 2 (a previous index is required)")
    from .words import filtered_counters
    g, ell_prev, rho_prev = filtered_counters(code, k - 1, lam)
    d, ell_curr, rho_curr = filtered_counters(code, k, lam)
    if g == 0:
        return ConvexityReport(k, False, None, None, rho_prev, rho_curr, None,
                               "previous filtered ratio is zero")
    n_k = code.block(k)
    if n_k < lam:
        equal = ell_curr * ell_curr * g == ell_prev * ell_prev * d
        return ConvexityReport(k, True, 1, None, rho_prev, rho_curr, equal,
                               "small block: density must be unchanged")
    if g >= d:
        increased = ell_curr * ell_curr * g > ell_prev * ell_prev * d
        stalled = ell_curr * ell_curr * g == ell_prev * ell_prev * d
        # equality is possible only in the degenerate corner g == d with all
        # blocks so far large (ell = 1); everywhere else the increase is strict
        ok = increased or (stalled and g == d and ell_prev == 1)
        return ConvexityReport(k, True, 2, None, rho_prev, rho_curr, ok,
                               "large block, level not raised: increase")
    p = math.sqrt(float(g) / float(d)) * code.N(k - 1) / code.N(k)
    eta_gd = eta(float(g), float(d))
    target = p * rho_prev + (1.0 - p) * eta_gd
    residual = abs(rho_curr - target)
    lo, hi = min(rho_prev, eta_gd), max(rho_prev, eta_gd)
    ok = residual <= 1e-10 and lo - 1e-10 <= rho_curr <= hi + 1e-10
    gap_prev = abs(rho_prev - eta_gd)
    contraction = abs(rho_curr - eta_gd) / gap_prev if gap_prev > 0 else None
    return ConvexityReport(k, True, 3, residual, rho_prev, rho_curr, ok,
                           "large block raising the level: convex combination",
                           contraction=contraction)


def large_block_density(code: AlternationCode, lam: int, m_max: int,
                        tail_fraction: float = 0.5) -> float:
    """Empirical upper density of large-block positions (tail max of ell_m)."""
    traj = f_trajectory(code, m_max, lam)["ell"]
    return limit_estimates(traj, tail_fraction).limsup_hat


def density_floor_check(code: AlternationCode, targets, lam: int,
                        m_max: Optional[int] = None,
                        tail_fraction: float = 0.5,
                        slack: float = 0.02) -> dict:
    """Compare the empirical large-block density with its spectral floor.

    For every point whose ratio accumulation pair lies in ``targets``, the
    limiting large-block density is at least 1 - sup f over the targets, for
    any cutoff; a finite horizon approaches that floor from below, so the
    verdict allows the stated ``slack``.  The density peaks right after a
    large block completes and decays in between, so the extremum window is
    widened (when necessary) to start no later than the third-from-last
    large-block index; the window used is reported.
    """
    if m_max is None:
        m_max = len(code)
    big = [m for m in range(1, m_max + 1) if code.block(m) >= lam]
    w_start = max(1, int(math.floor(m_max * (1.0 - tail_fraction))))
    if big:
        w_start = min(w_start, big[max(0, len(big) - 3)])
    traj = f_trajectory(code, m_max, lam)["ell"]
    d_hat = float(max(traj.values[w_start - 1:]))
    floor = 1.0 - max(joint_dim(a, b) for a, b in targets)
    return {"d_hat": d_hat, "floor": floor, "margin": d_hat - floor,
            "ok": bool(d_hat >= floor - slack), "window": (w_start, m_max)}


def local_dimension_trace(nu: Union[FiberMeasure, BlockBernoulliMeasure],
                          src: SymbolSource, n_max: int,
                          samples: Optional[Sequence[int]] = None
                          ) -> Trajectory:
    """Trajectory of log nu(C_n(src)) / (-n log 2); tail min estimates d_lower.

    Raises if ``src`` is incompatible with a fiber measure's prescribed bits
    (the cylinder then has mass zero and no local dimension).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if samples is None:
        samples = sorted({int(math.ceil(1.05 ** j))
                          for j in range(1, int(math.log(n_max, 1.05)) + 1)
                          if int(math.ceil(1.05 ** j)) <= n_max} | {n_max})
    grid = list(samples)
    prefix = src.prefix(n_max)
    if isinstance(nu, FiberMeasure):
        if not nu.compatible(prefix):
            raise ValueError(
                "source disagrees with the fiber measure's prescribed bits")
        free = np.cumsum(~nu.mask(n_max))
        values = tuple(float(free[n - 1]) / n for n in grid)
    else:
        values = tuple(nu.log_mass(prefix[:n]) / (-n * LOG2) for n in grid)
    return Trajectory(tuple(grid), values,
                      "local dimension: log nu(C_n)/(-n log 2)")


def scaling_enclosure_table(code: AlternationCode, n_values: Sequence[int]
                            ) -> list[tuple]:
    """Exact leading terms and bracket endpoints of both scaling curves.

    For each n the row is (n, mu_term, mu_lo, mu_hi, psi_term, psi_lo,
    psi_hi) where mu_term = f_m + s^2 (s = n - N_m) and psi_term = f_{m+1} -
    r^2 (r = N_{m+1} - n) are the exact quadratic leading terms, and the
    lo/hi columns add the linear bracket widths, all in units of log 2
    (the -log mu(C_n)/log 2 and -S_n psi/log 2 scales).
    """
    slope = 2.0 * LOGPI / LOG2  # per-symbol bracket width in log-2 units
    rows = []
    for n in n_values:
        if n < 1:
            raise ValueError("indices must be >= 1")
        m = _locate_completed(code, n)
        nm = code.N(m) if m else 0
        fm = code.f(m) if m else 0
        s = n - nm
        mu_term = fm + s * s
        if s == 0:
            psi_term = fm
        else:
            if m + 1 > len(code):
                raise ValueError(
                    f"need block {m + 1} to evaluate the Birkhoff term at {n}")
            r = code.N(m + 1) - n
            psi_term = code.f(m + 1) - r * r
        rows.append((n,
                     mu_term, n + mu_term - slope * n, n + 1 + mu_term,
                     psi_term, n + psi_term - slope * n, n + psi_term))
    return rows
