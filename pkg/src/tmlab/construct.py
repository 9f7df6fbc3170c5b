"""Explicit point constructions and the auxiliary measures behind them.

Each constructed point is a deterministic symbol source whose bits split into
three classes: positions fixed to 0 by a closed-form block schedule (long
constant runs at prescribed scales), forced 10-pairs on a sparse periodic
grid (which cap the block lengths everywhere else), and free positions filled
by a counter-based seeded generator so that any prefix is reproducible from
the descriptor alone.

The dimension certificates use two auxiliary measure families: fiber measures
that are uniform on free positions, and block-Bernoulli measures that weight
constant length-m blocks against all others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Union

import numpy as np

from .words import AlternationCode, BinaryWord, SymbolSource

__all__ = [
    "ConstructionError",
    "DeterminedPositions",
    "ConstructedPoint",
    "FiberMeasure",
    "BlockBernoulliMeasure",
    "joint_block_ratios",
    "select_shape_exponent",
    "intermediate_scaling_point",
    "joint_spectrum_point",
    "bounded_block_point",
    "idealized_block_simulation",
    "fiber_measure",
    "fiber_dimension_bound",
    "block_bernoulli_measure",
    "nu_log_measure",
]

_CHUNK = 1 << 16
_MIX = 0x9E3779B97F4A7C15
# stream tags keep the bit streams of different construction kinds disjoint
# even when the same seed is reused
_STREAM_JOINT = 1
_STREAM_INTERMEDIATE = 2
_STREAM_BOUNDED = 3


class ConstructionError(ValueError):
    """Raised when construction targets or parameters are infeasible."""


def _chunk_rng(seed: int, stream: int, chunk: int) -> np.random.Generator:
    key = np.array(
        [(np.uint64(seed & (2**64 - 1)) ^ np.uint64((stream * _MIX) & (2**64 - 1))),
         np.uint64(chunk)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _random_bits(n: int, seed: int, stream: int) -> np.ndarray:
    """Reproducible fair bits for positions 1..n, random-access by chunk."""
    out = np.empty(n, dtype=np.uint8)
    for start in range(0, n, _CHUNK):
        size = min(_CHUNK, n - start)
        rng = _chunk_rng(seed, stream, start // _CHUNK)
        out[start:start + size] = rng.integers(0, 2, size=size, dtype=np.uint8)
    return out


@dataclass(frozen=True)
class DeterminedPositions:
    """Classification of positions fixed by a construction schedule.

    ``core_intervals(h)`` lists the closed integer intervals (within [1, h])
    on which the schedule prescribes constant-0 runs.  ``lam`` is the step of
    the periodic grid carrying forced 10-pairs outside the core (None when
    the construction has no grid).  ``density_budget`` is the schedule's
    determined-position allowance: the empirical core density plus the full
    2/lam grid allowance, counted without overlap correction.  It upper-bounds
    the density of the honest union (grid points swallowed by core runs are
    double-counted), so 1 - density_budget is a safe, slightly conservative
    free-position floor; ``union_density`` reports the honest value.
    """

    core_intervals: Callable[[int], list[tuple[int, int]]]
    lam: Optional[int]
    pin_first: bool = False

    def core_mask(self, n: int) -> np.ndarray:
        mask = np.zeros(n, dtype=bool)
        for a, b in self.core_intervals(n):
            mask[a - 1:b] = True
        return mask

    def union_mask(self, n: int) -> np.ndarray:
        """Honest mask of all positions whose bit the schedule fixes."""
        mask = self.core_mask(n)
        if self.lam:
            grid = np.arange(self.lam, n + 1, self.lam)
            sel = grid[~mask[grid - 1]]
            mask[sel - 1] = True
            partners = sel + 1
            partners = partners[partners <= n]
            mask[partners - 1] = True
        if self.pin_first and n >= 1:
            mask[0] = True
        return mask

    def classify(self, i: int) -> str:
        """One of 'fixed-0', 'fixed-10-pair', 'free' for position ``i``."""
        if i < 1:
            raise ValueError("positions are 1-based")
        for a, b in self.core_intervals(i):
            if a <= i <= b:
                return "fixed-0"
        if self.pin_first and i == 1:
            return "fixed-0"
        if self.lam:
            if i % self.lam == 0 and not self._in_core(i):
                return "fixed-10-pair"
            if i > self.lam and (i - 1) % self.lam == 0 \
                    and not self._in_core(i - 1):
                return "fixed-10-pair"
        return "free"

    def _in_core(self, i: int) -> bool:
        return any(a <= i <= b for a, b in self.core_intervals(i))

    @property
    def grid_allowance(self) -> float:
        return 0.0 if not self.lam else 2.0 / self.lam

    def core_density(self, n: int) -> float:
        return float(np.count_nonzero(self.core_mask(n))) / n

    def density_budget(self, n: int) -> float:
        return self.core_density(n) + self.grid_allowance

    def union_density(self, n: int) -> float:
        return float(np.count_nonzero(self.union_mask(n))) / n


def _apply_schedule(bits: np.ndarray, det: DeterminedPositions) -> np.ndarray:
    n = bits.size
    core = det.core_mask(n)
    if det.lam:
        grid = np.arange(det.lam, n + 1, det.lam)
        sel = grid[~core[grid - 1]]
        bits[sel - 1] = 1
        partners = sel + 1
        partners = partners[partners <= n]
        bits[partners - 1] = 0
    bits[core] = 0
    if det.pin_first and n >= 1:
        bits[0] = 0
    return bits


@dataclass
class ConstructedPoint:
    """A schedule-built symbol source plus its construction metadata."""

    kind: str
    source: SymbolSource
    determined: DeterminedPositions
    metadata: dict

    def prefix_bits(self, n: int) -> np.ndarray:
        return self.source.prefix(n).bits

    def prefix_word(self, n: int) -> BinaryWord:
        return self.source.prefix(n)

    def prefix_code(self, n: int, drop_last: bool = True
                    ) -> tuple[AlternationCode, int]:
        """Block profile of the length-n prefix and its first symbol.

        The final run of a prefix is censored (it may continue beyond the
        horizon), so by default it is dropped from the profile.
        """
        bits = self.prefix_bits(n)
        change = np.flatnonzero(np.diff(bits.astype(np.int8)))
        edges = np.concatenate([[-1], change, [bits.size - 1]])
        lengths = np.diff(edges)
        if drop_last and lengths.size > 1:
            lengths = lengths[:-1]
        return AlternationCode(lengths.tolist()), int(bits[0])

    def fiber(self) -> "FiberMeasure":
        """Fiber measure uniform on this point's free positions."""
        det = self.determined
        src = self.source
        return FiberMeasure(det.union_mask, lambda n: src.prefix(n).bits,
                            description=f"fiber({self.kind})")

    def to_descriptor(self) -> dict:
        """JSON-safe descriptor that reconstructs the source bit-exactly."""
        return {"kind": self.kind, **self.metadata}

    @staticmethod
    def from_descriptor(desc: dict) -> "ConstructedPoint":
        d = dict(desc)
        kind = d.pop("kind", None)
        if kind == "joint":
            return joint_spectrum_point(d["alpha"], d["beta"], d["lam"],
                                        d["seed"])
        if kind == "intermediate":
            return intermediate_scaling_point(d["gamma"], d["alpha"],
                                              d["lam"], d["seed"])
        if kind == "bounded":
            return bounded_block_point(d["lam"], d["seed"])
        raise ConstructionError(f"unknown descriptor kind {kind!r}")


def _scheduled_source(det: DeterminedPositions, seed: int, stream: int,
                      description: str) -> SymbolSource:
    def reader(lo: int, hi: int) -> np.ndarray:
        bits = _random_bits(hi - 1, seed, stream)
        return _apply_schedule(bits, det)[lo - 1:hi - 1]

    return SymbolSource(reader, declared_nondyadic=True,
                        description=description, cache=True)


def joint_block_ratios(alpha: float, beta: float) -> tuple[float, float]:
    """Free-stretch and big-block scale factors (l, m) for targets (a, b).

    The construction alternates a free stretch of relative length l with one
    big block of relative length m, so that the squared-block ratio swings
    between a (before the block) and b (after it).  The factors satisfy
    m**2 + b = b*(1 + l + m)**2 and l/(l + m) = joint_dim(a, b).
    """
    if not 0.0 < alpha < beta < 1.0:
        raise ConstructionError(
            f"targets must satisfy 0 < alpha < beta < 1, got ({alpha}, {beta})")
    sa, sb = math.sqrt(alpha), math.sqrt(beta)
    ell = (sb - sa) / sa
    m = (sb / sa) * (beta + math.sqrt(alpha * beta + beta - alpha)) / (1.0 - beta)
    return ell, m


def _joint_cycles(alpha: float, beta: float, lam: int
                  ) -> tuple[float, Callable[[float], Iterator[tuple[float, float, float]]], dict]:
    """Cycle generator (theta_k, ell_k, theta_{k+1}) and derived metadata."""
    if alpha > 0.0:
        ell, m = joint_block_ratios(alpha, beta)
        theta0 = float(math.floor((lam + 2) / m) + 1)
        info = {"ell": ell, "m": m, "theta0": theta0,
                "ratio": 1.0 + ell + m}

        def cycles(limit: float) -> Iterator[tuple[float, float, float]]:
            theta = theta0
            q = 1.0 + ell + m
            while theta <= limit:
                yield theta, ell, q * theta
                theta *= q
    else:
        # Vanishing-liminf schedule: re-derive the factors each cycle from a
        # decaying stand-in target a_k = beta/(k+2)**2 (cycle k = 0, 1, ...).
        m0 = joint_block_ratios(beta / 4.0, beta)[1]
        theta0 = float(math.floor((lam + 2) / m0) + 1)
        info = {"alpha_schedule": "beta/(k+2)^2", "theta0": theta0}

        def cycles(limit: float) -> Iterator[tuple[float, float, float]]:
            theta = theta0
            k = 0
            while theta <= limit:
                ell_k, m_k = joint_block_ratios(beta / (k + 2) ** 2, beta)
                yield theta, ell_k, (1.0 + ell_k + m_k) * theta
                theta *= 1.0 + ell_k + m_k
                k += 1

    return theta0, cycles, info


def joint_spectrum_point(alpha: float, beta: float, lam: int = 64,
                         seed: int = 0) -> ConstructedPoint:
    """Point whose squared-block ratio has liminf ``alpha`` and limsup ``beta``.

    Constant-0 runs occupy [(1+l), 1] fractions of each geometric scale
    window [theta_k, theta_{k+1}] (rounded inward so a run never exceeds its
    real-arithmetic template), forced 10-pairs sit on the lam-grid outside
    those runs, the first position is 0, and everything else is free.
    Requires 0 <= alpha < beta < 1; alpha = 0 switches to a per-cycle decaying
    schedule recorded in the metadata.
    """
    if lam < 4:
        raise ConstructionError("lam must be >= 4")
    if not (0.0 <= alpha < beta < 1.0):
        raise ConstructionError(
            f"targets must satisfy 0 <= alpha < beta < 1, got ({alpha}, {beta})")
    _, cycles, info = _joint_cycles(alpha, beta, lam)

    def core_intervals(h: int) -> list[tuple[int, int]]:
        out = []
        for theta, ell_k, theta_next in cycles(float(h)):
            a = math.ceil((1.0 + ell_k) * theta)
            b = math.floor(min(theta_next, float(h)))
            if a <= b:
                out.append((int(a), int(b)))
        return out

    det = DeterminedPositions(core_intervals, lam, pin_first=True)
    meta = {"alpha": alpha, "beta": beta, "lam": lam, "seed": seed, **info}
    src = _scheduled_source(det, seed, _STREAM_JOINT,
                            f"joint({alpha},{beta};lam={lam},seed={seed})")
    return ConstructedPoint("joint", src, det, meta)


def select_shape_exponent(gamma: float) -> int:
    """Scale exponent r for the intermediate construction.

    The least integer above 2 that guarantees the run-length exponent
    delta = (r*gamma - 1)/2 stays below r - 1, so the prescribed runs fit in
    the gaps between consecutive scales: r = max(3, ceil(1/(2-gamma)) + 1).
    """
    if not 1.0 < gamma < 2.0:
        raise ConstructionError(f"gamma must lie in (1, 2), got {gamma}")
    return max(3, math.ceil(1.0 / (2.0 - gamma)) + 1)


def intermediate_scaling_point(gamma: float, alpha: float, lam: int = 64,
                               seed: int = 0,
                               k_cap: int = 1_000_000) -> ConstructedPoint:
    """Point whose cumulative squared-block sum grows like alpha * N**gamma.

    Scales theta_k = k**r carry constant-0 runs of length c_k =
    sqrt(r*gamma*alpha) * k**delta ending at theta_k, for k at least the first
    index where the run fits between consecutive scales; forced 10-pairs on
    the lam-grid bound all other blocks.
    """
    if not 1.0 < gamma < 2.0:
        raise ConstructionError(f"gamma must lie in (1, 2), got {gamma}")
    if alpha <= 0.0:
        raise ConstructionError(f"alpha must be positive, got {alpha}")
    if lam < 4:
        raise ConstructionError("lam must be >= 4")
    r = select_shape_exponent(gamma)
    delta = (r * gamma - 1.0) / 2.0
    coef = math.sqrt(r * gamma * alpha)

    k0 = None
    for k in range(1, k_cap + 1):
        if coef * k ** delta < float(k ** r - (k - 1) ** r):
            k0 = k
            break
    if k0 is None:
        raise ConstructionError(
            f"no feasible starting scale below k = {k_cap} for "
            f"gamma={gamma}, alpha={alpha}")

    def core_intervals(h: int) -> list[tuple[int, int]]:
        out = []
        k = k0
        while True:
            theta = k ** r
            start = math.ceil(theta - coef * k ** delta)
            if start > h:
                break
            out.append((max(1, int(start)), int(min(theta, h))))
            k += 1
        return out

    det = DeterminedPositions(core_intervals, lam, pin_first=False)
    meta = {"gamma": gamma, "alpha": alpha, "lam": lam, "seed": seed,
            "r": r, "delta": delta, "k0": k0, "run_coefficient": coef}
    src = _scheduled_source(det, seed, _STREAM_INTERMEDIATE,
                            f"intermediate(gamma={gamma},alpha={alpha})")
    return ConstructedPoint("intermediate", src, det, meta)


class _BoundedBlocks:
    """Lazy uniform block lengths in [1, lam] with cached cumulative sums."""

    def __init__(self, lam: int, seed: int):
        self.lam = lam
        self.seed = seed
        self.lengths = np.zeros(0, dtype=np.int64)
        self.total = 0
        self.chunks = 0

    def ensure(self, n: int) -> None:
        while self.total < n:
            rng = _chunk_rng(self.seed, _STREAM_BOUNDED, self.chunks)
            new = rng.integers(1, self.lam + 1, size=4096, dtype=np.int64)
            self.lengths = np.concatenate([self.lengths, new])
            self.total += int(new.sum())
            self.chunks += 1

    def bits(self, n: int) -> np.ndarray:
        self.ensure(n)
        symbols = (np.arange(self.lengths.size) % 2).astype(np.uint8)
        return np.repeat(symbols, self.lengths)[:n]


def bounded_block_point(lam: int, seed: int = 0) -> ConstructedPoint:
    """Point with i.i.d. uniform block lengths in [1, lam].

    Every block is at most lam, so the squared-block ratio tends to 0; this
    realizes a vanishing limsup target.  All positions count as free (the
    block lengths are sampled, not prescribed).
    """
    if lam < 2:
        raise ConstructionError("lam must be >= 2")
    state = _BoundedBlocks(lam, seed)

    def reader(lo: int, hi: int) -> np.ndarray:
        return state.bits(hi - 1)[lo - 1:hi - 1]

    src = SymbolSource(reader, declared_nondyadic=True,
                       description=f"bounded(lam={lam},seed={seed})",
                       cache=True)
    det = DeterminedPositions(lambda h: [], None, pin_first=False)
    meta = {"lam": lam, "seed": seed}
    return ConstructedPoint("bounded", src, det, meta)


def idealized_block_simulation(alpha: float, beta: float, steps: int,
                               pivot: str = "matched-levels"
                               ) -> list[tuple[float, float, float, float]]:
    """Real-arithmetic cycle simulation of the block construction.

    Each row is (pivot, N_before, N_after, ratio) for one cycle, where ratio
    is the fraction of free positions in the cycle.  With pivot
    'matched-levels' the pivot is the previous cycle end (the level of the
    squared-block ratio matches the post-block level there); with pivot
    'renormalized' the pivot is sqrt(alpha/beta) times the pre-block position,
    which handles a nonzero filtered prefix.  In both modes the ratio is
    constant across cycles and equals joint_dim(alpha, beta).
    """
    if not 0.0 < alpha < beta < 1.0:
        raise ConstructionError(
            f"targets must satisfy 0 < alpha < beta < 1, got ({alpha}, {beta})")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rows: list[tuple[float, float, float, float]] = []
    if pivot == "matched-levels":
        ell, m = joint_block_ratios(alpha, beta)
        p = 1.0
        for _ in range(steps):
            n_before = (1.0 + ell) * p
            n_after = (1.0 + ell + m) * p
            rows.append((p, n_before, n_after,
                         (n_before - p) / (n_after - p)))
            p = n_after
    elif pivot == "renormalized":
        growth = (1.0 + math.sqrt(beta + alpha * beta - alpha)) / (1.0 - beta)
        shrink = math.sqrt(alpha / beta)
        n_before = 1.0
        for _ in range(steps):
            p = shrink * n_before
            n_after = growth * n_before
            rows.append((p, n_before, n_after,
                         (n_before - p) / (n_after - p)))
            n_before = n_after
    else:
        raise ValueError(f"unknown pivot mode {pivot!r}")
    if not math.isfinite(rows[-1][2]):
        raise ValueError("cycle positions overflowed; reduce steps")
    return rows


# ---------------------------------------------------------------------------
# auxiliary measures


MaskLike = Union[Callable[[int], np.ndarray], np.ndarray, Sequence[int],
                 "DeterminedPositions"]


def _as_mask_fn(M: MaskLike) -> Callable[[int], np.ndarray]:
    if isinstance(M, DeterminedPositions):
        return M.union_mask
    if callable(M):
        return M  # type: ignore[return-value]
    if isinstance(M, np.ndarray) and M.dtype == bool:
        arr = M

        def from_array(n: int) -> np.ndarray:
            if n > arr.size:
                raise ValueError(f"mask only defined up to {arr.size}")
            return arr[:n]

        return from_array
    positions = np.asarray(sorted(int(i) for i in M), dtype=np.int64)

    def from_positions(n: int) -> np.ndarray:
        mask = np.zeros(n, dtype=bool)
        idx = positions[(positions >= 1) & (positions <= n)]
        mask[idx - 1] = True
        return mask

    return from_positions


class FiberMeasure:
    """Product measure: uniform on free positions, point mass on a set M.

    For a word compatible with the prescribed bits on M, the mass of its
    cylinder is 2**(-c) with c the number of free positions it covers;
    incompatible cylinders carry mass zero.
    """

    def __init__(self, mask_fn: Callable[[int], np.ndarray],
                 bits_fn: Callable[[int], np.ndarray], description: str = ""):
        self._mask_fn = mask_fn
        self._bits_fn = bits_fn
        self.description = description

    def mask(self, n: int) -> np.ndarray:
        return np.asarray(self._mask_fn(n), dtype=bool)

    def prescribed(self, n: int) -> np.ndarray:
        return np.asarray(self._bits_fn(n), dtype=np.uint8)

    def free_count(self, n: int) -> int:
        if n == 0:
            return 0
        return int(n - np.count_nonzero(self.mask(n)))

    def compatible(self, word: BinaryWord) -> bool:
        n = len(word)
        if n == 0:
            return True
        m = self.mask(n)
        return bool(np.all(word.bits[m] == self.prescribed(n)[m]))

    def mass(self, word: BinaryWord) -> Fraction:
        if not self.compatible(word):
            return Fraction(0)
        return Fraction(1, 1 << self.free_count(len(word)))

    def log_mass(self, word: BinaryWord) -> float:
        if not self.compatible(word):
            return -math.inf
        return -self.free_count(len(word)) * math.log(2.0)


def fiber_measure(M: MaskLike, w) -> FiberMeasure:
    """Fiber measure for determined set ``M`` with prescribed bits ``w``.

    ``M`` may be a mask callable, a boolean array, a collection of 1-based
    positions, or a :class:`DeterminedPositions`.  ``w`` may be a callable
    returning prefix bits, an array of bits, or a dict {position: bit} (bits
    off M are ignored).
    """
    mask_fn = _as_mask_fn(M)
    if callable(w):
        bits_fn = w
    elif isinstance(w, dict):
        items = {int(k): int(v) for k, v in w.items()}

        def bits_fn(n: int) -> np.ndarray:
            out = np.zeros(n, dtype=np.uint8)
            for pos, bit in items.items():
                if 1 <= pos <= n:
                    out[pos - 1] = bit
            return out
    else:
        arr = np.asarray(w, dtype=np.uint8)

        def bits_fn(n: int) -> np.ndarray:
            if n > arr.size:
                raise ValueError(f"prescribed bits only defined up to {arr.size}")
            return arr[:n]

    return FiberMeasure(mask_fn, bits_fn)


def fiber_dimension_bound(M: MaskLike, horizon: int,
                          tail_fraction: float = 0.5) -> float:
    """Dimension floor 1 - (empirical upper density of M) over a horizon.

    The upper density is proxied by the maximum prefix density over the
    trailing ``tail_fraction`` of the horizon.  When ``M`` is a
    :class:`DeterminedPositions`, its density budget is used (core density
    plus the full periodic-grid allowance), which upper-bounds the honest
    union density and therefore keeps the returned floor conservative.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if not 0.0 < tail_fraction <= 1.0:
        raise ValueError("tail_fraction must be in (0, 1]")
    start = max(1, int(math.ceil(horizon * (1.0 - tail_fraction))))
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    if isinstance(M, DeterminedPositions):
        core = np.cumsum(M.core_mask(horizon))
        densities = core / ns + M.grid_allowance
    else:
        counts = np.cumsum(_as_mask_fn(M)(horizon))
        densities = counts / ns
    return 1.0 - float(densities[start - 1:].max())


class BlockBernoulliMeasure:
    """Product measure over length-m blocks favouring the constant blocks.

    Each constant block (all zeros or all ones) carries weight p, every other
    block weight (1-2p)/(2**m - 2); block weights multiply across consecutive
    blocks.  A trailing partial block is weighted by the total weight of all
    its completions.  The default p = 1/3 makes the two cases share the value
    p/(2**m - 2) for mixed blocks; any p in (0, 1/2) gives a probability
    measure.
    """

    def __init__(self, block_length: int, p: Union[Fraction, float] = Fraction(1, 3)):
        if block_length < 2:
            raise ValueError("block_length must be >= 2")
        p = Fraction(p).limit_denominator(10**9) if isinstance(p, float) else Fraction(p)
        if not 0 < p < Fraction(1, 2):
            raise ValueError("p must lie in (0, 1/2)")
        self.block_length = int(block_length)
        self.p = p
        self.w_mixed = (1 - 2 * p) / ((1 << block_length) - 2)

    def block_weight(self, block: BinaryWord) -> Fraction:
        """Exact weight of a full or partial block (completion-summed)."""
        r = len(block)
        m = self.block_length
        if r == 0:
            return Fraction(1)
        if r > m:
            raise ValueError("block longer than the measure's block length")
        bits = block.bits
        constant = bool(np.all(bits == bits[0]))
        if r == m:
            return self.p if constant else self.w_mixed
        completions = 1 << (m - r)
        if constant:
            return self.p + (completions - 1) * self.w_mixed
        return completions * self.w_mixed

    def mass(self, word: BinaryWord) -> Fraction:
        """Exact cylinder mass (use for short words; see :meth:`log_mass`)."""
        m = self.block_length
        total = Fraction(1)
        for start in range(0, len(word), m):
            total *= self.block_weight(word[start:start + m])
        return total

    def log_mass(self, word: BinaryWord) -> float:
        """Natural-log mass, streaming (safe far below float underflow)."""
        m = self.block_length
        n = len(word)
        full = n // m
        const_count = 0
        if full:
            blocks = word.bits[:full * m].reshape(full, m)
            const_count = int(np.count_nonzero(np.all(blocks == blocks[:, :1],
                                                      axis=1)))
        out = const_count * math.log(float(self.p)) \
            + (full - const_count) * math.log(float(self.w_mixed))
        rem = word[full * m:]
        if len(rem):
            out += math.log(float(self.block_weight(rem)))
        return out

    def total_mass(self, block_count: int = 1) -> Fraction:
        """Exact total mass over all words of ``block_count`` full blocks."""
        per_block = 2 * self.p + ((1 << self.block_length) - 2) * self.w_mixed
        return per_block ** block_count


def block_bernoulli_measure(block_length: int,
                            p: Union[Fraction, float] = Fraction(1, 3)
                            ) -> BlockBernoulliMeasure:
    """Construct a :class:`BlockBernoulliMeasure` (default p = 1/3)."""
    return BlockBernoulliMeasure(block_length, p)


def nu_log_measure(nu: Union[FiberMeasure, BlockBernoulliMeasure],
                   word: BinaryWord) -> float:
    """Natural-log cylinder mass under either auxiliary measure family."""
    return nu.log_mass(word)
