"""Binary words, lazy infinite symbol sources, and the alternation coding.

The alternation coding of a binary sequence is its run-length profile: the
sequence of lengths of maximal constant blocks.  All counters derived from it
(block sums, sums of squared block lengths, and their normalized ratios) are
kept in exact integer/rational arithmetic; squared counters overflow 64-bit
integers long before the horizons used here, and float cancellation in the
ratios is the dominant error source otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "BinaryWord",
    "SymbolSource",
    "AlternationCode",
    "DyadicInterval",
    "alternation_encode",
    "alternation_decode",
    "prefix_counters",
    "filtered_counters",
    "pi2_interval",
    "pi2_value",
    "is_dyadic_prefix",
]


class BinaryWord:
    """Immutable finite word over the alphabet {0, 1}.

    Accepts a string like ``"0110"``, an iterable of 0/1 integers, or a numpy
    array.  The empty word is allowed (identity for concatenation) but most
    operations on words require non-emptiness and say so.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: Union[str, Iterable[int], np.ndarray] = ()):
        if isinstance(bits, str):
            arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
        else:
            arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits,
                             dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("bits must form a one-dimensional sequence")
        if arr.size and not np.all((arr == 0) | (arr == 1)):
            raise ValueError("bits must be 0 or 1")
        arr = arr.copy()
        arr.setflags(write=False)
        self._bits = arr

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 view of the symbols."""
        return self._bits

    def __len__(self) -> int:
        return int(self._bits.size)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BinaryWord(self._bits[i])
        return int(self._bits[i])

    def __iter__(self):
        return iter(int(b) for b in self._bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return self._bits.shape == other._bits.shape and bool(
            np.all(self._bits == other._bits))

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        return BinaryWord(np.concatenate([self._bits, other._bits]))

    def __str__(self) -> str:
        return "".join("01"[b] for b in self._bits)

    def __repr__(self) -> str:
        return f"BinaryWord({str(self)!r})"

    def flipped(self) -> "BinaryWord":
        """Word with every symbol complemented."""
        return BinaryWord(1 - self._bits)

    def as_int(self) -> int:
        """The word read as a big-endian binary integer (empty word -> 0)."""
        value = 0
        for b in self._bits:
            value = (value << 1) | int(b)
        return value

    @classmethod
    def zeros(cls, n: int) -> "BinaryWord":
        return cls(np.zeros(n, dtype=np.uint8))

    @classmethod
    def ones(cls, n: int) -> "BinaryWord":
        return cls(np.ones(n, dtype=np.uint8))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "BinaryWord":
        return cls(rng.integers(0, 2, size=n, dtype=np.uint8))


class SymbolSource:
    """Deterministic, lazily queried infinite binary sequence (1-based index).

    A source wraps a vectorized reader ``reader(lo, hi) -> uint8 array`` for
    positions ``lo..hi-1``.  Repeated queries at the same index must return the
    same bit.  ``declared_nondyadic`` is a promise that the sequence contains
    infinitely many 0s and 1s; it can only ever be checked up to a finite
    lookahead, and consumers that rely on it verify their own horizon.
    """

    def __init__(self, reader: Callable[[int, int], np.ndarray], *,
                 declared_nondyadic: bool = False, description: str = "",
                 cache: bool = False):
        self._reader = reader
        self.declared_nondyadic = declared_nondyadic
        self.description = description
        self._cache: Optional[np.ndarray] = np.zeros(0, dtype=np.uint8) if cache else None

    def _read(self, lo: int, hi: int) -> np.ndarray:
        if lo < 1 or hi < lo:
            raise ValueError("positions are 1-based and ranges must be non-empty")
        if self._cache is None:
            return self._reader(lo, hi)
        if hi - 1 > self._cache.size:
            new_size = max(hi - 1, 2 * self._cache.size, 1 << 10)
            self._cache = self._reader(1, new_size + 1).astype(np.uint8)
        return self._cache[lo - 1:hi - 1]

    def bit(self, i: int) -> int:
        """Symbol at position ``i >= 1``."""
        return int(self._read(i, i + 1)[0])

    def window(self, start: int, length: int) -> BinaryWord:
        """Word formed by positions ``start .. start+length-1``."""
        return BinaryWord(self._read(start, start + length))

    def prefix(self, n: int) -> BinaryWord:
        return self.window(1, n)

    def pi2_float(self, shift: int = 0, lookahead: int = 64) -> float:
        """Binary-expansion value of the shifted tail, to double precision."""
        return pi2_value(self.window(shift + 1, lookahead))

    def __repr__(self) -> str:
        return f"SymbolSource({self.description or 'anonymous'})"

    @classmethod
    def periodic(cls, pattern: Union[str, BinaryWord]) -> "SymbolSource":
        word = pattern if isinstance(pattern, BinaryWord) else BinaryWord(pattern)
        if len(word) == 0:
            raise ValueError("pattern must be non-empty")
        pat = word.bits
        p = pat.size
        both = bool(pat.min() == 0 and pat.max() == 1)

        def reader(lo: int, hi: int) -> np.ndarray:
            idx = np.arange(lo - 1, hi - 1, dtype=np.int64) % p
            return pat[idx]

        return cls(reader, declared_nondyadic=both,
                   description=f"({word})^inf")

    @classmethod
    def constant(cls, bit: int) -> "SymbolSource":
        b = int(bit)
        if b not in (0, 1):
            raise ValueError("bit must be 0 or 1")

        def reader(lo: int, hi: int) -> np.ndarray:
            return np.full(hi - lo, b, dtype=np.uint8)

        return cls(reader, declared_nondyadic=False, description=f"{b}^inf")

    @classmethod
    def from_word(cls, word: BinaryWord, tail: "SymbolSource") -> "SymbolSource":
        """Finite word followed by another source."""
        w = word.bits
        n = w.size

        def reader(lo: int, hi: int) -> np.ndarray:
            out = np.empty(hi - lo, dtype=np.uint8)
            head = max(0, min(hi, n + 1) - lo)
            if head:
                out[:head] = w[lo - 1:lo - 1 + head]
            if hi - lo > head:
                out[head:] = tail._read(max(lo, n + 1) - n, hi - n)
            return out

        return cls(reader, declared_nondyadic=tail.declared_nondyadic,
                   description=f"{word}.{tail.description}")


class AlternationCode:
    """Run-length block profile with exact cumulative counters.

    ``blocks[i]`` is the length of the (i+1)-th maximal constant block.  The
    cumulative counters N_m (sum of the first m blocks) and f_m (sum of their
    squares) are Python integers, so they stay exact at any scale.
    """

    __slots__ = ("_blocks", "_N", "_f")

    def __init__(self, blocks: Iterable[int]):
        bl = [int(b) for b in blocks]
        if any(b < 1 for b in bl):
            raise ValueError("every block length must be >= 1")
        self._blocks = bl
        self._N = list(itertools.accumulate(bl))
        self._f = list(itertools.accumulate(b * b for b in bl))

    @property
    def blocks(self) -> Sequence[int]:
        return tuple(self._blocks)

    def __len__(self) -> int:
        return len(self._blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlternationCode):
            return NotImplemented
        return self._blocks == other._blocks

    def __repr__(self) -> str:
        shown = ",".join(map(str, self._blocks[:8]))
        more = ",..." if len(self._blocks) > 8 else ""
        return f"AlternationCode(({shown}{more}), m={len(self._blocks)})"

    def block(self, i: int) -> int:
        """Length of block ``i`` (1-based)."""
        self._check_index(i)
        return self._blocks[i - 1]

    def N(self, m: int) -> int:
        """Cumulative length of the first ``m`` blocks."""
        self._check_index(m)
        return self._N[m - 1]

    def f(self, m: int) -> int:
        """Cumulative sum of squared lengths of the first ``m`` blocks."""
        self._check_index(m)
        return self._f[m - 1]

    def F(self, m: int) -> Fraction:
        """f_m / N_m**2 as an exact rational in (0, 1]."""
        self._check_index(m)
        return Fraction(self._f[m - 1], self._N[m - 1] ** 2)

    def cumulative_lengths(self) -> Sequence[int]:
        return tuple(self._N)

    def _check_index(self, m: int) -> None:
        if not 1 <= m <= len(self._blocks):
            raise IndexError(f"block index {m} out of range 1..{len(self._blocks)}")


@dataclass(frozen=True)
class DyadicInterval:
    """Half-open dyadic interval [lo, hi) inside [0, 1]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi <= 1):
            raise ValueError("interval endpoints must satisfy 0 <= lo <= hi <= 1")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x < self.hi

    def contains_interval(self, other: "DyadicInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def alternation_encode(word: BinaryWord) -> AlternationCode:
    """Run-length blocks of ``word``; the leading symbol is not stored.

    The first block counts the leading run regardless of its symbol value;
    carry ``word[0]`` separately to make :func:`alternation_decode` exact.
    """
    if len(word) == 0:
        raise ValueError("cannot encode the empty word")
    bits = word.bits
    change = np.flatnonzero(np.diff(bits.astype(np.int8)))
    edges = np.concatenate([[-1], change, [bits.size - 1]])
    return AlternationCode(np.diff(edges).tolist())


def alternation_decode(code: AlternationCode, first_symbol: int) -> BinaryWord:
    """Inverse of :func:`alternation_encode` given the leading symbol."""
    if len(code) == 0:
        raise ValueError("cannot decode an empty block sequence")
    first = int(first_symbol)
    if first not in (0, 1):
        raise ValueError("first_symbol must be 0 or 1")
    lengths = np.asarray(code.blocks, dtype=np.int64)
    symbols = (first + np.arange(lengths.size)) % 2
    return BinaryWord(np.repeat(symbols.astype(np.uint8), lengths))


def prefix_counters(code: AlternationCode, m: int) -> tuple[int, int, Fraction]:
    """Exact (N_m, f_m, F_m) for the first ``m`` blocks."""
    return code.N(m), code.f(m), code.F(m)


def filtered_counters(code: AlternationCode, m: int, lam: int
                      ) -> tuple[Fraction, Fraction, Optional[float]]:
    """Counters restricted to blocks of length >= ``lam``.

    Returns ``(F_lam, ell, rho)`` where F_lam is the squared-block ratio over
    large blocks only, ell is the fraction of positions covered by large
    blocks, and rho = ell / sqrt(F_lam) is the renormalized large-block
    density.  ``rho`` is ``None`` exactly when no block so far passes the
    filter (F_lam = 0), never a number.
    """
    if lam < 1:
        raise ValueError("lam must be a positive integer")
    code._check_index(m)
    big_sq = 0
    big_len = 0
    for b in code._blocks[:m]:
        if b >= lam:
            big_sq += b * b
            big_len += b
    n_m = code.N(m)
    f_lam = Fraction(big_sq, n_m * n_m)
    ell = Fraction(big_len, n_m)
    rho = None if big_sq == 0 else float(ell) / float(f_lam) ** 0.5
    return f_lam, ell, rho


def pi2_interval(word: BinaryWord) -> DyadicInterval:
    """Dyadic interval of binary-expansion values of all extensions of ``word``.

    For a word of length n the interval is [v, v + 2**-n) with
    v = sum(word[i] * 2**-(i+1)).  The empty word gives [0, 1).
    """
    n = len(word)
    lo = Fraction(word.as_int(), 1 << n)
    return DyadicInterval(lo, lo + Fraction(1, 1 << n))


def pi2_value(word: BinaryWord) -> float:
    """Midpoint of :func:`pi2_interval` as a float.

    For a 64-symbol window the interval is narrower than one double-precision
    ulp, so the midpoint determines the expansion value of any extension to
    full float accuracy.
    """
    return float(pi2_interval(word).midpoint())


def is_dyadic_prefix(src: SymbolSource, lookahead: int) -> bool:
    """Finite-horizon test whether ``src`` looks eventually constant.

    Returns True when positions 1..lookahead form a single constant run, i.e.
    the leading run reaches the horizon.  This is only a verdict about the
    inspected window: it never proves that the sequence is the expansion of a
    dyadic rational, and a run broken anywhere inside the window (even at the
    last position) yields False.
    """
    if lookahead < 1:
        raise ValueError("lookahead must be >= 1")
    bits = src.window(1, lookahead).bits
    return bool(np.all(bits == bits[0]))
