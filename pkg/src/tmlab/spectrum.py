"""Closed-form dimension-spectrum functions on the admissible triangle.

The triangle Delta = {0 <= alpha <= beta <= 1} collects the admissible pairs
(liminf, limsup) of the normalized squared-block ratio of a binary sequence.
``joint_dim`` is the Hausdorff dimension of the set of sequences realizing a
given pair, ``eta`` the associated renormalized large-block density floor,
and ``accumulation_transform`` maps a pair to the extreme accumulation points
of the measure-decay and Birkhoff-sum sequences under quadratic scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SpectrumPoint",
    "GRID_COLUMNS",
    "joint_dim",
    "eta",
    "accumulation_transform",
    "phi",
    "phi_bar",
    "beta_star",
    "spectrum_grid",
]

GRID_COLUMNS = ("alpha", "beta", "f", "eta")

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _check_delta(alpha: float, beta: float) -> None:
    if not (0.0 <= alpha <= beta <= 1.0):
        raise ValueError(
            f"({alpha}, {beta}) lies outside the triangle 0 <= a <= b <= 1")


@dataclass(frozen=True)
class SpectrumPoint:
    """A pair (alpha, beta) in the admissible triangle."""

    alpha: float
    beta: float

    def __post_init__(self):
        _check_delta(self.alpha, self.beta)

    @property
    def f(self) -> float:
        return joint_dim(self.alpha, self.beta)

    @property
    def eta(self) -> float:
        return eta(self.alpha, self.beta)


def joint_dim(alpha: float, beta: float) -> float:
    """Joint spectrum value f(alpha, beta) on the triangle.

    f = (sqrt(ab + b - a) - b) / (sqrt(ab + b - a) + sqrt(ab)), with the
    convention f(0, 0) = 1; the function has no continuous extension to the
    origin.  Values lie in [0, 1], vanishing on the diagonal (beta > 0) and
    on the edge beta = 1.
    """
    _check_delta(alpha, beta)
    if alpha == 0.0 and beta == 0.0:
        return 1.0
    if alpha == beta or beta == 1.0:
        # exact zeros on the diagonal and the top edge: the defining formula
        # cancels to 0 there and float rounding would leak tiny signed noise
        return 0.0
    d = math.sqrt(alpha * beta + beta - alpha)
    return (d - beta) / (d + math.sqrt(alpha * beta))


def eta(alpha: float, beta: float) -> float:
    """Renormalized large-block density floor (sqrt(b)+sqrt(a))/(sqrt(D)+sqrt(ab)).

    Equals (1 - joint_dim(alpha, beta)) / sqrt(beta); the quotient-free form
    used here is the stable one near the origin, where the defining form is
    0/0.  Increasing in alpha and decreasing in beta; undefined at (0, 0).
    """
    _check_delta(alpha, beta)
    if beta == 0.0:
        raise ValueError("eta is undefined at the origin")
    d = math.sqrt(alpha * beta + beta - alpha)
    return (math.sqrt(beta) + math.sqrt(alpha)) / (d + math.sqrt(alpha * beta))


def accumulation_transform(alpha: float, beta: float
                           ) -> tuple[float, float, float, float]:
    """Extreme accumulation points implied by the pair (alpha, beta).

    Returns (liminf, limsup) of -log mu(C_n)/(n^2 log 2) followed by
    (liminf, limsup) of -S_n psi/(n^2 log 2):

        (alpha/(1+alpha), beta, alpha, beta/(1-beta)),

    with the last component +inf when beta = 1 (extended real).
    """
    _check_delta(alpha, beta)
    last = math.inf if beta == 1.0 else beta / (1.0 - beta)
    return (alpha / (1.0 + alpha), beta, alpha, last)


def phi(r: float, c: float) -> float:
    """(r + c^2) / (1 + c)^2; global minimum r/(1+r) at c = r (for c >= 0)."""
    if r <= 0.0:
        raise ValueError("phi requires r > 0")
    if c < 0.0:
        raise ValueError("phi requires c >= 0")
    return (r + c * c) / (1.0 + c) ** 2


def phi_bar(r: float, c: float) -> float:
    """(r - c^2) / (1 - c)^2; maximum r/(1-r) at c = r (for 0 <= c < 1)."""
    if not 0.0 < r < 1.0:
        raise ValueError("phi_bar requires 0 < r < 1")
    if not 0.0 <= c < 1.0:
        raise ValueError("phi_bar requires 0 <= c < 1")
    return (r - c * c) / (1.0 - c) ** 2


def beta_star(alpha: float, tol: float = 1e-10, max_iter: int = 200) -> float:
    """Argmax of beta -> joint_dim(alpha, beta) over (alpha, 1).

    Golden-section search; the section map is derivative-free and needs only
    the unimodality of the section, which holds for every alpha in (0, 1).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("beta_star requires alpha in (0, 1)")
    a, b = alpha, 1.0
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = joint_dim(alpha, c)
    fd = joint_dim(alpha, d)
    for _ in range(max_iter):
        if b - a <= tol:
            return 0.5 * (a + b)
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = joint_dim(alpha, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = joint_dim(alpha, d)
    raise ArithmeticError(
        f"golden-section search did not reach tolerance {tol} "
        f"in {max_iter} iterations")


def spectrum_grid(resolution: int) -> np.ndarray:
    """Lower-triangular evaluation grid over the admissible triangle.

    Returns an array of rows (alpha, beta, f, eta) for all grid pairs with
    alpha <= beta on a resolution x resolution lattice of [0, 1]^2; the row
    count is resolution*(resolution+1)/2.  eta at the origin has no limit and
    is emitted as NaN.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    vals = np.linspace(0.0, 1.0, resolution)
    rows = np.empty((resolution * (resolution + 1) // 2, 4), dtype=np.float64)
    k = 0
    for i in range(resolution):
        a = float(vals[i])
        for j in range(i, resolution):
            b = float(vals[j])
            e = math.nan if b == 0.0 else eta(a, b)
            rows[k] = (a, b, joint_dim(a, b), e)
            k += 1
    return rows
