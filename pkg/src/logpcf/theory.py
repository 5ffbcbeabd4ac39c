"""Closed-form objects for the pair correlation of {log2(2n - 1)}.

Neighbour counts K_max / K_min, the finite-N sandwich bounds, the piecewise
limit F(s), its fixed points F(s) = 2s, and the alpha-scaled (weak) variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LOG2 = math.log(2.0)
LOG4 = math.log(4.0)


def _check_n(N: int, minimum: int = 1) -> None:
    if N < minimum:
        raise ValueError(f"N must be >= {minimum}, got {N}")


def _check_s(s: float) -> None:
    if not s >= 0.0:
        raise ValueError(f"s must be >= 0, got {s!r}")


def c_ns_alpha(N: int, s: float, alpha: float) -> float:
    """2**(s / N**alpha) - 1, computed with expm1."""
    _check_n(N)
    _check_s(s)
    return math.expm1(LOG2 * s / float(N) ** alpha)


def c_ns(N: int, s: float) -> float:
    return c_ns_alpha(N, s, 1.0)


def k_max(N: int, s: float, alpha: float = 1.0) -> int:
    c = c_ns_alpha(N, s, alpha)
    return math.floor(2 * N * c / (1.0 + c))


def k_min(N: int, s: float, alpha: float = 1.0) -> int:
    c = c_ns_alpha(N, s, alpha)
    return math.floor(N * c / (1.0 + c))


def k_max_limit(s: float) -> int:
    _check_s(s)
    return math.floor(LOG4 * s)


def k_min_limit(s: float) -> int:
    _check_s(s)
    return math.floor(LOG2 * s)


def k_tilde(N: int, s: float, alpha: float = 1.0) -> int:
    hi, lo = k_max(N, s, alpha), k_min(N, s, alpha)
    return hi * (hi + 1) - lo * (lo + 1)


def j_bounds(N: int, s: float, k: int) -> tuple[float, float]:
    """Bounds on the number of points whose k-th cyclic neighbour lies within s/N."""
    if not s > 0:
        raise ValueError("j_bounds needs s > 0")
    if k < 1 or k > k_max(N, s):
        raise ValueError(f"k must lie in 1..K_max(N, s) = {k_max(N, s)}, got {k}")
    c = c_ns(N, s)
    return min(N, 2 * N - k * (c + 1.0) / c), min(N, 2 * N - k / c)


@dataclass(frozen=True)
class NeighborCounts:
    k_max: int
    k_min: int
    c: float
    N: int
    s: float


@dataclass(frozen=True)
class BoundsCertificate:
    lower: float
    upper: float
    k_tilde: int
    counts: NeighborCounts

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def neighbor_counts(N: int, s: float, alpha: float = 1.0) -> NeighborCounts:
    return NeighborCounts(k_max(N, s, alpha), k_min(N, s, alpha), c_ns_alpha(N, s, alpha), N, s)


def fn_bounds(N: int, s: float) -> BoundsCertificate:
    """Lower and upper bound for F_N(s); their gap is 2 K~(N, s) / N."""
    _check_n(N, 2)
    _check_s(s)
    counts = neighbor_counts(N, s)
    if s == 0:
        return BoundsCertificate(0.0, 0.0, 0, counts)
    km, kn, c = counts.k_max, counts.k_min, counts.c
    kt = km * (km + 1) - kn * (kn + 1)
    lower = 4 * km - (2 + 1 / N) * kn - (c + 1) / (c * N) * kt
    return BoundsCertificate(lower, lower + 2 * kt / N, kt, counts)


# -- limit function ----------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    k: int
    s_lo: float
    s_hi: float
    affine: float
    coeff: float

    def __call__(self, s):
        return self.affine - self.coeff / (4 * LOG2 * s)


def piece(k: int) -> Piece:
    if k < 0:
        raise ValueError("piece index must be >= 0")
    if k % 2 == 0:
        affine, coeff = 3 * k, 3 * k * k + 2 * k
    else:
        affine, coeff = 3 * k + 1, 3 * k * k + 4 * k + 1
    return Piece(k, k / LOG4, (k + 1) / LOG4, float(affine), float(coeff))


def piece_index(s: float) -> int:
    """k with k/log 4 <= s < (k+1)/log 4, using the stored float breakpoints."""
    _check_s(s)
    k = math.floor(LOG4 * s)
    if s >= (k + 1) / LOG4:
        k += 1
    elif k > 0 and s < k / LOG4:
        k -= 1
    return k


@dataclass(frozen=True)
class PiecewiseLimit:
    pieces: tuple[Piece, ...]

    def __call__(self, s: float) -> float:
        k = piece_index(s)
        if k >= len(self.pieces):
            raise ValueError(f"s = {s} lies beyond the last stored piece")
        return _eval_piece(self.pieces[k], s)

    @property
    def breakpoints(self) -> np.ndarray:
        return np.array([p.s_lo for p in self.pieces[1:]])


def f_limit_piecewise(n_pieces: int = 64) -> PiecewiseLimit:
    return PiecewiseLimit(tuple(piece(k) for k in range(n_pieces)))


def _eval_piece(p: Piece, s: float) -> float:
    # piece 0 is identically zero; avoids 0/0 at s = 0
    return 0.0 if p.k == 0 else p(s)


def f_limit(s: float) -> float:
    """Limit F(s) of F_N(s), evaluated from the piece containing s."""
    return _eval_piece(piece(piece_index(s)), s)


def f_limit_floor(s: float) -> float:
    """F(s) via floors of log(4) s and log(2) s (the K_max / K_min limits).

    The K~ term is divided by log(2) s, which is what the limit of the
    sandwich bounds gives and what reproduces the piecewise form.
    """
    _check_s(s)
    if s == 0:
        return 0.0
    a, b = k_max_limit(s), k_min_limit(s)
    return 4 * a - 2 * b - (a * (a + 1) - b * (b + 1)) / (LOG2 * s)


# -- fixed points ------------------------------------------------------------


def fixed_point_closed_form() -> float:
    """Nonzero solution of F(s) = 2s written as a single closed-form expression."""
    return (52 * LOG2 - math.sqrt(2704 * LOG2 ** 2 - 1872 * LOG2)) / (4 * LOG2)


def piece_roots(k: int) -> list[float]:
    """Real roots of affine - coeff/(4 log2 s) = 2s that lie inside piece k."""
    p = piece(k)
    if k == 0:
        return [0.0]
    # 8 log2 s^2 - 4 log2 affine s + coeff = 0
    disc = p.affine ** 2 - 2 * p.coeff / LOG2
    if disc < 0:
        return []
    r = math.sqrt(disc)
    roots = sorted({(p.affine - r) / 4, (p.affine + r) / 4})
    return [x for x in roots if p.s_lo <= x < p.s_hi]


def scan_fixed_points(s_max: float = 100.0) -> list[float]:
    roots: list[float] = []
    for k in range(piece_index(s_max) + 1):
        roots.extend(x for x in piece_roots(k) if x <= s_max)
    return roots


def fixed_points(s_max: float = 100.0) -> np.ndarray:
    return np.array(scan_fixed_points(s_max))


# -- weak (alpha) correlations -----------------------------------------------


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"weak correlations need 0 <= alpha < 1, got {alpha!r}")


def weak_lower_bound(N: int, s: float, alpha: float) -> float:
    """g(N, s, alpha): the lower sandwich bound with window s/N**alpha."""
    _check_n(N, 2)
    if not s > 0:
        raise ValueError("weak_lower_bound needs s > 0")
    _check_alpha(alpha)
    c = c_ns_alpha(N, s, alpha)
    km, kn = k_max(N, s, alpha), k_min(N, s, alpha)
    kt = km * (km + 1) - kn * (kn + 1)
    n1 = float(N) ** (1 - alpha)
    n2 = float(N) ** (2 - alpha)
    return 4 * km / n1 - 2 * kn / n1 - 2 / n2 - kt * (c + 1) / (c * n2)


def weak_limit(s: float, alpha: float = 0.0) -> float:
    """Limit of F_N^alpha(s) for alpha < 1: 2s * (3/4) log 4 = 3 s log 2."""
    _check_s(s)
    _check_alpha(alpha)
    return 2 * s * 0.75 * LOG4
