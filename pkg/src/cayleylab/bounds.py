"""Numerically stable evaluators for the closed-form probabilities and bounds
used around the diameter-2 threshold.

Everything is computed on the natural-log scale first (log1p for the
(1-q)^m powers, which survives exponents ~ 10^6) and exponentiated at the
end.  Values that are probabilities are reported raw, never clamped here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BoundReport:
    """A formula evaluation: value, its natural log, and which formula."""

    formula_id: str
    value: float
    log_value: float


def threshold_p(c: float, n: int) -> float:
    """p = sqrt(c log(n) / n), natural log; the sweep grid parametrisation."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if c <= 0:
        raise ValueError("c must be positive")
    v = c * math.log(n) / n
    if v > 1.0:
        raise ValueError(f"threshold_p({c}, {n}) would exceed 1")
    return math.sqrt(v)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")


def expected_far_vertices_Z2(N: int, p: float) -> float:
    """E[number of vertices at distance > 2 from 0] in the random Cayley graph
    of an elementary abelian 2-group of order N:

        (N - 1)(1 - p)(1 - p^2)^((N-2)/2)

    Exact: the distance-2 witnesses {y, y+x} partition the other N-2 elements
    into disjoint pairs.
    """
    if N < 4 or N & (N - 1):
        raise ValueError("N must be a power of two, at least 4")
    _check_p(p)
    return math.exp(log_expected_far_vertices_Z2(N, p))


def log_expected_far_vertices_Z2(N: int, p: float) -> float:
    if p == 1.0:
        return -math.inf
    return math.log(N - 1) + math.log1p(-p) + ((N - 2) / 2) * math.log1p(-p * p)


def second_factorial_moment_Z2(N: int, p: float) -> float:
    """E[X(X-1)] for the same X:

        (N-1)(N-2)(1-p)^2 ((1-p)^4 + 4p(1-p)^3 + 2p^2(1-p)^2)^((N-4)/4)

    The inner term is the probability that an independent p-sample of a
    4-cycle contains no adjacent pair (the quadruples {z, z+x, z+y, z+x+y}
    carry exactly that constraint graph); verified exact by enumeration.
    """
    if N < 8 or N & (N - 1):
        raise ValueError("N must be a power of two, at least 8")
    _check_p(p)
    return math.exp(log_second_factorial_moment_Z2(N, p))


def log_second_factorial_moment_Z2(N: int, p: float) -> float:
    if p == 1.0:
        return -math.inf
    q = 1.0 - p
    inner = q**4 + 4 * p * q**3 + 2 * p * p * q * q
    if inner == 0.0:
        return -math.inf
    return (math.log(N - 1) + math.log(N - 2) + 2 * math.log1p(-p)
            + ((N - 4) / 4) * math.log(inner))


def chebyshev_prob_zero_upper(ex: float, exx1: float) -> float:
    """Second-moment upper bound on Pr(X = 0):  E X(X-1)/(E X)^2 - 1 + 1/E X.

    May be negative; interpretation clamps at 0, reporting does not.
    """
    if ex <= 0:
        raise ValueError("E X must be positive")
    if exx1 < 0:
        raise ValueError("E X(X-1) must be non-negative")
    return exx1 / (ex * ex) - 1.0 + 1.0 / ex


def kleitman_lower_Bx(edge_count: int, p: float) -> float:
    """Correlation lower bound (1-p)^2 (1-p^2)^edge_count on the probability
    that a fixed vertex stays at distance > 2 from the identity; edge_count =
    4n reproduces the worst-case display."""
    return math.exp(log_kleitman_lower_Bx(edge_count, p))


def log_kleitman_lower_Bx(edge_count: int, p: float) -> float:
    if not 0.0 <= p < 1.0:
        raise ValueError(f"p must lie in [0, 1), got {p}")
    if edge_count < 0:
        raise ValueError("edge_count must be non-negative")
    return 2 * math.log1p(-p) + edge_count * math.log1p(-p * p)


def janson_upper(i_size: int, p: float, neighbor_count: int = 4) -> float:
    """Correlation upper bound exp{-|I| q^2 + neighbor_count |I| q^3} with
    q = 2p - p^2, on the probability that none of |I| pairwise
    mostly-independent two-element witness events occurs."""
    return math.exp(log_janson_upper(i_size, p, neighbor_count))


def log_janson_upper(i_size: int, p: float, neighbor_count: int = 4) -> float:
    if i_size < 0:
        raise ValueError("i_size must be non-negative")
    _check_p(p)
    q = 2 * p - p * p
    return -i_size * q * q + neighbor_count * i_size * q**3


def union_bound_diam2(n: int, p: float, divisor: int, pairs_mode: bool = False) -> float:
    """n (1 - p^2)^((n-2)/divisor): union bound on some vertex being far from
    the identity, divisor 7 for groups and 13 for Latin squares (where
    pairs_mode scales by n^2 instead of n, covering all vertex pairs)."""
    log_value = log_union_bound_diam2(n, p, divisor, pairs_mode)
    return math.exp(log_value)


def log_union_bound_diam2(n: int, p: float, divisor: int, pairs_mode: bool = False) -> float:
    if n < 2:
        raise ValueError("n must be at least 2")
    if divisor < 1:
        raise ValueError("divisor must be positive")
    _check_p(p)
    scale = 2 * math.log(n) if pairs_mode else math.log(n)
    if p == 1.0:
        return scale if n == 2 else -math.inf
    return scale + ((n - 2) / divisor) * math.log1p(-p * p)


@dataclass(frozen=True)
class RefinedBound:
    """The exact per-type exponent next to its simplified upper bound."""

    intermediate: float
    simplified: float
    intermediate_log: float
    simplified_log: float


def refined_exponent_bound(b: tuple[int, int, int, int], p: float, n: int) -> RefinedBound:
    """From a B-partition (b1..b4), the probability exponent

        exp{-p^2 (b1/2 + (2-p) b2 + (2/p - 1) b3 + (4 - 4p + p^2) b4)}

    together with the simplified bound exp{-p^2 (n-2)/2 + 4 n p^3}; the
    intermediate value is at most the simplified one whenever the partition
    inequality b1 + 4 b2 + 3 b3 + 7 b4 >= n - 2 holds and p is small.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly in (0, 1)")
    b1, b2, b3, b4 = b
    inter_log = -p * p * (b1 / 2 + (2 - p) * b2 + (2 / p - 1) * b3
                          + (4 - 4 * p + p * p) * b4)
    simp_log = -p * p * (n - 2) / 2 + 4 * n * p**3
    return RefinedBound(
        intermediate=math.exp(inter_log),
        simplified=math.exp(simp_log),
        intermediate_log=inter_log,
        simplified_log=simp_log,
    )


# -- CLI formula registry --------------------------------------------------------

FORMULAS = {
    "threshold-p": (threshold_p, ("c", "n"), None),
    "ex-z2": (expected_far_vertices_Z2, ("N", "p"), log_expected_far_vertices_Z2),
    "exx1-z2": (second_factorial_moment_Z2, ("N", "p"), log_second_factorial_moment_Z2),
    "chebyshev-zero": (chebyshev_prob_zero_upper, ("ex", "exx1"), None),
    "kleitman-bx": (kleitman_lower_Bx, ("edge_count", "p"), log_kleitman_lower_Bx),
    "janson": (janson_upper, ("i_size", "p", "neighbor_count"), log_janson_upper),
    "union-diam2": (union_bound_diam2, ("n", "p", "divisor", "pairs_mode"),
                    log_union_bound_diam2),
}


def evaluate(formula_id: str, **inputs) -> BoundReport:
    """Evaluate a registered formula into a BoundReport; formulas with a
    native log-scale path keep a finite log even when the value underflows."""
    fn, _, log_fn = FORMULAS[formula_id]
    if log_fn is not None:
        log_value = log_fn(**inputs)
        value = math.exp(log_value)
    else:
        value = fn(**inputs)
        if value > 0:
            log_value = math.log(value)
        else:
            log_value = -math.inf if value == 0 else math.nan
    return BoundReport(formula_id=formula_id, value=value, log_value=log_value)
