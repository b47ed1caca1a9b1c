"""(*)-functions g(x) = −Σ_{k<n} xᵏ + γxⁿ + Σ_{k>n} xᵏ and their certified minima."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from pydantic import field_validator
from pydantic.dataclasses import dataclass

from core.rational import format_rational, parse_rational
from models.ratio import EXACT_CONFIG, Enclosure

logger = logging.getLogger(__name__)


class BoundsDomainError(ValueError):
    """Exception raised when an argument lies outside the domain of a bound."""

    def __init__(self, name: str, value: Fraction, domain: str) -> None:
        """Initialize with the argument, its value and the admissible domain.

        Args:
            name: Argument name
            value: Rejected value
            domain: Human-readable domain, e.g. "(0, 1/2]"
        """
        self.name = name
        self.value = value
        self.domain = domain
        super().__init__(f"{name} = {value} lies outside {domain}")


@dataclass(frozen=True, config=EXACT_CONFIG)
class StarFunction:
    """g(x) = −Σ_{k=1}^{n−1} xᵏ + γxⁿ + x^{n+1}/(1−x) on [0, 1).

    Attributes:
        n: Index of the free coefficient, at least 1
        gamma: The free coefficient γ in [−1, 1]
    """

    n: int
    gamma: Fraction

    @field_validator("n")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"n must be at least 1, got {value}")
        return value

    @field_validator("gamma", mode="before")
    @classmethod
    def _in_range(cls, value: Any) -> Fraction:
        gamma = parse_rational(value)
        if not -1 <= gamma <= 1:
            raise ValueError(f"gamma must lie in [-1, 1], got {gamma}")
        return gamma

    def to_wire(self) -> dict[str, Any]:
        return {"n": self.n, "gamma": format_rational(self.gamma)}


def _check_point(x: Fraction) -> None:
    if not 0 <= x < 1:
        raise BoundsDomainError("x", x, "[0, 1)")


def star_eval(g: StarFunction, x: Fraction) -> Fraction:
    """Exact value of g at a rational point, using the geometric tail x^{n+1}/(1−x).

    Raises:
        BoundsDomainError: If x is outside [0, 1)
    """
    _check_point(x)
    head = sum((x**k for k in range(1, g.n)), Fraction(0))
    return -head + g.gamma * x**g.n + x ** (g.n + 1) / (1 - x)


def _head_slope(n: int, x: Fraction) -> Fraction:
    # d/dx of Σ_{k=1}^{n−1} xᵏ; increasing in x.
    return sum((k * x ** (k - 1) for k in range(1, n)), Fraction(0))


def _tail_slope(n: int, x: Fraction) -> Fraction:
    # d/dx of x^{n+1}/(1−x); increasing in x.
    return ((n + 1) * x**n - n * x ** (n + 1)) / (1 - x) ** 2


def star_derivative(g: StarFunction, x: Fraction) -> Fraction:
    """Exact g′(x)."""
    _check_point(x)
    return -_head_slope(g.n, x) + g.gamma * g.n * x ** (g.n - 1) + _tail_slope(g.n, x)


def _slope_lower_bound(g: StarFunction, a: Fraction, b: Fraction) -> Fraction:
    # Every term of g′ is monotone on [0, 1), so endpoint picks give a bound.
    middle = g.gamma * g.n * (a if g.gamma >= 0 else b) ** (g.n - 1)
    return -_head_slope(g.n, b) + middle + _tail_slope(g.n, a)


def _value_enclosure(g: StarFunction, a: Fraction, b: Fraction) -> Enclosure:
    # min g lies in [a, b]; g ≥ g(a) + (x − a)·min g′ there.
    upper = min(star_eval(g, a), star_eval(g, b))
    lower = star_eval(g, a) + (b - a) * min(Fraction(0), _slope_lower_bound(g, a, b))
    return Enclosure(lo=min(lower, upper), hi=upper)


def star_min(g: StarFunction, tol: Fraction) -> tuple[Enclosure, Enclosure]:
    """Enclose the unique critical point of g on [0, 1) and the minimum value.

    g′ is negative left of the critical point and positive right of it, so
    bisection on the sign of g′ with exact rational evaluations keeps a
    certified bracket.

    Args:
        g: The (*)-function
        tol: Target width of both enclosures

    Returns:
        (x_star, min_value) enclosures, each of width at most tol

    Raises:
        BoundsDomainError: If tol is not positive
    """
    if tol <= 0:
        raise BoundsDomainError("tol", tol, "(0, ∞)")

    zero = Fraction(0)
    if star_derivative(g, zero) >= 0:
        # Only for n = 1 with γ ≥ 0: g is increasing and the minimum sits at 0.
        return Enclosure.point(zero), Enclosure.point(star_eval(g, zero))

    lo = zero
    step = 1
    hi = Fraction(1, 2)
    while (slope := star_derivative(g, hi)) < 0:
        lo = hi
        step += 1
        hi = 1 - Fraction(1, 2**step)
    if slope == 0:
        return Enclosure.point(hi), Enclosure.point(star_eval(g, hi))

    iterations = 0
    value = _value_enclosure(g, lo, hi)
    while hi - lo > tol or value.width > tol:
        mid = (lo + hi) / 2
        slope = star_derivative(g, mid)
        if slope == 0:
            return Enclosure.point(mid), Enclosure.point(star_eval(g, mid))
        if slope < 0:
            lo = mid
        else:
            hi = mid
        value = _value_enclosure(g, lo, hi)
        iterations += 1

    logger.debug(
        "Enclosed (*)-function minimum",
        extra={"n": g.n, "gamma": str(g.gamma), "iterations": iterations},
    )
    return Enclosure(lo=lo, hi=hi), value
