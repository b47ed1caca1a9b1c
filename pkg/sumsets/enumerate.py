"""Scaled-integer enumeration of the partial sumsets Σₙ = Σ + qΣ + ... + qⁿ⁻¹Σ."""
from __future__ import annotations

import logging
from collections.abc import Iterator
from fractions import Fraction

import numpy as np
from pydantic import ConfigDict
from pydantic.dataclasses import dataclass

from core.config import EnumerationBudgetError, get_settings
from models.sigma import FiniteSigma

logger = logging.getLogger(__name__)

# Largest magnitude kept in int64 arrays; beyond it values become Python ints.
INT64_SAFE = 1 << 62

DigitString = tuple[Fraction, ...]


class ExactRatioRequiredError(ValueError):
    """Exception raised when enumeration is asked for a non-rational ratio."""


@dataclass(frozen=True, config=ConfigDict(arbitrary_types_allowed=True))
class ScaledSumset:
    """Σₙ stored as sorted distinct integers: Σₙ = values / scale.

    Attributes:
        depth: n
        values: Sorted distinct integers (int64 or Python ints)
        scale: den(q)**(n-1) * lcm of digit denominators
    """

    depth: int
    values: np.ndarray
    scale: int

    @property
    def cardinality(self) -> int:
        """|Σₙ|."""
        return len(self.values)

    def to_sigma(self) -> FiniteSigma:
        """Exact rationals of Σₙ as a digit set."""
        return FiniteSigma.of(Fraction(int(value), self.scale) for value in self.values)


def _check_ratio(q: object) -> Fraction:
    if not isinstance(q, Fraction):
        raise ExactRatioRequiredError(
            f"Sumset enumeration needs an exact rational ratio, got {type(q).__name__}"
        )
    if not 0 < q < 1:
        raise ValueError(f"Ratio must lie in (0, 1), got {q}")
    return q


class SumsetEnumerator:
    """Builds Σ₁, Σ₂, ... in scaled integers, reusing Σₙ to build Σₙ₊₁.

    Σₙ₊₁ = den(q)·Σₙ ⊕ num(q)ⁿ·Σ after scaling, so every level is an outer sum
    of the previous level with the digit vector, deduplicated by sorting.
    """

    def __init__(
        self,
        sigma: FiniteSigma,
        q: Fraction,
        max_elements: int | None = None,
        keep_history: bool = False,
    ) -> None:
        """Initialize the enumerator at depth 0.

        Args:
            sigma: The digit set
            q: Exact ratio in (0, 1)
            max_elements: Cap on |Σₙ|·|Σ| before the next level; defaults to settings
            keep_history: Keep every level so collisions can be traced to digit strings
        """
        self.sigma = sigma
        self.q = _check_ratio(q)
        self.p = q.numerator
        self.r = q.denominator
        self.max_elements = max_elements or get_settings().max_sumset_elements
        self.keep_history = keep_history

        self.lcm = sigma.common_denominator
        self.digits = [int(value * self.lcm) for value in sigma.elements]
        self._max_abs_digit = max(abs(digit) for digit in self.digits)
        self._bound = 0
        self._current: ScaledSumset | None = None
        self.history: list[ScaledSumset] = []
        self.first_collision_depth: int | None = None
        self._collision_pair: tuple[tuple[int, int], tuple[int, int]] | None = None

    @property
    def current(self) -> ScaledSumset | None:
        """The deepest level built so far."""
        return self._current

    def _array(self, values: list[int], bound: int) -> np.ndarray:
        dtype = np.int64 if bound < INT64_SAFE else object
        return np.array(values, dtype=dtype)

    def step(self) -> ScaledSumset:
        """Build the next level.

        Returns:
            The new level Σₙ₊₁

        Raises:
            EnumerationBudgetError: If the projected size exceeds the cap
        """
        if self._current is None:
            self._bound = self._max_abs_digit
            values = self._array(sorted(set(self.digits)), self._bound)
            level = ScaledSumset(depth=1, values=values, scale=self.lcm)
            return self._advance(level)

        current = self._current
        projected = current.cardinality * len(self.digits)
        if projected > self.max_elements:
            logger.warning(
                "Sumset enumeration budget exceeded",
                extra={"depth": current.depth, "projected": projected},
            )
            raise EnumerationBudgetError(
                "sigma_n", projected, self.max_elements, depth_reached=current.depth
            )

        shift = self.p**current.depth
        self._bound = self.r * self._bound + shift * self._max_abs_digit
        if self._bound >= INT64_SAFE and current.values.dtype != object:
            previous = current.values.astype(object)
        else:
            previous = current.values
        digits = self._array(self.digits, self._bound)
        if digits.dtype != previous.dtype:
            digits = digits.astype(previous.dtype)

        sums = np.add.outer(previous * self.r, digits * shift).ravel()
        values = np.unique(sums)
        if self.first_collision_depth is None and len(values) < len(sums):
            self.first_collision_depth = current.depth + 1
            if self.keep_history:
                self._collision_pair = _first_duplicate(sums, len(self.digits))

        level = ScaledSumset(
            depth=current.depth + 1,
            values=values,
            scale=self.lcm * self.r**current.depth,
        )
        return self._advance(level)

    def _advance(self, level: ScaledSumset) -> ScaledSumset:
        self._current = level
        if self.keep_history:
            self.history.append(level)
        logger.debug(
            "Built sumset level",
            extra={"depth": level.depth, "cardinality": level.cardinality},
        )
        return level

    def levels(self, max_depth: int) -> Iterator[ScaledSumset]:
        """Yield Σ₁, ..., Σ_max_depth, building each level on demand."""
        while self._current is None or self._current.depth < max_depth:
            yield self.step()

    def first_collision(self) -> tuple[DigitString, DigitString] | None:
        """Two distinct digit strings with equal value at the first collision depth.

        Requires ``keep_history``. The pair is ordered lexicographically.
        """
        if not self.keep_history:
            raise RuntimeError("Collision tracing needs keep_history=True")
        depth = self.first_collision_depth
        if self._collision_pair is None or depth is None:
            return None
        parent = self.history[depth - 2]
        strings = []
        for parent_index, digit_index in self._collision_pair:
            prefix = self._digit_string(depth - 1, int(parent.values[parent_index]))
            strings.append(prefix + (self.sigma.elements[digit_index],))
        left, right = sorted(strings)
        return left, right

    def _digit_string(self, depth: int, value: int) -> DigitString:
        # value = r·y + p**(depth-1)·a with y in the level below.
        if depth == 1:
            return (self.sigma.elements[self.digits.index(value)],)
        below = {int(item) for item in self.history[depth - 2].values.tolist()}
        shift = self.p ** (depth - 1)
        for index, digit in enumerate(self.digits):
            rest = value - shift * digit
            if rest % self.r == 0 and rest // self.r in below:
                return self._digit_string(depth - 1, rest // self.r) + (
                    self.sigma.elements[index],
                )
        raise RuntimeError(f"Value {value} has no representation at depth {depth}")


def _first_duplicate(
    sums: np.ndarray, width: int
) -> tuple[tuple[int, int], tuple[int, int]]:
    # Smallest repeated value; positions decode as (parent index, digit index).
    order = np.argsort(sums, kind="stable")
    ordered = sums[order]
    repeats = np.flatnonzero(ordered[1:] == ordered[:-1])
    first = int(repeats[0])
    left = divmod(int(order[first]), width)
    right = divmod(int(order[first + 1]), width)
    return left, right


def sigma_n(sigma: FiniteSigma, q: Fraction, n: int) -> FiniteSigma:
    """Exact Σₙ = {Σ_{i<n} aᵢqⁱ : aᵢ ∈ Σ}.

    Args:
        sigma: The digit set
        q: Exact ratio in (0, 1)
        n: Depth, at least 1

    Returns:
        The sorted distinct sums as a digit set

    Raises:
        ExactRatioRequiredError: If q is not an exact rational
        EnumerationBudgetError: If the projected size exceeds the configured cap
    """
    if n < 1:
        raise ValueError(f"Depth must be at least 1, got {n}")
    enumerator = SumsetEnumerator(sigma, q)
    level = enumerator.step()
    while level.depth < n:
        level = enumerator.step()
    return level.to_sigma()
