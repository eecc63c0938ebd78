"""Product domains: a disk of radius r1 times a disk of radius r2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .exact import _to_fraction


@dataclass(frozen=True)
class ProductDomain:
    """Product of two centered disks in C^2 with exact rational radii."""

    r1: Fraction = Fraction(1)
    r2: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r1", _to_fraction(self.r1))
        object.__setattr__(self, "r2", _to_fraction(self.r2))
        if self.r1 <= 0 or self.r2 <= 0:
            raise ValueError("disk radii must be positive")

    @property
    def diameter(self) -> float:
        """Euclidean diameter, attained across opposite corner points."""
        return 2.0 * sqrt(float(self.r1) ** 2 + float(self.r2) ** 2)

    @property
    def is_unit_bidisk(self) -> bool:
        return self.r1 == 1 and self.r2 == 1

    def radius(self, coordinate: str) -> Fraction:
        if coordinate == "z":
            return self.r1
        if coordinate == "w":
            return self.r2
        raise ValueError(f"unknown coordinate {coordinate!r}")


UNIT_BIDISK = ProductDomain(Fraction(1), Fraction(1))
