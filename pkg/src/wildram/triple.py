"""The (e, f, g) triple shared by the classifier and the oracle."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["EfgTriple"]


@dataclass(frozen=True, order=True)
class EfgTriple:
    """Ramification index, residue degree and number of primes above 2."""

    e: int
    f: int
    g: int

    def __post_init__(self):
        if self.e not in (1, 2, 4, 8) or self.f not in (1, 2) or self.g not in (1, 2, 4):
            raise ValueError(f"impossible triple {self.as_tuple()}")

    @property
    def degree(self) -> int:
        return self.e * self.f * self.g

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.e, self.f, self.g)

    def __str__(self) -> str:
        return f"({self.e},{self.f},{self.g})"
