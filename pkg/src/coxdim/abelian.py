"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return a // gcd(a, b) * b


def invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Canonical invariant factors d_1 | d_2 | ... (all >= 2) of a finite sum of cyclic groups.

    ``orders`` are the orders of the cyclic summands; entries of absolute value 1
    are dropped. Zero is rejected since Z/0 is free and belongs in the rank.
    """
    ds = []
    for d in orders:
        d = abs(int(d))
        if d == 0:
            raise ValueError("Z/0 is free; count it in the rank instead")
        if d > 1:
            ds.append(d)
    ds.sort()
    k = len(ds)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = ds[i], ds[j]
            g = gcd(a, b)
            ds[i], ds[j] = g, a // g * b
    return tuple(d for d in ds if d > 1)


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """Z^rank + Z/d_1 + ... + Z/d_k with d_1 | ... | d_k, each d_i >= 2."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    @classmethod
    def free(cls, rank: int) -> FgAbelianGroup:
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> FgAbelianGroup:
        """Z/n, with Z/0 = Z."""
        return cls(1, ()) if n == 0 else cls(0, (n,))

    @classmethod
    def trivial(cls) -> FgAbelianGroup:
        return cls(0, ())

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def torsion_exponent(self) -> int:
        """Exponent of the torsion subgroup (1 if torsion-free)."""
        e = 1
        for d in self.torsion:
            e = lcm(e, d)
        return e

    def exponent(self) -> int:
        """Smallest n >= 1 killing the group, or 0 if there is a free part."""
        return 0 if self.rank else self.torsion_exponent()

    def order(self) -> int | None:
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __add__(self, other: FgAbelianGroup) -> FgAbelianGroup:
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return FgAbelianGroup(self.rank + other.rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> FgAbelianGroup:
        """Direct sum of k copies."""
        return FgAbelianGroup(self.rank * k, self.torsion * k)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "text": str(self)}

    @classmethod
    def from_json(cls, data: dict) -> FgAbelianGroup:
        return cls(int(data.get("rank", 0)), tuple(int(t) for t in data.get("torsion", ())))

    @classmethod
    def parse(cls, text: str) -> FgAbelianGroup:
        """Inverse of ``str``: accepts e.g. ``"Z^2 + Z/3"``, ``"Z"``, ``"0"``."""
        text = text.strip()
        if text in ("0", ""):
            return cls()
        rank = 0
        torsion = []
        for part in text.split("+"):
            part = part.strip()
            if part.startswith("Z/"):
                torsion.append(int(part[2:]))
            elif part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
        return cls(rank, tuple(torsion))


def direct_sum(groups: Iterable[FgAbelianGroup]) -> FgAbelianGroup:
    out = FgAbelianGroup()
    for g in groups:
        out = out + g
    return out
