"""Tensor/Tor arithmetic and a Künneth evaluator for direct products of groups.

Only the top-degree group of each factor's H^*(G, Z[G]) is known; everything
below it is carried as Unknown, optionally with an integer known to annihilate it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd

from .abelian import FgAbelianGroup, lcm

ZERO, KNOWN, UNKNOWN = "zero", "known", "unknown"


def tensor(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    rank = a.rank * b.rank
    tors = list(a.torsion) * b.rank + list(b.torsion) * a.rank
    tors += [gcd(x, y) for x in a.torsion for y in b.torsion]
    return FgAbelianGroup(rank, tuple(tors))


def tor1(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    return FgAbelianGroup(0, tuple(gcd(x, y) for x in a.torsion for y in b.torsion))


@dataclass(frozen=True)
class Entry:
    """One degree of a band: Zero, Known(group), or Unknown killed by ``annihilator``.

    ``annihilator`` 0 means nothing is known. Known(trivial) and Unknown(1) both
    normalize to Zero.
    """

    kind: str
    group: FgAbelianGroup | None = None
    annihilator: int = 0

    @staticmethod
    def zero() -> Entry:
        return Entry(ZERO)

    @staticmethod
    def known(g: FgAbelianGroup) -> Entry:
        return Entry(ZERO) if g.is_trivial() else Entry(KNOWN, g)

    @staticmethod
    def unknown(annihilator: int = 0) -> Entry:
        return Entry(ZERO) if annihilator == 1 else Entry(UNKNOWN, None, abs(annihilator))

    @property
    def is_zero(self) -> bool:
        return self.kind == ZERO

    def killed_by(self) -> int:
        """An integer annihilating the entry (0 if none is known)."""
        if self.kind == ZERO:
            return 1
        if self.kind == KNOWN:
            return self.group.exponent()
        return self.annihilator

    def __str__(self):
        if self.kind == ZERO:
            return "0"
        if self.kind == KNOWN:
            return str(self.group)
        return "?" if self.annihilator == 0 else f"?[{self.annihilator}]"

    def to_json(self):
        out = {"kind": self.kind, "text": str(self)}
        if self.kind == KNOWN:
            out["group"] = self.group.to_json()
        if self.kind == UNKNOWN:
            out["annihilator"] = self.annihilator
        return out


def entry_tensor(x: Entry, y: Entry) -> Entry:
    if x.is_zero or y.is_zero:
        return Entry.zero()
    if x.kind == KNOWN and y.kind == KNOWN:
        return Entry.known(tensor(x.group, y.group))
    # gcd(0, n) = n, so an unbounded entry still inherits the other side's bound
    return Entry.unknown(gcd(x.killed_by(), y.killed_by()))


def entry_tor(x: Entry, y: Entry) -> Entry:
    if x.is_zero or y.is_zero:
        return Entry.zero()
    if x.kind == KNOWN and y.kind == KNOWN:
        return Entry.known(tor1(x.group, y.group))
    # Tor_1 only sees torsion, so a known factor contributes its torsion exponent
    kx = x.group.torsion_exponent() if x.kind == KNOWN else x.annihilator
    ky = y.group.torsion_exponent() if y.kind == KNOWN else y.annihilator
    return Entry.unknown(gcd(kx, ky))


def entry_sum(x: Entry, y: Entry) -> Entry:
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    if x.kind == KNOWN and y.kind == KNOWN:
        return Entry.known(x.group + y.group)
    return Entry.unknown(lcm(x.killed_by(), y.killed_by()))


@dataclass(frozen=True)
class Band:
    """Degree-indexed entries 0..top; everything above ``top`` is Zero."""

    entries: tuple[Entry, ...]

    def __post_init__(self):
        es = list(self.entries)
        while es and es[-1].is_zero:
            es.pop()
        object.__setattr__(self, "entries", tuple(es))

    @classmethod
    def from_top(cls, d: int, top: FgAbelianGroup) -> Band:
        """Known ``top`` in degree d, unknown below."""
        if d < 0:
            raise ValueError("degree must be nonnegative")
        return cls(tuple(Entry.unknown() for _ in range(d)) + (Entry.known(top),))

    @classmethod
    def from_groups(cls, groups) -> Band:
        return cls(tuple(Entry.known(g) for g in groups))

    @property
    def top(self) -> int:
        """Largest degree not certified Zero (-1 for the all-Zero band)."""
        return len(self.entries) - 1

    def __getitem__(self, n: int) -> Entry:
        return self.entries[n] if 0 <= n < len(self.entries) else Entry.zero()

    def is_fully_known(self) -> bool:
        return all(e.kind != UNKNOWN for e in self.entries)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


@lru_cache(maxsize=65536)
def kunneth_step(a: Band, b: Band) -> Band:
    """Degree n: tensor terms with p+q = n plus Tor terms with p+q = n+1 (split sequence)."""
    if a.top < 0 or b.top < 0:
        return Band(())
    out = []
    for n in range(a.top + b.top + 1):
        e = Entry.zero()
        for p in range(max(0, n - b.top), min(n, a.top) + 1):
            e = entry_sum(e, entry_tensor(a[p], b[n - p]))
        for p in range(max(0, n + 1 - b.top), min(n + 1, a.top) + 1):
            e = entry_sum(e, entry_tor(a[p], b[n + 1 - p]))
        out.append(e)
    return Band(tuple(out))


def kunneth_power(a: Band, e: int) -> Band:
    if e < 1:
        raise ValueError("multiplicity must be positive")
    out = a
    for _ in range(e - 1):
        out = kunneth_step(out, a)
    return out


@dataclass(frozen=True)
class FactorProfile:
    """A factor class: top degree d of H^*(G, Z[G]), the group there, and multiplicity e."""

    d: int
    top_group: FgAbelianGroup
    mult: int = 1

    def __post_init__(self):
        if self.d < 1 or self.mult < 1:
            raise ValueError("need d >= 1 and mult >= 1")
        if self.top_group.is_trivial():
            raise ValueError("top group must be nontrivial")

    @classmethod
    def cyclic(cls, d: int, exponent: int, mult: int = 1) -> FactorProfile:
        return cls(d, FgAbelianGroup.cyclic(exponent), mult)

    @classmethod
    def from_json(cls, data: dict) -> FactorProfile:
        if "top_group" in data:
            top = FgAbelianGroup.parse(data["top_group"]) if isinstance(data["top_group"], str) else FgAbelianGroup.from_json(data["top_group"])
        else:
            top = FgAbelianGroup.cyclic(int(data["exponent"]))
        return cls(int(data["d"]), top, int(data.get("mult", 1)))

    def to_json(self) -> dict:
        return {"d": self.d, "top_group": str(self.top_group), "mult": self.mult}

    def band(self) -> Band:
        return _class_band(self.d, self.top_group, self.mult)


@lru_cache(maxsize=None)
def _class_band(d: int, top: FgAbelianGroup, mult: int) -> Band:
    return kunneth_power(Band.from_top(d, top), mult)


@dataclass
class ProductReport:
    regime: str
    bredon_cd: int
    vcd_upper: int
    band_bound: int
    top_group: FgAbelianGroup
    vcd_exact: int | None = None
    band: Band = field(default_factory=lambda: Band(()))

    def to_json(self) -> dict:
        return {
            "regime": self.regime,
            "vcd_upper": self.vcd_upper,
            "vcd_exact": self.vcd_exact,
            "bredon_cd": self.bredon_cd,
            "band_bound": self.band_bound,
            "top_group": self.top_group.to_json(),
            "band": [str(e) for e in self.band.entries],
        }


def _regime(exponents: list[int]) -> str:
    # exponent 0 (a free part) divides nothing away: gcd(0, n) = n
    if len(exponents) == 1 or reduce(gcd, exponents) != 1:
        return "common-divisor"
    if all(gcd(x, y) == 1 for x, y in combinations(exponents, 2)):
        return "coprime"
    return "mixed"


def product_dimension_report(profiles: list[FactorProfile]) -> ProductReport:
    if not profiles:
        raise ValueError("need at least one factor profile")
    total = sum(f.d * f.mult for f in profiles)
    r = len(profiles)
    band = reduce(kunneth_step, (f.band() for f in profiles))
    top = band[total]
    if top.kind == UNKNOWN:
        raise AssertionError("top degree of a product band must be determined")
    top_group = top.group if top.kind == KNOWN else FgAbelianGroup()
    exps = [f.top_group.exponent() for f in profiles]
    regime = _regime(exps)
    if regime == "common-divisor":
        # the tensor of the tops survives in degree total, so vcd is exactly total
        return ProductReport(regime, total, total, band.top, top_group, total, band)
    if regime == "coprime":
        closed = total - r + 1
        if band.top > closed:
            raise AssertionError(f"band certifies only {band.top}, above the closed form {closed}")
        return ProductReport(regime, total, closed, band.top, top_group, None, band)
    return ProductReport(regime, total, band.top, band.top, top_group, None, band)


def free_product_gd(gds: list[int]) -> int:
    """Proper geometric dimension of a free product: max of the factors and 1."""
    if not gds:
        raise ValueError("need at least one factor")
    if any(g < 0 for g in gds):
        raise ValueError("dimensions are nonnegative")
    return reduce(lambda x, y: max(x, y, 1), gds, 1)
