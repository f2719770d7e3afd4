"""Quotient trees of free splittings and the dimension bounds they give for Out and Aut.

A quotient tree has special vertices 1..r (one per free factor) and unlabeled
trivial vertices. In a minimal splitting every vertex of degree 1 or 2 is special,
so trivial vertices have degree at least 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .product import FactorProfile, product_dimension_report


@dataclass(frozen=True)
class QuotientTree:
    """Vertices 1..r are special, r+1..r+t trivial; edges as sorted pairs."""

    r: int
    n_trivial: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.r + self.n_trivial
        if len(self.edges) != n - 1:
            raise ValueError("a tree on n vertices has n - 1 edges")
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise ValueError(f"bad edge {(a, b)}")
            ra, rb = find(a), find(b)
            if ra == rb:
                raise ValueError("edges contain a cycle")
            parent[ra] = rb
        deg = self.degrees()
        for v in range(self.r + 1, n + 1):
            if deg[v] < 3:
                raise ValueError(f"trivial vertex {v} has degree {deg[v]} < 3")

    @property
    def vertices(self) -> range:
        return range(1, self.r + self.n_trivial + 1)

    def is_special(self, v: int) -> bool:
        return v <= self.r

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.r + self.n_trivial + 1)}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def degree_vector(self) -> tuple[int, ...]:
        deg = self.degrees()
        return tuple(deg[i] for i in range(1, self.r + 1))

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def canonical_code(self) -> str:
        """Isomorphism invariant fixing special labels: the tree rooted at vertex 1."""
        adj = self.adjacency()

        def code(v, parent):
            kids = sorted(code(w, v) for w in adj[v] if w != parent)
            return ("*" if v > self.r else str(v)) + "(" + ",".join(kids) + ")"

        return code(1, None)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "trivial_vertices": self.n_trivial,
            "edges": [list(e) for e in self.edges],
            "degree_vector": list(self.degree_vector()),
            "code": self.canonical_code(),
        }


def set_partitions(items: tuple):
    """All partitions of ``items`` into nonempty blocks; the block holding items[0] comes first."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    n = len(rest)
    for mask in range(1 << n):
        block = (first,) + tuple(rest[i] for i in range(n) if mask >> i & 1)
        others = tuple(rest[i] for i in range(n) if not mask >> i & 1)
        for tail in set_partitions(others):
            yield (block,) + tail


@lru_cache(maxsize=None)
def _hanging(labels: tuple[int, ...]) -> tuple:
    """Rooted subtrees whose special labels are exactly ``labels``.

    A subtree is (root, children) with root a special label or None for a trivial
    vertex. A trivial root also has a parent edge, so it needs at least two children.
    """
    out = []
    for y in labels:
        rest = tuple(x for x in labels if x != y)
        for part in set_partitions(rest):
            out.extend((y, kids) for kids in _children(part))
    if len(labels) >= 2:
        for part in set_partitions(labels):
            if len(part) >= 2:
                out.extend((None, kids) for kids in _children(part))
    return tuple(out)


def _children(part: tuple) -> list[tuple]:
    combos: list[tuple] = [()]
    for block in part:
        combos = [c + (s,) for c in combos for s in _hanging(block)]
    return combos


def _flatten(r: int, root: tuple) -> QuotientTree:
    edges = []
    counter = [r]

    def walk(node) -> int:
        label, kids = node
        if label is None:
            counter[0] += 1
            v = counter[0]
        else:
            v = label
        for kid in kids:
            w = walk(kid)
            edges.append((min(v, w), max(v, w)))
        return v

    walk(root)
    return QuotientTree(r, counter[0] - r, tuple(sorted(edges)))


def iter_trees(r: int):
    """Yield every quotient tree for r special vertices exactly once, up to isomorphism."""
    if r < 2:
        raise ValueError("need at least two special vertices")
    for part in set_partitions(tuple(range(2, r + 1))):
        for kids in _children(part):
            yield _flatten(r, (1, kids))


def enumerate_trees(r: int) -> list[QuotientTree]:
    return sorted(iter_trees(r), key=lambda t: (t.n_trivial, t.edges))


@dataclass(frozen=True)
class SpineCellBound:
    degree_vector: tuple[int, ...]
    edge_count: int
    forest_edges: int
    forest_components: int
    max_cell_dim: int


def cell_bound(t: QuotientTree) -> SpineCellBound:
    trivial = set(range(t.r + 1, t.r + t.n_trivial + 1))
    forest = [e for e in t.edges if e[0] in trivial and e[1] in trivial]
    # a forest has (vertices - edges) components
    c = len(trivial) - len(forest)
    e = len(t.edges)
    if e != len(forest) + c + t.r - 1:
        raise AssertionError(f"tree contraction identity fails on {t.edges}")
    dim = e - t.r + 1
    if dim != len(forest) + c:
        raise AssertionError("cell dimension bound disagrees with the forest count")
    return SpineCellBound(t.degree_vector(), e, len(forest), c, dim)


@dataclass
class StabReport:
    r: int
    trees: int
    violations: list[QuotientTree]
    equality_cases: list[QuotientTree]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "trees": self.trees,
            "violations": [t.to_json() for t in self.violations],
            "equality_cases": len(self.equality_cases),
            "equality_examples": [t.to_json() for t in self.equality_cases[:3]],
        }


def verify_stab_bound(r: int) -> StabReport:
    """Check sum of special degrees + max cell dimension <= 2r - 2 on every tree."""
    count = 0
    bad, tight = [], []
    for t in iter_trees(r):
        count += 1
        b = cell_bound(t)
        total = sum(b.degree_vector) + b.max_cell_dim
        if total > 2 * r - 2:
            bad.append(t)
        elif total == 2 * r - 2:
            tight.append(t)
    return StabReport(r, count, bad, tight)


@dataclass(frozen=True)
class StabilizerShape:
    degree_vector: tuple[int, ...]
    subgroup: str
    vcd_upper: int
    bredon_cd: int


def odd_primes(k: int) -> list[int]:
    out, n = [], 3
    while len(out) < k:
        if all(n % q for q in out if q * q <= n):
            out.append(n)
        n += 2
    return out


def default_profiles(r: int, d: int = 3) -> list[FactorProfile]:
    """r factors of top dimension d with pairwise coprime top groups Z/3, Z/5, Z/7, ..."""
    return [FactorProfile.cyclic(d, q) for q in odd_primes(r)]


@lru_cache(maxsize=None)
def _stab_numbers(profiles: tuple[FactorProfile, ...], degs: tuple[int, ...]) -> tuple[int, int]:
    classes = [FactorProfile(f.d, f.top_group, k) for f, k in zip(profiles, degs)]
    rep = product_dimension_report(classes)
    return rep.vcd_upper, rep.bredon_cd


def stabilizer_shape(t: QuotientTree, profiles: list[FactorProfile]) -> StabilizerShape:
    """The stabilizer is virtually the product of G_i^{deg_i}; its dimensions via the Künneth bounds."""
    if len(profiles) != t.r:
        raise ValueError(f"tree has {t.r} special vertices but {len(profiles)} profiles were given")
    degs = t.degree_vector()
    vcd, bredon = _stab_numbers(tuple(profiles), degs)
    subgroup = " x ".join(f"G{i + 1}^{k}" for i, k in enumerate(degs))
    return StabilizerShape(degs, subgroup, vcd, bredon)


# -- signatures: the per-tree data the bounds depend on ---------------------------------


def _merge(acc: dict, part_sigs: dict) -> dict:
    out: dict = {}
    for (d1, t1), n1 in acc.items():
        for (d2, t2), n2 in part_sigs.items():
            key = (d1 + d2, t1 + t2)
            out[key] = out.get(key, 0) + n1 * n2
    return out


@lru_cache(maxsize=None)
def _hanging_sigs(labels: tuple[int, ...]) -> dict:
    """Counts of hanging subtrees on ``labels`` by (label degrees incl. the parent edge, trivial count).

    Mirrors ``_hanging`` but keeps only the signature, so shapes sharing one are
    never built individually. Degrees are listed as (label, degree) pairs.
    """
    out: dict = {}
    for y in labels:
        rest = tuple(x for x in labels if x != y)
        for part in set_partitions(rest):
            acc = {(((y, 1 + len(part)),), 0): 1}
            for block in part:
                acc = _merge(acc, _hanging_sigs(block))
            for k, n in acc.items():
                out[k] = out.get(k, 0) + n
    if len(labels) >= 2:
        for part in set_partitions(labels):
            if len(part) < 2:
                continue
            acc = {((), 1): 1}
            for block in part:
                acc = _merge(acc, _hanging_sigs(block))
            for k, n in acc.items():
                out[k] = out.get(k, 0) + n
    return out


def tree_signatures(r: int) -> dict[tuple[tuple[int, ...], int], int]:
    """Number of quotient trees with each (degree vector, trivial vertex count)."""
    if r < 2:
        raise ValueError("need at least two special vertices")
    raw: dict = {}
    for part in set_partitions(tuple(range(2, r + 1))):
        acc = {(((1, len(part)),), 0): 1}
        for block in part:
            acc = _merge(acc, _hanging_sigs(block))
        for k, n in acc.items():
            raw[k] = raw.get(k, 0) + n
    out: dict = {}
    for (pairs, t), n in raw.items():
        key = (tuple(d for _, d in sorted(pairs)), t)
        out[key] = out.get(key, 0) + n
    return out


def enumerated_signatures(r: int) -> dict[tuple[tuple[int, ...], int], int]:
    """Same table as ``tree_signatures``, by walking every tree."""
    out: dict = {}
    for t in iter_trees(r):
        key = (t.degree_vector(), t.n_trivial)
        out[key] = out.get(key, 0) + 1
    return out


@dataclass(frozen=True)
class OutBounds:
    r: int
    vcd_upper: int
    bredon_cd_lower: int
    trees: int
    vcd_witness: tuple[tuple[int, ...], int]
    bredon_witness: tuple[tuple[int, ...], int]

    @property
    def gap(self) -> int:
        return self.bredon_cd_lower - self.vcd_upper

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "vcd_upper": self.vcd_upper,
            "bredon_cd_lower": self.bredon_cd_lower,
            "gap": self.gap,
            "trees": self.trees,
            "vcd_witness": {"degree_vector": list(self.vcd_witness[0]), "cell_dim": self.vcd_witness[1]},
            "bredon_witness": {"degree_vector": list(self.bredon_witness[0]), "cell_dim": self.bredon_witness[1]},
        }


def out_dimension_bounds(r: int, profiles: list[FactorProfile] | None = None, exhaustive: bool = False) -> OutBounds:
    """Max over trees of (stabilizer vcd bound + cell dimension), and max stabilizer cd.

    Both depend on a tree only through its degree vector and its number of trivial
    vertices (which equals |E| - r + 1), so the maximum runs over the signature
    table. ``exhaustive`` builds that table by walking every tree instead.
    """
    profiles = profiles if profiles is not None else default_profiles(r)
    if len(profiles) != r:
        raise ValueError("need one profile per factor")
    table = enumerated_signatures(r) if exhaustive else tree_signatures(r)
    best_v, best_b = None, None
    for key in sorted(table):
        degs, dim = key
        vcd, bredon = _stab_numbers(tuple(profiles), degs)
        if best_v is None or vcd + dim > best_v[0]:
            best_v = (vcd + dim, key)
        if best_b is None or bredon > best_b[0]:
            best_b = (bredon, key)
    return OutBounds(r, best_v[0], best_b[0], sum(table.values()), best_v[1], best_b[1])


@dataclass(frozen=True)
class AutBounds:
    factors: int
    vcd_upper: int
    cd_lower: int

    def to_json(self) -> dict:
        return {"factors": self.factors, "vcd_upper": self.vcd_upper, "cd_lower": self.cd_lower, "gap": self.cd_lower - self.vcd_upper}


def aut_dimension_bounds(factors: int, profiles: list[FactorProfile] | None = None) -> AutBounds:
    """vcd(Aut) <= vcd(G) + vcd(Out) and cd(Aut) >= cd of the Out lower-bound stabilizer.

    The free product G has vcd equal to the largest factor vcd.
    """
    profiles = profiles if profiles is not None else default_profiles(factors)
    out = out_dimension_bounds(factors, profiles)
    vcd_g = max(f.d for f in profiles)
    return AutBounds(factors, vcd_g + out.vcd_upper, out.bredon_cd_lower)


def tree_count(r: int) -> int:
    return sum(tree_signatures(r).values())

