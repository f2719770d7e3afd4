"""Properties of the right-angled Coxeter group W_L read off its nerve L.

Every check works on the defining graph or its flag complex; nothing here touches
group elements.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

from .abelian import FgAbelianGroup
from .homology import cohomology, cohomology_groups
from .parallel import pmap
from .simplicial import (
    Graph,
    SimplicialComplex,
    complement,
    is_connected,
    is_flag,
    one_skeleton,
)

HYPOTHESIS_FAILED = "hypothesis-failed"

# exhaustive Davis scans beyond this many simplices must be asked for explicitly
DAVIS_SCAN_LIMIT = 4000


def find_induced_square(g: Graph) -> tuple[str, str, str, str] | None:
    """A 4-cycle a-b-c-d with neither diagonal, or None."""
    adj = g.adjacency
    for x in sorted(g.vertices):
        nbrs = sorted(adj[x])
        for u, w in combinations(nbrs, 2):
            if w in adj[u]:
                continue
            for y in sorted(adj[u] & adj[w]):
                if y != x and y not in adj[x]:
                    return (u, x, w, y)
    return None


def check_hyperbolic(g: Graph) -> bool:
    """Every 4-cycle has a diagonal (no induced square)."""
    return find_induced_square(g) is None


def check_no_dominating_vertex(g: Graph) -> bool:
    n = len(g.vertices)
    return all(len(g.adjacency[v]) != n - 1 for v in g.vertices)


def check_star_complements(g: Graph) -> bool:
    """For each s, the graph on V minus the closed star of s is nonempty and connected."""
    for s in g.vertices:
        rest = g.vertices - g.adjacency[s] - {s}
        if not rest:
            return False
        sub = Graph(rest, [tuple(e) for e in g.edges if e <= rest])
        if not is_connected(sub):
            return False
    return True


def check_maximal_cover(l: SimplicialComplex) -> bool:
    """Every non-maximal nonempty simplex lies in at least two maximal simplices."""
    count: dict[tuple, int] = {}
    maximal = set(l.maximal_faces)
    for mf in l.maximal_faces:
        for k in range(1, len(mf)):
            for f in combinations(mf, k):
                count[f] = count.get(f, 0) + 1
    return all(n >= 2 for f, n in count.items() if f not in maximal)


def _require_flag(l: SimplicialComplex):
    if not is_flag(l):
        raise ValueError("expected a flag complex")


def check_one_ended(l: SimplicialComplex) -> bool:
    """L is connected and L minus sigma is connected for every simplex sigma."""
    _require_flag(l)
    g = one_skeleton(l)
    adj = g.adjacency
    for sigma in l.all_faces(include_empty=True):
        rest = set(l.vertices).difference(sigma)
        if not rest or not _connected_within(adj, rest):
            return False
    return True


def _connected_within(adj, verts: set) -> bool:
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def _complement_top(args) -> FgAbelianGroup:
    l, sigma, d = args
    return cohomology(complement(l, sigma), d, reduced=True)


def _complement_all(args) -> dict[int, FgAbelianGroup]:
    l, sigma = args
    return cohomology_groups(complement(l, sigma), reduced=True)


def top_vertex_scan(l: SimplicialComplex, threads: int = 1) -> dict[str, FgAbelianGroup]:
    """Reduced H^d of L minus v for each vertex v, d = dim L."""
    d = l.dim
    groups = pmap(_complement_top, [(l, (v,), d) for v in l.vertices], threads)
    return dict(zip(l.vertices, groups))


def vcd_davis(l: SimplicialComplex, threads: int = 1, exhaustive: bool = False, limit: int = DAVIS_SCAN_LIMIT) -> int:
    """vcd(W_L) = max over sigma (including the empty simplex) of 1 + top degree with H^n(L - sigma) != 0.

    Restriction of top-degree cochains is onto, so a nonzero H^d(L - sigma) forces a
    nonzero H^d(L - v) for each vertex v of sigma; the top degree therefore only
    needs L itself and the vertex complements. Lower degrees need the full scan.
    """
    _require_flag(l)
    if l.is_empty():
        return 0
    d = l.dim
    if not exhaustive:
        if not cohomology(l, d, reduced=True).is_trivial():
            return d + 1
        if any(not g.is_trivial() for g in top_vertex_scan(l, threads).values()):
            return d + 1
    faces = l.all_faces(include_empty=True)
    if len(faces) > limit:
        raise ValueError(f"Davis scan over {len(faces)} simplices exceeds limit {limit}")
    best = 0
    tables = pmap(_complement_all, [(l, sigma) for sigma in faces], threads)
    for table in tables:
        for n, g in table.items():
            if not g.is_trivial():
                best = max(best, n + 1)
    return best


def top_group_ring_cohomology(l: SimplicialComplex, threads: int = 1, exhaustive: bool = False):
    """H^{d+1}(W, Z[W]) = reduced H^d(L) when H^d(L - sigma) = 0 for all nonempty sigma.

    Returns ``HYPOTHESIS_FAILED`` when some complement has nonzero top cohomology.
    By default only vertex complements are scanned (they dominate, see
    ``vcd_davis``); ``exhaustive`` scans every simplex.
    """
    _require_flag(l)
    d = l.dim
    if exhaustive:
        sigmas = [f for f in l.all_faces()]
        groups = pmap(_complement_top, [(l, s, d) for s in sigmas], threads)
    else:
        groups = list(top_vertex_scan(l, threads).values())
    if any(not g.is_trivial() for g in groups):
        return HYPOTHESIS_FAILED
    return cohomology(l, d, reduced=True)


@dataclass(frozen=True)
class RacgCertificate:
    hyperbolic: bool
    one_ended: bool
    no_dominating_vertex: bool
    star_complements_connected: bool
    maximal_cover: bool
    flag: bool
    connected: bool
    dimension: int
    top_reduced_cohomology: FgAbelianGroup
    vcd: int
    top_group_ring_cohomology: FgAbelianGroup | str
    dimension_rigid: bool

    def conditions(self) -> dict[str, bool]:
        """The six graph conditions."""
        return {
            "hyperbolic": self.hyperbolic,
            "one_ended": self.one_ended,
            "no_dominating_vertex": self.no_dominating_vertex,
            "star_complements_connected": self.star_complements_connected,
            "maximal_cover": self.maximal_cover,
            "flag": self.flag,
        }

    def to_json(self) -> dict:
        out = asdict(self)
        out["top_reduced_cohomology"] = self.top_reduced_cohomology.to_json()
        tg = self.top_group_ring_cohomology
        out["top_group_ring_cohomology"] = tg if isinstance(tg, str) else tg.to_json()
        return out


def dimension_rigid(flag: bool, connected: bool, no_dominating: bool, star_complements: bool, maximal_cover: bool, top: FgAbelianGroup) -> bool:
    return flag and connected and no_dominating and star_complements and maximal_cover and not top.is_trivial()


def rigidity_certificate(l: SimplicialComplex, threads: int = 1) -> RacgCertificate:
    _require_flag(l)
    g = one_skeleton(l)
    connected = is_connected(g)
    no_dom = check_no_dominating_vertex(g)
    stars = check_star_complements(g)
    cover = check_maximal_cover(l)
    top = cohomology(l, l.dim, reduced=True)
    return RacgCertificate(
        hyperbolic=check_hyperbolic(g),
        one_ended=check_one_ended(l),
        no_dominating_vertex=no_dom,
        star_complements_connected=stars,
        maximal_cover=cover,
        flag=True,
        connected=connected,
        dimension=l.dim,
        top_reduced_cohomology=top,
        vcd=vcd_davis(l, threads),
        top_group_ring_cohomology=top_group_ring_cohomology(l, threads),
        dimension_rigid=dimension_rigid(True, connected, no_dom, stars, cover, top),
    )
