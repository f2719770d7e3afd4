"""The Z_p-complexes behind the groups G_p and the verification of their dimension claims.

Pipeline: the cone P over a p-gon A, its quotient Z (A collapsed along rotation
orbits), a flag triangulation L of Z carrying the rotation action, the fixed
subcomplex L_sing, and the pair (K, K_sing) used for compactly supported
cohomology of the Davis complex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .abelian import FgAbelianGroup
from .homology import (
    cohomology,
    cohomology_groups,
    delta_cohomology_groups,
    relative_cohomology,
)
from .racg import RacgCertificate, rigidity_certificate
from .simplicial import (
    DeltaComplex,
    SimplicialComplex,
    barycentric_subdivision,
    cone,
    delta_barycentric_subdivision,
    full_subcomplex,
    is_flag,
    union,
)

log = logging.getLogger(__name__)

APEX = "apex"
TRIANGULATIONS = ("nosquare", "barycentric")


class InsufficientSubdivisionError(ValueError):
    """Raised when k subdivisions do not yet give a simplicial flag complex."""

    def __init__(self, k: int, check: str, detail: str = ""):
        self.k = k
        self.check = check
        msg = f"insufficient subdivision: {check} fails after {k} subdivision(s)"
        super().__init__(msg + (f" ({detail})" if detail else ""))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def require_odd_prime(p: int):
    if not isinstance(p, int) or p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p!r}")


@dataclass(frozen=True)
class GroupAction:
    """Z_p acting through a generator given as a permutation of vertex (or cell) names."""

    order: int
    generator: dict[str, str]

    def __post_init__(self):
        if sorted(self.generator) != sorted(self.generator.values()):
            raise ValueError("generator is not a permutation")
        if self.order < 1:
            raise ValueError("order must be positive")
        for x in self.generator:
            y = x
            for _ in range(self.order):
                y = self.generator[y]
            if y != x:
                raise ValueError(f"generator does not have order dividing {self.order}")

    def apply(self, x: str) -> str:
        return self.generator[x]

    def orbit(self, x: str) -> list[str]:
        out = [x]
        y = self.generator[x]
        while y != x:
            out.append(y)
            y = self.generator[y]
        return out

    def is_simplicial_on(self, k: SimplicialComplex) -> bool:
        faces = k.face_set
        return all(tuple(sorted(self.generator[v] for v in f)) in faces for f in k.maximal_faces)


@dataclass(frozen=True)
class EquivariantComplex:
    complex: SimplicialComplex | DeltaComplex
    action: GroupAction
    subdivisions: int = 0

    def __post_init__(self):
        names = (
            set(self.complex.vertices)
            if isinstance(self.complex, SimplicialComplex)
            else set(self.complex.cell_names())
        )
        if set(self.action.generator) != names:
            raise ValueError("action must permute exactly the vertices (or cells) of the complex")
        if isinstance(self.complex, SimplicialComplex) and not self.action.is_simplicial_on(self.complex):
            raise ValueError("action does not map faces to faces")


# -- the quotient Z ----------------------------------------------------------------


def _cone_cells(p: int) -> list[list[tuple[str, list[str]]]]:
    """Cone P over the p-gon: apex c, boundary vertices a0.., spokes, boundary edges, triangles."""
    verts = [("c", [])] + [(f"a{i}", []) for i in range(p)]
    edges = [(f"s{i}", [f"a{i}", "c"]) for i in range(p)]
    edges += [(f"e{i}", [f"a{(i + 1) % p}", f"a{i}"]) for i in range(p)]
    tris = [(f"T{i}", [f"e{i}", f"s{(i + 1) % p}", f"s{i}"]) for i in range(p)]
    return [verts, edges, tris]


def _rotation(p: int) -> dict[str, str]:
    rot = {"c": "c"}
    for i in range(p):
        j = (i + 1) % p
        rot.update({f"a{i}": f"a{j}", f"s{i}": f"s{j}", f"e{i}": f"e{j}", f"T{i}": f"T{j}"})
    return rot


def build_quotient_Z(p: int) -> EquivariantComplex:
    """Z = P with the points of the p-gon A identified along rotation orbits.

    Only cells of A are glued; each orbit becomes one cell named after its
    smallest member. The residual Z_p action permutes the spokes and triangles
    of the cone and fixes the apex and the circle A/Z_p.
    """
    require_odd_prime(p)
    cells = _cone_cells(p)
    rot = _rotation(p)
    boundary = {f"a{i}" for i in range(p)} | {f"e{i}" for i in range(p)}
    rep = {}
    for level in cells:
        for name, _ in level:
            if name in boundary:
                orbit = GroupAction(p, rot).orbit(name)
                rep[name] = min(orbit, key=_cell_key)
            else:
                rep[name] = name
    quotient = []
    for level in cells:
        out, seen = [], set()
        for name, faces in level:
            r = rep[name]
            if r in seen:
                continue
            seen.add(r)
            out.append((r, [rep[f] for f in faces]))
        quotient.append(out)
    z = DeltaComplex(quotient)
    gen = {n: rep[rot[n]] for n in z.cell_names()}
    return EquivariantComplex(z, GroupAction(p, gen))


def _cell_key(name: str):
    return (name[0], int(name[1:]))


def _subdivide_action(action: GroupAction, x: DeltaComplex, sub: DeltaComplex) -> GroupAction:
    """Transport a cell permutation through a barycentric subdivision.

    New cells are (old cell, chain of vertex positions); the action moves the old
    cell and keeps the chain. This is well defined because the action preserves
    face maps.
    """
    gen = {}
    for name in sub.cell_names():
        if name.endswith("]"):
            gen[name] = "[" + action.apply(name[1:-1]) + "]"
        else:
            old, _, chain = name.rpartition(":")
            gen[name] = action.apply(old) + ":" + chain
    return GroupAction(action.order, gen)


def subdivide(ec: EquivariantComplex) -> EquivariantComplex:
    """One equivariant barycentric subdivision (delta level)."""
    x = ec.complex
    if isinstance(x, SimplicialComplex):
        sd, prov = barycentric_subdivision(x)
        gen = {v: _face_image(ec.action, prov[v]) for v in sd.vertices}
        return EquivariantComplex(sd, GroupAction(ec.action.order, gen), ec.subdivisions + 1)
    sub, _ = delta_barycentric_subdivision(x)
    return EquivariantComplex(sub, _subdivide_action(ec.action, x, sub), ec.subdivisions + 1)


def _face_image(action: GroupAction, face) -> str:
    return "<" + "|".join(sorted(action.apply(v) for v in face)) + ">"


def promote(ec: EquivariantComplex) -> EquivariantComplex:
    """Turn a simplicial delta complex into a SimplicialComplex; the action is restricted to vertices."""
    x = ec.complex
    if isinstance(x, SimplicialComplex):
        return ec
    k = x.to_simplicial()
    gen = {v: ec.action.apply(v) for v in k.vertices}
    return EquivariantComplex(k, GroupAction(ec.action.order, gen), ec.subdivisions)


def build_L(p: int, k: int = 3) -> EquivariantComplex:
    """k equivariant barycentric subdivisions of Z, checked to be a simplicial flag complex."""
    require_odd_prime(p)
    if k < 1:
        raise ValueError("need at least one subdivision")
    ec = build_quotient_Z(p)
    for _ in range(k):
        ec = subdivide(ec)
    reason = ec.complex.simplicial_failure()
    if reason:
        raise InsufficientSubdivisionError(k, "simplicial", reason)
    ec = promote(ec)
    if not is_flag(ec.complex):
        raise InsufficientSubdivisionError(k, "flag")
    return ec


# -- a square-free flag triangulation of Z -------------------------------------------


def _cap_label(j: int, a: int, b: int, m: int) -> str:
    """Vertex of wedge j at lattice point (a, b) of the cap around the pole."""
    l = a + b
    if l == 0:
        return "pole"
    q = ((j + 1) * l) % (m * l) if a == 0 else j * l + b
    return f"c{l}_{q}"


def build_L_nosquare(p: int, frequency: int = 3, collar: int = 1) -> EquivariantComplex:
    """A flag triangulation of Z with no induced 4-cycle in its 1-skeleton.

    Z is a disk with its boundary circle wrapped p times around a circle. The disk
    is triangulated as m = 2p wedges of a triangular lattice around the pole
    (``frequency`` rows per wedge) followed by a strip of ``collar`` rows whose
    outer row, of length m * frequency, is then identified under rotation by two
    wedges. Interior vertices have degree at least 5, so no 4-cycle lacks a
    diagonal once the parameters are large enough; the checkers decide.
    The rotation by two wedges generates the Z_p action, fixing the pole and the
    identified outer circle.
    """
    require_odd_prime(p)
    if frequency < 1 or collar < 1:
        raise ValueError("frequency and collar must be positive")
    m, n, h = 2 * p, frequency, collar
    ring = m * n
    tris = []
    for j in range(m):
        for a in range(n):
            for b in range(n - a):
                tris.append((_cap_label(j, a, b, m), _cap_label(j, a + 1, b, m), _cap_label(j, a, b + 1, m)))
                if a + b <= n - 2:
                    tris.append((_cap_label(j, a + 1, b, m), _cap_label(j, a, b + 1, m), _cap_label(j, a + 1, b + 1, m)))

    def strip(k, i):
        i %= ring
        if k == 0:
            return f"c{n}_{i}"
        if k == h:
            i %= 2 * n
        return f"r{k}_{i}"

    for k in range(h):
        for i in range(ring):
            tris.append((strip(k, i), strip(k, i + 1), strip(k + 1, i)))
            tris.append((strip(k, i + 1), strip(k + 1, i + 1), strip(k + 1, i)))
    faces = {tuple(sorted(t)) for t in tris}
    for t in faces:
        if len(set(t)) < 3:
            raise InsufficientSubdivisionError(0, "simplicial", f"degenerate triangle {t}")
    l = SimplicialComplex(faces)

    def rotate(v):
        if v == "pole":
            return v
        if v.startswith("c"):
            lv, q = (int(s) for s in v[1:].split("_"))
            return f"c{lv}_{(q + 2 * lv) % (m * lv)}"
        kv, i = (int(s) for s in v[1:].split("_"))
        mod = 2 * n if kv == h else ring
        return f"r{kv}_{(i + 2 * n) % mod}"

    gen = {v: rotate(v) for v in l.vertices}
    ec = EquivariantComplex(l, GroupAction(p, gen))
    if not is_flag(l):
        raise InsufficientSubdivisionError(0, "flag", "increase frequency or collar")
    return ec


# -- singular set, K and K_sing ------------------------------------------------------


def fixed_subcomplex(ec: EquivariantComplex) -> SimplicialComplex:
    """Full subcomplex on the vertices fixed by the generator.

    A point has nontrivial stabilizer iff its carrier face is fixed setwise. When
    every setwise-fixed face is fixed pointwise (always true after a subdivision)
    this is the full subcomplex on the fixed vertices; otherwise an error is raised.
    """
    k = ec.complex
    if not isinstance(k, SimplicialComplex):
        raise ValueError("fixed_subcomplex needs a simplicial complex")
    g = ec.action.apply
    for f in k.all_faces():
        if len(f) > 1 and sorted(g(v) for v in f) == list(f) and any(g(v) != v for v in f):
            raise ValueError(f"face {f} is fixed but not pointwise; subdivide once more")
    fixed = [v for v in k.vertices if g(v) == v]
    return full_subcomplex(k, fixed)


@dataclass(frozen=True)
class KPair:
    """K = C(L') and K_sing = L' with the cone on L'_sing attached, sharing one apex."""

    l_prime: SimplicialComplex
    l_prime_sing: SimplicialComplex
    k: SimplicialComplex
    k_sing: SimplicialComplex
    apex: str = APEX


def build_K_sing(l: SimplicialComplex, l_sing: SimplicialComplex, apex: str = APEX) -> KPair:
    if not l_sing.is_subcomplex_of(l):
        raise ValueError("l_sing is not a subcomplex of l")
    l_prime, prov = barycentric_subdivision(l)
    sing_faces = l_sing.face_set
    sing_verts = [v for v in l_prime.vertices if prov[v] in sing_faces]
    l_prime_sing = full_subcomplex(l_prime, sing_verts)
    k = cone(l_prime, apex)
    k_sing = union(l_prime, cone(l_prime_sing, apex))
    k_sing = SimplicialComplex(k_sing.maximal_faces, vertices=list(l_prime.vertices) + [apex])
    if not k_sing.is_subcomplex_of(k):
        raise AssertionError("K_sing must embed in K")
    return KPair(l_prime, l_prime_sing, k, k_sing, apex)


# -- verification --------------------------------------------------------------------


@dataclass
class GpReport:
    p: int
    triangulation: str
    subdivisions: int | None
    f_vector: list[int]
    certificate: RacgCertificate
    h1_Z: FgAbelianGroup
    h2_Z: FgAbelianGroup
    h1_L: FgAbelianGroup
    h2_L: FgAbelianGroup
    h0_Lsing: FgAbelianGroup
    h1_Lsing: FgAbelianGroup
    h2_Ksing: FgAbelianGroup
    relative_h3: FgAbelianGroup
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def to_json(self) -> dict:
        groups = ("h1_Z", "h2_Z", "h1_L", "h2_L", "h0_Lsing", "h1_Lsing", "h2_Ksing", "relative_h3")
        return {
            "p": self.p,
            "triangulation": self.triangulation,
            "subdivisions": self.subdivisions,
            "f_vector": self.f_vector,
            "certificate": self.certificate.to_json(),
            **{g: getattr(self, g).to_json() for g in groups},
            "checks": dict(self.checks),
            "verdict": self.verdict,
        }


def build_stages(p: int, triangulation: str = "nosquare", subdivisions: int = 3, frequency: int = 3, collar: int = 1):
    """All intermediate objects: Z, L (equivariant), L_sing and the K pair."""
    z = build_quotient_Z(p)
    if triangulation == "barycentric":
        l_ec = build_L(p, subdivisions)
    elif triangulation == "nosquare":
        l_ec = build_L_nosquare(p, frequency, collar)
    else:
        raise ValueError(f"unknown triangulation {triangulation!r}")
    l_sing = fixed_subcomplex(l_ec)
    pair = build_K_sing(l_ec.complex, l_sing)
    return z, l_ec, l_sing, pair


def verify_Gp(
    p: int,
    subdivisions: int = 3,
    triangulation: str = "nosquare",
    frequency: int = 3,
    collar: int = 1,
    threads: int = 1,
) -> GpReport:
    require_odd_prime(p)
    z, l_ec, l_sing, pair = build_stages(p, triangulation, subdivisions, frequency, collar)
    l = l_ec.complex
    log.info("L has f-vector %s", l.f_vector())
    hz = delta_cohomology_groups(z.complex)
    cert = rigidity_certificate(l, threads)
    hl = cohomology_groups(l)
    hs = cohomology_groups(l_sing)
    h2_ksing = cohomology(pair.k_sing, 2)
    rel3 = relative_cohomology(pair.k, pair.k_sing, 3)
    zp = FgAbelianGroup.cyclic(p)
    report = GpReport(
        p=p,
        triangulation=triangulation,
        subdivisions=subdivisions if triangulation == "barycentric" else None,
        f_vector=l.f_vector(),
        certificate=cert,
        h1_Z=hz.get(1, FgAbelianGroup()),
        h2_Z=hz.get(2, FgAbelianGroup()),
        h1_L=hl.get(1, FgAbelianGroup()),
        h2_L=cohomology(l, 2, reduced=True),
        h0_Lsing=hs.get(0, FgAbelianGroup()),
        h1_Lsing=hs.get(1, FgAbelianGroup()),
        h2_Ksing=h2_ksing,
        relative_h3=rel3,
    )
    report.checks = {
        **{f"condition_{name}": ok for name, ok in cert.conditions().items()},
        "dimension_rigid": cert.dimension_rigid,
        "H1(Z) = 0": report.h1_Z.is_trivial(),
        "H2(Z) = Z/p": report.h2_Z == zp,
        "reduced H2(L) = Z/p": report.h2_L == zp,
        "H1(L) = 0": report.h1_L.is_trivial(),
        "H0(L_sing) = Z^2": report.h0_Lsing == FgAbelianGroup.free(2),
        "H1(L_sing) = Z": report.h1_Lsing == FgAbelianGroup.free(1),
        "rank H2(K_sing) >= rank H1(L_sing) - rank H1(L)": h2_ksing.rank >= report.h1_Lsing.rank - report.h1_L.rank,
        "rank H2(K_sing) >= 1": h2_ksing.rank >= 1,
        "H3(K, K_sing) = H2(K_sing)": rel3 == h2_ksing,
        "vcd = 3": cert.vcd == 3,
        "H3(W, ZW) = Z/p": cert.top_group_ring_cohomology == zp,
    }
    return report
