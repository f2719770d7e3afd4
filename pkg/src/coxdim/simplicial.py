"""Finite abstract simplicial complexes, graphs, delta complexes and their constructions.

Vertices are opaque strings. Faces are tuples sorted by the global (Python string)
order on vertex names; every orientation sign in the package derives from it.
"""

from __future__ import annotations

import itertools
import json
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

Face = tuple  # tuple[str, ...], strictly increasing


class Graph:
    """Simple undirected graph: no loops, no parallel edges."""

    def __init__(self, vertices: Iterable[str] = (), edges: Iterable[Sequence[str]] = ()):
        vs = frozenset(vertices)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {u!r}-{v!r} uses an undeclared vertex")
            key = frozenset((u, v))
            if key in es:
                raise ValueError(f"parallel edge {u!r}-{v!r}")
            es.add(key)
        self.vertices = vs
        self.edges = frozenset(es)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> Graph:
        edges = [tuple(e) for e in edges]
        vs = set(vertices)
        for u, v in edges:
            vs.update((u, v))
        return cls(vs, edges)

    @cached_property
    def nx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_edges_from(sorted(tuple(sorted(e)) for e in self.edges))
        return g

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> Graph:
        return cls([str(v) for v in data["vertices"]], [tuple(str(x) for x in e) for e in data["edges"]])


class SimplicialComplex:
    """A finite abstract simplicial complex stored by its maximal faces.

    The full face list is built lazily per dimension and cached. ``faces(-1)`` is
    the empty simplex, present in every complex including the empty one.
    """

    def __init__(self, faces: Iterable[Iterable[str]] = (), vertices: Iterable[str] = ()):
        cands = {tuple(sorted(set(f))) for f in faces}
        for f in cands:
            for v in f:
                if not isinstance(v, str):
                    raise TypeError(f"vertex names must be strings, got {v!r}")
        cands.discard(())
        cands.update((v,) for v in vertices)
        self.maximal_faces: tuple[Face, ...] = _maximal(cands)
        self.vertices: tuple[str, ...] = tuple(sorted({v for f in self.maximal_faces for v in f}))

    @cached_property
    def dim(self) -> int:
        return max((len(f) for f in self.maximal_faces), default=0) - 1

    @cached_property
    def _face_lists(self) -> dict[int, tuple[Face, ...]]:
        by_dim: dict[int, set] = {}
        for mf in self.maximal_faces:
            for k in range(1, len(mf) + 1):
                bucket = by_dim.setdefault(k - 1, set())
                bucket.update(itertools.combinations(mf, k))
        out = {k: tuple(sorted(v)) for k, v in by_dim.items()}
        out[-1] = ((),)
        return out

    def faces(self, k: int) -> tuple[Face, ...]:
        return self._face_lists.get(k, ())

    def all_faces(self, include_empty: bool = False) -> list[Face]:
        out = [f for k in range(self.dim + 1) for f in self.faces(k)]
        return [()] + out if include_empty else out

    @cached_property
    def face_set(self) -> frozenset:
        return frozenset(self.all_faces(include_empty=True))

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim + 1)]

    def __contains__(self, face) -> bool:
        return tuple(sorted(face)) in self.face_set

    def is_subcomplex_of(self, other: SimplicialComplex) -> bool:
        return all(f in other.face_set for f in self.maximal_faces)

    def is_empty(self) -> bool:
        return not self.maximal_faces

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.maximal_faces == other.maximal_faces

    def __hash__(self):
        return hash(self.maximal_faces)

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    def to_json(self) -> dict:
        return {"maximal_faces": [list(f) for f in self.maximal_faces]}

    @classmethod
    def from_json(cls, data: Mapping) -> SimplicialComplex:
        return cls([[str(v) for v in f] for f in data["maximal_faces"]])


def _maximal(faces: Iterable[Face]) -> tuple[Face, ...]:
    kept: list[Face] = []
    by_vertex: dict[str, list[frozenset]] = {}
    for f in sorted(faces, key=lambda f: (-len(f), f)):
        fs = frozenset(f)
        if any(fs <= g for g in by_vertex.get(f[0], ())):
            continue
        kept.append(f)
        for v in f:
            by_vertex.setdefault(v, []).append(fs)
    return tuple(sorted(kept))


def load_json_input(data: Mapping) -> Graph | SimplicialComplex:
    """Graph JSON has ``vertices``/``edges``; complex JSON has ``maximal_faces``."""
    if "maximal_faces" in data:
        return SimplicialComplex.from_json(data)
    if "edges" in data and "vertices" in data:
        return Graph.from_json(data)
    raise ValueError("expected graph JSON (vertices, edges) or complex JSON (maximal_faces)")


def dump_json(obj: Graph | SimplicialComplex) -> str:
    return json.dumps(obj.to_json(), sort_keys=True)


# -- constructions ---------------------------------------------------------------


def flag_complex(g: Graph) -> SimplicialComplex:
    """Clique complex: faces are exactly the cliques of ``g``."""
    return SimplicialComplex(nx.find_cliques(g.nx), vertices=g.vertices)


def one_skeleton(k: SimplicialComplex) -> Graph:
    return Graph(k.vertices, k.faces(1))


def is_flag(k: SimplicialComplex) -> bool:
    return flag_complex(one_skeleton(k)) == k


def full_subcomplex(k: SimplicialComplex, w: Iterable[str]) -> SimplicialComplex:
    """Faces of ``k`` with all vertices in ``w``."""
    w = set(w)
    unknown = w.difference(k.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    out = set()
    for mf in k.maximal_faces:
        f = tuple(v for v in mf if v in w)
        if f:
            out.add(f)
    return SimplicialComplex(out)


def complement(k: SimplicialComplex, sigma: Iterable[str]) -> SimplicialComplex:
    """L minus sigma, taken as the full subcomplex on the remaining vertices."""
    s = set(sigma)
    return full_subcomplex(k, [v for v in k.vertices if v not in s])


def cone(k: SimplicialComplex, apex: str) -> SimplicialComplex:
    if apex in k.vertices:
        raise ValueError(f"apex {apex!r} is already a vertex")
    if k.is_empty():
        return SimplicialComplex([(apex,)])
    return SimplicialComplex([f + (apex,) for f in k.maximal_faces])


def union(*complexes: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(f for c in complexes for f in c.maximal_faces)


def face_name(face: Sequence[str]) -> str:
    """Name of the barycentre of ``face`` in a subdivision."""
    return "<" + "|".join(face) + ">"


def barycentric_subdivision(k: SimplicialComplex) -> tuple[SimplicialComplex, dict[str, Face]]:
    """Order complex of the face poset, plus a map from new vertices to old faces."""
    provenance: dict[str, Face] = {}
    for f in k.all_faces():
        name = face_name(f)
        if name in provenance:
            raise ValueError(f"vertex names make subdivision name {name!r} ambiguous")
        provenance[name] = f
    chains = []
    for mf in k.maximal_faces:
        for perm in itertools.permutations(mf):
            chains.append([face_name(tuple(sorted(perm[: i + 1]))) for i in range(len(perm))])
    return SimplicialComplex(chains), provenance


def connected_components(k: SimplicialComplex | Graph) -> list[list[str]]:
    """Vertex partition by 1-skeleton connectivity, deterministically ordered."""
    g = k if isinstance(k, Graph) else one_skeleton(k)
    comps = [sorted(c) for c in nx.connected_components(g.nx)]
    return sorted(comps)


def is_connected(k: SimplicialComplex | Graph) -> bool:
    return len(connected_components(k)) == 1


# -- delta complexes -------------------------------------------------------------


class DeltaComplex:
    """A semi-simplicial (delta) complex with explicit face maps.

    ``cells[k]`` lists ``(name, faces)`` where ``faces[i]`` is the name of the
    (k-1)-cell obtained by deleting vertex i. Distinct cells may share vertex sets
    and a cell may repeat a vertex, which is what quotients like the pseudo-projective
    plane need before they are subdivided.
    """

    def __init__(self, cells: Sequence[Sequence[tuple[str, Sequence[str]]]]):
        self.names: list[list[str]] = []
        self.faces: list[list[tuple[int, ...]]] = []
        self.index: dict[str, tuple[int, int]] = {}
        for k, level in enumerate(cells):
            names, faces = [], []
            for name, fs in level:
                if name in self.index:
                    raise ValueError(f"duplicate cell name {name!r}")
                fs = tuple(fs)
                if len(fs) != (k + 1 if k else 0):
                    raise ValueError(f"{k}-cell {name!r} needs {k + 1 if k else 0} faces")
                idx = []
                for f in fs:
                    kk, i = self.index.get(f, (None, None))
                    if kk != k - 1:
                        raise ValueError(f"face {f!r} of {name!r} is not a {k - 1}-cell")
                    idx.append(i)
                self.index[name] = (k, len(names))
                names.append(name)
                faces.append(tuple(idx))
            self.names.append(names)
            self.faces.append(faces)
        while self.names and not self.names[-1]:
            self.names.pop()
            self.faces.pop()
        self._check_identities()

    def _check_identities(self):
        # d_i d_j = d_{j-1} d_i for i < j
        for k in range(2, len(self.faces)):
            for c, fs in enumerate(self.faces[k]):
                for j in range(k + 1):
                    for i in range(j):
                        a = self.faces[k - 1][fs[j]][i]
                        b = self.faces[k - 1][fs[i]][j - 1]
                        if a != b:
                            raise ValueError(f"face identities fail on {self.names[k][c]!r}")

    @property
    def dim(self) -> int:
        return len(self.names) - 1

    def n_cells(self, k: int) -> int:
        return len(self.names[k]) if 0 <= k < len(self.names) else 0

    def cell_names(self) -> list[str]:
        return [n for level in self.names for n in level]

    def face_at(self, k: int, cell: int, subset: Sequence[int]) -> tuple[int, int]:
        """The face of a k-cell spanned by the vertex positions in ``subset``."""
        keep = set(subset)
        for j in range(k, -1, -1):
            if j not in keep:
                cell = self.faces[k][cell][j]
                k -= 1
        return k, cell

    def vertices_of(self, k: int, cell: int) -> tuple[int, ...]:
        return tuple(self.face_at(k, cell, (i,))[1] for i in range(k + 1))

    def simplicial_failure(self) -> str | None:
        """Why this is not a simplicial complex, or None if it is one."""
        for k in range(1, self.dim + 1):
            seen = {}
            for c in range(self.n_cells(k)):
                vs = self.vertices_of(k, c)
                if len(set(vs)) != len(vs):
                    return f"cell {self.names[k][c]!r} has a repeated vertex"
                key = frozenset(vs)
                if key in seen:
                    return f"cells {seen[key]!r} and {self.names[k][c]!r} share a vertex set"
                seen[key] = self.names[k][c]
        return None

    def is_simplicial(self) -> bool:
        return self.simplicial_failure() is None

    def to_simplicial(self) -> SimplicialComplex:
        reason = self.simplicial_failure()
        if reason:
            raise ValueError(f"not simplicial: {reason}")
        faces = [
            [self.names[0][v] for v in self.vertices_of(k, c)]
            for k in range(self.dim + 1)
            for c in range(self.n_cells(k))
        ]
        return SimplicialComplex(faces)

    def to_json(self) -> dict:
        return {
            "delta_cells": [
                [{"name": n, "faces": [self.names[k - 1][i] for i in fs] if k else []} for n, fs in zip(self.names[k], self.faces[k])]
                for k in range(self.dim + 1)
            ]
        }

    def __repr__(self):
        return f"DeltaComplex(cells={[len(n) for n in self.names]})"


def delta_barycentric_subdivision(x: DeltaComplex) -> tuple[DeltaComplex, dict[str, str]]:
    """Barycentric subdivision of a delta complex.

    A j-cell of the subdivision is a cell c of ``x`` with a strict chain of vertex
    position sets of c ending at the full set; its vertices are the barycentres of
    the faces along the chain, smallest first. Returns the new complex and a map
    from its vertices to the cells of ``x`` they are barycentres of.
    """
    levels: list[list[tuple[str, list[str]]]] = [[] for _ in range(x.dim + 1)]
    names: dict[tuple, str] = {}

    def key_name(k, c, chain):
        key = (k, c, chain)
        if key not in names:
            if len(chain) == 1:
                names[key] = f"[{x.names[k][c]}]"
            else:
                names[key] = x.names[k][c] + ":" + "<".join("".join(map(str, s)) for s in chain)
        return names[key]

    def canonical(k, c, chain):
        top = chain[-1]
        if len(top) == k + 1:
            return k, c, chain
        kk, cc = x.face_at(k, c, top)
        pos = {v: i for i, v in enumerate(top)}
        return kk, cc, tuple(tuple(pos[v] for v in s) for s in chain)

    for k in range(x.dim + 1):
        full = tuple(range(k + 1))
        for c in range(x.n_cells(k)):
            for chain in _chains_to(full):
                j = len(chain) - 1
                faces = []
                if j:
                    for i in range(j + 1):
                        sub = chain[:i] + chain[i + 1 :]
                        faces.append(key_name(*canonical(k, c, sub)))
                levels[j].append((key_name(k, c, chain), faces))
    provenance = {key_name(k, c, (tuple(range(k + 1)),)): x.names[k][c] for k in range(x.dim + 1) for c in range(x.n_cells(k))}
    return DeltaComplex(levels), provenance


def _chains_to(full: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """Strict chains of nonempty subsets of ``full`` whose top is ``full``, shorter first."""
    out = [(full,)]
    frontier = [(full,)]
    while frontier:
        nxt = []
        for chain in frontier:
            low = chain[0]
            for r in range(1, len(low)):
                for sub in itertools.combinations(low, r):
                    nxt.append((sub,) + chain)
        out.extend(nxt)
        frontier = nxt
    out.sort(key=lambda ch: (len(ch), ch))
    return out
