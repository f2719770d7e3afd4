"""Integer cochain complexes, sparse Smith normal form, simplicial cohomology."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .abelian import FgAbelianGroup, invariant_factors
from .simplicial import DeltaComplex, SimplicialComplex


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> IntegerMatrix:
        n = len(rows)
        m = len(rows[0]) if n else 0
        return cls(n, m, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict[int, int]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        out: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, {}).items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return IntegerMatrix(self.rows, other.cols, out)

    def nnz(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class SnfResult:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""

    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)


def smith_normal_form(m: IntegerMatrix) -> SnfResult:
    """Invariant factors by sparse elimination.

    Unit pivots go first, cheapest column (fewest entries) first, which turns free
    faces of a coboundary matrix into fill-free eliminations. Whatever is left has
    no unit entries and is finished by gcd-reducing row and column operations.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    units = _eliminate_units(rows, cols)
    rest = _eliminate_general(rows, cols)
    return SnfResult((1,) * units + _normalize(rest))


def _normalize(diagonal: list[int]) -> tuple[int, ...]:
    factors = invariant_factors(diagonal)
    return (1,) * (len(diagonal) - len(factors)) + factors


def _add_row(rows, cols, dst: int, src: dict[int, int], f: int, touched=None):
    """row[dst] += f * src."""
    if not f:
        return
    drow = rows[dst]
    for c, v in src.items():
        nv = drow.get(c, 0) + f * v
        if nv:
            if c not in drow:
                cols[c].add(dst)
            drow[c] = nv
        else:
            del drow[c]
            cols[c].discard(dst)
        if touched is not None:
            touched.add(c)


def _eliminate_units(rows, cols) -> int:
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    count = 0
    while heap:
        n, c = heapq.heappop(heap)
        s = cols.get(c)
        if not s:
            cols.pop(c, None)
            continue
        if len(s) != n:
            heapq.heappush(heap, (len(s), c))
            continue
        best = None
        for r in s:
            v = rows[r][c]
            if v == 1 or v == -1:
                key = (len(rows[r]), r)
                if best is None or key < best[0]:
                    best = (key, r, v)
        if best is None:
            continue  # revisited only if a later elimination touches it
        _, r, u = best
        prow = rows.pop(r)
        for c2 in prow:
            cols[c2].discard(r)
        touched: set[int] = set()
        for r2 in list(cols[c]):
            _add_row(rows, cols, r2, prow, -rows[r2][c] * u, touched)
            if not rows[r2]:
                del rows[r2]
        cols.pop(c, None)
        touched.discard(c)
        for c2 in touched:
            s2 = cols.get(c2)
            if s2:
                heapq.heappush(heap, (len(s2), c2))
        count += 1
    for c in [c for c, s in cols.items() if not s]:
        del cols[c]
    return count


def _eliminate_general(rows, cols) -> list[int]:
    diag: list[int] = []
    while rows:
        r, c, v = min(((r, c, v) for r, row in rows.items() for c, v in row.items()), key=lambda t: (abs(t[2]), t[0], t[1]))
        while True:
            done = True
            for r2 in sorted(cols[c] - {r}):
                q = rows[r2][c] // v
                _add_row(rows, cols, r2, rows[r], -q)
                if rows[r2].get(c):
                    done = False
            for c2 in sorted(set(rows[r]) - {c}):
                q = rows[r][c2] // v
                _add_col(rows, cols, c2, c, -q)
                if rows[r].get(c2):
                    done = False
            for rr in [rr for rr, row in rows.items() if not row]:
                del rows[rr]
            if done:
                break
            # a smaller remainder appeared in row r or column c: pivot on it instead
            cands = [(abs(rows[r2][c]), r2, c) for r2 in cols[c]] + [(abs(w), r, c2) for c2, w in rows[r].items()]
            _, r, c = min(cands)
            v = rows[r][c]
        diag.append(abs(v))
        del rows[r]
        cols[c].discard(r)
        del cols[c]
        for c2 in [c2 for c2, s in cols.items() if not s]:
            del cols[c2]
    return diag


def _add_col(rows, cols, dst: int, src: int, f: int):
    """col[dst] += f * col[src]."""
    if not f:
        return
    for r in list(cols[src]):
        row = rows[r]
        nv = row.get(dst, 0) + f * row[src]
        if nv:
            if dst not in row:
                cols.setdefault(dst, set()).add(r)
            row[dst] = nv
        else:
            row.pop(dst, None)
            cols[dst].discard(r)


# -- cochain complexes -----------------------------------------------------------


def coboundary_matrix(
    k: SimplicialComplex, n: int, augmented: bool = False, exclude: frozenset | set = frozenset()
) -> IntegerMatrix:
    """delta^n : C^n -> C^{n+1}; rows are (n+1)-faces, columns n-faces (sorted order).

    Entry (sigma, tau) is (-1)^i when tau is sigma with its i-th vertex removed.
    Faces in ``exclude`` are dropped from both sides (relative cochains).
    """
    if n < -1 or (n == -1 and not augmented):
        return IntegerMatrix(len(_cells(k, n + 1, augmented, exclude)), 0)
    src = _cells(k, n, augmented, exclude)
    dst = _cells(k, n + 1, augmented, exclude)
    index = {f: i for i, f in enumerate(src)}
    entries = {}
    for r, sigma in enumerate(dst):
        for i in range(len(sigma)):
            tau = sigma[:i] + sigma[i + 1 :]
            c = index.get(tau)
            if c is not None:
                entries[(r, c)] = -1 if i % 2 else 1
    return IntegerMatrix(len(dst), len(src), entries)


def _cells(k: SimplicialComplex, n: int, augmented: bool, exclude) -> list:
    if n < -1 or (n == -1 and not augmented):
        return []
    fs = k.faces(n)
    return [f for f in fs if f not in exclude] if exclude else list(fs)


def _group(c_n: int, rank_out: int, snf_in: SnfResult | None) -> FgAbelianGroup:
    rank_in = snf_in.rank if snf_in else 0
    torsion = snf_in.torsion() if snf_in else ()
    return FgAbelianGroup(c_n - rank_out - rank_in, torsion)


def _cohomology_of(sizes: Mapping[int, int], coboundaries: Mapping[int, IntegerMatrix], degrees) -> dict[int, FgAbelianGroup]:
    snf = {}

    def get(n):
        if n not in snf:
            m = coboundaries.get(n)
            snf[n] = smith_normal_form(m) if m is not None and m.nnz() else SnfResult(())
        return snf[n]

    out = {}
    for n in degrees:
        c_n = sizes.get(n, 0)
        if c_n == 0:
            out[n] = FgAbelianGroup()
            continue
        out[n] = _group(c_n, get(n).rank, get(n - 1))
    return out


def cohomology_groups(k: SimplicialComplex, reduced: bool = False) -> dict[int, FgAbelianGroup]:
    """All cohomology groups H^n (or reduced), n from -1 (reduced) or 0 up to dim."""
    lo = -1 if reduced else 0
    degrees = range(lo, k.dim + 1)
    sizes = {n: len(_cells(k, n, reduced, ())) for n in range(lo, k.dim + 2)}
    cob = {n: coboundary_matrix(k, n, augmented=reduced) for n in range(lo, k.dim + 1)}
    return _cohomology_of(sizes, cob, degrees)


def cohomology(k: SimplicialComplex, n: int, reduced: bool = False) -> FgAbelianGroup:
    """H^n(k; Z), or reduced H^n with H^{-1}(empty) = Z."""
    if n < -1 or (n == -1 and not reduced) or n > k.dim:
        return FgAbelianGroup()
    sizes = {m: len(_cells(k, m, reduced, ())) for m in (n - 1, n, n + 1)}
    cob = {m: coboundary_matrix(k, m, augmented=reduced) for m in (n - 1, n)}
    return _cohomology_of(sizes, cob, [n])[n]


def relative_cohomology_groups(k: SimplicialComplex, a: SimplicialComplex) -> dict[int, FgAbelianGroup]:
    if not a.is_subcomplex_of(k):
        raise ValueError("relative cohomology needs a subcomplex")
    excl = a.face_set
    sizes = {n: len(_cells(k, n, False, excl)) for n in range(0, k.dim + 2)}
    cob = {n: coboundary_matrix(k, n, exclude=excl) for n in range(0, k.dim + 1)}
    return _cohomology_of(sizes, cob, range(0, k.dim + 1))


def relative_cohomology(k: SimplicialComplex, a: SimplicialComplex, n: int) -> FgAbelianGroup:
    """H^n(k, a; Z) from cochains of k vanishing on a."""
    if not a.is_subcomplex_of(k):
        raise ValueError("relative cohomology needs a subcomplex")
    if n < 0 or n > k.dim:
        return FgAbelianGroup()
    excl = a.face_set
    sizes = {m: len(_cells(k, m, False, excl)) for m in (n - 1, n, n + 1)}
    cob = {m: coboundary_matrix(k, m, exclude=excl) for m in (n - 1, n) if m >= 0}
    return _cohomology_of(sizes, cob, [n])[n]


def betti_numbers(k: SimplicialComplex) -> list[int]:
    return [g.rank for n, g in sorted(cohomology_groups(k).items())]


def delta_coboundary_matrix(x: DeltaComplex, n: int) -> IntegerMatrix:
    """Coboundary of a delta complex, summing signs over repeated faces."""
    if n < 0 or n >= x.dim:
        return IntegerMatrix(x.n_cells(n + 1), x.n_cells(n))
    entries: dict[tuple[int, int], int] = {}
    for r, fs in enumerate(x.faces[n + 1]):
        for i, c in enumerate(fs):
            entries[(r, c)] = entries.get((r, c), 0) + (-1 if i % 2 else 1)
    return IntegerMatrix(x.n_cells(n + 1), x.n_cells(n), entries)


def delta_cohomology_groups(x: DeltaComplex) -> dict[int, FgAbelianGroup]:
    sizes = {n: x.n_cells(n) for n in range(0, x.dim + 2)}
    cob = {n: delta_coboundary_matrix(x, n) for n in range(0, x.dim + 1)}
    return _cohomology_of(sizes, cob, range(0, x.dim + 1))
