import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from coxdim.abelian import FgAbelianGroup, invariant_factors
from coxdim.homology import (
    IntegerMatrix,
    betti_numbers,
    coboundary_matrix,
    cohomology,
    cohomology_groups,
    relative_cohomology,
    relative_cohomology_groups,
    smith_normal_form,
)
from coxdim.simplicial import SimplicialComplex, barycentric_subdivision, cone, full_subcomplex

from corpus import complexes, cx, cycle, disk, named_corpus, random_complex, rp2, simplex, sphere2


def rational_rank(rows):
    """Rank by Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def oracle_betti(k):
    """Betti numbers from ranks over Q of the coboundaries."""
    out = []
    for n in range(k.dim + 1):
        c_n = len(k.faces(n))
        d_n = coboundary_matrix(k, n).to_dense() if n < k.dim else []
        d_prev = coboundary_matrix(k, n - 1).to_dense() if n > 0 else []
        r_n = rational_rank(d_n) if d_n else 0
        r_prev = rational_rank(d_prev) if d_prev else 0
        out.append(c_n - r_n - r_prev)
    return out


# -- abelian groups ----------------------------------------------------------------


def test_invariant_factors_canonical():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([1, 1]) == ()
    with pytest.raises(ValueError):
        invariant_factors([0])


@given(st.lists(st.integers(1, 60), max_size=6))
def test_invariant_factors_chain_and_order(orders):
    fs = invariant_factors(orders)
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))
    prod = 1
    for o in orders:
        prod *= o
    out = 1
    for f in fs:
        out *= f
    assert out == prod


@given(st.integers(0, 4), st.lists(st.integers(2, 50), max_size=4))
def test_group_text_round_trip(rank, tors):
    g = FgAbelianGroup(rank, tuple(tors))
    assert FgAbelianGroup.parse(str(g)) == g
    assert FgAbelianGroup.from_json(g.to_json()) == g


def test_group_format():
    assert str(FgAbelianGroup(1, (3,))) == "Z^1 + Z/3"
    assert str(FgAbelianGroup()) == "0"


# -- Smith normal form -------------------------------------------------------------


def test_snf_examples():
    assert smith_normal_form(IntegerMatrix.from_dense([[1, 0], [0, 1]])).divisors == (1, 1)
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 0], [0, 3]])).divisors == (1, 6)
    zero = smith_normal_form(IntegerMatrix(3, 4))
    assert zero.divisors == () and zero.rank == 0


def random_sparse(rng, max_dim=60, density=0.15, bound=5):
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    entries = {(r, c): rng.randint(-bound, bound) for r in range(rows) for c in range(cols) if rng.random() < density}
    return IntegerMatrix(rows, cols, entries)


def test_snf_rank_matches_rational_rank_on_500_matrices():
    rng = random.Random(20261018)
    for _ in range(500):
        m = random_sparse(rng)
        res = smith_normal_form(m)
        assert res.rank == rational_rank(m.to_dense())
        assert all(b % a == 0 for a, b in zip(res.divisors, res.divisors[1:]))
        assert res.rank <= min(m.rows, m.cols)


def test_snf_matches_sympy():
    rng = random.Random(7)
    for _ in range(80):
        m = random_sparse(rng, max_dim=8, density=0.5, bound=9)
        ours = smith_normal_form(m).divisors
        theirs = tuple(abs(int(d)) for d in sympy_invariant_factors(Matrix(m.to_dense()), domain=ZZ) if d)
        assert ours == theirs


@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=1, max_size=5))
def test_snf_matches_sympy_property(rows):
    m = IntegerMatrix.from_dense(rows)
    theirs = tuple(abs(int(d)) for d in sympy_invariant_factors(Matrix(rows), domain=ZZ) if d)
    assert smith_normal_form(m).divisors == theirs


def test_snf_big_entries_do_not_overflow():
    big = 2**80 + 1
    m = IntegerMatrix.from_dense([[big, 0], [0, big * 3]])
    assert smith_normal_form(m).divisors == (big, 3 * big)


# -- coboundaries and cohomology ---------------------------------------------------


def test_coboundary_examples():
    tri = cycle(3)
    d0 = coboundary_matrix(tri, 0).to_dense()
    assert len(d0) == 3 and all(sorted(r) == [-1, 0, 1] for r in d0)
    aug = coboundary_matrix(simplex(1), -1, augmented=True).to_dense()
    assert aug == [[1], [1]]


@given(complexes())
def test_coboundary_squares_to_zero(k):
    for n in range(-1, k.dim):
        a = coboundary_matrix(k, n, augmented=True)
        b = coboundary_matrix(k, n + 1, augmented=True)
        assert (b @ a).nnz() == 0


def test_known_cohomology():
    assert cohomology(sphere2(), 2, reduced=True) == FgAbelianGroup.free(1)
    assert cohomology(rp2(), 2, reduced=True) == FgAbelianGroup.cyclic(2)
    assert cohomology(rp2(), 1) == FgAbelianGroup()
    assert cohomology(SimplicialComplex(), -1, reduced=True) == FgAbelianGroup.free(1)
    assert cohomology(SimplicialComplex(), 0, reduced=True).is_trivial()
    assert cohomology(sphere2(), 5).is_trivial()
    t = named_corpus()["torus7"]
    assert cohomology_groups(t) == {0: FgAbelianGroup(1), 1: FgAbelianGroup(2), 2: FgAbelianGroup(1)}


def test_betti_against_rational_oracle_on_corpus():
    for name, k in named_corpus().items():
        if not k.is_empty():
            assert betti_numbers(k) == oracle_betti(k), name


@given(complexes())
def test_euler_characteristic(k):
    chi_cells = sum((-1) ** n * c for n, c in enumerate(k.f_vector()))
    chi_betti = sum((-1) ** n * b for n, b in enumerate(betti_numbers(k)))
    assert chi_cells == chi_betti


def test_subdivision_invariance_on_corpus():
    for name, k in named_corpus().items():
        sd, _ = barycentric_subdivision(k)
        assert cohomology_groups(sd, reduced=True) == cohomology_groups(k, reduced=True), name


# -- relative cohomology -----------------------------------------------------------


def test_relative_examples():
    k = rp2()
    assert relative_cohomology(k, SimplicialComplex(), 2) == cohomology(k, 2)
    d = disk()
    boundary = full_subcomplex(d, [v for v in d.vertices if v != "c"])
    assert relative_cohomology(d, boundary, 2) == FgAbelianGroup.free(1)
    with pytest.raises(ValueError):
        relative_cohomology(d, cx(("zz",)), 1)


def _rank_alternation(k, a):
    rel = relative_cohomology_groups(k, a)
    hk = cohomology_groups(k)
    ha = cohomology_groups(a)
    total = 0
    for n in range(k.dim + 1):
        r = rel[n].rank - hk[n].rank + (ha[n].rank if n in ha else 0)
        total += (-1) ** n * r
    return total


@given(complexes(), st.data())
def test_long_exact_sequence_rank_consistency(k, data):
    w = data.draw(st.sets(st.sampled_from(k.vertices)))
    a = full_subcomplex(k, w)
    assert _rank_alternation(k, a) == 0


def test_relative_of_cone_pair_shifts_degree():
    k = rp2()
    c = cone(k, "apex")
    # C(k) is acyclic, so H^{n+1}(C(k), k) = reduced H^n(k)
    assert relative_cohomology(c, k, 3) == cohomology(k, 2, reduced=True)


def test_random_complexes_betti_oracle():
    rng = random.Random(3)
    for _ in range(40):
        k = random_complex(rng)
        assert betti_numbers(k) == oracle_betti(k)
