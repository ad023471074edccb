import random

import pytest
from hypothesis import given, settings, strategies as st

from matbetti.generators import random_represented_matrix
from matbetti.linalg import Matrix
from matbetti.matroid import RepresentedMatroid, beta_invariant, matroid_of, minors_at
from matbetti.presentation import NotGenericError, Presentation, fiber_structure, lcm_lattice


def matroid_from_seed(seed, max_cols=5, max_rows=3):
    rng = random.Random(seed)
    A = random_represented_matrix(rng, max_cols=max_cols, max_rows=max_rows)
    return RepresentedMatroid([f"e{k}" for k in range(A.ncols)], A)


seeds = st.integers(0, 100_000)


def test_module_matroid(module):
    M = matroid_of(module)
    assert M.rank() == 2
    assert M.are_parallel("a", "b")
    assert not M.are_parallel("a", "c")
    assert frozenset("ab") in M.circuits()
    assert not M.loops()


def test_monomial_ideal_matroid(J_three):
    M = matroid_of(J_three)
    assert M.rank() == 1
    assert all(M.are_parallel(x, y) for x in M.ground for y in M.ground)


def test_free_matroid():
    M = RepresentedMatroid("xyz", Matrix.identity(3))
    assert len(M.independent_sets()) == 8
    assert M.circuits() == []
    assert M.hyperplanes() == [frozenset("xy"), frozenset("xz"), frozenset("yz")]


def test_parallel_class():
    M = RepresentedMatroid([1, 2, 3], Matrix([[1, 2, -1]]))
    assert M.hyperplanes() == [frozenset()]
    assert set(M.circuits()) == {frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})}
    assert beta_invariant(M) == 1


def test_loops_and_closure():
    M = RepresentedMatroid("abc", Matrix([[1, 0, 1], [0, 0, 1]]))
    assert M.loops() == {"b"}
    assert M.closure("") == {"b"}
    assert M.closure("a") == {"a", "b"}
    assert M.is_flat("ab") and not M.is_flat("a")
    assert beta_invariant(M) == 0


def test_rank_zero_has_no_hyperplanes():
    M = RepresentedMatroid("ab", Matrix.zeros(1, 2))
    assert M.hyperplanes() == []


def test_empty_matroid_beta():
    assert beta_invariant(RepresentedMatroid([], Matrix.zeros(1, 0))) == 0


def test_restrict_whole_ground(module):
    M = matroid_of(module)
    R = M.restrict(M.ground)
    assert all(R.rank(J) == M.rank(J) for J in M.subsets())


def test_contract_module_matroid(module):
    N = matroid_of(module).contract("abc")
    assert N.rank() == 1
    assert not N.loops()
    assert N.are_parallel("a", "b") and N.are_parallel("a", "c")


def test_minors_examples(module):
    mp = minors_at(module, (3, 3, 3))
    assert mp.i_of_alpha == {"d"}
    assert mp.m_lower.rank() == 1
    assert beta_invariant(mp.m_lower) == 1
    mp = minors_at(module, (3, 2, 3))
    assert mp.i_of_alpha == frozenset()
    assert mp.m_lower.rank() == mp.m_upper.rank() == 2
    assert beta_invariant(mp.m_lower) == 1


def test_minors_refuse_non_generic(J_four):
    with pytest.raises(NotGenericError):
        minors_at(J_four, (3, 3, 2))


def test_monomial_interval_minor_is_parallel_class():
    P = Presentation.from_monomial_ideal([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    for alpha in lcm_lattice(P):
        fs = fiber_structure(P, alpha)
        assert fs.i_lower == fs.i_upper
        mp = minors_at(P, alpha)
        assert mp.m_lower.rank() == 1
        assert not mp.m_lower.loops()


@settings(max_examples=50, deadline=None)
@given(seeds, st.randoms(use_true_random=False))
def test_rank_axioms(seed, rnd):
    M = matroid_from_seed(seed)
    X = frozenset(x for x in M.ground if rnd.random() < 0.5)
    Y = frozenset(x for x in M.ground if rnd.random() < 0.5)
    assert 0 <= M.rank(X) <= len(X)
    assert M.rank(X & Y) <= M.rank(X) <= M.rank(X | Y)
    assert M.rank(X | Y) + M.rank(X & Y) <= M.rank(X) + M.rank(Y)
    assert M.rank(M.closure(X)) == M.rank(X)
    assert M.closure(M.closure(X)) == M.closure(X)


@settings(max_examples=40, deadline=None)
@given(seeds, st.randoms(use_true_random=False))
def test_restriction_and_contraction_ranks(seed, rnd):
    M = matroid_from_seed(seed)
    J = frozenset(x for x in M.ground if rnd.random() < 0.6)
    rest = frozenset(M.ground) - J
    R, C = M.restrict(J), M.contract(J)
    for K in R.subsets():
        assert R.rank(K) == M.rank(K)
        # contraction by the complement: r(K u T) - r(T)
        assert C.rank(K) == M.rank(K | rest) - M.rank(rest)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_circuits_and_hyperplanes_by_definition(seed):
    M = matroid_from_seed(seed)
    dependent = [J for J in M.subsets() if not M.is_independent(J)]
    assert set(M.circuits()) == {J for J in dependent if not any(K < J for K in dependent)}
    r = M.rank()
    flats = [F for F in M.subsets() if M.is_flat(F)]
    assert set(M.flats()) == set(flats)
    proper = [F for F in flats if M.rank(F) < r]
    maximal = {F for F in proper if not any(F < G for G in proper)}
    assert set(M.hyperplanes()) == (maximal if r else set())


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_beta_deletion_contraction(seed):
    M = matroid_from_seed(seed)
    if M.loops():
        assert beta_invariant(M) == 0
        return
    for e in M.ground:
        rest = [x for x in M.ground if x != e]
        coloop = M.rank(rest) < M.rank()
        if len(M.ground) < 2 or coloop:
            continue
        assert beta_invariant(M) == beta_invariant(M.restrict(rest)) + beta_invariant(M.contract(rest))


@settings(max_examples=30, deadline=None)
@given(seeds, st.randoms(use_true_random=False))
def test_beta_invariant_under_relabel_and_scaling(seed, rnd):
    M = matroid_from_seed(seed)
    perm = list(range(len(M.ground)))
    rnd.shuffle(perm)
    N = M.relabel({x: f"f{perm[k]}" for k, x in enumerate(M.ground)})
    assert beta_invariant(N) == beta_invariant(M)
    scaled = RepresentedMatroid(M.ground, M.columns.scale(-3))
    assert beta_invariant(scaled) == beta_invariant(M)
    assert beta_invariant(M) >= 0


def test_beta_limit():
    M = RepresentedMatroid(range(4), Matrix.identity(4))
    with pytest.raises(ValueError):
        beta_invariant(M, limit=3)
