import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from matbetti.complexes import (
    ChainComplex,
    SimplicialComplex,
    build_V,
    build_V_alpha,
    build_V_bar,
    check_spaces_sequence,
    delta_b,
    dual,
    hshift,
    quotient_representation,
    reduced_homology,
    shift,
    simplex_dual_shifted,
    truncate,
)
from matbetti.generators import generic_lattice_elements, random_presentation, random_represented_matrix
from matbetti.linalg import Matrix
from matbetti.matroid import RepresentedMatroid, beta_invariant, matroid_of, minors_at
from matbetti.presentation import Presentation


def two_step():
    """0 <- k^2 <- k^3 <- k <- 0 starting in degree 0."""
    d1 = Matrix([[1, 0, 1], [0, 1, 1]])
    d2 = Matrix([[1], [1], [-1]])
    return ChainComplex(0, (2, 3, 1), (d1, d2))


def test_identity_complex_is_exact():
    C = ChainComplex(0, (1, 1), (Matrix.identity(1),))
    assert C.is_exact()


def test_zero_differentials():
    C = ChainComplex(2, (2, 0, 3), (Matrix.zeros(2, 0), Matrix.zeros(0, 3)))
    assert C.homology() == {2: 2, 3: 0, 4: 3}


def test_d_squared_checked():
    with pytest.raises(ValueError):
        ChainComplex(0, (1, 1, 1), (Matrix([[1]]), Matrix([[1]])))


def test_dual_involution():
    C = two_step()
    D = dual(C)
    assert D.lowest == -2 and D.dims == (1, 3, 2)
    assert {-i: h for i, h in D.homology().items()} == C.homology()
    DD = dual(D)
    assert DD.lowest == C.lowest and DD.dims == C.dims
    assert DD.homology() == C.homology()


def test_shifts_and_truncation():
    C = two_step()
    S = shift(C, 1)
    assert S.lowest == -1 and S.diffs[0] == C.diffs[0].scale(-1)
    assert {i + 1: h for i, h in S.homology().items()} == C.homology()
    H = hshift(C, -2)
    assert H.lowest == 2 and H.diffs == C.diffs
    T = truncate(C, 1)
    assert T.lowest == 1 and T.dims == (3, 1)
    assert truncate(C, 5).dims == ()
    assert truncate(C, -3) is C


def test_tensor_scales_homology():
    C = two_step()
    T = C.tensor(3)
    assert T.homology() == {i: 3 * h for i, h in C.homology().items()}


def test_triangle_boundary():
    K = SimplicialComplex([0, 1, 2], [frozenset(s) for s in ([], [0], [1], [2], [0, 1], [0, 2], [1, 2])])
    H = reduced_homology(K)
    assert H[1] == 1 and H[0] == 0 and H[-1] == 0


def test_full_simplex_and_empty_complex():
    assert not any(reduced_homology(SimplicialComplex.full_simplex("abcd")).values())
    assert reduced_homology(SimplicialComplex("ab", [frozenset()])) == {-1: 1}


def test_faces_must_be_closed():
    with pytest.raises(ValueError):
        SimplicialComplex("ab", [frozenset("ab")])


def test_delta_b_examples(module):
    M = RepresentedMatroid("abc", Matrix([[1, 0, 2]]).select_columns([0, 0, 2]))
    assert set(delta_b(M, "a").faces) == {frozenset()}
    assert reduced_homology(delta_b(M, "a")) == {-1: 1}
    assert beta_invariant(M) == 1

    L = RepresentedMatroid("xy", Matrix([[0, 1]]))
    assert delta_b(L, "x").is_void

    N = matroid_of(module)
    K = delta_b(N, "d")
    assert frozenset("ab") in set(K.faces)
    assert set(K.facets()) == {H for H in N.hyperplanes() if "d" not in H}


def test_build_V_single_column():
    V = build_V(Matrix([[2]]))
    assert V.dims == (1, 0)
    assert V.homology_support() == {0: 1}


def test_build_V_all_loops():
    V = build_V(Matrix.zeros(2, 3))
    assert not any(V.dims)
    assert not V.homology_support()


def test_build_V_module_matrix(module):
    V = build_V(module.coeffs, labels=module.source_labels)
    assert V.homology_support() == {2: 1}
    assert beta_invariant(matroid_of(module)) == 1


def test_V_alpha_examples(module):
    V = build_V_alpha(module, (3, 3, 3))
    assert V.dims == (2, 6, 6, 1)
    assert V.homology_support() == {2: 1}
    V = build_V_alpha(module, (3, 2, 3))
    assert V.dims[:3] == (2, 6, 3) and V.dims[3:] == (0,)
    assert V.homology_support() == {1: 1}


def test_V_alpha_monomial_interval():
    P = Presentation.from_monomial_ideal([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    V = build_V_alpha(P, (2, 2, 2))
    assert V.dims == tuple(comb(3, i) for i in range(4))[:3] + (0,)
    assert V.homology_support() == {2: 1}


def test_V_bar_examples(module):
    assert build_V_bar(module, (3, 3, 3)).homology() == build_V_alpha(module, (3, 3, 3)).homology()
    phi, labels = quotient_representation(module, (3, 2, 3))
    assert labels == ("a", "c", "d")
    assert phi == module.coeffs.select_columns([0, 2, 3])


def test_V_bar_total_collapse():
    # sources a, b and c = a + b at the top degree: a, b collapse modulo c
    doc = {
        "variables": 2,
        "targets": [{"label": "g", "degree": [0, 0]}, {"label": "h", "degree": [0, 0]}],
        "sources": [
            {"label": "a", "degree": [2, 0]},
            {"label": "b", "degree": [0, 2]},
            {"label": "c", "degree": [1, 1]},
        ],
        "matrix": [[1, 0, 1], [0, 1, 0]],
    }
    from matbetti.presentation import parse_presentation, fiber_structure

    P = parse_presentation(doc)
    fs = fiber_structure(P, (2, 2))
    assert fs.is_generic and fs.i_lower == {"a", "b"}
    Vb = build_V_bar(P, (2, 2))
    assert Vb.dims[0] == 1 and Vb.dims[-1] == 0


def test_simplex_dual_shifted():
    C1 = simplex_dual_shifted(["a"])
    assert C1.lowest == 0 and C1.dims == (1, 1) and C1.is_exact()
    C3 = simplex_dual_shifted(["a", "b", "c"])
    assert C3.lowest == 0 and C3.dims == (1, 3, 3, 1)
    assert C3.is_exact()


def test_spaces_sequence_module(module):
    for alpha in [(3, 3, 3), (3, 2, 3)]:
        chk = check_spaces_sequence(module, alpha)
        assert chk.ok
        assert tuple(a + b for a, b in zip(chk.sub_dims, chk.quotient_dims)) == chk.middle_dims


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_V_homology_is_beta(seed):
    rng = random.Random(seed)
    A = random_represented_matrix(rng, max_cols=5, max_rows=3)
    M = RepresentedMatroid(range(A.ncols), A)
    b = beta_invariant(M)
    expect = {A.ncols - M.rank(): b} if b else {}
    order = list(range(A.ncols))
    rng.shuffle(order)
    assert build_V(A, order).homology_support() == expect


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 100_000))
def test_V_alpha_matches_minor(seed):
    rng = random.Random(seed)
    P = random_presentation(rng, max_vars=3, max_sources=4)
    for alpha in generic_lattice_elements(P):
        mp = minors_at(P, alpha)
        b = beta_invariant(mp.m_lower)
        expect = {len(mp.i_lower) - mp.m_lower.rank(): b} if b else {}
        assert build_V_alpha(P, alpha).homology_support() == expect
        assert build_V_bar(P, alpha).homology_support() == expect
        assert check_spaces_sequence(P, alpha).ok
