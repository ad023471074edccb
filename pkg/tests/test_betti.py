import itertools
import random

from hypothesis import given, settings, strategies as st

from matbetti.betti import (
    BettiRecord,
    ModuleStrands,
    betti_table,
    betti_totals,
    koszul_betti,
    module_piece,
    multiplication_map,
    predicted_betti,
    v_complex_betti,
    verify_degree,
    verify_main_theorem,
)
from matbetti.generators import generic_lattice_elements, random_monomial_ideal, random_presentation
from matbetti.linalg import Matrix
from matbetti.presentation import Presentation, fiber_structure, lcm_lattice


def test_module_pieces(J_three, module):
    assert module_piece(J_three, (1, 0, 0)).dim == 1
    assert module_piece(J_three, (2, 0, 0)).dim == 0
    assert module_piece(module, (0, 0, 0)).dim == 2
    assert module_piece(module, (3, 3, 3)).dim == 0
    assert module_piece(module, (3, 1, 1)).dim == 1


def test_multiplication_examples(J_three):
    M = multiplication_map(J_three, (1, 0, 0), 0)
    assert M.shape == (0, 1)
    assert multiplication_map(J_three, (0, 0, 0), 0) == Matrix.identity(1)


def test_multiplication_commutes():
    rng = random.Random(4)
    for _ in range(15):
        P = random_presentation(rng, max_vars=3, max_sources=4)
        S = ModuleStrands(P)
        for beta in itertools.product(range(3), repeat=P.m):
            for i, j in itertools.combinations(range(P.m), 2):
                ei = tuple(int(k == i) for k in range(P.m))
                ej = tuple(int(k == j) for k in range(P.m))
                b_i = tuple(x + y for x, y in zip(beta, ei))
                b_j = tuple(x + y for x, y in zip(beta, ej))
                left = S.multiplication(b_i, j) @ S.multiplication(beta, i)
                right = S.multiplication(b_j, i) @ S.multiplication(beta, j)
                assert left == right


def test_koszul_examples(J_three, module):
    assert koszul_betti(J_three, (2, 1, 1)) == {0: 0, 1: 0, 2: 0, 3: 1}
    got = koszul_betti(module, (3, 3, 3))
    assert {i: v for i, v in got.items() if i >= 1} == {1: 0, 2: 0, 3: 1}
    assert koszul_betti(module, (0, 0, 0))[0] == 2


def test_koszul_of_maximal_ideal():
    P = Presentation.from_monomial_ideal([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert betti_totals(betti_table(P)) == {0: 1, 1: 3, 2: 3, 3: 1}


def test_predictor_examples(module):
    assert predicted_betti(module, (3, 3, 3)) == {1: 0, 2: 0, 3: 1}
    assert predicted_betti(module, (3, 2, 3)) == {1: 0, 2: 1, 3: 0}
    nonzero = lambda d: {i: v for i, v in d.items() if v}
    for alpha in [(3, 3, 3), (3, 2, 3)]:
        assert nonzero(v_complex_betti(module, alpha)) == nonzero(predicted_betti(module, alpha))


def test_predictor_zero_when_interval_is_proper():
    # (x^2, y^2, xy) at x^2 y^2: the fiber is the interval from {1,2} to {1,2,3}
    P = Presentation.from_monomial_ideal([[2, 0], [0, 2], [1, 1]])
    fs = fiber_structure(P, (2, 2))
    assert fs.is_generic and fs.i_lower == {"1", "2"} and fs.i_upper == {"1", "2", "3"}
    assert not any(predicted_betti(P, (2, 2)).values())
    assert not any(v for i, v in koszul_betti(P, (2, 2)).items() if i >= 1)


def test_betti_table_examples(J_three, module):
    assert betti_totals(betti_table(J_three)) == {0: 1, 1: 3, 2: 3, 3: 1}
    x = Presentation.from_monomial_ideal([[1]])
    assert [(r.i, r.alpha, r.value) for r in betti_table(x)] == [(0, (0,), 1), (1, (1,), 1)]
    assert BettiRecord(3, (3, 3, 3), 1, "oracle") in betti_table(module)
    both = betti_table(module, "both")
    assert betti_totals(both, "oracle") == {0: 2, 1: 4, 2: 3, 3: 1}
    assert {(r.i, r.alpha, r.value) for r in both if r.source == "predicted" and r.i >= 1} == {
        (r.i, r.alpha, r.value) for r in both if r.source == "oracle" and r.i >= 1
    }


def test_zero_outside_lattice():
    rng = random.Random(9)
    for _ in range(15):
        P = random_presentation(rng, max_vars=3, max_sources=4)
        L = set(lcm_lattice(P))
        S = ModuleStrands(P)
        for alpha in itertools.product(range(4), repeat=P.m):
            if alpha in L:
                continue
            assert not any(v for i, v in koszul_betti(P, alpha, S).items() if i >= 1)


def test_main_theorem_on_module(module):
    rep = verify_main_theorem(module, [(3, 3, 3), (3, 2, 3)])
    assert rep.passed and not rep.silent
    assert [v.status for v in rep.verdicts] == ["MATCH", "MATCH"]


def test_silent_degree(J_four):
    v = verify_degree(J_four, (3, 3, 2))
    assert v.status == "theorem silent (not generic)"
    rep = verify_main_theorem(J_four)
    assert rep.passed
    assert [v.alpha for v in rep.silent] == [(3, 3, 2)]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_main_theorem_random(seed):
    P = random_presentation(random.Random(seed), max_vars=3, max_sources=4)
    rep = verify_main_theorem(P)
    assert rep.passed, [v.alpha for v in rep.mismatches]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_monomial_corollary_random(seed):
    P = random_monomial_ideal(random.Random(seed), max_gens=4, max_vars=3)
    for alpha in generic_lattice_elements(P):
        fs = fiber_structure(P, alpha)
        got = {i: v for i, v in koszul_betti(P, alpha).items() if i >= 1 and v}
        assert got == ({len(fs.i_lower): 1} if fs.i_lower == fs.i_upper else {})


def test_prime_field_agrees_on_module(module):
    from matbetti.presentation import parse_presentation

    P7 = parse_presentation(module.to_document(), field="p7")
    assert verify_main_theorem(P7).passed
    assert betti_totals(betti_table(P7)) == betti_totals(betti_table(module))
