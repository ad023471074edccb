"""Acceptance checks, shared by ``matbetti selftest`` and the test suite.

Each ``criterion_N(seed)`` returns a :class:`CriterionResult`; all
comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .betti import koszul_betti, ModuleStrands, predicted_betti, verify_main_theorem
from .complexes import (
    build_V,
    build_V_alpha,
    build_V_bar,
    check_spaces_sequence,
    delta_b,
    reduced_homology,
)
from .generators import (
    generic_lattice_elements,
    random_strongly_generic_ideal,
    random_monomial_ideal,
    random_presentation,
    random_represented_matrix,
)
from .matroid import RepresentedMatroid, beta_invariant, minors_at
from .presentation import Presentation, fiber_structure, is_generic_type, parse_presentation
from .report import generic_summary, minimal_sets_text
from .scarf import algebraic_scarf, verify_scarf_theorem

DEFAULT_SEED = 20240601

EXAMPLE_MODULE = {
    "variables": 3,
    "field": "rational",
    "targets": [{"label": "g1", "degree": [0, 0, 0]}, {"label": "g2", "degree": [0, 0, 0]}],
    "sources": [
        {"label": "a", "degree": [3, 1, 1]},
        {"label": "b", "degree": [1, 3, 1]},
        {"label": "c", "degree": [1, 1, 3]},
        {"label": "d", "degree": [1, 2, 2]},
    ],
    "matrix": [[1, 1, 1, 1], [1, 1, 2, 3]],
}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} -- {self.detail}"


def example_module() -> Presentation:
    return parse_presentation(EXAMPLE_MODULE)


def _minor_complex_facts(P, alpha):
    V = build_V_alpha(P, alpha)
    mp = minors_at(P, alpha)
    return V.dims, V.homology_support(), mp.m_lower.rank(), beta_invariant(mp.m_lower), mp


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    P = example_module()
    dims, H, r, b, mp = _minor_complex_facts(P, (3, 3, 3))
    ok = dims == (2, 6, 6, 1) and H == {2: 1} and r == 1 and b == 1 and mp.i_of_alpha == {"d"}
    return CriterionResult(1, "minors example at (3,3,3)", ok, f"dims={list(dims)} H={H} r(M_a)={r} beta={b}")


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    P = example_module()
    dims, H, r, b, mp = _minor_complex_facts(P, (3, 2, 3))
    # the top degree carries V_{I(alpha)} = V_empty = 0, so the stated dims omit it
    stated = tuple(dims)
    while stated and stated[-1] == 0:
        stated = stated[:-1]
    ok = stated == (2, 6, 3) and dims[len(stated):] == (0,) * (len(dims) - len(stated)) and H == {1: 1} and r == 2 and b == 1 and not mp.i_of_alpha
    return CriterionResult(2, "minors example at (3,2,3)", ok, f"dims={list(dims)} H={H} r(M_a)={r} beta={b}")


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    P = example_module()
    oracle = {i: v for i, v in koszul_betti(P, (3, 3, 3)).items() if i >= 1}
    pred = predicted_betti(P, (3, 3, 3))
    expect = {1: 0, 2: 0, 3: 1}
    ok = oracle == expect and pred == expect
    return CriterionResult(3, "beta_{3,(3,3,3)}(L) = 1", ok, f"oracle={oracle} predicted={pred}")


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    J1 = Presentation.from_monomial_ideal([[2, 0, 0], [1, 1, 0], [1, 0, 1]])
    J2 = Presentation.from_monomial_ideal([[3, 0, 2], [2, 3, 0], [1, 2, 1], [0, 3, 2]])
    J3 = Presentation.from_monomial_ideal([[1, 1, 0], [1, 0, 1]])
    J4 = Presentation.from_monomial_ideal([[1, 1, 0], [1, 0, 1], [2, 0, 0], [0, 2, 0], [0, 0, 2]])
    from .presentation import strongly_generic_check

    fs = fiber_structure(J2, (3, 3, 2))
    checks = {
        "(x2,xy,xz) generic type": generic_summary(J1) == "generic type: yes",
        "(x2,xy,xz) not strongly generic": strongly_generic_check(J1) is False,
        "J (3,3,2) minimal sets": (not fs.is_generic) and minimal_sets_text(J2, fs) == "{1,2}, {1,4}",
        "(xy,xz) generic type": generic_summary(J3) == "generic type: yes",
        "I* not generic at (1,2,2)": generic_summary(J4) == "generic type: no (witness (1,2,2))",
    }
    failed = [k for k, v in checks.items() if not v]
    return CriterionResult(4, "genericity fixtures", not failed, "all match" if not failed else f"failed: {failed}")


def random_matroid_family(seed: int, count: int = 200) -> list[RepresentedMatroid]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        A = random_represented_matrix(rng, max_cols=6, max_rows=4)
        out.append(RepresentedMatroid([f"e{k}" for k in range(A.ncols)], A))
    return out


def criterion_5(seed: int = DEFAULT_SEED, count: int = 200) -> CriterionResult:
    failures = []
    checked = 0
    for n, M in enumerate(random_matroid_family(seed, count)):
        beta = beta_invariant(M)
        r = M.rank()
        for b in M.ground:
            H = reduced_homology(delta_b(M, b))
            if M.is_loop(b):
                # void complex: the statement covers i >= 0 only
                ok = all(v == (beta if i == r - 2 else 0) for i, v in H.items() if i >= 0)
            else:
                checked += 1
                expect = {i: (beta if i == r - 2 else 0) for i in H}
                ok = H == expect and (r - 2 in H or beta == 0)
            if not ok:
                failures.append((n, b))
    return CriterionResult(
        5, "homology of Delta_b is beta(M) in degree r-2", not failures,
        f"{count} matroids, {checked} non-loop b, failures={failures[:5]}",
    )


def criterion_6(seed: int = DEFAULT_SEED, count: int = 200, orderings: int = 3) -> CriterionResult:
    rng = random.Random(seed + 1)
    failures = []
    for n, M in enumerate(random_matroid_family(seed, count)):
        beta = beta_invariant(M)
        S = len(M.ground)
        r = M.rank()
        expect = {S - r: beta} if beta else {}
        base = build_V(M.columns, labels=M.ground).homology()
        if {i: h for i, h in base.items() if h} != expect:
            failures.append((n, "concentration"))
        for _ in range(orderings):
            omega = list(M.ground)
            rng.shuffle(omega)
            if build_V(M.columns, omega, labels=M.ground).homology() != base:
                failures.append((n, "ordering", tuple(omega)))
        for b in M.ground:
            if M.is_loop(b):
                continue
            Hd = reduced_homology(delta_b(M, b))
            if any(h != Hd.get(S - i - 2, 0) for i, h in base.items()) or any(
                v != base.get(S - j - 2, 0) for j, v in Hd.items()
            ):
                failures.append((n, "delta", b))
    return CriterionResult(
        6, "H(V(phi,omega)) = beta(M) at |S|-r, matches Delta_b, ordering-free", not failures,
        f"{count} matroids x {orderings} orderings, failures={failures[:5]}",
    )


def random_generic_family(seed: int, min_instances: int = 100) -> list[tuple[Presentation, tuple]]:
    rng = random.Random(seed + 2)
    out = []
    while len(out) < min_instances:
        P = random_presentation(rng, max_vars=4, max_sources=5, max_targets=2)
        out.extend((P, a) for a in generic_lattice_elements(P))
    return out


def criterion_7(seed: int = DEFAULT_SEED, min_instances: int = 100) -> CriterionResult:
    rng = random.Random(seed + 3)
    failures = []
    family = random_generic_family(seed, min_instances)
    for n, (P, alpha) in enumerate(family):
        fs = fiber_structure(P, alpha)
        omega = P.ordered(fs.i_lower)
        rng.shuffle(omega)
        Ha = build_V_alpha(P, alpha, omega).homology()
        Hb = build_V_bar(P, alpha, omega).homology()
        mp = minors_at(P, alpha)
        b = beta_invariant(mp.m_lower)
        expect = {len(fs.i_lower) - mp.m_lower.rank(): b} if b else {}
        ses = check_spaces_sequence(P, alpha, omega)
        if Ha != Hb or {i: h for i, h in Ha.items() if h} != expect or not ses.ok:
            failures.append((n, alpha))
    return CriterionResult(
        7, "H(V(alpha)) = H(V-bar) = beta(M_alpha) at |I_alpha|-r; subcomplex exact", not failures,
        f"{len(family)} generic (P, alpha), failures={failures[:5]}",
    )


def criterion_8(seed: int = DEFAULT_SEED, min_instances: int = 100) -> CriterionResult:
    family = random_generic_family(seed, min_instances)
    presentations = []
    for P, _ in family:
        if not presentations or presentations[-1] is not P:
            presentations.append(P)
    failures = []
    checked = 0
    for n, P in enumerate(presentations):
        rep = verify_main_theorem(P)
        for v in rep.verdicts:
            if v.match is None:
                continue
            checked += 1
            if not v.match or sum(1 for i, x in v.oracle.items() if i >= 1 and x) > 1:
                failures.append((n, v.alpha))
    return CriterionResult(
        8, "Koszul oracle = matroid prediction at generic alpha, one nonzero i", not failures,
        f"{len(presentations)} presentations, {checked} generic degrees, failures={failures[:5]}",
    )


def random_monomial_family(seed: int, count: int = 100) -> list[Presentation]:
    rng = random.Random(seed + 4)
    out = []
    for k in range(count):
        if k % 4 == 3:
            out.append(random_strongly_generic_ideal(rng, max_gens=5, max_vars=4))
        else:
            out.append(random_monomial_ideal(rng, max_gens=5, max_vars=4))
    return out


def criterion_9(seed: int = DEFAULT_SEED, count: int = 100) -> CriterionResult:
    failures = []
    checked = 0
    for n, P in enumerate(random_monomial_family(seed, count)):
        strands = ModuleStrands(P)
        for alpha in generic_lattice_elements(P):
            fs = fiber_structure(P, alpha)
            oracle = {i: v for i, v in koszul_betti(P, alpha, strands).items() if i >= 1}
            if fs.i_lower == fs.i_upper:
                expect = {i: (1 if i == len(fs.i_lower) else 0) for i in oracle}
            else:
                expect = {i: 0 for i in oracle}
            checked += 1
            if oracle != expect:
                failures.append((n, alpha))
    return CriterionResult(
        9, "monomial ideals: beta = 1 at |I_alpha| iff I_alpha = I^alpha", not failures,
        f"{count} ideals, {checked} generic degrees, failures={failures[:5]}",
    )


def criterion_10(seed: int = DEFAULT_SEED, count: int = 100) -> CriterionResult:
    failures = []
    generic = 0
    for n, P in enumerate(random_monomial_family(seed, count)):
        if not is_generic_type(P):
            continue
        generic += 1
        rep = verify_scarf_theorem(P)
        if not rep.passed:
            failures.append(n)
    J = Presentation.from_monomial_ideal([[2, 0, 0], [1, 1, 0], [1, 0, 1]])
    ranks = algebraic_scarf(J).ranks()
    ok = not failures and ranks == [1, 3, 3, 1] and verify_scarf_theorem(J).passed and generic > 0
    return CriterionResult(
        10, "algebraic Scarf complex is the minimal resolution for generic type", ok,
        f"{generic} generic-type ideals, (x2,xy,xz) ranks={ranks}, failures={failures[:5]}",
    )


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [c(seed) for c in CRITERIA]
