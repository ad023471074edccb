"""Scarf and Taylor complexes of monomial ideals."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

from .betti import ModuleStrands, koszul_betti
from .complexes import ChainComplex, SimplicialComplex
from .linalg import Matrix
from .presentation import Presentation, degree_key, degree_of_set, is_generic_type, lcm_lattice, leq


def _subsets(P: Presentation):
    labels = P.source_labels
    for k in range(len(labels) + 1):
        for J in combinations(labels, k):
            yield frozenset(J)


def scarf_faces(P: Presentation) -> list[frozenset]:
    """Subsets ``I`` whose degree fiber is exactly ``{I}``."""
    by_degree: dict[tuple, list[frozenset]] = {}
    for J in _subsets(P):
        by_degree.setdefault(degree_of_set(P, J), []).append(J)
    return [Js[0] for Js in by_degree.values() if len(Js) == 1]


def scarf_complex(P: Presentation) -> SimplicialComplex:
    faces = scarf_faces(P)
    fset = set(faces)
    for F in faces:
        for x in F:
            if F - {x} not in fset:
                warnings.warn(
                    f"Scarf family not closed under subsets: {P.ordered(F)} lacks {P.ordered(F - {x})}",
                    stacklevel=2,
                )
                break
    return SimplicialComplex(P.source_labels, faces, check=False)


@dataclass(frozen=True)
class MonomialResolution:
    """Free complex with basis ``face_lists[i]`` in homological degree ``i``.

    ``differentials[i]`` (for ``i >= 1``) holds the scalar parts of the map
    from degree ``i`` to degree ``i-1``; the monomial factor of entry
    ``(F', F)`` is ``x^(deg F - deg F')``.
    """

    presentation: Presentation
    face_lists: tuple
    differentials: tuple

    def degrees(self, i: int) -> list[tuple]:
        return [degree_of_set(self.presentation, F) for F in self.face_lists[i]]

    def ranks(self) -> list[int]:
        return [len(fl) for fl in self.face_lists]

    def graded_ranks(self) -> dict[tuple, int]:
        """``{(i, alpha): count}`` over all faces."""
        out: dict[tuple, int] = {}
        for i, fl in enumerate(self.face_lists):
            for F in fl:
                key = (i, degree_of_set(self.presentation, F))
                out[key] = out.get(key, 0) + 1
        return out

    def strand(self, alpha) -> ChainComplex:
        """Degree-``alpha`` part: the faces with ``deg F <= alpha``."""
        alpha = tuple(alpha)
        P = self.presentation
        keep = [
            [k for k, F in enumerate(fl) if leq(degree_of_set(P, F), alpha)]
            for fl in self.face_lists
        ]
        while len(keep) > 1 and not keep[-1]:
            keep.pop()
        dims = [len(k) for k in keep]
        diffs = [
            self.differentials[i].select_rows(keep[i - 1]).select_columns(keep[i])
            for i in range(1, len(keep))
        ]
        return ChainComplex(0, dims, diffs, P.field)


def _check_monomial(P: Presentation):
    if len(P.targets) != 1:
        raise ValueError("Scarf/Taylor complexes are built for monomial ideals (one target) only")


def _resolution_on(P: Presentation, faces) -> MonomialResolution:
    pos = {x: k for k, x in enumerate(P.source_labels)}
    top = max(len(F) for F in faces)
    levels = [
        sorted((F for F in faces if len(F) == k), key=lambda F: sorted(pos[x] for x in F))
        for k in range(top + 1)
    ]
    f = P.field
    diffs = [None]
    for i in range(1, top + 1):
        index = {F: n for n, F in enumerate(levels[i - 1])}
        grid = [[f.zero] * len(levels[i]) for _ in levels[i - 1]]
        for col, F in enumerate(levels[i]):
            seq = sorted(F, key=pos.__getitem__)
            for j, s in enumerate(seq):
                row = index.get(F - {s})
                if row is not None:
                    grid[row][col] = f.one if j % 2 == 0 else -f.one
        diffs.append(Matrix._raw(tuple(map(tuple, grid)), f, len(levels[i])))
    return MonomialResolution(P, tuple(tuple(l) for l in levels), tuple(diffs))


def taylor_complex(P: Presentation) -> MonomialResolution:
    _check_monomial(P)
    return _resolution_on(P, list(_subsets(P)))


def algebraic_scarf(P: Presentation) -> MonomialResolution:
    """The Taylor complex restricted to the Scarf faces."""
    _check_monomial(P)
    return _resolution_on(P, scarf_faces(P))


def is_resolution(res: MonomialResolution) -> bool:
    """Exact strands at every lattice degree, and ``H_0 = k`` in degree 0.

    A strand only depends on ``{F : deg F <= alpha}``, which equals the set
    for ``deg I^alpha``, so lattice degrees (and 0) cover every ``alpha``.
    """
    P = res.presentation
    for i in range(2, len(res.differentials)):
        if not (res.differentials[i - 1] @ res.differentials[i]).is_zero():
            return False
    zero = (0,) * P.m
    if res.strand(zero).homology_support() != {0: 1}:
        return False
    return all(res.strand(alpha).is_exact() for alpha in lcm_lattice(P))


def is_minimal(res: MonomialResolution) -> bool:
    """No nonzero differential entry between faces of equal degree."""
    P = res.presentation
    for i in range(1, len(res.differentials)):
        D = res.differentials[i]
        src = res.degrees(i)
        dst = res.degrees(i - 1)
        for r, row in enumerate(D.rows):
            for c, x in enumerate(row):
                if x and src[c] == dst[r]:
                    return False
    return True


@dataclass
class ScarfReport:
    generic_type: bool
    resolution: bool
    minimal: bool
    ranks: list
    ranks_match_oracle: bool | None
    bad_strands: list

    @property
    def passed(self) -> bool:
        if not self.generic_type:
            return True  # informational only
        return self.resolution and self.minimal and bool(self.ranks_match_oracle)


def oracle_graded_betti(P: Presentation) -> dict[tuple, int]:
    """``{(i, alpha): beta}`` for ``R/I``, degree 0 included."""
    strands = ModuleStrands(P)
    out = {(0, (0,) * P.m): 1}
    for alpha in lcm_lattice(P):
        for i, v in koszul_betti(P, alpha, strands).items():
            if i >= 1 and v:
                out[(i, alpha)] = v
    return out


def verify_scarf_theorem(P: Presentation) -> ScarfReport:
    _check_monomial(P)
    generic = is_generic_type(P)
    res = algebraic_scarf(P)
    bad = [a for a in lcm_lattice(P) if not res.strand(a).is_exact()]
    resolution = is_resolution(res)
    minimal = is_minimal(res)
    match = None
    if generic:
        match = res.graded_ranks() == oracle_graded_betti(P)
    bad.sort(key=degree_key)
    return ScarfReport(generic, resolution, minimal, res.ranks(), match, bad)
