"""Represented matroids, their minors, and the beta-invariant."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import Matrix, column_space_dim, quotient_map
from .presentation import NotGenericError, Presentation, fiber_structure

BETA_GROUND_LIMIT = 20


class RepresentedMatroid:
    """Column matroid of ``columns`` on the labelled ``ground`` set.

    Subsets are passed as any iterable of labels. Ranks are memoised per
    frozenset; the memo only ever receives identical values for a key, so
    concurrent fills are harmless.
    """

    def __init__(self, ground: Sequence, columns: Matrix):
        ground = tuple(ground)
        if len(ground) != columns.ncols:
            raise ValueError("one column per ground element is required")
        if len(set(ground)) != len(ground):
            raise ValueError("ground labels must be distinct")
        self.ground = ground
        self.columns = columns
        self._pos = {x: k for k, x in enumerate(ground)}
        self._rank_cache: dict[frozenset, int] = {}

    @property
    def field(self):
        return self.columns.field

    def __len__(self):
        return len(self.ground)

    def __repr__(self):
        return f"RepresentedMatroid(ground={list(self.ground)}, rank={self.rank()})"

    def _key(self, J) -> frozenset:
        J = frozenset(J)
        if not J <= self._pos.keys():
            raise KeyError(f"{sorted(map(str, J - self._pos.keys()))} not in the ground set")
        return J

    def ordered(self, J: Iterable) -> list:
        return sorted(J, key=self._pos.__getitem__)

    def rank(self, J: Iterable | None = None) -> int:
        J = frozenset(self.ground) if J is None else self._key(J)
        r = self._rank_cache.get(J)
        if r is None:
            r = column_space_dim(self.columns, (self._pos[x] for x in J))
            self._rank_cache[J] = r
        return r

    def is_independent(self, J: Iterable) -> bool:
        J = self._key(J)
        return self.rank(J) == len(J)

    def is_loop(self, x) -> bool:
        return self.rank({x}) == 0

    def loops(self) -> frozenset:
        return frozenset(x for x in self.ground if self.is_loop(x))

    def closure(self, J: Iterable) -> frozenset:
        J = self._key(J)
        r = self.rank(J)
        return frozenset(x for x in self.ground if x in J or self.rank(J | {x}) == r)

    def is_flat(self, J: Iterable) -> bool:
        J = self._key(J)
        return self.closure(J) == J

    def are_parallel(self, x, y) -> bool:
        if self.is_loop(x) or self.is_loop(y):
            return False
        return self.closure({x}) == self.closure({y})

    def subsets(self):
        """All subsets, by size and then lexicographically in ground order."""
        for k in range(len(self.ground) + 1):
            for J in combinations(self.ground, k):
                yield frozenset(J)

    def independent_sets(self) -> list[frozenset]:
        return [J for J in self.subsets() if self.is_independent(J)]

    def flats(self) -> list[frozenset]:
        return sorted({self.closure(J) for J in self.subsets()}, key=lambda F: (len(F), self.ordered(F)))

    def hyperplanes(self) -> list[frozenset]:
        r = self.rank()
        if r == 0:
            return []
        return [F for F in self.flats() if self.rank(F) == r - 1]

    def circuits(self) -> list[frozenset]:
        out = []
        for J in self.subsets():
            if self.is_independent(J):
                continue
            # dependent and every proper subset independent: removing any
            # single element must give an independent set
            if all(self.is_independent(J - {x}) for x in J):
                out.append(J)
        return out

    def restrict(self, J: Iterable) -> "RepresentedMatroid":
        labels = self.ordered(self._key(J))
        return RepresentedMatroid(labels, self.columns.select_columns([self._pos[x] for x in labels]))

    def contract(self, J: Iterable) -> "RepresentedMatroid":
        """The matroid ``M.J`` on ``J``: columns of ``J`` modulo the span of the complement."""
        J = self._key(J)
        labels = self.ordered(J)
        rest = [self._pos[x] for x in self.ground if x not in J]
        return RepresentedMatroid(labels, quotient_map(self.columns, rest, [self._pos[x] for x in labels]))

    def relabel(self, mapping: dict) -> "RepresentedMatroid":
        return RepresentedMatroid([mapping[x] for x in self.ground], self.columns)


def beta_invariant(M: RepresentedMatroid, limit: int = BETA_GROUND_LIMIT) -> int:
    """``(-1)^r(S) * sum over J of (-1)^|J| r(J)``; zero on the empty matroid."""
    n = len(M.ground)
    if n > limit:
        raise ValueError(f"ground set of size {n} exceeds the exhaustive-sum limit {limit}")
    total = 0
    for J in M.subsets():
        total += (-1) ** len(J) * M.rank(J)
    value = (-1) ** M.rank() * total
    assert value >= 0, value
    return value


def matroid_of(P: Presentation) -> RepresentedMatroid:
    return RepresentedMatroid(P.source_labels, P.coeffs)


@dataclass(frozen=True)
class MinorPair:
    alpha: tuple
    m_upper: RepresentedMatroid
    m_lower: RepresentedMatroid
    i_upper: frozenset
    i_lower: frozenset
    i_of_alpha: frozenset


def minors_at(P: Presentation, alpha) -> MinorPair:
    """``M^alpha = M|I^alpha`` and ``M_alpha = M^alpha / I(alpha)`` at a generic ``alpha``."""
    fs = fiber_structure(P, alpha)
    if not fs.is_generic:
        sets = [P.ordered(J) for J in fs.minimal_sets]
        raise NotGenericError(f"{list(fs.alpha)} is not generic: minimal sets {sets}")
    M = matroid_of(P)
    upper = M.restrict(fs.i_upper)
    lower = upper.contract(fs.i_lower)
    return MinorPair(fs.alpha, upper, lower, fs.i_upper, fs.i_lower, fs.i_upper - fs.i_lower)
