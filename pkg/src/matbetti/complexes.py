"""Chain complexes of finite-dimensional vector spaces.

Covers simplicial complexes with reduced homology, the affine complex
``Delta_b`` of a matroid away from an element, and the complexes built
from the column spans ``V_B`` of a representation.

Sign convention everywhere: the component ``V_B -> V_{B+c}`` (or a face
``B+c -> B`` of a simplex) carries ``(-1)^#{b in B : b < c}`` with ``<``
taken in the chosen ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .fields import QQ, Field
from .linalg import CoordinateSolver, Matrix, block_diagonal, kron_identity, pivot_columns, quotient_map, rank
from .matroid import RepresentedMatroid
from .presentation import NotGenericError, Presentation, fiber_structure


class ChainComplex:
    """``C_lowest <- C_lowest+1 <- ...``; ``diffs[k]`` maps degree ``lowest+k+1`` to ``lowest+k``."""

    def __init__(self, lowest: int, dims: Sequence[int], diffs: Sequence[Matrix], field: Field = QQ, check: bool = True):
        dims = tuple(dims)
        diffs = tuple(diffs)
        if dims and len(diffs) != len(dims) - 1:
            raise ValueError("need exactly one differential between consecutive degrees")
        for k, D in enumerate(diffs):
            if D.shape != (dims[k], dims[k + 1]):
                raise ValueError(
                    f"differential out of degree {lowest + k + 1} has shape {D.shape}, "
                    f"expected {(dims[k], dims[k + 1])}"
                )
        self.lowest = lowest
        self.dims = dims
        self.diffs = diffs
        self.field = field
        if check:
            for k in range(len(diffs) - 1):
                if diffs[k].nrows and diffs[k + 1].ncols and not (diffs[k] @ diffs[k + 1]).is_zero():
                    raise ValueError(f"d^2 != 0 at degree {lowest + k + 2}")

    @classmethod
    def zero(cls, field: Field = QQ) -> "ChainComplex":
        return cls(0, (), (), field)

    @property
    def highest(self) -> int:
        return self.lowest + len(self.dims) - 1

    @property
    def degrees(self) -> range:
        return range(self.lowest, self.lowest + len(self.dims))

    def dim(self, i: int) -> int:
        k = i - self.lowest
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, i: int) -> Matrix:
        """The differential ``C_i -> C_{i-1}``."""
        k = i - self.lowest - 1
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return Matrix.zeros(self.dim(i - 1), self.dim(i), self.field)

    def homology(self) -> dict[int, int]:
        ranks = {i: rank(self.d(i)) for i in range(self.lowest, self.highest + 2)}
        return {i: self.dim(i) - ranks[i] - ranks[i + 1] for i in self.degrees}

    def homology_support(self) -> dict[int, int]:
        return {i: h for i, h in self.homology().items() if h}

    def is_exact(self) -> bool:
        return not self.homology_support()

    def tensor(self, d: int) -> "ChainComplex":
        """Tensor with a fixed ``d``-dimensional space."""
        return ChainComplex(self.lowest, [x * d for x in self.dims], [kron_identity(D, d) for D in self.diffs], self.field)

    def __repr__(self):
        return f"ChainComplex(lowest={self.lowest}, dims={list(self.dims)})"


def dual(C: ChainComplex) -> ChainComplex:
    if not C.dims:
        return C
    dims = list(reversed(C.dims))
    # d*_i = transpose of d_{-i+1}
    lowest = -C.highest
    diffs = [C.d(-i + 1).T for i in range(lowest + 1, -C.lowest + 1)]
    return ChainComplex(lowest, dims, diffs, C.field)


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """``C[k]_i = C_{i+k}`` with differentials multiplied by ``(-1)^k``."""
    diffs = C.diffs if k % 2 == 0 else [D.scale(-1) for D in C.diffs]
    return ChainComplex(C.lowest - k, C.dims, diffs, C.field)


def hshift(C: ChainComplex, k: int) -> ChainComplex:
    """``C<k>_i = C_{i+k}``, differentials unchanged."""
    return ChainComplex(C.lowest - k, C.dims, C.diffs, C.field)


def truncate(C: ChainComplex, k: int) -> ChainComplex:
    """Kill every degree below ``k``."""
    if k <= C.lowest:
        return C
    if k > C.highest:
        return ChainComplex.zero(C.field)
    off = k - C.lowest
    return ChainComplex(k, C.dims[off:], C.diffs[off:], C.field)


class SimplicialComplex:
    """A family of faces closed under subsets.

    ``faces`` empty is the void complex; ``{frozenset()}`` is the empty
    complex, whose reduced homology is one-dimensional in degree -1.
    """

    def __init__(self, vertices: Sequence, faces: Iterable[Iterable], check: bool = True):
        self.vertices = tuple(vertices)
        self.faces = frozenset(frozenset(F) for F in faces)
        if check:
            for F in self.faces:
                for x in F:
                    if F - {x} not in self.faces:
                        raise ValueError(f"not closed under subsets: {sorted(map(str, F))} minus {x}")

    @classmethod
    def full_simplex(cls, vertices: Sequence) -> "SimplicialComplex":
        vs = tuple(vertices)
        return cls(vs, (J for k in range(len(vs) + 1) for J in combinations(vs, k)), check=False)

    @property
    def is_void(self) -> bool:
        return not self.faces

    def facets(self) -> list[frozenset]:
        return [F for F in self.faces if not any(F < G for G in self.faces)]

    def reduced_chain_complex(self, orientation: Sequence | None = None, field: Field = QQ) -> ChainComplex:
        """Degree ``j`` has the faces with ``j+1`` vertices, ordered lexicographically in ``orientation``."""
        order = list(self.vertices if orientation is None else orientation)
        pos = {v: k for k, v in enumerate(order)}
        if self.is_void:
            return ChainComplex.zero(field)
        top = max(len(F) for F in self.faces)
        by_size = [
            sorted((tuple(sorted(F, key=pos.__getitem__)) for F in self.faces if len(F) == k),
                   key=lambda t: [pos[v] for v in t])
            for k in range(top + 1)
        ]
        index = [{F: n for n, F in enumerate(fs)} for fs in by_size]
        diffs = []
        one = field.one
        for k in range(1, top + 1):
            grid = [[field.zero] * len(by_size[k]) for _ in by_size[k - 1]]
            for col, F in enumerate(by_size[k]):
                for j in range(len(F)):
                    row = index[k - 1][F[:j] + F[j + 1:]]
                    grid[row][col] = one if j % 2 == 0 else -one
            diffs.append(Matrix._raw(tuple(map(tuple, grid)), field, len(by_size[k])))
        return ChainComplex(-1, [len(fs) for fs in by_size], diffs, field)


def reduced_homology(K: SimplicialComplex, orientation: Sequence | None = None, field: Field = QQ) -> dict[int, int]:
    return K.reduced_chain_complex(orientation, field).homology()


def delta_b(M: RepresentedMatroid, b) -> SimplicialComplex:
    """Subsets whose closure avoids ``b``; void when ``b`` is a loop."""
    if b not in M.ground:
        raise KeyError(b)
    faces = [J for J in M.subsets() if b not in M.closure(J)]
    return SimplicialComplex(M.ground, faces)


@dataclass(frozen=True)
class GradedSubspaceComplex:
    """A complex whose degree-``i`` part is a direct sum of column spans.

    ``index_sets[i]`` lists the sets ``B`` of the summands in degree ``i``;
    ``bases[B]`` gives the ambient column indices spanning that summand.
    """

    index_sets: tuple
    bases: dict
    ambient: Matrix
    chain: ChainComplex
    order: tuple

    @property
    def dims(self) -> tuple:
        return self.chain.dims

    def homology(self) -> dict[int, int]:
        return self.chain.homology()

    def homology_support(self) -> dict[int, int]:
        return self.chain.homology_support()


def _subsets_by_degree(order: Sequence) -> list[list[frozenset]]:
    # degree i carries the subsets of size |order| - i
    n = len(order)
    return [[frozenset(B) for B in combinations(order, n - i)] for i in range(n + 1)]


def _subspace_complex(
    phi: Matrix,
    labels: Sequence,
    order: Sequence,
    columns_of: Callable[[frozenset], list],
) -> GradedSubspaceComplex:
    """Degree ``i`` = sum over ``B`` in ``order`` with ``|B| = |order| - i`` of
    the span of ``columns_of(B)``; maps are signed inclusions."""
    f = phi.field
    col = {x: k for k, x in enumerate(labels)}
    pos = {x: k for k, x in enumerate(order)}
    levels = _subsets_by_degree(order)
    bases = {}
    solvers = {}
    for level in levels:
        for B in level:
            scan = [col[x] for x in columns_of(B)]
            basis = pivot_columns(phi, scan)
            bases[B] = tuple(basis)
            if basis:
                solvers[B] = CoordinateSolver(phi.select_columns(basis))
    dims = [sum(len(bases[B]) for B in level) for level in levels]
    offsets = []
    for level in levels:
        off, acc = {}, 0
        for B in level:
            off[B] = acc
            acc += len(bases[B])
        offsets.append(off)

    diffs = []
    for i in range(1, len(levels)):
        grid = [[f.zero] * dims[i] for _ in range(dims[i - 1])]
        for B in levels[i]:
            if not bases[B]:
                continue
            for c in order:
                if c in B:
                    continue
                target = B | {c}
                sign = -1 if sum(1 for b in B if pos[b] < pos[c]) % 2 else 1
                solver = solvers[target]
                for k, j in enumerate(bases[B]):
                    coords = solver.coordinates(phi.col(j))
                    r0 = offsets[i - 1][target]
                    c0 = offsets[i][B] + k
                    for t, x in enumerate(coords):
                        if x:
                            grid[r0 + t][c0] = x if sign > 0 else -x
        diffs.append(Matrix._raw(tuple(map(tuple, grid)), f, dims[i]))
    chain = ChainComplex(0, dims, diffs, f)
    return GradedSubspaceComplex(tuple(tuple(level) for level in levels), bases, phi, chain, tuple(order))


def build_V(phi: Matrix, omega: Sequence | None = None, labels: Sequence | None = None) -> GradedSubspaceComplex:
    """Degree ``i``: the spans ``V_B`` with ``|B| = |S| - i``; ``V_S`` sits in degree 0."""
    labels = tuple(range(phi.ncols)) if labels is None else tuple(labels)
    order = labels if omega is None else tuple(omega)
    if set(order) != set(labels) or len(order) != len(labels):
        raise ValueError("omega must order the column labels")
    return _subspace_complex(phi, labels, order, lambda B: sorted(B, key=order.index))


def _generic_fiber(P: Presentation, alpha):
    fs = fiber_structure(P, alpha)
    if not fs.is_generic:
        raise NotGenericError(f"{list(fs.alpha)} is not generic")
    return fs


def _order_on(P: Presentation, I_lower: frozenset, omega) -> tuple:
    if omega is None:
        return tuple(P.ordered(I_lower))
    omega = tuple(omega)
    if set(omega) != set(I_lower) or len(omega) != len(I_lower):
        raise ValueError(f"omega must order I_alpha = {P.ordered(I_lower)}")
    return omega


def build_V_alpha(P: Presentation, alpha, omega: Sequence | None = None) -> GradedSubspaceComplex:
    """Degree ``i``: sum over ``A`` in ``I_alpha`` with ``|A| = i`` of ``V_{I^alpha - A}``.

    Summands are indexed by ``B = I_alpha - A``; the span is ``V_{I(alpha) + B}``.
    """
    fs = _generic_fiber(P, alpha)
    order = _order_on(P, fs.i_lower, omega)
    base = P.ordered(fs.i_of_alpha)
    return _subspace_complex(
        P.coeffs, P.source_labels, order, lambda B: base + [x for x in order if x in B]
    )


def quotient_representation(P: Presentation, alpha, omega: Sequence | None = None) -> tuple[Matrix, tuple]:
    """Columns of ``I_alpha`` (in ``omega`` order) modulo ``V_{I(alpha)}``."""
    fs = _generic_fiber(P, alpha)
    order = _order_on(P, fs.i_lower, omega)
    phibar = quotient_map(P.coeffs, P.indices(fs.i_of_alpha), [P.index(x) for x in order])
    return phibar, order


def build_V_bar(P: Presentation, alpha, omega: Sequence | None = None) -> GradedSubspaceComplex:
    phibar, order = quotient_representation(P, alpha, omega)
    return build_V(phibar, order, labels=order)


def simplex_dual_shifted(I_alpha: Sequence, omega: Sequence | None = None, field: Field = QQ) -> ChainComplex:
    """Dual of the reduced chain complex of the full simplex on ``I_alpha``,
    shifted so the dual of degree -1 sits in degree ``|I_alpha|``."""
    order = tuple(I_alpha) if omega is None else tuple(omega)
    C = SimplicialComplex.full_simplex(order).reduced_chain_complex(order, field)
    return hshift(dual(C), -len(order) + 1)


@dataclass(frozen=True)
class SpacesSequenceCheck:
    """Outcome of checking ``0 -> V_{I(alpha)} (x) C' -> V(alpha) -> V(bar) -> 0``."""

    sub_dims: tuple
    middle_dims: tuple
    quotient_dims: tuple
    chain_map: bool
    injective: bool
    additive: bool
    sub_exact: bool

    @property
    def ok(self) -> bool:
        return self.chain_map and self.injective and self.additive and self.sub_exact


def check_spaces_sequence(P: Presentation, alpha, omega: Sequence | None = None) -> SpacesSequenceCheck:
    fs = _generic_fiber(P, alpha)
    order = _order_on(P, fs.i_lower, omega)
    f = P.field
    middle = build_V_alpha(P, alpha, order)
    bar = build_V_bar(P, alpha, order)
    base = P.ordered(fs.i_of_alpha)
    base_cols = pivot_columns(P.coeffs, [P.index(x) for x in base])
    dV = len(base_cols)
    sub = simplex_dual_shifted(order, order, f).tensor(dV)

    # the summand of C' for B is a copy of V_{I(alpha)} inside V_{I(alpha)+B}
    incl = []
    for i, level in enumerate(middle.index_sets):
        blocks = []
        for B in level:
            target = middle.bases[B]
            if target:
                solver = CoordinateSolver(P.coeffs.select_columns(target))
                cols = [solver.coordinates(P.coeffs.col(j)) for j in base_cols]
                blocks.append(Matrix.from_columns(cols, len(target), f))
            else:
                blocks.append(Matrix.zeros(0, dV, f))
        incl.append(block_diagonal(blocks, f) if blocks else Matrix.zeros(0, 0, f))

    chain_map = all(
        middle.chain.d(i) @ incl[i] == incl[i - 1] @ sub.d(i) for i in range(1, len(incl))
    )
    injective = all(rank(incl[i]) == sub.dim(i) for i in range(len(incl)))
    sub_dims = tuple(sub.dim(i) for i in range(len(incl)))
    quotient_dims = tuple(bar.chain.dim(i) for i in range(len(incl)))
    additive = all(middle.chain.dim(i) == sub_dims[i] + quotient_dims[i] for i in range(len(incl)))
    return SpacesSequenceCheck(sub_dims, middle.dims, quotient_dims, chain_map, injective, additive, sub.is_exact())
