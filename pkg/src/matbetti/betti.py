"""Multigraded Betti numbers: Koszul-homology oracle and matroid predictor.

``beta_{i,alpha}(L) = dim Tor_i(L, k)_alpha`` is computed as the homology
of the degree-``alpha`` strand of ``L (x) K(x_1..x_m)``.  The prediction
at a generic ``alpha`` is the beta-invariant of the minor ``M_alpha``
placed in homological degree ``|I_alpha| - rank M_alpha + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .complexes import ChainComplex, build_V_alpha
from .linalg import Matrix, SubspaceReducer
from .matroid import beta_invariant, minors_at
from .presentation import (
    NotGenericError,
    Presentation,
    degree_key,
    fiber_structure,
    in_lattice,
    lcm_lattice,
    leq,
)


@dataclass(frozen=True)
class GradedPiece:
    """``L_beta = G_beta / Phi(E)_beta`` with a basis of standard coordinates."""

    beta_degree: tuple
    ambient_labels: tuple  # target labels g with deg g <= beta
    quotient_basis: tuple  # positions in ambient_labels spanning L_beta
    reducer: SubspaceReducer = dc_field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.quotient_basis)


class ModuleStrands:
    """Graded pieces and multiplication maps of ``coker Phi``, memoised per degree."""

    def __init__(self, P: Presentation):
        self.P = P
        self._pieces: dict[tuple, GradedPiece] = {}
        self._mult: dict[tuple, Matrix] = {}

    def piece(self, beta) -> GradedPiece:
        beta = tuple(beta)
        got = self._pieces.get(beta)
        if got is not None:
            return got
        P = self.P
        rows = [k for k, (_, d) in enumerate(P.targets) if leq(d, beta)]
        image = [
            [P.coeffs[g, s] for g in rows]
            for s, (_, d) in enumerate(P.sources)
            if leq(d, beta)
        ]
        red = SubspaceReducer(image, len(rows), P.field)
        piece = GradedPiece(beta, tuple(P.targets[k][0] for k in rows), tuple(red.free), red)
        self._pieces[beta] = piece
        return piece

    def multiplication(self, beta, j: int) -> Matrix:
        """Matrix of ``x_j: L_beta -> L_{beta + e_j}`` in the quotient bases."""
        beta = tuple(beta)
        key = (beta, j)
        got = self._mult.get(key)
        if got is not None:
            return got
        f = self.P.field
        src = self.piece(beta)
        up = tuple(b + (1 if k == j else 0) for k, b in enumerate(beta))
        dst = self.piece(up)
        where = {lab: k for k, lab in enumerate(dst.ambient_labels)}
        cols = []
        for q in src.quotient_basis:
            v = [f.zero] * len(dst.ambient_labels)
            v[where[src.ambient_labels[q]]] = f.one
            cols.append(dst.reducer.coordinates(v))
        M = Matrix.from_columns(cols, dst.dim, f)
        self._mult[key] = M
        return M

    def koszul_strand(self, alpha) -> ChainComplex:
        """Degree ``i``: sum over ``F`` with ``|F| = i`` of ``L_{alpha - e_F}``."""
        alpha = tuple(alpha)
        m = self.P.m
        f = self.P.field
        levels = [list(combinations(range(m), i)) for i in range(m + 1)]

        def shifted(F):
            return tuple(a - (1 if k in F else 0) for k, a in enumerate(alpha))

        def piece_dim(F):
            b = shifted(F)
            return 0 if min(b) < 0 else self.piece(b).dim

        dims = []
        offsets = []
        for level in levels:
            off, acc = {}, 0
            for F in level:
                off[F] = acc
                acc += piece_dim(F)
            offsets.append(off)
            dims.append(acc)
        diffs = []
        for i in range(1, m + 1):
            grid = [[f.zero] * dims[i] for _ in range(dims[i - 1])]
            for F in levels[i]:
                if not piece_dim(F):
                    continue
                for pos, j in enumerate(F):
                    G = F[:pos] + F[pos + 1:]
                    if not piece_dim(G):
                        continue
                    X = self.multiplication(shifted(F), j)
                    r0, c0 = offsets[i - 1][G], offsets[i][F]
                    neg = pos % 2 == 1
                    for a, row in enumerate(X.rows):
                        for b, x in enumerate(row):
                            if x:
                                grid[r0 + a][c0 + b] = -x if neg else x
            diffs.append(Matrix._raw(tuple(map(tuple, grid)), f, dims[i]))
        return ChainComplex(0, dims, diffs, f)


def module_piece(P: Presentation, beta) -> GradedPiece:
    return ModuleStrands(P).piece(beta)


def multiplication_map(P: Presentation, beta, j: int) -> Matrix:
    return ModuleStrands(P).multiplication(beta, j)


def koszul_betti(P: Presentation, alpha, strands: ModuleStrands | None = None) -> dict[int, int]:
    """``{i: dim Tor_i(L, k)_alpha}`` for ``i = 0..m``."""
    strands = strands or ModuleStrands(P)
    return strands.koszul_strand(alpha).homology()


def predicted_betti(P: Presentation, alpha) -> dict[int, int]:
    """Prediction for ``i >= 1``; raises :class:`NotGenericError` off the generic locus."""
    alpha = tuple(alpha)
    out = {i: 0 for i in range(1, P.m + 1)}
    if not in_lattice(P, alpha):
        return out
    mp = minors_at(P, alpha)
    i = len(mp.i_lower) - mp.m_lower.rank() + 1
    value = beta_invariant(mp.m_lower)
    if value:
        out[i] = value
    return out


@dataclass(frozen=True)
class BettiRecord:
    i: int
    alpha: tuple
    value: int
    source: str  # "oracle" | "predicted"


def betti_table(P: Presentation, mode: str = "oracle") -> list[BettiRecord]:
    """Nonzero Betti numbers over the LCM lattice, plus the degree-0 generators.

    ``mode`` is ``"oracle"``, ``"predicted"`` or ``"both"``; predicted
    entries appear only at generic lattice elements.
    """
    if mode not in ("oracle", "predicted", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    records = []
    zero_counts: dict[tuple, int] = {}
    for _, d in P.targets:
        zero_counts[d] = zero_counts.get(d, 0) + 1
    for d, n in sorted(zero_counts.items(), key=lambda kv: degree_key(kv[0])):
        for src in ("oracle", "predicted"):
            if mode in (src, "both"):
                records.append(BettiRecord(0, d, n, src))
    strands = ModuleStrands(P)
    for alpha in lcm_lattice(P):
        if mode in ("oracle", "both"):
            for i, v in koszul_betti(P, alpha, strands).items():
                if i >= 1 and v:
                    records.append(BettiRecord(i, alpha, v, "oracle"))
        if mode in ("predicted", "both") and fiber_structure(P, alpha).is_generic:
            for i, v in predicted_betti(P, alpha).items():
                if v:
                    records.append(BettiRecord(i, alpha, v, "predicted"))
    records.sort(key=lambda r: (degree_key(r.alpha), r.i, r.source))
    return records


def betti_totals(records, source: str = "oracle") -> dict[int, int]:
    tot: dict[int, int] = {}
    for r in records:
        if r.source == source:
            tot[r.i] = tot.get(r.i, 0) + r.value
    return dict(sorted(tot.items()))


@dataclass
class DegreeVerdict:
    alpha: tuple
    generic: bool
    oracle: dict
    predicted: dict | None
    minimal_sets: tuple
    match: bool | None  # None where the theorem says nothing

    @property
    def status(self) -> str:
        if self.match is None:
            return "theorem silent (not generic)"
        return "MATCH" if self.match else "MISMATCH"


@dataclass
class MainTheoremReport:
    field: str
    verdicts: list

    @property
    def passed(self) -> bool:
        return all(v.match is not False for v in self.verdicts)

    @property
    def mismatches(self) -> list:
        return [v for v in self.verdicts if v.match is False]

    @property
    def silent(self) -> list:
        return [v for v in self.verdicts if v.match is None]


def verify_degree(P: Presentation, alpha, strands: ModuleStrands | None = None) -> DegreeVerdict:
    alpha = tuple(alpha)
    oracle = koszul_betti(P, alpha, strands)
    positive = {i: v for i, v in oracle.items() if i >= 1}
    if in_lattice(P, alpha):
        fs = fiber_structure(P, alpha)
        mins = fs.minimal_sets
        generic = fs.is_generic
    else:
        mins, generic = (), True
    if not generic:
        return DegreeVerdict(alpha, False, oracle, None, mins, None)
    predicted = predicted_betti(P, alpha)
    nonzero = [i for i, v in positive.items() if v]
    match = len(nonzero) <= 1 and all(positive.get(i, 0) == predicted.get(i, 0) for i in set(positive) | set(predicted))
    return DegreeVerdict(alpha, True, oracle, predicted, mins, match)


def verify_main_theorem(P: Presentation, alphas=None) -> MainTheoremReport:
    strands = ModuleStrands(P)
    alphas = list(lcm_lattice(P)) if alphas is None else [tuple(a) for a in alphas]
    return MainTheoremReport(P.field.name, [verify_degree(P, a, strands) for a in alphas])


def v_complex_betti(P: Presentation, alpha, omega=None) -> dict[int, int]:
    """``{i: dim H_{i-1}(V(alpha, phi, omega))}`` for ``i >= 1`` at a generic ``alpha``."""
    fs = fiber_structure(P, alpha)
    if not fs.is_generic:
        raise NotGenericError(f"{list(fs.alpha)} is not generic")
    H = build_V_alpha(P, alpha, omega).homology()
    return {i + 1: h for i, h in H.items()}
