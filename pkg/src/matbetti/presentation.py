"""Multigraded presentations ``Phi: E -> G``, the degree map and the LCM lattice.

A presentation is stored through its scalar shadow: entry ``(g, s)`` of
``coeffs`` is the coefficient of the monomial ``x^(deg s - deg g)`` in the
corresponding entry of ``Phi``.  In the fine ``Z^m`` grading every
homogeneous entry has that form, so nothing is lost.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .fields import QQ, Field, field_from_descriptor
from .linalg import Matrix, column_space_dim, rank

Multidegree = tuple  # tuple[int, ...]


class SchemaError(ValueError):
    """The input document does not have the expected shape."""


class ValidationError(ValueError):
    """The input is well-formed but is not a minimal multihomogeneous presentation."""


class NotInLatticeError(ValueError):
    pass


class NotGenericError(ValueError):
    pass


def join(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(max(x, y) for x, y in zip(a, b))


def leq(a: Multidegree, b: Multidegree) -> bool:
    return all(x <= y for x, y in zip(a, b))


def degree_key(a: Multidegree):
    """Degree-lexicographic sort key."""
    return (sum(a), tuple(a))


@dataclass(frozen=True)
class Presentation:
    m: int
    targets: tuple  # ((label, degree), ...)
    sources: tuple  # ((label, degree), ...)
    coeffs: Matrix
    field: Field = QQ
    _index: dict = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: k for k, (lab, _) in enumerate(self.sources)})

    @property
    def source_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.sources)

    @property
    def target_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.targets)

    def deg(self, label) -> Multidegree:
        return self.sources[self._index[label]][1]

    def index(self, label) -> int:
        return self._index[label]

    def ordered(self, labels: Iterable) -> list:
        """Labels sorted by their position in the source basis."""
        return sorted(labels, key=self._index.__getitem__)

    def indices(self, labels: Iterable) -> list[int]:
        return sorted(self._index[x] for x in labels)

    @property
    def is_monomial_ideal(self) -> bool:
        return len(self.targets) == 1 and all(d == 0 for d in self.targets[0][1])

    @classmethod
    def from_monomial_ideal(cls, gens: Sequence[Sequence[int]], field: Field = QQ) -> "Presentation":
        """``R^n -> R`` with unit coefficients; generators are labelled 1..n."""
        doc = {"monomial_ideal": [list(g) for g in gens], "field": field}
        return parse_presentation(doc)

    def to_document(self) -> dict:
        def enc(x):
            if self.field.characteristic:
                return int(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "variables": self.m,
            "field": self.field.describe(),
            "targets": [{"label": lab, "degree": list(d)} for lab, d in self.targets],
            "sources": [{"label": lab, "degree": list(d)} for lab, d in self.sources],
            "matrix": [[enc(x) for x in row] for row in self.coeffs.rows],
        }


def _degree(value, m: int, where: str) -> Multidegree:
    if not isinstance(value, list) or len(value) != m:
        raise SchemaError(f"{where}: degree must be a list of {m} integers")
    for x in value:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise SchemaError(f"{where}: degree entries must be nonnegative integers, got {x!r}")
    return tuple(value)


def _labelled(items, m: int, kind: str) -> tuple:
    if not isinstance(items, list) or not items:
        raise SchemaError(f"'{kind}' must be a nonempty list")
    out = []
    for k, item in enumerate(items):
        if not isinstance(item, dict):
            raise SchemaError(f"{kind}[{k}] must be an object")
        label = str(item.get("label", f"{kind[0]}{k + 1}"))
        deg = item.get("degree", [0] * m) if kind == "targets" else item.get("degree")
        if deg is None:
            raise SchemaError(f"{kind}[{k}] has no degree")
        out.append((label, _degree(deg, m, f"{kind}[{k}]")))
    labels = [lab for lab, _ in out]
    if len(set(labels)) != len(labels):
        raise SchemaError(f"duplicate labels in '{kind}'")
    return tuple(out)


def parse_presentation(doc, field=None) -> Presentation:
    """Build and validate a presentation from a JSON document (dict, str or path).

    ``field`` overrides the document's own ``"field"`` entry.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise SchemaError(f"malformed JSON: {e}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level document must be an object")
    try:
        F = field_from_descriptor(field if field is not None else doc.get("field", "rational"))
    except (ValueError, TypeError) as e:
        raise SchemaError(str(e)) from None

    if "monomial_ideal" in doc:
        gens = doc["monomial_ideal"]
        if not isinstance(gens, list) or not gens or not isinstance(gens[0], list):
            raise SchemaError("'monomial_ideal' must be a nonempty list of exponent vectors")
        m = doc.get("variables", len(gens[0]))
        sources = tuple(
            (str(k + 1), _degree(g, m, f"monomial_ideal[{k}]")) for k, g in enumerate(gens)
        )
        targets = (("1", (0,) * m),)
        coeffs = Matrix([[1] * len(sources)], F)
    else:
        for key in ("variables", "sources", "matrix"):
            if key not in doc:
                raise SchemaError(f"missing key '{key}'")
        m = doc["variables"]
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise SchemaError("'variables' must be a positive integer")
        sources = _labelled(doc["sources"], m, "sources")
        mat = doc["matrix"]
        if not isinstance(mat, list) or not mat or not all(isinstance(r, list) for r in mat):
            raise SchemaError("'matrix' must be a nonempty list of rows")
        targets = doc.get("targets")
        if targets is None:
            targets = [{"label": f"g{k + 1}"} for k in range(len(mat))]
        targets = _labelled(targets, m, "targets")
        if len(mat) != len(targets):
            raise SchemaError(f"matrix has {len(mat)} rows but there are {len(targets)} targets")
        for k, row in enumerate(mat):
            if len(row) != len(sources):
                raise SchemaError(f"matrix row {k} has {len(row)} entries, expected {len(sources)}")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, (int, str)):
                    raise SchemaError(f"matrix entry {x!r} is not an integer or 'p/q' string")
        try:
            coeffs = Matrix(mat, F)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"bad matrix entry: {e}") from None

    P = Presentation(m=m, targets=targets, sources=sources, coeffs=coeffs, field=F)
    validate(P)
    return P


def load_presentation(path, field=None) -> Presentation:
    with open(path) as fh:
        text = fh.read()
    return parse_presentation(text, field=field)


def validate(P: Presentation) -> None:
    """Multihomogeneity and minimality; raises :class:`ValidationError`."""
    C = P.coeffs
    for gi, (g, dg) in enumerate(P.targets):
        for si, (s, ds) in enumerate(P.sources):
            if not C[gi, si]:
                continue
            if not leq(dg, ds):
                raise ValidationError(
                    f"entry ({g}, {s}) is nonzero but deg {g} = {list(dg)} is not <= deg {s} = {list(ds)}"
                )
            if dg == ds:
                raise ValidationError(
                    f"entry ({g}, {s}) is a unit: deg {g} = deg {s} = {list(ds)} (presentation not minimal)"
                )
    for si, (s, _) in enumerate(P.sources):
        if all(not C[gi, si] for gi in range(C.nrows)):
            raise ValidationError(f"column {s} is zero")
    # redundant relations: at each source degree the new columns must be
    # independent modulo everything of strictly smaller degree
    for delta in sorted({d for _, d in P.sources}, key=degree_key):
        below = [k for k, (_, d) in enumerate(P.sources) if leq(d, delta) and d != delta]
        here = [k for k, (_, d) in enumerate(P.sources) if d == delta]
        gain = column_space_dim(C, below + here) - column_space_dim(C, below)
        if gain != len(here):
            labs = [P.sources[k][0] for k in here]
            raise ValidationError(
                f"relations {labs} of degree {list(delta)} are not minimal generators of the image"
            )


def degree_of_set(P: Presentation, A: Iterable) -> Multidegree:
    """Componentwise maximum of the source degrees in ``A``; the zero vector for ``A`` empty."""
    d = (0,) * P.m
    for a in A:
        d = join(d, P.deg(a))
    return d


@dataclass(frozen=True)
class LcmLattice:
    elements: tuple  # sorted degree-lexicographically
    generator_degrees: tuple

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in set(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def lcm_lattice(P: Presentation) -> LcmLattice:
    gens = [d for _, d in P.sources]
    elements = set(gens)
    frontier = set(gens)
    while frontier:
        new = set()
        for a in frontier:
            for g in gens:
                j = join(a, g)
                if j not in elements:
                    new.add(j)
        elements |= new
        frontier = new
    return LcmLattice(tuple(sorted(elements, key=degree_key)), tuple(gens))


def upper_set(P: Presentation, alpha) -> frozenset:
    """``I^alpha``: all sources of degree ``<= alpha``."""
    alpha = tuple(alpha)
    return frozenset(lab for lab, d in P.sources if leq(d, alpha))


def in_lattice(P: Presentation, alpha) -> bool:
    alpha = tuple(alpha)
    up = upper_set(P, alpha)
    return bool(up) and degree_of_set(P, up) == alpha


@dataclass(frozen=True)
class FiberStructure:
    alpha: Multidegree
    i_upper: frozenset
    minimal_sets: tuple  # of frozensets, in a deterministic order
    is_generic: bool
    i_lower: frozenset | None

    @property
    def i_of_alpha(self) -> frozenset | None:
        return None if self.i_lower is None else self.i_upper - self.i_lower


def _minimal_subsets_of_degree(P: Presentation, top: frozenset, alpha) -> list[frozenset]:
    seen: dict[frozenset, None] = {}
    minimal = []
    stack = [top]
    while stack:
        J = stack.pop()
        if J in seen:
            continue
        seen[J] = None
        children = [J - {x} for x in J if len(J) > 1 and degree_of_set(P, J - {x}) == alpha]
        if not children:
            minimal.append(J)
        stack.extend(c for c in children if c not in seen)
    return minimal


def fiber_structure(P: Presentation, alpha) -> FiberStructure:
    alpha = tuple(alpha)
    if len(alpha) != P.m:
        raise ValueError(f"multidegree {list(alpha)} has length {len(alpha)}, expected {P.m}")
    top = upper_set(P, alpha)
    if not top or degree_of_set(P, top) != alpha:
        raise NotInLatticeError(f"{list(alpha)} is not in the LCM lattice")
    mins = _minimal_subsets_of_degree(P, top, alpha)
    mins.sort(key=lambda J: (len(J), P.indices(J)))
    generic = len(mins) == 1
    return FiberStructure(alpha, top, tuple(mins), generic, mins[0] if generic else None)


def fiber(P: Presentation, alpha) -> list[frozenset]:
    """All subsets of ``S`` of degree ``alpha`` (brute force; for checks)."""
    alpha = tuple(alpha)
    top = P.ordered(upper_set(P, alpha))
    out = []
    for k in range(1, len(top) + 1):
        for J in combinations(top, k):
            if degree_of_set(P, J) == alpha:
                out.append(frozenset(J))
    return out


def is_generic_relative(P: Presentation, alpha) -> bool:
    alpha = tuple(alpha)
    if not in_lattice(P, alpha):
        return True
    return fiber_structure(P, alpha).is_generic


def non_generic_elements(P: Presentation) -> list[FiberStructure]:
    out = []
    for alpha in lcm_lattice(P):
        fs = fiber_structure(P, alpha)
        if not fs.is_generic:
            out.append(fs)
    return out


def is_generic_type(P: Presentation) -> bool:
    # only lattice degrees can fail to be generic
    return not non_generic_elements(P)


def uniform_rank_check(P: Presentation) -> bool:
    C = P.coeffs
    r = rank(C)
    return all(column_space_dim(C, cols) == r for cols in combinations(range(C.ncols), r))


def strongly_generic_check(P: Presentation) -> bool:
    """No variable occurs with the same positive exponent in two distinct generators."""
    if len(P.targets) != 1:
        raise ValueError("Strong genericity is defined for monomial ideals only")
    degs = [d for _, d in P.sources]
    for a, b in combinations(degs, 2):
        if any(x == y and x > 0 for x, y in zip(a, b)):
            return False
    return True
