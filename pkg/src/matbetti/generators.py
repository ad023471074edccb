"""Random instances for property checks and the self-test."""

from __future__ import annotations

import random

from .fields import QQ, Field
from .linalg import Matrix
from .presentation import (
    Presentation,
    ValidationError,
    fiber_structure,
    lcm_lattice,
    leq,
    parse_presentation,
)


def random_matrix(rng: random.Random, nrows: int, ncols: int, lo: int = -2, hi: int = 2, field: Field = QQ) -> Matrix:
    return Matrix([[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)], field)


def random_represented_matrix(rng: random.Random, max_cols: int = 6, max_rows: int = 4, field: Field = QQ) -> Matrix:
    return random_matrix(rng, rng.randint(1, max_rows), rng.randint(1, max_cols), field=field)


def random_presentation(
    rng: random.Random,
    max_vars: int = 4,
    max_sources: int = 5,
    max_targets: int = 2,
    max_exp: int = 3,
    field: Field = QQ,
    tries: int = 1000,
    spread: bool | None = None,
) -> Presentation:
    """A valid minimal presentation with small random degrees and coefficients in [-2, 2].

    With ``spread`` each source is the unique carrier of the top exponent in
    some variable, which makes large minimal sets ``I_alpha`` common.
    Defaults to a coin flip.
    """
    if spread is None:
        spread = rng.random() < 0.5
    for _ in range(tries):
        m = rng.randint(1, max_vars)
        g = rng.randint(1, max_targets)
        targets = [tuple(rng.choice((0, 0, 1)) for _ in range(m)) for _ in range(g)]
        n = rng.randint(min(m, max_sources) if spread else 1, max_sources)
        sources, cols = [], []
        for j in range(n):
            for _ in range(50):
                d = [rng.randint(0, max_exp - 1 if spread else max_exp) for _ in range(m)]
                if spread:
                    d[j % m] = max_exp + j // m
                d = tuple(d)
                eligible = [k for k, t in enumerate(targets) if leq(t, d) and t != d]
                if eligible:
                    break
            else:
                break
            col = [0] * g
            for k in eligible:
                col[k] = rng.randint(-2, 2)
            if not any(col):
                col[rng.choice(eligible)] = rng.choice((-2, -1, 1, 2))
            sources.append(d)
            cols.append(col)
        if len(sources) != n:
            continue
        doc = {
            "variables": m,
            "field": field,
            "targets": [{"label": f"g{k + 1}", "degree": list(t)} for k, t in enumerate(targets)],
            "sources": [{"label": f"s{k + 1}", "degree": list(d)} for k, d in enumerate(sources)],
            "matrix": [[cols[s][k] for s in range(n)] for k in range(g)],
        }
        try:
            return parse_presentation(doc)
        except ValidationError:
            continue
    raise RuntimeError("could not generate a valid presentation")


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda d: (sum(d), d))
    out = []
    for d in gens:
        if not any(leq(e, d) for e in out):
            out.append(d)
    return out


def random_monomial_ideal(
    rng: random.Random, max_gens: int = 5, max_vars: int = 4, max_exp: int = 3, field: Field = QQ
) -> Presentation:
    """Minimal generators of a random monomial ideal (no unit ideal)."""
    while True:
        m = rng.randint(min(2, max_vars), max_vars)
        k = rng.randint(min(2, max_gens), max_gens)
        gens = [tuple(rng.randint(0, max_exp) for _ in range(m)) for _ in range(k)]
        gens = _minimalize([d for d in gens if any(d)])
        if len(gens) >= min(2, k):
            rng.shuffle(gens)
            return Presentation.from_monomial_ideal(gens, field)


def random_strongly_generic_ideal(
    rng: random.Random, max_gens: int = 5, max_vars: int = 4, max_exp: int = 6, field: Field = QQ
) -> Presentation:
    """No two generators share a positive exponent in any variable."""
    while True:
        m = rng.randint(1, max_vars)
        k = rng.randint(1, max_gens)
        columns = []
        for _ in range(m):
            positive = rng.sample(range(1, max_exp + 1), min(k, max_exp))
            col = [positive[j] if j < len(positive) and rng.random() < 0.8 else 0 for j in range(k)]
            columns.append(col)
        gens = [tuple(columns[v][j] for v in range(m)) for j in range(k)]
        gens = _minimalize([d for d in gens if any(d)])
        if gens:
            return Presentation.from_monomial_ideal(gens, field)


def generic_lattice_elements(P: Presentation) -> list[tuple]:
    return [a for a in lcm_lattice(P) if fiber_structure(P, a).is_generic]
